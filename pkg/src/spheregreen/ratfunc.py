"""Exact univariate polynomials and rational functions over the rationals.

Polynomials are immutable dense coefficient tuples (ascending powers of z,
Fraction entries, no trailing zeros).  Rational functions are kept in a
canonical form at all times: numerator and denominator are integer-coefficient
polynomials with no common polynomial factor, jointly primitive, and the
denominator has a positive leading coefficient.  That canonical form is what
the text serialization round-trips bit-exactly.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import DomainError


class Poly:
    """Dense polynomial in z with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Poly is immutable")

    # -- basic structure -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if self.is_zero():
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlead = other.leading()
        dd = other.degree()
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            if rem[i]:
                f = rem[i] / dlead
                quot[i - dd] = f
                for j, c in enumerate(other.coeffs):
                    rem[i - dd + j] -= f * c
        return Poly(quot), Poly(rem)

    def evaluate(self, z):
        """Horner evaluation; exact for Fraction z, float for float z."""
        acc = Fraction(0) if isinstance(z, Fraction) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * z + (c if isinstance(z, Fraction) else float(c))
        return acc

    # -- helpers for canonicalization ------------------------------------
    def monic_gcd(self, other: "Poly") -> "Poly":
        """Monic polynomial gcd by the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a * (1 / a.leading())

    def shift_out_root(self, root: Fraction) -> tuple["Poly", int]:
        """Divide out (z - root) as many times as it exactly divides."""
        p, k = self, 0
        factor = Poly([-root, Fraction(1)])
        while not p.is_zero() and p.evaluate(root) == 0:
            p = p.divmod(factor)[0]
            k += 1
        return p, k


ZERO = Poly()
ONE_POLY = Poly([1])
Z = Poly([0, 1])
ONE_MINUS_Z = Poly([1, -1])


def _content(polys) -> Fraction:
    """Positive rational content of the joint coefficient list."""
    num_gcd, den_lcm = 0, 1
    for p in polys:
        for c in p.coeffs:
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    if num_gcd == 0:
        return Fraction(1)
    return Fraction(num_gcd, den_lcm)


class RationalFunction:
    """Quotient of integer-coefficient polynomials in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE_POLY):
        if not isinstance(num, Poly):
            num = Poly([num]) if isinstance(num, (int, Fraction)) else Poly(num)
        if not isinstance(den, Poly):
            den = Poly([den]) if isinstance(den, (int, Fraction)) else Poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE_POLY
        else:
            # cheap exact cancellations first: roots at 0 and 1 cover every
            # denominator the contiguous-relation walk can produce
            for root in (Fraction(0), Fraction(1)):
                if den.evaluate(root) == 0 and num.evaluate(root) == 0:
                    num_r, kn = num.shift_out_root(root)
                    den_r, kd = den.shift_out_root(root)
                    k = min(kn, kd)
                    factor = Poly([-root, Fraction(1)])
                    num, den = num_r, den_r
                    for _ in range(kn - k):
                        num = num * factor
                    for _ in range(kd - k):
                        den = den * factor
            g = num.monic_gcd(den)
            if g.degree() > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
        content = _content([num, den])
        scale = 1 / content
        if den.leading() < 0:
            scale = -scale
        object.__setattr__(self, "num", num * scale)
        object.__setattr__(self, "den", den * scale)

    def __setattr__(self, *a):
        raise AttributeError("RationalFunction is immutable")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num * other, self.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of rational function by zero")
            return RationalFunction(self.num, self.den * other)
        if other.is_zero():
            raise ZeroDivisionError("division of rational function by zero")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def evaluate(self, z):
        den = self.den.evaluate(z)
        if den == 0:
            raise DomainError(f"rational-function coefficient has a pole at z={z}")
        return self.num.evaluate(z) / den

    def __repr__(self):
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


RF_ZERO = RationalFunction(ZERO)
RF_ONE = RationalFunction(ONE_POLY)


# -- text form ------------------------------------------------------------
# Canonical polynomial text: integer coefficients, descending powers, terms
# joined by " + " / " - ", e.g. "3*z^2 - z + 12".  The zero polynomial is "0".

def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree(), -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        if c.denominator != 1:
            raise DomainError("canonical polynomial text requires integer coefficients")
        mag = abs(c.numerator)
        if k == 0:
            body = str(mag)
        else:
            zp = "z" if k == 1 else f"z^{k}"
            body = zp if mag == 1 else f"{mag}*{zp}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_TERM_RE = re.compile(
    r"^\s*(?P<coef>\d+)?\s*(?:\*\s*)?(?P<z>z(?:\^(?P<pow>\d+))?)?\s*$"
)


def parse_poly(text: str) -> Poly:
    """Parse the canonical polynomial text form back into a Poly."""
    text = text.strip()
    if not text:
        raise DomainError("empty polynomial text")
    if text == "0":
        return ZERO
    tokens = re.split(r"(?=[+-])", text.replace(" ", ""))
    coeffs: dict[int, Fraction] = {}
    for tok in tokens:
        if not tok:
            continue
        sign = 1
        if tok[0] in "+-":
            sign = -1 if tok[0] == "-" else 1
            tok = tok[1:]
        m = _TERM_RE.match(tok)
        if not m or (m.group("coef") is None and m.group("z") is None):
            raise DomainError(f"cannot parse polynomial term {tok!r}")
        coef = int(m.group("coef")) if m.group("coef") else 1
        if m.group("z") is None:
            power = 0
        else:
            power = int(m.group("pow")) if m.group("pow") else 1
        coeffs[power] = coeffs.get(power, Fraction(0)) + sign * coef
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, v in coeffs.items():
        out[k] = v
    return Poly(out)

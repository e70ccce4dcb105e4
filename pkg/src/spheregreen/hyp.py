"""Exact reduction of 2F1 with integer and half-integer parameters.

Every Gauss hypergeometric function whose parameters lie in Z union (Z + 1/2)
falls into one of seven classes: terminating polynomials, or a two-dimensional
module over the rational functions spanned by a fixed pair of basis functions
(1, sqrt(1-z), arcsin- and arctanh-type kernels, or the complete elliptic
integrals).  The reducer walks from a class anchor with parameters in
{1/2, 1, 3/2} to the target in unit steps, carrying the contiguous pair
(F(a,b;c), F(a-1,b;c)) through exact rational-function transfer relations:

  three-term in a:   (c-a) F(a-1) + (2a-c+(b-a)z) F + a(z-1) F(a+1) = 0
  a/b exchange:      (b-a)(1-z) F = (c-a) F(a-1,b) - (c-b) F(a,b-1)
  c step down:        (1-a+(c-b-1)z) F = (c-a) F(a-1) - (c-1)(1-z) F(c-1)
  c step up:          c(1-z) F - c F(a-1) + (c-b) z F(c+1) = 0

plus the a<->b mirrors.  Individual steps can hit a vanishing pivot at
resonant parameter values; the walk is therefore planned by A* search over
(a, b, c, tracked-pair) states, taking any detour with nonzero pivots.

All-integer parameters are anchored at (1, 1, 2), whose pair is
(-log(1-z)/z, 1): purely rational targets cancel the logarithm exactly, and
the genuinely logarithmic ones keep it, flagged via ReducedForm.has_log.
"""

from __future__ import annotations

import enum
import heapq
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegenerateRelationError, DomainError, UnsupportedParametersError
from .ratfunc import (
    ONE_MINUS_Z,
    ONE_POLY,
    RF_ONE,
    RF_ZERO,
    ZERO,
    Poly,
    RationalFunction,
    Z,
    format_poly,
    parse_poly,
)
from .special import HalfIntRational, hyp2f1_series, pochhammer


class HypCase(enum.IntEnum):
    """Classification of 2F1 with integer / half-integer parameters."""

    TERMINATING = 1       # polynomial
    RATIONAL = 2          # all integers: rational (or rational + log(1-z))
    SQRT = 3              # one half-integer upstairs, integer c
    WEIGHTED_ARCSIN = 4   # integers upstairs, half-integer c
    ELLIPTIC = 5          # two half-integers upstairs, integer c
    ARCTANH = 6           # mixed upstairs, half-integer c
    ARCSIN = 7            # all half-integers


class BasisFunction(enum.Enum):
    """Numerically evaluable basis functions on (0, 1)."""

    ONE = "ONE"
    SQRT_ONE_MINUS_Z = "SQRT_ONE_MINUS_Z"
    ARCSIN_WEIGHTED = "ARCSIN_WEIGHTED"      # arcsin(sqrt z)/(sqrt z sqrt(1-z))
    ARCSIN_OVER_SQRT = "ARCSIN_OVER_SQRT"    # arcsin(sqrt z)/sqrt z
    ARCTANH_OVER_SQRT = "ARCTANH_OVER_SQRT"  # arctanh(sqrt z)/sqrt z
    ELLIPTIC_K = "ELLIPTIC_K"                # (2/pi) K(z), parameter m = k^2
    ELLIPTIC_E = "ELLIPTIC_E"                # (2/pi) E(z)
    LOG_ONE_MINUS_Z = "LOG_ONE_MINUS_Z"      # log(1-z)

    def evaluate(self, z: float) -> float:
        if not 0.0 < z < 1.0:
            raise DomainError(f"basis functions are evaluated on (0, 1), got {z}")
        s = math.sqrt(z)
        if self is BasisFunction.ONE:
            return 1.0
        if self is BasisFunction.SQRT_ONE_MINUS_Z:
            return math.sqrt(1.0 - z)
        if self is BasisFunction.ARCSIN_WEIGHTED:
            return math.asin(s) / (s * math.sqrt(1.0 - z))
        if self is BasisFunction.ARCSIN_OVER_SQRT:
            return math.asin(s) / s
        if self is BasisFunction.ARCTANH_OVER_SQRT:
            return math.atanh(s) / s
        if self is BasisFunction.ELLIPTIC_K:
            return _agm_k_e(z)[0]
        if self is BasisFunction.ELLIPTIC_E:
            return _agm_k_e(z)[1]
        return math.log1p(-z)


def _agm_k_e(m: float) -> tuple[float, float]:
    """((2/pi) K(m), (2/pi) E(m)) by the arithmetic-geometric mean."""
    a, b = 1.0, math.sqrt(1.0 - m)
    csum = 0.5 * m
    pow2 = 0.5
    while abs(a - b) > 1e-17 * a:
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        pow2 *= 2.0
        csum += pow2 * c * c
    k = 1.0 / a
    return k, k * (1.0 - csum)


@dataclass(frozen=True)
class HypParams:
    """Parameter triple (a, b; c) of a 2F1, all integer or half-integer."""

    a: HalfIntRational
    b: HalfIntRational
    c: HalfIntRational

    @staticmethod
    def of(a, b, c) -> "HypParams":
        return HypParams(
            HalfIntRational.from_value(a),
            HalfIntRational.from_value(b),
            HalfIntRational.from_value(c),
        )

    def __str__(self):
        return f"[{self.a}, {self.b}; {self.c}]"


@dataclass(frozen=True)
class ReducedForm:
    """Exact expression sum_i P_i(z) * B_i(z) for a reduced 2F1."""

    terms: tuple[tuple[RationalFunction, BasisFunction], ...]

    @property
    def has_log(self) -> bool:
        """True when the all-integer logarithmic degeneracy fired."""
        return any(tag is BasisFunction.LOG_ONE_MINUS_Z for _, tag in self.terms)

    def basis_tags(self) -> tuple[BasisFunction, ...]:
        return tuple(tag for _, tag in self.terms)


_TAG_ORDER = {tag: i for i, tag in enumerate(BasisFunction)}


def _make_form(pairs) -> ReducedForm:
    merged: dict[BasisFunction, RationalFunction] = {}
    for coef, tag in pairs:
        merged[tag] = merged.get(tag, RF_ZERO) + coef
    terms = tuple(
        (coef, tag)
        for tag, coef in sorted(merged.items(), key=lambda kv: _TAG_ORDER[kv[0]])
        if not coef.is_zero()
    )
    if not terms:
        terms = ((RF_ZERO, BasisFunction.ONE),)
    return ReducedForm(terms)


def classify(p: HypParams) -> HypCase:
    """Classify the parameter triple; validates c along the way."""
    a, b, c = p.a, p.b, p.c
    degrees = [-(v.twice_value // 2) for v in (a, b) if v.is_nonpositive_integer()]
    if degrees:
        n_terms = min(degrees)
        if c.is_nonpositive_integer() and -(c.twice_value // 2) < n_terms:
            raise UnsupportedParametersError(
                f"{p}: lower parameter reaches its pole before the series terminates"
            )
        return HypCase.TERMINATING
    if c.is_nonpositive_integer():
        raise UnsupportedParametersError(
            f"{p}: non-positive integer lower parameter with non-terminating series"
        )
    halves = a.is_proper_half() + b.is_proper_half()
    if c.is_integer():
        return (HypCase.RATIONAL, HypCase.SQRT, HypCase.ELLIPTIC)[halves]
    return (HypCase.WEIGHTED_ARCSIN, HypCase.ARCTANH, HypCase.ARCSIN)[halves]


# Anchor triples (alpha, beta, gamma) and the module basis expansion of the
# anchored pair (F(alpha, beta; gamma), F(alpha - 1, beta; gamma)).
_H = Fraction(1, 2)
_INV_1MZ = RationalFunction(ONE_POLY, ONE_MINUS_Z)
_ANCHORS: dict[HypCase, tuple[tuple[Fraction, Fraction, Fraction], list, list]] = {
    HypCase.RATIONAL: (
        (Fraction(1), Fraction(1), Fraction(2)),
        [(RationalFunction(Poly([-1]), Z), BasisFunction.LOG_ONE_MINUS_Z)],
        [(RF_ONE, BasisFunction.ONE)],
    ),
    HypCase.SQRT: (
        (Fraction(1), _H, Fraction(1)),
        [(_INV_1MZ, BasisFunction.SQRT_ONE_MINUS_Z)],
        [(RF_ONE, BasisFunction.ONE)],
    ),
    HypCase.WEIGHTED_ARCSIN: (
        (Fraction(1), Fraction(1), Fraction(3, 2)),
        [(RF_ONE, BasisFunction.ARCSIN_WEIGHTED)],
        [(RF_ONE, BasisFunction.ONE)],
    ),
    HypCase.ELLIPTIC: (
        (_H, _H, Fraction(1)),
        [(RF_ONE, BasisFunction.ELLIPTIC_K)],
        [(RF_ONE, BasisFunction.ELLIPTIC_E)],
    ),
    HypCase.ARCTANH: (
        (Fraction(1), _H, Fraction(3, 2)),
        [(RF_ONE, BasisFunction.ARCTANH_OVER_SQRT)],
        [(RF_ONE, BasisFunction.ONE)],
    ),
    HypCase.ARCSIN: (
        (Fraction(3, 2), _H, Fraction(3, 2)),
        [(_INV_1MZ, BasisFunction.SQRT_ONE_MINUS_Z)],
        [(RF_ONE, BasisFunction.ARCSIN_OVER_SQRT)],
    ),
}

# Moves: ladder steps in the tracked parameter, pair exchange a<->b, and c
# steps.  Each entry checks its pivots at the current parameter values.
_MOVES_A = ("a_up", "a_down", "switch", "c_up", "c_down")
_MOVES_B = ("b_up", "b_down", "switch", "c_up", "c_down")


def _move_allowed(move: str, tau: str, ta: int, tb: int, tc: int) -> bool:
    """Pivot checks on doubled parameter values (exact integers)."""
    if tau == "b":  # mirror: the tracked ladder parameter plays the role of a
        ta, tb = tb, ta
    if move in ("a_up", "b_up"):
        return ta != 0
    if move in ("a_down", "b_down"):
        return tc - ta + 2 != 0
    if move == "switch":
        return tc - tb != 0
    if move == "c_up":
        return tc - tb != 0 and tc - ta + 2 != 0
    # c_down
    return tc != 2 and tc - ta + 2 != 0


class _WalkState:
    """The tracked pair over the anchor basis, with a factored denominator.

    Numerators n1..n4 are polynomials; the shared denominator is
    scale * z^zp * (1-z)^wp.  Every transfer relation only ever introduces
    constant, z, or (1-z) denominator factors, so the factored form is
    closed under all moves and no polynomial gcd is needed until the end.
    """

    __slots__ = ("nums", "scale", "zp", "wp")

    def __init__(self, nums, scale: Fraction, zp: int, wp: int):
        self.nums = nums
        self.scale = scale
        self.zp = zp
        self.wp = wp

    def normalized(self) -> "_WalkState":
        nums, scale, zp, wp = self.nums, self.scale, self.zp, self.wp
        while zp > 0 and all(n.is_zero() or n.coeffs[0] == 0 for n in nums):
            nums = tuple(Poly(n.coeffs[1:]) for n in nums)
            zp -= 1
        while wp > 0 and all(n.evaluate(Fraction(1)) == 0 for n in nums):
            nums = tuple(n.divmod(ONE_MINUS_Z)[0] for n in nums)
            wp -= 1
        num_gcd, den_lcm = 0, 1
        for n in nums:
            for co in n.coeffs:
                num_gcd = math.gcd(num_gcd, abs(co.numerator))
                den_lcm = den_lcm * co.denominator // math.gcd(den_lcm, co.denominator)
        if num_gcd:
            content = Fraction(num_gcd, den_lcm)
            nums = tuple(n * (1 / content) for n in nums)
            scale = scale / content
        return _WalkState(nums, scale, zp, wp)

    def coefficient(self, k: int) -> RationalFunction:
        den = Poly([self.scale])
        for _ in range(self.zp):
            den = den * Z
        for _ in range(self.wp):
            den = den * ONE_MINUS_Z
        return RationalFunction(self.nums[k], den)


def _lin(c0, c1=0) -> Poly:
    return Poly([Fraction(c0), Fraction(c1)])


_NEG_1MZ = Poly([-1, 1])


def _apply_move(move, tau, a, b, c, st: _WalkState):
    """Apply one transfer relation; returns (tau', a', b', c', state')."""
    swapped = tau == "b"
    if swapped:
        a, b = b, a
    n1, n2, n3, n4 = st.nums
    scale, zp, wp = st.scale, st.zp, st.wp

    if move in ("a_up", "b_up"):
        # (c-a) F(a-1) + (2a-c+(b-a)z) F + a(z-1) F(a+1) = 0
        lam = _lin(2 * a - c, b - a)
        a1mz = _lin(a, -a)
        nums = (
            lam * n1 + (c - a) * n3,
            lam * n2 + (c - a) * n4,
            a1mz * n1,
            a1mz * n2,
        )
        scale, wp, a = scale * a, wp + 1, a + 1
    elif move in ("a_down", "b_down"):
        # same relation centered one step lower, solved for F(a-2)
        g1mz = _lin(a - 1, -(a - 1))
        lam = _lin(-(2 * a - 2 - c), -(b - a + 1))
        piv = c - a + 1
        nums = (
            piv * n3,
            piv * n4,
            g1mz * n1 + lam * n3,
            g1mz * n2 + lam * n4,
        )
        scale, a = scale * piv, a - 1
    elif move == "switch":
        # (b-a)(1-z) F = (c-a) F(a-1) - (c-b) F(b-1); parameters stay put
        lam = _lin(-(b - a), b - a)
        piv = c - b
        nums = (
            piv * n1,
            piv * n2,
            lam * n1 + (c - a) * n3,
            lam * n2 + (c - a) * n4,
        )
        scale = scale * piv
        tau = "b" if tau == "a" else "a"
    else:
        # ladder extension F(a-2), shared by both c moves
        g1mz = _lin(a - 1, -(a - 1))
        lam = _lin(-(2 * a - 2 - c), -(b - a + 1))
        e1 = g1mz * n1 + lam * n3
        e2 = g1mz * n2 + lam * n4
        piv = c - a + 1
        if move == "c_up":
            # c(1-z) F - c F(a-1) + (c-b) z F(c+1) = 0
            nums = (
                (c * piv) * (n3 + _NEG_1MZ * n1),
                (c * piv) * (n4 + _NEG_1MZ * n2),
                c * (e1 + piv * (_NEG_1MZ * n3)),
                c * (e2 + piv * (_NEG_1MZ * n4)),
            )
            scale, zp, c = scale * (c - b) * piv, zp + 1, c + 1
        else:
            # (1-a+(c-b-1)z) F = (c-a) F(a-1) - (c-1)(1-z) F(c-1); the
            # second element collapses to (1-z)((a-1) F - (a-c) F(a-1))
            mu = _lin(-(1 - a), -(c - b - 1))
            one_mz = _lin(1, -1)
            nums = (
                mu * n1 + (c - a) * n3,
                mu * n2 + (c - a) * n4,
                one_mz * ((a - 1) * n1 - (a - c) * n3),
                one_mz * ((a - 1) * n2 - (a - c) * n4),
            )
            scale, wp, c = scale * (c - 1), wp + 1, c - 1

    if swapped:
        a, b = b, a
    return tau, a, b, c, _WalkState(nums, scale, zp, wp).normalized()


def _plan_walk(anchor, target, slack: int = 3):
    """A* over (a, b, c, pair-type) states; returns the move list or None.

    Runs on doubled integer parameter values; a unit parameter step is +-2.
    """
    a0, b0, c0 = (int(2 * v) for v in anchor)
    a1, b1, c1 = (int(2 * v) for v in target)
    tslack = 2 * slack
    windows = []
    for lo, hi in ((a0, a1), (b0, b1), (c0, c1)):
        lo, hi = min(lo, hi), max(lo, hi)
        windows.append((lo - tslack, hi + tslack))

    def heuristic(a, b, c):
        return (abs(a - a1) + abs(b - b1) + abs(c - c1)) // 2

    start = (a0, b0, c0, "a")
    best = {start: 0}
    queue = [(heuristic(a0, b0, c0), 0, start, ())]
    while queue:
        _, cost, state, path = heapq.heappop(queue)
        a, b, c, tau = state
        if a == a1 and b == b1 and c == c1:
            return path
        if cost > best.get(state, -1):
            continue
        moves = _MOVES_A if tau == "a" else _MOVES_B
        for move in moves:
            if not _move_allowed(move, tau, a, b, c):
                continue
            na, nb, nc, ntau = a, b, c, tau
            if move in ("a_up", "b_up"):
                if tau == "a":
                    na += 2
                else:
                    nb += 2
            elif move in ("a_down", "b_down"):
                if tau == "a":
                    na -= 2
                else:
                    nb -= 2
            elif move == "switch":
                ntau = "b" if tau == "a" else "a"
            elif move == "c_up":
                nc += 2
            else:
                nc -= 2
            if not (
                windows[0][0] <= na <= windows[0][1]
                and windows[1][0] <= nb <= windows[1][1]
                and windows[2][0] <= nc <= windows[2][1]
            ):
                continue
            nstate = (na, nb, nc, ntau)
            ncost = cost + 1
            if ncost < best.get(nstate, math.inf):
                best[nstate] = ncost
                heapq.heappush(
                    queue,
                    (ncost + heuristic(na, nb, nc), ncost, nstate, path + (move,)),
                )
    return None


def _terminating_form(p: HypParams) -> ReducedForm:
    a, b, c = p.a.as_fraction(), p.b.as_fraction(), p.c.as_fraction()
    degrees = [
        -(v.twice_value // 2) for v in (p.a, p.b) if v.is_nonpositive_integer()
    ]
    n_terms = min(degrees)
    coeffs = []
    for k in range(n_terms + 1):
        coeffs.append(
            pochhammer(a, k)
            * pochhammer(b, k)
            / (pochhammer(c, k) * Fraction(math.factorial(k)))
        )
    return _make_form([(RationalFunction(Poly(coeffs)), BasisFunction.ONE)])


def _walk_reduce(case: HypCase, target) -> tuple | None:
    """Run the pair walk; returns the final X vector (u, v) or None."""
    anchor, _, _ = _ANCHORS[case]
    for slack in (3, 5):
        plan = _plan_walk(anchor, target, slack)
        if plan is not None:
            break
    if plan is None:
        return None
    tau = "a"
    a, b, c = anchor
    st = _WalkState((ONE_POLY, ZERO, ZERO, ONE_POLY), Fraction(1), 0, 0)
    for move in plan:
        tau, a, b, c, st = _apply_move(move, tau, a, b, c, st)
    return st.coefficient(0), st.coefficient(1)


@lru_cache(maxsize=None)
def _reduce_cached(ta: int, tb: int, tc: int) -> ReducedForm:
    p = HypParams(HalfIntRational(ta), HalfIntRational(tb), HalfIntRational(tc))
    case = classify(p)
    if case is HypCase.TERMINATING:
        return _terminating_form(p)
    anchor, x0_terms, y0_terms = _ANCHORS[case]
    a, b, c = p.a.as_fraction(), p.b.as_fraction(), p.c.as_fraction()
    # align parameter types with the anchor slots; 2F1 is symmetric in (a, b)
    assignments = [(a, b)] if (a == b) else [(a, b), (b, a)]
    if (a.denominator == 2) != (anchor[0].denominator == 2) and len(assignments) == 2:
        assignments.reverse()
    last_error = None
    for aa, bb in assignments:
        if (aa.denominator == 2) != (anchor[0].denominator == 2):
            continue
        vec = _walk_reduce(case, (aa, bb, c))
        if vec is not None:
            u, v = vec
            return _make_form(
                [(u * coef, tag) for coef, tag in x0_terms]
                + [(v * coef, tag) for coef, tag in y0_terms]
            )
        last_error = f"no pivot-free contiguous chain found for {p}"
    raise DegenerateRelationError(last_error or f"cannot reduce {p}")


def reduce(p: HypParams) -> ReducedForm:
    """Reduce 2F1(a, b; c; z) to rational-function combinations of the basis."""
    return _reduce_cached(p.a.twice_value, p.b.twice_value, p.c.twice_value)


def _poly_int_horner(p: Poly, num: int, den: int) -> int:
    """Exact den^deg(p) * p(num/den) for integer-coefficient p, as an int."""
    acc = 0
    dpow = 1
    for co in reversed(p.coeffs):
        acc = acc * num + co.numerator * dpow
        dpow *= den
    return acc


def _coefficient_value(coef: RationalFunction, z: float) -> float:
    """Evaluate an exact rational-function coefficient to one float rounding.

    The canonical coefficients can carry enormous integer coefficients whose
    float Horner evaluation cancels badly; instead the numerator and
    denominator are evaluated exactly over the integers at the binary
    rational z and divided once.
    """
    zn, zd = z.as_integer_ratio()
    num = _poly_int_horner(coef.num, zn, zd)
    den = _poly_int_horner(coef.den, zn, zd)
    dn, dd = coef.num.degree(), coef.den.degree()
    if dd >= dn:
        num *= zd ** (dd - dn)
    else:
        den *= zd ** (dn - dd)
    if den == 0:
        raise DomainError(f"rational-function coefficient has a pole at z={z}")
    return num / den


def eval_reduced(form: ReducedForm, z: float) -> float:
    """Evaluate a ReducedForm at z in (0, 1).

    Coefficients are evaluated in exact integer arithmetic (one rounding at
    the end); only the basis-function values and the final sum are floats.
    """
    if not 0.0 < z < 1.0:
        raise DomainError(f"reduced forms are evaluated on (0, 1), got {z}")
    return math.fsum(
        _coefficient_value(coef, z) * tag.evaluate(z) for coef, tag in form.terms
    )


def eval_series_oracle(p: HypParams, z: float) -> float:
    """Direct series evaluation of the same 2F1, for cross-checking."""
    return hyp2f1_series(
        float(p.a), float(p.b), float(p.c), z, tol=1e-13
    )


# -- canonical text form ----------------------------------------------------

def format_reduced(form: ReducedForm) -> str:
    """Serialize to `sum( (num)/(den) * TAG + ... )` with integer polynomials."""
    parts = [
        f"({format_poly(coef.num)})/({format_poly(coef.den)}) * {tag.value}"
        for coef, tag in form.terms
    ]
    return "sum( " + " + ".join(parts) + " )"


_FORM_RE = re.compile(
    r"\(([^()]*)\)\s*/\s*\(([^()]*)\)\s*\*\s*([A-Z_0-9]+)"
)


def parse_reduced(text: str) -> ReducedForm:
    """Parse the canonical text form back into a ReducedForm."""
    text = text.strip()
    if not (text.startswith("sum(") and text.endswith(")")):
        raise DomainError(f"not a reduced-form expression: {text!r}")
    pairs = []
    for num_text, den_text, tag_text in _FORM_RE.findall(text):
        try:
            tag = BasisFunction(tag_text)
        except ValueError as exc:
            raise DomainError(f"unknown basis tag {tag_text!r}") from exc
        pairs.append(
            (RationalFunction(parse_poly(num_text), parse_poly(den_text)), tag)
        )
    if not pairs:
        raise DomainError(f"no terms found in {text!r}")
    return _make_form(pairs)

"""Exact and floating-point special-function primitives.

The geometric quantities here (gamma at half-integer arguments, hypersphere
volumes, generalized binomials, Pochhammer symbols) are all evaluated through
exact rational arithmetic and only converted to float at the very end, so the
one rounding step is the final multiplication by a power of pi.  The direct
hypergeometric series evaluators are the slow-but-trustworthy references that
everything faster is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConvergenceFailureError, DivergenceError, DomainError, PoleError

_SQRT_PI = math.sqrt(math.pi)

# Hard cap for the non-terminating 2F1 series; beyond this we declare failure
# rather than return an uncertified partial sum.
MAX_SERIES_TERMS = 10_000


@dataclass(frozen=True)
class HalfIntRational:
    """An exact element of Z union (Z + 1/2), stored as twice its value.

    Supports the arithmetic the reduction engine needs: addition and
    subtraction of integers, negation, comparison.  Construction from an
    int, a Fraction with denominator 1 or 2, or a string like "-3/2".
    """

    twice_value: int

    @staticmethod
    def from_value(value) -> "HalfIntRational":
        if isinstance(value, HalfIntRational):
            return value
        if isinstance(value, int):
            return HalfIntRational(2 * value)
        if isinstance(value, str):
            frac = Fraction(value.strip())
        elif isinstance(value, Fraction):
            frac = value
        elif isinstance(value, float):
            frac = Fraction(value)
        else:
            raise DomainError(f"cannot interpret {value!r} as a half-integer")
        if frac.denominator not in (1, 2):
            raise DomainError(f"{value!r} is not an integer or half-integer")
        return HalfIntRational(int(frac * 2))

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def __float__(self) -> float:
        return self.twice_value / 2.0

    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def is_proper_half(self) -> bool:
        return self.twice_value % 2 != 0

    def is_nonpositive_integer(self) -> bool:
        return self.is_integer() and self.twice_value <= 0

    def __add__(self, k: int) -> "HalfIntRational":
        return HalfIntRational(self.twice_value + 2 * k)

    def __sub__(self, k: int) -> "HalfIntRational":
        return HalfIntRational(self.twice_value - 2 * k)

    def __neg__(self) -> "HalfIntRational":
        return HalfIntRational(-self.twice_value)

    def __str__(self) -> str:
        if self.is_integer():
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"


@dataclass(frozen=True)
class SphereGeometry:
    """An n-dimensional sphere of radius R (n >= 2, R > 0)."""

    n: int
    R: float = 1.0

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.n}")
        if not self.R > 0:
            raise DomainError(f"radius must be positive, got {self.R}")

    def volume(self) -> float:
        """Total volume S_n * R^n of the sphere."""
        return sphere_volume(self.n) * self.R**self.n

    def normalization(self) -> float:
        """The constant 1 / (S_n R^n): reciprocal of the sphere's volume."""
        return 1.0 / self.volume()


def factorial_fraction(k: int) -> Fraction:
    return Fraction(math.factorial(k))


def gamma_half(x) -> float:
    """Gamma function at an integer or half-integer argument.

    Integers use the factorial; half-integers use the exact closed form
    Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!), extended to negative
    half-integers by the recursion Gamma(x) = Gamma(x + 1) / x.  The result
    is exact up to the single final float rounding.
    """
    x = HalfIntRational.from_value(x)
    if x.is_integer():
        n = x.twice_value // 2
        if n <= 0:
            raise PoleError(f"gamma has a pole at {n}")
        return float(factorial_fraction(n - 1))
    return float(_gamma_half_odd_rational(x.twice_value)) * _SQRT_PI


def _gamma_half_odd_rational(twice_x: int) -> Fraction:
    """Gamma(twice_x / 2) / sqrt(pi) as an exact rational, twice_x odd."""
    if twice_x >= 1:
        k = (twice_x - 1) // 2
        return Fraction(math.factorial(2 * k), 4**k * math.factorial(k))
    # climb up to 1/2, dividing by each intermediate argument
    result = Fraction(1)
    t = twice_x
    while t < 1:
        result /= Fraction(t, 2)
        t += 2
    return result


def sphere_volume_rational(n: int) -> tuple[Fraction, int]:
    """S_n as (rational, k) with S_n = rational * pi^k, for the unit n-sphere."""
    if n < 1:
        raise DomainError(f"sphere dimension must be >= 1, got {n}")
    if n % 2 == 1:
        # (n+1)/2 is an integer k: S_n = 2 pi^k / (k-1)!
        k = (n + 1) // 2
        return 2 / factorial_fraction(k - 1), k
    # (n+1)/2 = k + 1/2: S_n = 2 pi^k 4^k k! / (2k)!
    k = n // 2
    return Fraction(2 * 4**k * math.factorial(k), math.factorial(2 * k)), k


def sphere_volume(n: int) -> float:
    """Volume 2 pi^((n+1)/2) / Gamma((n+1)/2) of the unit n-sphere."""
    rat, k = sphere_volume_rational(n)
    return float(rat) * math.pi**k


def gen_binomial(x, j: int) -> Fraction:
    """Generalized binomial coefficient x(x-1)...(x-j+1) / j!, exact."""
    if j < 0:
        raise DomainError(f"lower index must be nonnegative, got {j}")
    x = HalfIntRational.from_value(x).as_fraction()
    num = Fraction(1)
    for i in range(j):
        num *= x - i
    return num / factorial_fraction(j)


def pochhammer(x, k: int) -> Fraction:
    """Rising factorial (x)_k = x (x+1) ... (x+k-1), exact for rational x."""
    if k < 0:
        raise DomainError(f"order must be nonnegative, got {k}")
    x = Fraction(x)
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


def _as_nonpositive_int(x: float) -> int | None:
    """Return x as an int if it is a non-positive integer, else None."""
    if x <= 0 and float(x) == int(x):
        return int(x)
    return None


def hyp2f1_series(a: float, b: float, c: float, z: float, tol: float = 1e-12) -> float:
    """Gauss hypergeometric 2F1(a, b; c; z) by direct power series.

    Terminating series (a or b a non-positive integer) are summed exactly to
    their last term for any z.  Otherwise requires |z| < 1 and sums until the
    current term is below tol relative to the partial sum while the terms are
    decreasing, capped at MAX_SERIES_TERMS.
    """
    na = _as_nonpositive_int(a)
    nb = _as_nonpositive_int(b)
    n_terms = None
    if na is not None or nb is not None:
        n_terms = min(-v for v in (na, nb) if v is not None)
        nc = _as_nonpositive_int(c)
        if nc is not None and -nc < n_terms:
            raise PoleError(
                f"2F1 parameter c={c} hits a pole before the series terminates"
            )
    else:
        nc = _as_nonpositive_int(c)
        if nc is not None:
            raise PoleError(f"2F1 undefined for non-terminating series with c={c}")
        if abs(z) >= 1.0:
            raise DivergenceError(f"2F1 series diverges for |z| >= 1 (z={z})")

    if z == 0.0:
        return 1.0

    term = 1.0
    total = 1.0
    if n_terms is not None:
        for k in range(n_terms):
            term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
            total += term
        return total

    prev_abs = math.inf
    for k in range(MAX_SERIES_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        t = abs(term)
        if t <= tol * abs(total) and t <= prev_abs:
            return total
        prev_abs = t
    raise ConvergenceFailureError(
        f"2F1({a},{b};{c};{z}) did not converge within {MAX_SERIES_TERMS} terms"
    )


def hyp3f2_terminating(
    a1: float, a2: float, a3: float, b1: float, b2: float, z: float
) -> float:
    """Terminating 3F2(a1, a2, a3; b1, b2; z), summed exactly to the end.

    At least one upper parameter must be a non-positive integer.
    """
    uppers = [_as_nonpositive_int(v) for v in (a1, a2, a3)]
    terminating = [-v for v in uppers if v is not None]
    if not terminating:
        raise DomainError(
            "3F2 requires a non-positive integer upper parameter to terminate"
        )
    n_terms = min(terminating)
    term = 1.0
    total = 1.0
    for k in range(n_terms):
        term *= (
            (a1 + k)
            * (a2 + k)
            * (a3 + k)
            / ((b1 + k) * (b2 + k) * (k + 1))
            * z
        )
        total += term
    return total

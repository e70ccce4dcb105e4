"""Applications of the sphere Green's function.

Dipole potential, the azimuthal Fourier expansion of the two-sphere kernel,
the projective-space quotient, and the antipodal-difference identity linking
the generalized Green's function to the odd (antipodally antisymmetric)
solution built from int_theta^(pi/2) csc^(n-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPointsError, DomainError
from .green import green, green_derivative
from .quadrature import QuadratureConfig, adaptive_quad
from .special import SphereGeometry, sphere_volume

# Truncate the azimuthal series once the certified geometric tail bound
# q^(K+1) / ((K+1)(1-q)) drops below this.
FOURIER_TAIL_TARGET = 1e-14


@dataclass(frozen=True)
class DipoleQuery:
    """Field point and moment for a dipole sitting at the coordinate pole.

    theta is the colatitude of the field point relative to the dipole site,
    phi the azimuth of the field point within the plane containing the
    moment, and moment the magnitude |p| >= 0.  Rotational symmetry reduces
    the general ambient configuration to this two-angle form.
    """

    geom: SphereGeometry
    theta: float
    phi: float
    moment: float = 1.0

    def __post_init__(self):
        if self.moment < 0:
            raise DomainError(f"dipole moment must be nonnegative, got {self.moment}")
        if not 0.0 < self.theta < math.pi:
            raise DomainError(f"colatitude must lie in (0, pi), got {self.theta}")


def dipole_potential(q: DipoleQuery) -> float:
    """Dipole potential H = (G_n'(theta) / R) |p| cos(phi).

    G' < 0 on (0, pi), so the potential is negative in the half-space the
    moment points into (|phi| < pi/2) and positive on the far side.
    """
    return green_derivative(q.geom, q.theta) / q.geom.R * q.moment * math.cos(q.phi)


def dipole_flat_limit_ratio(
    n: int, s: float, phi: float, moment: float, R: float
) -> float:
    """Ratio of the sphere dipole at arc distance s to its flat-space limit.

    The flat reference is the Euclidean dipole potential s^(1-n)|p|cos(phi) /
    S_(n-1), oriented consistently with the sign convention of
    dipole_potential (which is negative along the moment direction), so the
    ratio tends to +1 as R -> infinity.  The shared cos(phi) and |p| factors
    cancel; when either vanishes exactly the ratio is 1 by convention.
    """
    if s <= 0:
        raise DomainError(f"arc distance must be positive, got {s}")
    geom = SphereGeometry(n, R)
    theta = s / R
    if not theta < math.pi:
        raise DomainError(f"arc distance {s} exceeds half the great circle for R={R}")
    if moment == 0.0 or math.cos(phi) == 0.0:
        return 1.0
    sphere = dipole_potential(DipoleQuery(geom, theta, phi, moment))
    flat = -(s ** (1 - n)) * moment * math.cos(phi) / sphere_volume(n - 1)
    return sphere / flat


def log_cos_series(A: float, B: float, t: float, K: int) -> float:
    """K-term Fourier expansion of -log(A + B cos t) for A > B > 0.

    Returns log(2(A - sqrt(A^2 - B^2)) / B^2)
    + 2 sum_(k=1)^(K) (cos kt / k) rho^k with rho = (sqrt(A^2-B^2) - A) / B.
    """
    if not A > B > 0:
        raise DomainError(f"need A > B > 0, got A={A}, B={B}")
    if K < 1:
        raise DomainError(f"need at least one term, got K={K}")
    root = math.sqrt(A * A - B * B)
    rho = (root - A) / B
    total = math.log(2.0 * (A - root) / (B * B))
    power = 1.0
    for k in range(1, K + 1):
        power *= rho
        total += 2.0 * math.cos(k * t) * power / k
    return total


@dataclass(frozen=True)
class FourierInputs:
    """Point pair for the azimuthal expansion of the two-sphere kernel."""

    theta: float
    theta_prime: float
    delta_phi: float
    max_terms: int = 200_000

    def __post_init__(self):
        if not (0.0 < self.theta < math.pi and 0.0 < self.theta_prime < math.pi):
            raise DomainError("both colatitudes must lie in (0, pi)")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")

    def ratio(self) -> float:
        """q = cot(theta_>/2) / cot(theta_</2) in [0, 1]."""
        hi = max(self.theta, self.theta_prime)
        lo = min(self.theta, self.theta_prime)
        return math.tan(0.5 * lo) / math.tan(0.5 * hi)


@dataclass(frozen=True)
class FourierResult:
    """Partial sum of the azimuthal series with its truncation certificate."""

    value: float
    terms_used: int
    tail_bound: float | None  # None when q = 1 (no geometric certificate)


def fourier_g2_detailed(inp: FourierInputs) -> FourierResult:
    """2 pi G_2(x, x') as log(csc(th_>/2) sec(th_</2)) + sum cos(k dphi)/k q^k.

    Truncates once the geometric tail bound q^(K+1)/((K+1)(1-q)) falls below
    FOURIER_TAIL_TARGET, or at max_terms.  Coincident points (theta =
    theta' and dphi = 0 mod 2 pi) are a genuine logarithmic singularity and
    raise CoincidentPointsError.
    """
    hi = max(inp.theta, inp.theta_prime)
    lo = min(inp.theta, inp.theta_prime)
    q = inp.ratio()
    on_diagonal = inp.theta == inp.theta_prime
    if on_diagonal and math.cos(inp.delta_phi) == 1.0:
        raise CoincidentPointsError(
            "the azimuthal series diverges logarithmically at coincident points"
        )
    total = math.log(1.0 / (math.sin(0.5 * hi) * math.cos(0.5 * lo)))
    power = 1.0
    k = 0
    tail = None
    while k < inp.max_terms:
        k += 1
        power *= q
        total += math.cos(k * inp.delta_phi) * power / k
        if q < 1.0:
            tail = power * q / ((k + 1) * (1.0 - q))
            if tail < FOURIER_TAIL_TARGET:
                break
    return FourierResult(total, k, tail)


def fourier_g2(inp: FourierInputs) -> float:
    """Value-only wrapper around fourier_g2_detailed."""
    return fourier_g2_detailed(inp).value


def spherical_distance(theta: float, theta_prime: float, delta_phi: float) -> float:
    """Great-circle distance from the spherical law of cosines."""
    c = math.cos(theta) * math.cos(theta_prime) + math.sin(theta) * math.sin(
        theta_prime
    ) * math.cos(delta_phi)
    return math.acos(max(-1.0, min(1.0, c)))


def green_rp(geom: SphereGeometry, theta) -> float:
    """Green's function for real projective space: (G(theta) + G(pi - theta)) / 2.

    Symmetric under theta <-> pi - theta by construction, smooth at theta =
    pi, and carrying half the flat singular coefficient of G at theta -> 0
    (the antipodal image contributes G(pi) = 0 there, not a second pole).
    """
    theta = float(theta.theta) if hasattr(theta, "theta") else float(theta)
    if not 0.0 < theta < math.pi:
        raise DomainError(f"angle must lie in (0, pi), got {theta}")
    return 0.5 * (green(geom, theta).value + green(geom, math.pi - theta).value)


def csc_power_integral(
    n: int, theta, cfg: QuadratureConfig | None = None
) -> float:
    """Signed integral of csc^(n-1) from theta to pi/2, by quadrature.

    Negative for theta > pi/2.  Kept quadrature-based on purpose: the
    antipodal-difference identity test must not share an evaluation path
    with the closed forms.
    """
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    theta = float(theta.theta) if hasattr(theta, "theta") else float(theta)
    if not 0.0 < theta < math.pi:
        raise DomainError(f"angle must lie in (0, pi), got {theta}")
    cfg = cfg or QuadratureConfig()
    if theta == 0.5 * math.pi:
        return 0.0
    val, _ = adaptive_quad(
        lambda x: np.sin(x) ** (1 - n), theta, 0.5 * math.pi, cfg
    )
    return val


def antipodal_difference(geom: SphereGeometry, theta) -> float:
    """G_n(theta) - G_n(pi - theta), the odd part of the kernel (doubled).

    Solves the two-point-source problem with charges at both poles and
    equals Gamma(n/2) / (2 pi^(n/2) R^(n-2)) times csc_power_integral.
    """
    theta = float(theta.theta) if hasattr(theta, "theta") else float(theta)
    if not 0.0 < theta < math.pi:
        raise DomainError(f"angle must lie in (0, pi), got {theta}")
    return green(geom, theta).value - green(geom, math.pi - theta).value

"""Adaptive Gauss-Kronrod quadrature and the brute-force Green's function oracle.

Each panel is integrated with the 15-point Kronrod rule; the embedded 7-point
Gauss rule supplies the error estimate.  Panels live in a max-heap keyed by
estimated error and the worst one is bisected until the summed error estimate
meets the tolerance.  quad_green evaluates the Green's function as the raw
nested double integral, re-running the inner quadrature at every outer node so
that it shares no code path with the closed forms it is used to check.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ToleranceNotMetError
from .special import sphere_volume

# 15-point Kronrod nodes on [-1, 1] (positive half; rule is symmetric) and
# weights, with the embedded 7-point Gauss weights on the odd-indexed nodes.
# Standard QUADPACK values; validated against exact moments in the test suite.
_XGK = np.array([
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
])
_WGK = np.array([
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
])
_WG = np.array([
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
])

# Full 15-node arrays, ascending order.
KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_WEIGHTS_FULL = np.zeros(15)
_GAUSS_WEIGHTS_FULL[1:14:2] = np.concatenate([_WG[:-1], _WG[::-1]])


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and refinement budget for the adaptive integrator."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_depth: int = 50

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.abs_tol < 0:
            raise DomainError(f"abs_tol must be nonnegative, got {self.abs_tol}")
        if self.max_depth < 10:
            raise DomainError(f"max_depth must be at least 10, got {self.max_depth}")


def _panel(f, a: float, b: float) -> tuple[float, float]:
    """Kronrod-15 value and |K15 - G7| error estimate on [a, b]."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = np.asarray(f(mid + half * KRONROD_NODES), dtype=float)
    kron = half * float(fx @ KRONROD_WEIGHTS)
    gauss = half * float(fx @ _GAUSS_WEIGHTS_FULL)
    return kron, abs(kron - gauss)


def adaptive_quad(f, a: float, b: float, cfg: QuadratureConfig) -> tuple[float, float]:
    """Integrate vectorized f over [a, b]; returns (value, error_estimate).

    Raises ToleranceNotMetError if a panel would need to be split beyond
    cfg.max_depth bisections.
    """
    if a == b:
        return 0.0, 0.0
    sign = 1.0
    if b < a:
        a, b = b, a
        sign = -1.0

    val, err = _panel(f, a, b)
    heap = [(-err, a, b, val, err, 0)]
    total_val, total_err = val, err
    while total_err > max(cfg.abs_tol, cfg.rel_tol * abs(total_val)):
        _, pa, pb, pval, perr, depth = heapq.heappop(heap)
        if depth >= cfg.max_depth:
            raise ToleranceNotMetError(
                f"quadrature tolerance not met on [{a}, {b}]: "
                f"max_depth={cfg.max_depth} exhausted (err~{total_err:.3e})"
            )
        pm = 0.5 * (pa + pb)
        lval, lerr = _panel(f, pa, pm)
        rval, rerr = _panel(f, pm, pb)
        total_val += lval + rval - pval
        total_err += lerr + rerr - perr
        heapq.heappush(heap, (-lerr, pa, pm, lval, lerr, depth + 1))
        heapq.heappush(heap, (-rerr, pm, pb, rval, rerr, depth + 1))
    return sign * total_val, total_err


def quad_sin_power(m: int, phi: float, cfg: QuadratureConfig | None = None) -> float:
    """Integral of sin^(m-1) from phi to pi by adaptive quadrature."""
    if m < 1:
        raise DomainError(f"power index must be >= 1, got {m}")
    if not 0.0 < phi <= math.pi:
        raise DomainError(f"angle must lie in (0, pi], got {phi}")
    cfg = cfg or QuadratureConfig()
    if phi == math.pi:
        return 0.0
    val, _ = adaptive_quad(lambda x: np.sin(x) ** (m - 1), phi, math.pi, cfg)
    return val


def quad_green_with_error(
    geom, theta: float, cfg: QuadratureConfig | None = None
) -> tuple[float, float]:
    """Green's function by nested adaptive quadrature, with error estimate.

    Evaluates (1 / (S_n R^(n-2))) * int_theta^pi csc^(n-1)(phi)
    int_phi^pi sin^(n-1)(psi) dpsi dphi.  The inner integral is recomputed
    from scratch at each outer node.  theta below 1e-4 is rejected: the
    csc^(n-1) blow-up makes direct quadrature pointless there.
    """
    cfg = cfg or QuadratureConfig()
    if not 0.0 < theta <= math.pi:
        raise DomainError(f"angle must lie in (0, pi], got {theta}")
    if theta < 1e-4:
        raise DomainError(
            f"quad_green supports theta >= 1e-4 only (got {theta}); "
            "use the closed forms or asymptotics below that"
        )
    n = geom.n
    if theta == math.pi:
        return 0.0, 0.0

    inner_cfg = QuadratureConfig(
        rel_tol=cfg.rel_tol * 0.1,
        abs_tol=cfg.abs_tol * 0.1,
        max_depth=cfg.max_depth,
    )

    def outer(phis):
        phis = np.atleast_1d(phis)
        out = np.empty_like(phis)
        for i, phi in enumerate(phis):
            inner = quad_sin_power(n, float(phi), inner_cfg)
            out[i] = inner / math.sin(phi) ** (n - 1)
        return out

    val, err = adaptive_quad(outer, theta, math.pi, cfg)
    scale = 1.0 / (sphere_volume(n) * geom.R ** (n - 2))
    return scale * val, scale * err


def quad_green(geom, theta: float, cfg: QuadratureConfig | None = None) -> float:
    """Green's function value by nested adaptive quadrature."""
    return quad_green_with_error(geom, theta, cfg)[0]

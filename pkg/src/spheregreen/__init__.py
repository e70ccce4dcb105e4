"""Green's functions of the Laplacian on n-dimensional spheres.

Closed forms for every integer dimension n >= 2, an independent adaptive
quadrature oracle, the classical applications (dipole potential, azimuthal
Fourier expansion on S^2, projective-space quotient, antipodal difference),
and an exact contiguous-relation reduction engine for 2F1 functions with
integer and half-integer parameters.
"""

from .errors import (
    CoincidentPointsError,
    ConvergenceFailureError,
    DegenerateRelationError,
    DivergenceError,
    DomainError,
    PoleError,
    SphereGreenError,
    ToleranceNotMetError,
    UnsupportedParametersError,
)
from .green import (
    EvaluationMethod,
    GreenEvaluation,
    PolarAngle,
    green,
    green_derivative,
    green_even,
    green_integral_recurrence,
    green_odd,
    green_via_recurrence,
    pde_residual,
    sin_power_integral,
)
from .quadrature import QuadratureConfig, adaptive_quad, quad_green, quad_sin_power
from .special import (
    HalfIntRational,
    SphereGeometry,
    gamma_half,
    gen_binomial,
    hyp2f1_series,
    hyp3f2_terminating,
    pochhammer,
    sphere_volume,
)

__version__ = "0.1.0"

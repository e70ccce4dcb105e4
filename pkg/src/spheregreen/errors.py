"""Exception hierarchy shared across the package.

Everything derives from SphereGreenError so callers (notably the CLI) can
distinguish "you gave me bad inputs / the math has a pole here" from genuine
bugs.  ToleranceNotMetError is the one runtime failure an adaptive routine may
raise after exhausting its refinement budget.
"""


class SphereGreenError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SphereGreenError, ValueError):
    """An argument lies outside the domain an operation supports."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole (e.g. gamma at 0, -1, -2, ...)."""


class DivergenceError(DomainError):
    """A series was requested outside its region of convergence."""


class ConvergenceFailureError(SphereGreenError, RuntimeError):
    """A series failed to meet its tolerance within the iteration cap."""


class ToleranceNotMetError(SphereGreenError, RuntimeError):
    """Adaptive quadrature exhausted max_depth before reaching tolerance."""


class CoincidentPointsError(DomainError):
    """The two evaluation points coincide, where the kernel is log-divergent."""


class UnsupportedParametersError(DomainError):
    """Hypergeometric parameters outside the supported classification."""


class DegenerateRelationError(SphereGreenError, RuntimeError):
    """No contiguous-relation chain with nonzero pivots could be found."""

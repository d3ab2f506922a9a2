"""Typed errors with machine-parseable reason codes."""


class LambfluxError(Exception):
    """Base class; ``code`` is a short kebab-case reason string."""

    code = "error"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class ParameterError(LambfluxError, ValueError):
    """A physical-domain invariant was violated by an input."""

    code = "invalid-parameter"


class PoleCollisionError(LambfluxError, ValueError):
    """Pole of the integrand too close to a cutoff or domain edge."""

    code = "pole-collision"


class QuadratureError(LambfluxError, RuntimeError):
    """Adaptive quadrature hit its subdivision limit before tolerance."""

    code = "quadrature-no-convergence"


class SeriesError(LambfluxError, RuntimeError):
    """Series summation failed to reach the requested tolerance."""

    code = "series-no-convergence"


class DegenerateSteadyStateError(LambfluxError, RuntimeError):
    """Liouvillian kernel dimension is not one."""

    code = "degenerate-kernel"


class RouteMismatchError(LambfluxError, RuntimeError):
    """Analytic and quadrature routes disagree beyond tolerance."""

    code = "route-mismatch"

"""Exception hierarchy shared by every module of the package."""


class PlasmodeError(Exception):
    """Base class for all package errors."""


class ParameterError(PlasmodeError, ValueError):
    """A physical parameter lies outside its admissible domain."""

    def __init__(self, field, value, reason):
        self.field = field
        self.value = value
        super().__init__(f"{field}={value!r}: {reason}")


class DomainError(PlasmodeError, ValueError):
    """A special function was evaluated at a singular or excluded point."""


class NumericalError(PlasmodeError, ArithmeticError):
    """A numerical procedure failed; ``payload`` carries diagnostics."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = dict(payload or {})


class QuadratureError(NumericalError):
    """Adaptive quadrature exhausted its subdivision budget.

    The partial :class:`~plasmode.quadrature.QuadratureResult` is kept in
    ``result`` so callers can decide whether it is good enough.
    """

    def __init__(self, message, result):
        super().__init__(message, {"value": result.value, "error": result.error_estimate})
        self.result = result


class SeriesError(NumericalError):
    """Residue series did not converge or hit a forbidden pole location."""


class NearCurveError(NumericalError):
    """Parameters sit on or too close to the boundary curve L."""


class DegenerateError(NumericalError):
    """A denominator of the coefficient formulas vanished."""

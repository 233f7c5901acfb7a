"""Exception hierarchy shared by every specpoly package."""


class SpecpolyError(Exception):
    """Base class for all specpoly failures."""


class ParameterError(SpecpolyError, ValueError):
    """Invalid family, index range, count or configuration value."""


class DomainError(SpecpolyError, ValueError):
    """Argument outside the domain a function is defined on."""


class EvaluationError(SpecpolyError):
    """A numeric evaluation did not reach its target accuracy."""

    def __init__(self, message: str, partial: float | None = None, bound: float | None = None):
        super().__init__(message)
        self.partial = partial
        self.bound = bound


class AccuracyError(EvaluationError):
    """Adaptive quadrature ran out of subdivisions before meeting its tolerance."""

    def __init__(self, message: str, value: float, error: float):
        super().__init__(message, partial=value, bound=error)
        self.value = value
        self.error = error


class BracketError(SpecpolyError):
    """No sign change in a bracket, or two roots refined to the same place."""


class StepError(SpecpolyError):
    """The shooting integrator could not take a finite step."""

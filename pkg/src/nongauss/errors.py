"""Exception types shared across the library."""


class DomainError(ValueError):
    """An argument lies outside the validated domain of an operation."""


class ConvergenceError(RuntimeError):
    """A series hit its term cap before the stopping rule fired."""


class NormalizationError(ValueError):
    """State data violates its normalization contract."""


class UnsupportedError(ValueError):
    """Requested measure/state combination is outside the supported scope."""


class DegenerateError(ArithmeticError):
    """A quantity needed in a denominator underflowed to zero."""

"""Exception hierarchy shared across the package."""


class SquashFittsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SquashFittsError, ValueError):
    """A value is outside the mathematical domain of an operation.

    Carries the name of the offending field/argument when known.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class UsageError(SquashFittsError, ValueError):
    """The caller combined inputs in a way the API does not support
    (empty data, mismatched trial types, unknown names, bad options)."""


class DegenerateDesignError(SquashFittsError, ValueError):
    """A regression design has no unique least-squares solution
    (collapsed predictor, collinear columns). Deliberately an error
    rather than a silent pseudo-inverse so data problems surface."""


class UndefinedCorrelationError(DegenerateDesignError):
    """Correlation requested for data where it is undefined
    (constant x or constant y)."""

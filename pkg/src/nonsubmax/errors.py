"""Exception hierarchy shared across the package."""


class NonsubmaxError(Exception):
    """Base class for all package errors."""


class ArgumentError(NonsubmaxError, ValueError):
    """An argument is outside its documented domain."""


class ScaleError(NonsubmaxError):
    """An exhaustive computation would exceed its configured cap."""


class ConditioningError(NonsubmaxError, ArithmeticError):
    """A matrix was singular or indefinite to working tolerance."""


class EvaluationError(NonsubmaxError):
    """A set-function evaluation failed."""


class UnboundedError(NonsubmaxError):
    """A linear program has no finite optimum."""


class DegenerateInstanceError(NonsubmaxError):
    """The instance makes the requested quantity meaningless (e.g. zero optimum)."""

"""Exception hierarchy shared by all modules."""


class QuarticError(Exception):
    """Base class for every error raised by this package."""


class DomainError(QuarticError, ValueError):
    """An argument lies outside the domain of the operation."""


class NumericError(QuarticError, ArithmeticError):
    """A numerical procedure failed to deliver a trustworthy result."""


class AccuracyError(NumericError):
    """Requested accuracy was not reached; ``estimate`` holds the best value found."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class SolverError(NumericError):
    """Root or fixed-point iteration did not converge.

    ``trace`` keeps the last iterates for diagnosis.
    """

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = list(trace)


class DegeneracyError(NumericError):
    """A logarithm or ratio became singular (non-positive argument, pole)."""


class ValidityError(NumericError):
    """The request falls outside the regime where a reference result is trusted."""

    def __init__(self, message, minimal_beta=None):
        super().__init__(message)
        self.minimal_beta = minimal_beta

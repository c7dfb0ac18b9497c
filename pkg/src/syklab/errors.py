"""Exception hierarchy shared by the library and the command-line driver."""


class SYKError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for this error."""

    exit_code = 1


class InvalidArgument(SYKError, ValueError):
    exit_code = 2


class ResourceLimit(SYKError, RuntimeError):
    exit_code = 3


class NumericError(SYKError, ArithmeticError):
    """Raised when an iterative or quadrature routine fails to converge."""

    exit_code = 4

    def __init__(self, message, estimate=None, residual=None):
        super().__init__(message)
        self.estimate = estimate
        self.residual = residual


class ParseError(SYKError, ValueError):
    exit_code = 5

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvariantViolation(SYKError, AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""

    exit_code = 6


class BoundViolation(SYKError):
    """A sampled statistic contradicts a proven bound beyond its error bars."""

    exit_code = 7

"""Exception hierarchy shared by every module of the package."""


class DirichletLabError(Exception):
    """Base class for all errors raised by dirichlet_lab."""


class InvalidArgument(DirichletLabError, ValueError):
    pass


class TableOverflowError(DirichletLabError, OverflowError):
    """An exact integer result does not fit the target integer width."""

    def __init__(self, message, n=None):
        super().__init__(message)
        self.n = n


class NumericError(DirichletLabError, ArithmeticError):
    """Non-finite values or a numerical procedure that failed to converge."""


class DomainError(DirichletLabError, ValueError):
    pass


class PreconditionViolated(DirichletLabError):
    """A hypothesis of an asymptotic law failed its numerical operationalization."""

    def __init__(self, message, hypothesis=None):
        super().__init__(message)
        self.hypothesis = hypothesis

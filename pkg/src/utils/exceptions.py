"""Exception hierarchy shared by every module; the CLI maps each class to an exit code."""


class PoleError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class InvalidInputError(PoleError, ValueError):
    """Malformed input data, parameters, or configuration."""

    exit_code = 2


class InfeasibleOperationError(PoleError):
    """A well-formed request that cannot be carried out on this graph."""

    exit_code = 3


class NumericalError(PoleError, ArithmeticError):
    """A numerical routine failed to converge or produced non-finite values."""

    exit_code = 4

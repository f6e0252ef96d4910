"""
Exception hierarchy for the DVNUG frame toolkit.
"""


class DVNUGError(Exception):
    """Base class for every error raised by the toolkit."""


class ParameterError(DVNUGError, ValueError):
    """Invalid lattice or system parameter."""


class NonPositive(ParameterError):
    pass


class NonOdd(ParameterError):
    pass


class OutOfRange(ParameterError):
    pass


class NotCoprime(ParameterError):
    pass


class DimensionMismatch(DVNUGError, ValueError):
    """Operands live on different lattices or have different vector lengths."""


class FrequencyNotInLambda(DVNUGError, ValueError):
    """A Laurent polynomial is not the transform of any Λ-supported sequence."""


class InvalidBounds(DVNUGError, ValueError):
    pass


class PreconditionError(DVNUGError):
    pass


class NotAFrameSuspected(DVNUGError, ArithmeticError):
    """Conjugate gradient on the frame operator stagnated or lost positivity."""


class ConfigError(DVNUGError, ValueError):
    """
    A system, signal or coefficient file failed validation.

    The message starts with the JSON path of the offending field.
    """

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")

"""Exception types shared across the engine."""


class EIdealsError(Exception):
    """Base class for all engine errors."""


class UsageError(EIdealsError, ValueError):
    """Operands or arguments that cannot be combined (e.g. mismatched variables)."""


class ParseError(EIdealsError, ValueError):
    """Malformed expression text.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message, position=None, text=None):
        self.message = message
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class CoefficientNotRational(EIdealsError, ValueError):
    """A coefficient involves base symbols b_j where only rationals are allowed."""


class ExponentOutsideLattice(EIdealsError, ValueError):
    """An exponent is not an integer combination of the lattice basis."""


class BudgetExceeded(EIdealsError, RuntimeError):
    """A configured resource budget ran out before a verdict was reached."""


class CertificateFormatError(EIdealsError, ValueError):
    """A serialized certificate or report could not be decoded."""

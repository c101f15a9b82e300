"""Exception hierarchy shared by the package."""


class MorseError(Exception):
    """Base class for every error raised by morseasym."""


class PolySyntaxError(MorseError, ValueError):
    """Malformed polynomial text. ``position`` is a 0-based offset into the input."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class LatticeRankError(MorseError, ValueError):
    """Operands live in group rings of different rank."""


class NotDivisible(MorseError, ArithmeticError):
    pass


class ZeroClass(MorseError, ValueError):
    """A cohomology class was required to be non-zero."""


class NonUnimodular(MorseError, ValueError):
    pass


class ComplexError(MorseError, ValueError):
    """Invalid chain complex, chain map or model data."""


class OracleRefused(MorseError):
    """The integer oracle does not apply to this input (e.g. kernel rank >= 1)."""

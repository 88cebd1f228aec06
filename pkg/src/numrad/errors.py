"""Exception types raised across the package."""


class NumradError(Exception):
    """Base class for all errors raised by :mod:`numrad`."""


class ShapeError(NumradError, ValueError):
    """A matrix is not square, or two elements have different block shapes."""


class DimensionMismatch(NumradError, ValueError):
    """A state vector does not match the block it is evaluated on."""


class NotHermitian(NumradError, ValueError):
    """The eigensolver was handed a matrix that is not self-adjoint."""


class NoConvergence(NumradError, ArithmeticError):
    """An iteration hit its cap before meeting its stopping rule."""


class InapplicableInput(NumradError):
    """The hypothesis of a corollary or theorem does not hold for the input."""


class NotCentral(NumradError, ValueError):
    """Element does not commute with the matrix units of every block."""


class NotUnitary(NumradError, ValueError):
    """Element fails ``c* c = e``."""


class ParseError(NumradError, ValueError):
    """Malformed element document."""


class UnknownTag(NumradError, KeyError):
    """A check tag outside the supported set."""


class UnsupportedFamilyDim(NumradError, ValueError):
    """An ensemble family cannot be generated at the requested dimension."""

"""Exception types shared across the package."""


class QuiverFourierError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(QuiverFourierError):
    """Input has the wrong shape (ragged sizes, wrong length, size 0)."""


class NegativeEntry(QuiverFourierError):
    """An entry that must be a nonnegative integer is negative."""


class LadderViolation(QuiverFourierError):
    """Entries fail the weakly-decreasing-along-ladders constraint."""


class DimMismatch(QuiverFourierError):
    """Two arrays that must share a dimension vector do not."""


class SizeMismatch(QuiverFourierError):
    """Two arrays that must have the same size do not."""


class SizeError(QuiverFourierError):
    """The array is too small for the requested operation."""


class NotDecreasing(QuiverFourierError):
    """A ladder to adjoin must be weakly decreasing."""


class UndefinedMove(QuiverFourierError):
    """A single-entry raise/lower is not defined at this position."""


class EmptyTopChute(QuiverFourierError):
    """The top chute has no positive entry at or after the given column."""


class ParseError(QuiverFourierError):
    """Malformed textual input."""


class InternalError(QuiverFourierError):
    """An internal consistency check failed; indicates a bug."""

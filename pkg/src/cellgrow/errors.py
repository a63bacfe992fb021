"""Exception types shared across the package."""


class CellGrowError(Exception):
    """Base class for all errors raised by cellgrow."""


class MalformedElementError(CellGrowError, ValueError):
    pass


class GroupOverflowError(CellGrowError, OverflowError):
    """A coordinate left the representable range (no silent wraparound)."""


class StabiliserTooLargeError(CellGrowError):
    """Subgroup closure exceeded its cap: infinite or too large to enumerate."""


class BallTooLargeError(CellGrowError):
    pass


class EmptySetError(CellGrowError, ValueError):
    pass


class TableTooShortError(CellGrowError, ValueError):
    pass


class ConfigError(CellGrowError, ValueError):
    pass

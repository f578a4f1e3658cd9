"""Exception types shared across the package."""


class ChainLcpError(Exception):
    """Base class for all library errors."""


class InvalidRing(ChainLcpError, ValueError):
    pass


class RingMismatch(ChainLcpError, ValueError):
    pass


class NonUnit(ChainLcpError, ArithmeticError):
    pass


class InvalidTable(ChainLcpError, ValueError):
    pass


class DimensionMismatch(ChainLcpError, ValueError):
    pass


class ZeroCode(ChainLcpError, ValueError):
    """Minimum distance requested for the zero code."""


class NotFree(ChainLcpError, ValueError):
    pass


class BudgetExceeded(ChainLcpError):
    pass


class CapacityError(BudgetExceeded):
    """Enumeration would exceed the configured word cap."""

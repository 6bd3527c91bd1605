class SchurError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(SchurError, ValueError):
    pass


class InvalidInput(SchurError, ValueError):
    pass


class DomainMismatch(SchurError, ValueError):
    """Operands belong to different groups."""


class ResourceLimit(SchurError):
    """The brute-force oracle refused a graph above its vertex limit."""


class InvariantViolation(SchurError, AssertionError):
    pass

"""
Ameso Errors
Exception hierarchy shared by the library and mapped to CLI exit codes
"""

from typing import Optional, Tuple


class AmesoError(Exception):
    """Base class for every error raised by the ameso package"""


class DimensionMismatchError(AmesoError, ValueError):
    """Two lattice objects of different dimension were combined"""


class ArgumentError(AmesoError, ValueError):
    """An argument violates an operation's precondition"""


class DomainError(AmesoError):
    """A domain is unsuitable for the requested operation (e.g. ARP on a non-box)"""


class NotAmesoSetError(DomainError):
    """The domain is not closed under floor/ceil midpoints"""

    def __init__(self, message: str, witness: Optional[Tuple[object, object]] = None):
        super().__init__(message)
        self.witness = witness


class ResourceLimitError(AmesoError):
    """An oracle cap would be exceeded"""

    def __init__(self, what: str, requested: int, cap: int):
        super().__init__(f"{what}: {requested} exceeds the configured cap of {cap}")
        self.what = what
        self.requested = requested
        self.cap = cap


class EvaluationError(AmesoError):
    """The objective returned a value that is not a finite real"""

    def __init__(self, point: object, value: object):
        super().__init__(f"objective returned non-finite value {value!r} at {point}")
        self.point = point
        self.value = value


class StartOutsideDomainError(ArgumentError):
    """A requested start point does not lie in the search interval"""


class DomainLiteralError(DomainError, ArgumentError):
    """A domain literal or table file could not be parsed"""

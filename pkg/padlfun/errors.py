"""
Exception classes raised throughout padlfun.
"""

from __future__ import absolute_import, division


class PadlfunError(Exception):
    """
    Base class for all errors raised by padlfun.
    """


class PrimeMismatchError(PadlfunError):
    """
    Raised when values living over different primes are combined.
    """


class PrecisionError(PadlfunError):
    """
    Raised when a computation cannot certify the requested precision, or
    when dividing by a precision-zero element.
    """


class DomainError(PadlfunError, ValueError):
    """
    Raised when an input lies outside the domain of convergence or definition
    of an operation.
    """


class PreconditionError(PadlfunError):
    """
    Raised when a documented precondition or gate fails.
    """


class BoundError(PadlfunError):
    """
    Raised when an enumeration exceeds its configured bound.
    """

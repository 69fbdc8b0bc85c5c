"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ConeAvoidError(Exception):
    """Base class for all errors raised by coneavoid."""


class MalformedGraphError(ConeAvoidError, ValueError):
    pass


class MalformedInputError(ConeAvoidError, ValueError):
    pass


class InfeasibleSizeError(ConeAvoidError):
    """A requested enumeration would exceed its cap.

    ``predicted`` carries the size the computation would have had, so callers
    can report it instead of silently truncating.
    """

    def __init__(self, message: str, predicted: int, cap: int | None = None):
        super().__init__(message)
        self.predicted = predicted
        self.cap = cap


class PatternSyntaxError(ConeAvoidError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PatternError(ConeAvoidError, ValueError):
    """Well-formed text that violates a pattern invariant (arity, colors...)."""


class PromiseViolation(ConeAvoidError, ValueError):
    def __init__(self, message: str, offending: tuple[int, ...] | None = None):
        super().__init__(message)
        self.offending = offending


class HorizonExhausted(ConeAvoidError):
    """The finite window ran out before an infinitary construction could continue."""

    def __init__(self, message: str, partial: tuple[int, ...]):
        super().__init__(message)
        self.partial = partial


class RealizationError(ConeAvoidError):
    pass


class UnsupportedInputError(ConeAvoidError, ValueError):
    pass


class InconclusiveBoundError(ConeAvoidError):
    pass

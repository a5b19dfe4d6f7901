"""Exception hierarchy shared by every module."""

from __future__ import annotations


class EntwitError(ValueError):
    """Base class; the CLI maps these to exit code 2."""


class InvalidSubsystemSelection(EntwitError):
    pass


class InvalidDimension(EntwitError):
    pass


class DimensionMismatch(EntwitError):
    pass


class NotHermitian(EntwitError):
    pass


class NotADensityState(EntwitError):
    pass


class NotAnEffect(EntwitError):
    pass


class NoPptViolation(EntwitError):
    pass


class NotAWitness(EntwitError):
    pass


class InconsistentWitness(EntwitError):
    pass


class UncertifiedWitness(EntwitError):
    """Raised when a heuristic witness is used where an exact one is required."""


class InvalidArgument(EntwitError):
    pass

"""Exception types shared across the package."""


class CharseqError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CharseqError, ValueError):
    """An argument is outside the domain of the requested operation."""


class NotConsistentError(DomainError):
    """Input data cannot come from an ACM scheme (or a valid sequence pair)."""


class GeometryError(CharseqError, RuntimeError):
    """A geometric computation failed: non-transverse section, scan budget
    exhausted, not enough rational points, and similar conditions that a
    caller can usually cure by re-randomizing or enlarging the field."""

"""
Exception hierarchy for the episturmian toolkit.
Library code raises these; only the command-line entrypoint maps them to exit codes.
"""


class EpisturmianError(Exception):
    """Base class for every error raised by the toolkit."""


class InvalidArgumentError(EpisturmianError, ValueError):
    """An argument is outside the domain of the operation (empty word, n = 0, m out of range, ...)."""


class SpecParseError(InvalidArgumentError):
    """A directive or intercept specification does not follow the textual grammar."""


class BadRecurrenceError(InvalidArgumentError):
    """A recurrence has no sign change on its bracketing interval."""


class InvalidInterceptError(EpisturmianError, ValueError):
    """An intercept violates the Ostrowski conditions of its directive word."""


class UnsupportedDirectiveError(EpisturmianError):
    """The operation needs a regular directive word (or bounded partial quotients)."""


class ResourceLimitError(EpisturmianError):
    """Materializing a word would exceed the explicit-word cap."""


class InsufficientInterceptError(EpisturmianError):
    """The intercept does not carry enough digits for the requested computation."""


class InsufficientHorizonError(EpisturmianError):
    """A generated prefix is too short to collect every factor of the requested length."""


class HorizonExceededError(EpisturmianError):
    """The odometer carry did not settle within the scan horizon."""


class ShiftInterceptError(InvalidInterceptError):
    """The shifted word T(t) has no intercept for the directive word."""


class OracleMismatchError(EpisturmianError):
    """Two independent ways of computing the same quantity disagree."""

    def __init__(self, message: str, mismatches=None):
        super().__init__(message)
        self.mismatches = list(mismatches or [])

"""Exception hierarchy shared by the library and the CLI.

Each class carries the CLI exit status it maps to.
"""


class GapSubError(Exception):
    exit_code = 1


class ValidationError(GapSubError, ValueError):
    """Malformed digit system, substitution rule, spec file or argument."""

    exit_code = 2


class ConflictError(GapSubError, RuntimeError):
    """Two cells claimed the same position."""

    exit_code = 2


class CoverageError(ValidationError):
    """A block window is too narrow for the digit set."""

    def __init__(self, message, missing=()):
        super().__init__(message)
        self.missing = tuple(missing)


class StabilizationError(GapSubError, RuntimeError):
    """Counts or patches did not settle before the depth cap."""

    exit_code = 3

    def __init__(self, message, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class StallError(StabilizationError):
    """The central patch stopped growing."""


class OverflowCapError(GapSubError, OverflowError):
    """Iteration would exceed the configured size cap."""

    exit_code = 4

"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation supports."""


class ConvergenceError(RuntimeError):
    """An iteration failed to close within its step limit."""


class ExhaustionError(RuntimeError):
    """A certified evaluation could not meet its tolerance.

    Raised when the term limit is hit before the tail bound is small enough,
    or when the rounding budget at the working precision is already larger
    than the tolerance allows.
    """


class CrossCheckError(AssertionError):
    """Two independent derivations of the same exact quantity disagree."""

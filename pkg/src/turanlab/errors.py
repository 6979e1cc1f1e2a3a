"""Exception types shared across the package."""

from __future__ import annotations


class TuranLabError(Exception):
    """Base class for all package errors."""


class InvalidPatternError(TuranLabError, ValueError):
    pass


class InvalidConstructionError(TuranLabError, ValueError):
    pass


class InvalidColoringError(TuranLabError, ValueError):
    pass


class GraphFormatError(TuranLabError, ValueError):
    """Malformed graph6 or hypergraph text; ``offset`` is the failing byte position."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class InfeasibleError(TuranLabError):
    """A search was refused because its estimated size exceeds the configured cap."""

    def __init__(self, message: str, estimate: float | None = None):
        super().__init__(message)
        self.estimate = estimate


class InvariantViolation(TuranLabError, AssertionError):
    """An inequality or structural invariant that must hold was violated.

    Always an implementation bug, never a mathematical outcome.
    """

    def __init__(self, message: str, witnesses: dict | None = None):
        super().__init__(message)
        self.witnesses = witnesses or {}


class InvalidStepError(TuranLabError, ValueError):
    pass

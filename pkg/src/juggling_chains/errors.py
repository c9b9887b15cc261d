"""Exception types shared across the package."""

from __future__ import annotations


class IllegalThrowError(ValueError):
    """Raised when a throw's preconditions are violated."""


class ChainStructureError(Exception):
    """Raised when a chain is not irreducible and aperiodic, so no unique
    stationary distribution is guaranteed by the solver's contract."""


class ConvergenceError(Exception):
    """Raised when power iteration fails to reach the requested tolerance.

    Carries the last iterate and its residual so callers can inspect how
    far the iteration got.
    """

    def __init__(self, message: str, last_iterate: list[float], residual: float):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual

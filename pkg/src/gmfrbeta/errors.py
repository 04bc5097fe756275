"""Exception types raised by gmfrbeta.

Every error derives from :class:`BetaError`, itself a ``ValueError``, so
callers that only care about "bad input" can catch one thing.
"""

from __future__ import annotations


class BetaError(ValueError):
    """Base class for all gmfrbeta errors."""


class InsufficientDataError(BetaError):
    """Too few observations for the requested quantity."""


class DomainError(BetaError):
    """An argument lies outside its mathematical domain."""


class AlignmentError(BetaError):
    """Two series could not be matched interval by interval."""


class ParseError(BetaError):
    """A CSV input file could not be read."""

    def __init__(self, path, message: str):
        self.path = str(path)
        super().__init__(f"{self.path}: {message}")


class DegenerateSampleError(BetaError):
    """One side of the paired sample has zero variance.

    ``side`` is ``"market"``, ``"investment"`` or ``"both"``.
    """

    def __init__(self, side: str, message: str | None = None):
        self.side = side
        super().__init__(message or f"{side} returns are constant (zero variance)")


class UndefinedSlopeError(BetaError):
    """The reverse-regression slope does not exist (zero correlation)."""


class SignUndefinedError(BetaError):
    """The sign of the relative-volatility beta is undefined at r = 0."""


class EstimatorMismatchError(BetaError):
    """An operation received a fit from an estimator it does not support."""


class DegenerateLineError(BetaError):
    """A line with zero (or non-finite) slope has no horizontal deviations."""


class ConvergenceError(BetaError):
    """The least-areas minimizer ran out of sweeps.

    ``best`` holds the best candidate found so far.
    """

    def __init__(self, message: str, best=None):
        self.best = best
        super().__init__(message)

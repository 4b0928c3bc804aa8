"""
RelSpin EPR - Error Types

Every library failure derives from RelSpinError, itself a ValueError so that
callers validating input with a plain ``except ValueError`` keep working.
"""
from typing import Any, Optional


class RelSpinError(ValueError):
    """Base class for all domain errors."""

    def __init__(self, message: str, value: Optional[Any] = None):
        super().__init__(message)
        self.value = value


class NonHermitianInput(RelSpinError):
    """Matrix or expectation value failed the Hermiticity check."""


class OrderOutOfRange(RelSpinError):
    """Quadrature order outside [1, 64]."""


class MaxIterExceeded(RelSpinError):
    """Optimizer hit its iteration budget; ``value`` holds the best-so-far result."""


class InvalidMass(RelSpinError):
    """Mass not strictly positive or not finite."""


class InvalidSpin(RelSpinError):
    """Spin j with 2j not a positive integer."""


class InvalidDirection(RelSpinError):
    """Vector cannot be used as a unit direction."""


class InvalidKinematics(RelSpinError):
    """Beta outside [0, 1] or inconsistent with its momentum provenance."""


class DegenerateObservable(RelSpinError):
    """Spin projection spectrum collapsed to zero (|alpha| <= eps)."""


class InvalidSampleCount(RelSpinError):
    """Monte Carlo sample count below the minimum."""


class InvalidGrid(RelSpinError):
    """Beta grid not strictly increasing inside [0, 1]."""


class UsageError(RelSpinError):
    """Command-line flags are inconsistent."""

"""
Pytest configuration and shared fixtures.
"""
import logging
import math
import os

# Keep test runs from writing rotating log files; must precede src imports
os.environ["LOG_TO_FILE"] = "false"

import numpy as np
import pytest

from src.logging import get_logger
from src.models.schemas import Direction, X_HAT, Y_HAT, Z_HAT
from src.relspin import kinematics_from_beta

INV_SQRT2 = 1.0 / math.sqrt(2.0)


@pytest.fixture
def z_hat():
    """Fixture providing the default momentum direction."""
    return Z_HAT


@pytest.fixture
def orthogonal_axes():
    """a, b orthogonal to each other and at 45 degrees to z."""
    return (
        Direction(x=INV_SQRT2, y=0.0, z=INV_SQRT2),
        Direction(x=-INV_SQRT2, y=0.0, z=INV_SQRT2),
    )


@pytest.fixture
def transverse_pair():
    """Two directions perpendicular to z."""
    return X_HAT, Y_HAT


@pytest.fixture
def kin_rest():
    """Particle pair at rest along z."""
    return kinematics_from_beta(Z_HAT, 0.0)


@pytest.fixture
def kin_06():
    """beta = 0.6 along z (mass 1, |p| = 0.75)."""
    return kinematics_from_beta(Z_HAT, 0.6)


@pytest.fixture
def kin_ultra():
    """beta = 1 along z."""
    return kinematics_from_beta(Z_HAT, 1.0)


@pytest.fixture
def oblique_n():
    """A momentum direction off every coordinate axis."""
    return Direction.from_vector(np.array([0.3, -0.5, 0.8]))


@pytest.fixture
def grazing_n():
    """A unit direction along z whose transverse part underflows when squared."""
    return Direction(x=0.0, y=1e-200, z=1.0)


class _RecordingHandler(logging.Handler):
    def __init__(self):
        super().__init__(level=logging.DEBUG)
        self.records = []

    def emit(self, record):
        self.records.append(record)


@pytest.fixture
def numerics_events():
    """Event types logged to the numerics logger during the test."""
    logger = get_logger().numerics_logger
    handler = _RecordingHandler()
    logger.addHandler(handler)
    events = _EventList(handler)
    yield events
    logger.removeHandler(handler)


class _EventList:
    def __init__(self, handler):
        self._handler = handler

    def __iter__(self):
        return iter(getattr(r, "event_type", None) for r in self._handler.records)

    def __contains__(self, event_type):
        return any(e == getattr(event_type, "value", event_type) for e in self)

"""
RelSpin EPR - Measurement Direction Angles

Spherical parameterization (theta, phi) -> (sin t cos p, sin t sin p, cos t)
and the canonical fundamental domain used for deterministic tie-breaking.
"""
import math
from typing import Sequence

from src.models.schemas import AnglePair, AngleSet, Direction

TWO_PI = 2.0 * math.pi


def _unit_from_angles(theta: float, phi: float) -> tuple[float, float, float]:
    sin_t = math.sin(theta)
    return (sin_t * math.cos(phi), sin_t * math.sin(phi), math.cos(theta))


def direction_from_angles(theta: float, phi: float) -> Direction:
    """Unit direction for polar angle theta and azimuth phi (radians)."""
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValueError(f"angles must be finite, got theta={theta!r}, phi={phi!r}")
    return Direction.from_vector(_unit_from_angles(theta, phi))


def angles_from_direction(d: Direction) -> AnglePair:
    """Inverse of ``direction_from_angles``; phi = 0 at the poles."""
    theta = math.acos(max(-1.0, min(1.0, d.z)))
    phi = 0.0 if d.x == 0.0 and d.y == 0.0 else math.atan2(d.y, d.x)
    return AnglePair(theta=theta, phi=phi)


def canonicalize_angles(theta: float, phi: float) -> tuple[float, float]:
    """
    Map any (theta, phi) onto theta in [0, pi], phi in [-pi, pi).

    theta is reduced mod 2 pi; theta > pi is folded to (2 pi - theta, phi + pi).
    At the poles phi carries no information and is set to 0.
    """
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    if theta > math.pi:
        theta = TWO_PI - theta
        phi += math.pi

    phi = math.fmod(phi + math.pi, TWO_PI)
    if phi < 0.0:
        phi += TWO_PI
    phi -= math.pi
    if phi >= math.pi:
        phi = -math.pi

    if theta == 0.0 or theta == math.pi:
        phi = 0.0
    return theta, phi


def angle_set_from_vector(x: Sequence[float]) -> AngleSet:
    """Canonical AngleSet from an 8-vector (theta_a, phi_a, ..., theta_b', phi_b')."""
    if len(x) != 8:
        raise ValueError(f"expected 8 angle parameters, got {len(x)}")
    pairs = [
        AnglePair(theta=t, phi=p)
        for t, p in (canonicalize_angles(x[i], x[i + 1]) for i in range(0, 8, 2))
    ]
    return AngleSet(a=pairs[0], a_prime=pairs[1], b=pairs[2], b_prime=pairs[3])


def angle_set_directions(angles: AngleSet) -> tuple[Direction, Direction, Direction, Direction]:
    """Directions (a, a', b, b')."""
    return tuple(direction_from_angles(p.theta, p.phi) for p in angles.pairs())


def angle_set_from_degrees(values: Sequence[float]) -> AngleSet:
    """AngleSet from 8 values in degrees, in the same order as ``as_vector``."""
    return angle_set_from_vector([math.radians(v) for v in values])

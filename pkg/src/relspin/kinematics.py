"""
RelSpin EPR - Kinematics

The only place mass and momentum enter: everything downstream works with
beta = |p| / sqrt(p^2 + m^2) on the positive-energy branch.
"""
import math

from src.errors import InvalidKinematics, InvalidMass
from src.models.schemas import Direction, Kinematics, MomentumProvenance


def beta_from_momentum(mass: float, p_mag: float) -> float:
    """
    Speed beta = |v|/c of a particle with the given mass and momentum magnitude.

    Raises:
        InvalidMass: mass <= 0 or not finite
        InvalidKinematics: p_mag < 0 or not finite
    """
    if not math.isfinite(mass) or mass <= 0:
        raise InvalidMass(f"mass must be positive and finite, got {mass!r}", mass)
    if not math.isfinite(p_mag) or p_mag < 0:
        raise InvalidKinematics(f"momentum magnitude must be >= 0, got {p_mag!r}", p_mag)
    return p_mag / math.hypot(p_mag, mass)


def kinematics_from_momentum(n: Direction, mass: float, p_mag: float) -> Kinematics:
    """Kinematics with provenance recorded for a (mass, |p|) pair."""
    beta = beta_from_momentum(mass, p_mag)
    return Kinematics(
        n=n,
        beta=beta,
        provenance=MomentumProvenance(mass=mass, p_mag=p_mag),
    )


def kinematics_from_beta(n: Direction, beta: float) -> Kinematics:
    """Kinematics for a bare speed."""
    if not math.isfinite(beta) or not 0.0 <= beta <= 1.0:
        raise InvalidKinematics(f"beta must lie in [0, 1], got {beta!r}", beta)
    return Kinematics(n=n, beta=beta)

"""
RelSpin EPR - CHSH Functional

    S = |E(a,b) + E(a,b') + E(a',b) - E(a',b')|

built on the closed-form relativistic correlation.
"""
from typing import Sequence

from src.epr import correlation_kernel
from src.models.schemas import AngleSet, Kinematics

from .angles import _unit_from_angles


def chsh_terms(
    a: Sequence[float],
    a_prime: Sequence[float],
    b: Sequence[float],
    b_prime: Sequence[float],
    n: Sequence[float],
    one_minus_beta_sq: float,
) -> tuple[float, float, float, float]:
    """E(a,b), E(a,b'), E(a',b), E(a',b') on unit tuples."""
    t = one_minus_beta_sq
    return (
        correlation_kernel(a, b, n, t),
        correlation_kernel(a, b_prime, n, t),
        correlation_kernel(a_prime, b, n, t),
        correlation_kernel(a_prime, b_prime, n, t),
    )


def chsh_from_vector(x: Sequence[float], kin: Kinematics) -> float:
    """CHSH value for an 8-vector of angles; no range reduction needed."""
    units = [_unit_from_angles(x[i], x[i + 1]) for i in range(0, 8, 2)]
    e_ab, e_abp, e_apb, e_apbp = chsh_terms(
        *units, kin.n.as_tuple(), kin.one_minus_beta_sq
    )
    return abs(e_ab + e_abp + e_apb - e_apbp)


def chsh_value(angles: AngleSet, kin: Kinematics) -> float:
    """
    CHSH functional for the settings in ``angles`` at the given kinematics.

    Raises:
        DegenerateObservable: any of the four directions is degenerate
    """
    return chsh_from_vector(angles.as_vector(), kin)

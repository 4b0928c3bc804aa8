"""
RelSpin EPR - Center-of-mass Spin Observable

Spin associated with the relativistic center-of-mass position operator:

    S = sqrt(1 - beta^2) s_perp + (n.s) n,   a.S = alpha(a, p).s

with alpha = sqrt(1 - beta^2) a_perp + (n.a) n. For spin 1/2, s = sigma/2.

Helicity-frame matrices use the right-handed triad (e1', e2', n) returned by
``adapted_triad``; laboratory-frame matrices use x, y, z.
"""
import math
from fractions import Fraction
from typing import Union

import numpy as np

from src.errors import InvalidSpin
from src.mathcore import commutator, max_abs, pauli_vector
from src.models.schemas import BasisFrame, Direction, Kinematics, SpinObservable


# =============================================================================
# Frames
# =============================================================================

def adapted_triad(n: Direction) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Right-handed orthonormal triad (e1', e2', e3' = n).

    For n = +-z, e1' = x; otherwise e1' = normalize(z x n). In both cases
    e2' = n x e1', so e1' x e2' = n.
    """
    nv = n.as_array()
    scale = max(abs(n.x), abs(n.y))
    if scale == 0.0:
        e1 = np.array([1.0, 0.0, 0.0])
    else:
        # rescaled first so tiny or subnormal transverse parts still normalize
        tx, ty = n.x / scale, n.y / scale
        transverse = math.hypot(tx, ty)
        e1 = np.array([-ty / transverse, tx / transverse, 0.0])
    e2 = np.cross(nv, e1)
    return e1, e2, nv


def helicity_components(a: Direction, n: Direction) -> np.ndarray:
    """Components of a along (e1', e2', n)."""
    av = a.as_array()
    return np.array([float(e @ av) for e in adapted_triad(n)])


# =============================================================================
# Alpha map
# =============================================================================

def alpha_vector(a: Direction, kin: Kinematics) -> np.ndarray:
    """
    alpha(a, p) = sqrt(1 - beta^2) a_perp + (n.a) n in the laboratory frame.

    Depends on n only through (n.a) n, so n -> -n leaves it bit-identical.
    """
    av = a.as_array()
    nv = kin.n.as_array()
    axial = a.dot(kin.n)
    return kin.inv_gamma * (av - axial * nv) + axial * nv


def alpha_norm(a: Direction, kin: Kinematics) -> float:
    """|alpha| = sqrt(1 + beta^2((n.a)^2 - 1)), in [sqrt(1 - beta^2), 1]."""
    axial_sq = min(a.dot(kin.n) ** 2, 1.0)
    return math.sqrt(axial_sq + kin.one_minus_beta_sq * (1.0 - axial_sq))


def alpha_vector_batch(a: np.ndarray, n: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Vectorised alpha for (N, 3) directions and (N,) speeds."""
    beta = np.asarray(beta, dtype=float)
    inv_gamma = np.sqrt((1.0 - beta) * (1.0 + beta))[:, None]
    axial = np.einsum("ni,ni->n", a, n)[:, None]
    return inv_gamma * (a - axial * n) + axial * n


# =============================================================================
# Matrices and spectra
# =============================================================================

def _helicity_alpha(components: np.ndarray, kin: Kinematics) -> np.ndarray:
    """alpha in helicity components: transverse parts scaled, axial part kept."""
    scale = kin.inv_gamma
    return np.array([scale * components[0], scale * components[1], components[2]])


def spin_projection_matrix(
    a: Direction,
    kin: Kinematics,
    frame: BasisFrame = BasisFrame.HELICITY,
) -> SpinObservable:
    """
    a.S = alpha.sigma / 2 for spin 1/2.

    Args:
        a: Measurement direction
        kin: Momentum direction and speed
        frame: HELICITY (quantized along n) or LAB
    """
    alpha = alpha_vector(a, kin)
    if frame == BasisFrame.HELICITY:
        components = _helicity_alpha(helicity_components(a, kin.n), kin)
    else:
        components = alpha
    return SpinObservable(
        direction_a=a,
        kin=kin,
        alpha=tuple(float(c) for c in alpha),
        matrix=0.5 * pauli_vector(components),
        frame=frame,
    )


def _two_j(j: Union[int, float, Fraction]) -> int:
    doubled = Fraction(j).limit_denominator(1000) * 2
    if doubled.denominator != 1 or doubled <= 0 or abs(float(doubled) - 2 * float(j)) > 1e-12:
        raise InvalidSpin(f"2j must be a positive integer, got j={j!r}", j)
    return int(doubled)


def spin_eigenvalues(
    j: Union[int, float, Fraction],
    a: Direction,
    kin: Kinematics,
) -> list[float]:
    """
    Eigenvalues j3 |alpha| of a.S for j3 = -j..+j, ascending (hbar = 1).

    Raises:
        InvalidSpin: 2j is not a positive integer
    """
    two_j = _two_j(j)
    norm = alpha_norm(a, kin)
    return [0.5 * (2 * k - two_j) * norm for k in range(two_j + 1)]


def spin_component_matrices(
    kin: Kinematics,
    frame: BasisFrame = BasisFrame.HELICITY,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    S1, S2, S3 = e_i'.S for the adapted triad (e1', e2', n).

    In the helicity frame the triad vectors are the unit components, which
    gives sqrt(1 - beta^2) sigma_x/2, sqrt(1 - beta^2) sigma_y/2, sigma_z/2 exactly.
    """
    if frame == BasisFrame.HELICITY:
        return tuple(
            0.5 * pauli_vector(_helicity_alpha(unit, kin)) for unit in np.eye(3)
        )
    return tuple(
        spin_projection_matrix(Direction.from_vector(e), kin, BasisFrame.LAB).matrix
        for e in adapted_triad(kin.n)
    )


def commutator_defect(
    kin: Kinematics,
    frame: BasisFrame = BasisFrame.HELICITY,
) -> tuple[float, float, float]:
    """
    Deviation of the S-component algebra from its deformed so(3) form.

    d12 = |[S1,S2] - i(1-beta^2) S3|, d23 = |[S2,S3] - i S1|,
    d31 = |[S3,S1] - i S2|, all elementwise max-norms. The algebra is so(3)
    at beta = 0 and contracts to e(2) at beta = 1.
    """
    s1, s2, s3 = spin_component_matrices(kin, frame)
    d12 = max_abs(commutator(s1, s2) - 1j * kin.one_minus_beta_sq * s3)
    d23 = max_abs(commutator(s2, s3) - 1j * s1)
    d31 = max_abs(commutator(s3, s1) - 1j * s2)
    return d12, d23, d31

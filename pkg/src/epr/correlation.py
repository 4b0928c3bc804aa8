"""
RelSpin EPR - Relativistic Singlet Correlation

Binary observables a^ = a.S / |lambda_a| and the singlet average
<psi| a^ (x) b^ |psi>, computed two independent ways:

    closed form   E = -(a.b - beta^2 a_perp.b_perp)
                      / (sqrt(1 + beta^2((n.a)^2 - 1)) sqrt(1 + beta^2((n.b)^2 - 1)))
    matrix oracle E = expectation(singlet, kron2(a^, b^))

Both particles share one Kinematics unless ``kin_b`` is given, in which case
the general form E = -alpha^_a . alpha^_b (laboratory frame) is used.
"""
import math
from typing import Optional

import numpy as np

from src.config import settings
from src.errors import DegenerateObservable
from src.logging import EventType, get_logger
from src.mathcore import IDENTITY2, expectation, kron2, pauli_vector, pauli_vector_batch
from src.models.schemas import (
    BasisFrame,
    BinaryObservable,
    Direction,
    JointDistribution,
    Kinematics,
)
from src.relspin import alpha_norm, alpha_vector, alpha_vector_batch, spin_projection_matrix

from .singlet import singlet_state

Vec3 = tuple[float, float, float]


def _degenerate(norm: float, a: Vec3, beta: float) -> DegenerateObservable:
    get_logger().log_numerical_warning(
        EventType.DEGENERATE_OBSERVABLE,
        f"|alpha| = {norm:.3e} for a={a}, beta={beta}",
        metadata={"alpha_norm": norm, "beta": beta},
    )
    return DegenerateObservable(
        "degenerate observable: the eigenvalues j3*|alpha| of a.S collapse to 0 "
        f"(|alpha| = {norm:.3e} at beta = {beta:g}; a is perpendicular to the momentum)",
        norm,
    )


# =============================================================================
# Closed form kernel
# =============================================================================

def correlation_kernel(
    a: Vec3,
    b: Vec3,
    n: Vec3,
    one_minus_beta_sq: float,
    eps: float = None,
) -> float:
    """
    Closed-form singlet correlation on plain tuples.

    The numerator is written as (n.a)(n.b) + (1 - beta^2) a_perp.b_perp and
    the norms as sqrt((n.a)^2 + (1 - beta^2)(1 - (n.a)^2)), so beta = 1 gives
    exactly -sign(n.a) sign(n.b).

    Raises:
        DegenerateObservable: |alpha_a| or |alpha_b| <= eps
    """
    eps = settings.DEGENERACY_EPS if eps is None else eps
    t = one_minus_beta_sq
    ua = a[0] * n[0] + a[1] * n[1] + a[2] * n[2]
    ub = b[0] * n[0] + b[1] * n[1] + b[2] * n[2]
    ab = a[0] * b[0] + a[1] * b[1] + a[2] * b[2]

    ua_sq = min(ua * ua, 1.0)
    ub_sq = min(ub * ub, 1.0)
    norm_a = math.sqrt(ua_sq + t * (1.0 - ua_sq))
    norm_b = math.sqrt(ub_sq + t * (1.0 - ub_sq))
    beta = math.sqrt(max(0.0, 1.0 - t))
    if norm_a <= eps:
        raise _degenerate(norm_a, a, beta)
    if norm_b <= eps:
        raise _degenerate(norm_b, b, beta)

    numerator = ua * ub + t * (ab - ua * ub)
    value = -numerator / (norm_a * norm_b)
    return min(1.0, max(-1.0, value))


def correlation_analytic(
    a: Direction,
    b: Direction,
    kin: Kinematics,
    kin_b: Optional[Kinematics] = None,
) -> float:
    """
    Relativistic EPR-Bohm correlation in closed form, value in [-1, 1].

    Args:
        a, b: Measurement directions for particles 1 and 2
        kin: Shared kinematics (particle 1 when kin_b is given)
        kin_b: Particle 2 kinematics for the antiparallel variant

    Raises:
        DegenerateObservable: beta = 1 with a or b perpendicular to n
    """
    if kin_b is None or kin_b == kin:
        return correlation_kernel(
            a.as_tuple(), b.as_tuple(), kin.n.as_tuple(), kin.one_minus_beta_sq
        )
    unit_a = binary_observable(a, kin, BasisFrame.LAB).unit_alpha
    unit_b = binary_observable(b, kin_b, BasisFrame.LAB).unit_alpha
    return min(1.0, max(-1.0, -unit_a.dot(unit_b)))


# =============================================================================
# Matrix oracle
# =============================================================================

def binary_observable(
    a: Direction,
    kin: Kinematics,
    frame: BasisFrame = BasisFrame.HELICITY,
) -> BinaryObservable:
    """
    +-1 valued observable a.S / |lambda_a| = (alpha/|alpha|).sigma.

    Raises:
        DegenerateObservable: |alpha| <= DEGENERACY_EPS
    """
    norm = alpha_norm(a, kin)
    if norm <= settings.DEGENERACY_EPS:
        raise _degenerate(norm, a.as_tuple(), kin.beta)

    observable = spin_projection_matrix(a, kin, frame)
    # Recover the frame components from the matrix: m = c.sigma / 2
    m = observable.matrix
    components = np.array([m[0, 1].real, m[1, 0].imag, m[0, 0].real]) * 2.0
    unit_components = components / np.linalg.norm(components)
    return BinaryObservable(
        direction=a,
        kin=kin,
        unit_alpha=Direction.from_vector(alpha_vector(a, kin)),
        matrix=pauli_vector(unit_components),
        frame=frame,
    )


def correlation_oracle(
    a: Direction,
    b: Direction,
    kin: Kinematics,
    kin_b: Optional[Kinematics] = None,
    frame: BasisFrame = BasisFrame.HELICITY,
) -> float:
    """
    <singlet| a^ (x) b^ |singlet> by explicit 4x4 matrices.

    Particles with different momentum directions have different helicity
    frames, so the antiparallel variant is always evaluated in the lab frame.
    """
    if kin_b is not None and kin_b != kin:
        frame = BasisFrame.LAB
    obs_a = binary_observable(a, kin, frame)
    obs_b = binary_observable(b, kin if kin_b is None else kin_b, frame)
    return expectation(singlet_state(), kron2(obs_a.matrix, obs_b.matrix))


# =============================================================================
# Outcome distributions
# =============================================================================

def joint_distribution(
    a: Direction,
    b: Direction,
    kin: Kinematics,
    kin_b: Optional[Kinematics] = None,
) -> JointDistribution:
    """P(r, s) = (1 + r s E) / 4 with uniform marginals."""
    e = correlation_analytic(a, b, kin, kin_b)
    same = max(0.0, 0.25 * (1.0 + e))
    different = max(0.0, 0.25 * (1.0 - e))
    return JointDistribution(p_pp=same, p_pm=different, p_mp=different, p_mm=same)


def joint_distribution_projective(
    a: Direction,
    b: Direction,
    kin: Kinematics,
    kin_b: Optional[Kinematics] = None,
    frame: BasisFrame = BasisFrame.HELICITY,
) -> JointDistribution:
    """Born-rule probabilities from projectors (1 + r a^)/2 (x) (1 + s b^)/2."""
    if kin_b is not None and kin_b != kin:
        frame = BasisFrame.LAB
    obs_a = binary_observable(a, kin, frame).matrix
    obs_b = binary_observable(b, kin if kin_b is None else kin_b, frame).matrix
    psi = singlet_state()

    def prob(r: int, s: int) -> float:
        projector = kron2(0.5 * (IDENTITY2 + r * obs_a), 0.5 * (IDENTITY2 + s * obs_b))
        return max(0.0, expectation(psi, projector))

    return JointDistribution(
        p_pp=prob(1, 1), p_pm=prob(1, -1), p_mp=prob(-1, 1), p_mm=prob(-1, -1)
    )


# =============================================================================
# Batch kernels for sweeps
# =============================================================================

def correlation_analytic_batch(
    a: np.ndarray,
    b: np.ndarray,
    n: np.ndarray,
    beta: np.ndarray,
) -> np.ndarray:
    """Closed form over (N, 3) direction arrays; NaN marks degenerate rows."""
    beta = np.asarray(beta, dtype=float)
    t = (1.0 - beta) * (1.0 + beta)
    ua = np.einsum("ni,ni->n", a, n)
    ub = np.einsum("ni,ni->n", b, n)
    ab = np.einsum("ni,ni->n", a, b)
    ua_sq = np.minimum(ua * ua, 1.0)
    ub_sq = np.minimum(ub * ub, 1.0)
    norm_a = np.sqrt(ua_sq + t * (1.0 - ua_sq))
    norm_b = np.sqrt(ub_sq + t * (1.0 - ub_sq))
    with np.errstate(invalid="ignore", divide="ignore"):
        value = -(ua * ub + t * (ab - ua * ub)) / (norm_a * norm_b)
    value = np.clip(value, -1.0, 1.0)
    degenerate = (norm_a <= settings.DEGENERACY_EPS) | (norm_b <= settings.DEGENERACY_EPS)
    return np.where(degenerate, np.nan, value)


def correlation_oracle_batch(
    a: np.ndarray,
    b: np.ndarray,
    n: np.ndarray,
    beta: np.ndarray,
) -> np.ndarray:
    """Matrix oracle over (N, 3) arrays in the laboratory frame."""
    alpha_a = alpha_vector_batch(a, n, beta)
    alpha_b = alpha_vector_batch(b, n, beta)
    with np.errstate(invalid="ignore", divide="ignore"):
        unit_a = alpha_a / np.linalg.norm(alpha_a, axis=1, keepdims=True)
        unit_b = alpha_b / np.linalg.norm(alpha_b, axis=1, keepdims=True)
    ops_a = pauli_vector_batch(unit_a)
    ops_b = pauli_vector_batch(unit_b)
    count = ops_a.shape[0]
    joint = np.einsum("nij,nkl->nikjl", ops_a, ops_b).reshape(count, 4, 4)
    psi = singlet_state().vector
    values = np.einsum("i,nij,j->n", np.conj(psi), joint, psi)
    return values.real

"""
RelSpin EPR - Fixed-size Complex Matrices

2x2 and 4x4 complex matrices as numpy arrays: Pauli matrices, Kronecker
products, expectation values and the closed-form Hermitian 2x2 spectrum.
The problem never exceeds two qubits, so no general dense solver is used.
"""
import math
from typing import Union

import numpy as np

from src.config import settings
from src.errors import NonHermitianInput
from src.models.schemas import SingletState

# Type aliases: shapes are checked at the boundaries that need them
ComplexMatrix2 = np.ndarray
ComplexMatrix4 = np.ndarray
StateVector4 = np.ndarray


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    arr.setflags(write=False)
    return arr


IDENTITY2 = _frozen([[1, 0], [0, 1]])
PAULI_X = _frozen([[0, 1], [1, 0]])
PAULI_Y = _frozen([[0, -1j], [1j, 0]])
PAULI_Z = _frozen([[1, 0], [0, -1]])
PAULI = (PAULI_X, PAULI_Y, PAULI_Z)


# =============================================================================
# Basic algebra
# =============================================================================

def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.swapaxes(m, -1, -2))


def max_abs(m: np.ndarray) -> float:
    """Elementwise max-norm, written as the infinity norm in the docs."""
    return float(np.max(np.abs(m)))


def hermitian_defect(m: np.ndarray) -> float:
    return max_abs(m - dagger(m))


def is_hermitian(m: np.ndarray, tol: float = 1e-14) -> bool:
    return hermitian_defect(m) <= tol


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def pauli_vector(v) -> ComplexMatrix2:
    """v . sigma for a real 3-vector v."""
    vx, vy, vz = (float(c) for c in v)
    return vx * PAULI_X + vy * PAULI_Y + vz * PAULI_Z


def pauli_vector_batch(v: np.ndarray) -> np.ndarray:
    """v . sigma for an (N, 3) array, returning (N, 2, 2)."""
    return np.einsum("ni,ijk->njk", np.asarray(v, dtype=float), np.stack(PAULI))


def _as_matrix(m: np.ndarray, size: int, name: str) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.shape != (size, size):
        raise ValueError(f"{name} must be {size}x{size}, got shape {arr.shape}")
    return arr


# =============================================================================
# Public operations
# =============================================================================

def kron2(a: ComplexMatrix2, b: ComplexMatrix2) -> ComplexMatrix4:
    """
    Kronecker product of two 2x2 matrices.

    The result has block structure [[a00*B, a01*B], [a10*B, a11*B]], matching
    the (++, +-, -+, --) ordering of two-particle states.
    """
    return np.kron(_as_matrix(a, 2, "A"), _as_matrix(b, 2, "B"))


def expectation(
    psi: Union[StateVector4, SingletState],
    m: ComplexMatrix4,
    tol: float = None,
) -> float:
    """
    Real expectation value <psi|M|psi> of a Hermitian 4x4 operator.

    Args:
        psi: Normalized 4-component state (or a SingletState)
        m: Hermitian 4x4 matrix
        tol: Largest imaginary residue accepted before raising

    Raises:
        NonHermitianInput: Result is not finite or its imaginary part exceeds tol
    """
    tol = settings.HERMITIAN_TOL if tol is None else tol
    vector = psi.vector if isinstance(psi, SingletState) else np.asarray(psi, dtype=complex)
    value = np.vdot(vector, _as_matrix(m, 4, "M") @ vector)
    if not np.isfinite(value):
        raise NonHermitianInput(f"expectation is not finite ({value})", value)
    if abs(value.imag) > tol:
        raise NonHermitianInput(
            f"expectation has imaginary residue {value.imag:.3e} > {tol:g}", value
        )
    return float(value.real)


def eig2_hermitian(m: ComplexMatrix2, tol: float = None) -> tuple[float, float]:
    """
    Ascending eigenvalues of a Hermitian 2x2 matrix in closed form.

    lambda = tr/2 -+ sqrt(((m00 - m11)/2)^2 + |m01|^2)

    Raises:
        NonHermitianInput: M has non-finite entries or differs from its adjoint by more than tol
    """
    tol = settings.HERMITIAN_TOL if tol is None else tol
    arr = _as_matrix(m, 2, "M")
    if not np.all(np.isfinite(arr)):
        raise NonHermitianInput("matrix has non-finite entries", arr)
    defect = hermitian_defect(arr)
    if defect > tol:
        raise NonHermitianInput(f"matrix is not Hermitian (defect {defect:.3e})", defect)
    a = float(arr[0, 0].real)
    d = float(arr[1, 1].real)
    off = abs(0.5 * (arr[0, 1] + np.conj(arr[1, 0])))
    centre = 0.5 * (a + d)
    radius = math.hypot(0.5 * (a - d), off)
    return centre - radius, centre + radius

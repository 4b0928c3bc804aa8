"""
RelSpin EPR - Singlet State

Two spin-1/2 particles with total helicity zero, in the product helicity
basis ordered (++, +-, -+, --).
"""
import math

import numpy as np

from src.models.schemas import SingletState

# Exchanges the two tensor factors: |r, s> -> |s, r>
SWAP = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)
SWAP.setflags(write=False)


def singlet_state() -> SingletState:
    """(|+,-> - |-,+>) / sqrt(2)."""
    amp = 1.0 / math.sqrt(2.0)
    return SingletState(vector=np.array([0.0, amp, -amp, 0.0], dtype=complex))


def swap_factors(vector: np.ndarray) -> np.ndarray:
    return SWAP @ np.asarray(vector, dtype=complex)


def local_unitary(vector: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Apply the same 2x2 unitary to both particles."""
    return np.kron(u, u) @ np.asarray(vector, dtype=complex)

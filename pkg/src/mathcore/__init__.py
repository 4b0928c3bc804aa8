"""Numeric substrate: complex matrices, PRNG, quadrature and simplex minimization."""
from .matrices import (
    IDENTITY2,
    PAULI,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    commutator,
    dagger,
    eig2_hermitian,
    expectation,
    hermitian_defect,
    is_hermitian,
    kron2,
    max_abs,
    pauli_vector,
    pauli_vector_batch,
)
from .optimize import minimize
from .quadrature import gauss_hermite
from .rng import RngStream, next_uniform

__all__ = [
    "IDENTITY2",
    "PAULI",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "commutator",
    "dagger",
    "eig2_hermitian",
    "expectation",
    "hermitian_defect",
    "is_hermitian",
    "kron2",
    "max_abs",
    "pauli_vector",
    "pauli_vector_batch",
    "minimize",
    "gauss_hermite",
    "RngStream",
    "next_uniform",
]

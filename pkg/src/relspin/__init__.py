"""Kinematics and the relativistic center-of-mass spin observable."""
from .kinematics import beta_from_momentum, kinematics_from_beta, kinematics_from_momentum
from .observables import (
    adapted_triad,
    alpha_norm,
    alpha_vector,
    alpha_vector_batch,
    commutator_defect,
    helicity_components,
    spin_component_matrices,
    spin_eigenvalues,
    spin_projection_matrix,
)

__all__ = [
    "beta_from_momentum",
    "kinematics_from_beta",
    "kinematics_from_momentum",
    "adapted_triad",
    "alpha_norm",
    "alpha_vector",
    "alpha_vector_batch",
    "commutator_defect",
    "helicity_components",
    "spin_component_matrices",
    "spin_eigenvalues",
    "spin_projection_matrix",
]

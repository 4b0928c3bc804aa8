"""Singlet state, binary observables, correlations, sampling and packet averaging."""
from .correlation import (
    binary_observable,
    correlation_analytic,
    correlation_analytic_batch,
    correlation_kernel,
    correlation_oracle,
    correlation_oracle_batch,
    joint_distribution,
    joint_distribution_projective,
)
from .packets import PacketNodes, packet_average, packet_nodes
from .sampling import OUTCOMES, mc_estimate, mc_seed_sweep, merge_estimates
from .singlet import SWAP, local_unitary, singlet_state, swap_factors

__all__ = [
    "binary_observable",
    "correlation_analytic",
    "correlation_analytic_batch",
    "correlation_kernel",
    "correlation_oracle",
    "correlation_oracle_batch",
    "joint_distribution",
    "joint_distribution_projective",
    "PacketNodes",
    "packet_average",
    "packet_nodes",
    "OUTCOMES",
    "mc_estimate",
    "mc_seed_sweep",
    "merge_estimates",
    "SWAP",
    "local_unitary",
    "singlet_state",
    "swap_factors",
]

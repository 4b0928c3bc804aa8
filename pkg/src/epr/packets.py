"""
RelSpin EPR - Wave-packet Averaging

Incoherent average of the plane-wave correlation over a Gaussian momentum
magnitude distribution, p ~ N(p_mean, p_sigma^2), by Gauss-Hermite
quadrature:

    E_packet = sum_i w_i / sqrt(pi) * E(a, b, beta(p_mean + sqrt(2) p_sigma x_i))
"""
import math
from dataclasses import dataclass

from src.logging import EventType, get_logger
from src.mathcore import gauss_hermite
from src.models.schemas import Direction, PacketSpec
from src.relspin import beta_from_momentum, kinematics_from_momentum

from .correlation import correlation_analytic


@dataclass(frozen=True)
class PacketNodes:
    """Momentum nodes of a packet and their normalised weights."""
    momenta: tuple[float, ...]
    betas: tuple[float, ...]
    weights: tuple[float, ...]
    clamped: int


def packet_nodes(spec: PacketSpec) -> PacketNodes:
    """
    Quadrature nodes for ``spec``.

    Negative momenta are clamped to 0 and counted. Weights are normalised to
    sum to exactly 1, so order 1 is the plane-wave value at p_mean.
    """
    rule = gauss_hermite(spec.quadrature_order)
    scale = math.sqrt(2.0) * spec.p_sigma
    momenta = []
    clamped = 0
    for x in rule.nodes:
        p = spec.p_mean + scale * x
        if p < 0.0:
            p = 0.0
            clamped += 1
        momenta.append(p)

    total = math.fsum(rule.weights)
    return PacketNodes(
        momenta=tuple(momenta),
        betas=tuple(beta_from_momentum(spec.mass, p) for p in momenta),
        weights=tuple(w / total for w in rule.weights),
        clamped=clamped,
    )


def packet_average(a: Direction, b: Direction, spec: PacketSpec) -> float:
    """
    Packet-averaged correlation for two particles sharing the direction spec.n.

    Raises:
        DegenerateObservable: propagated from any node
    """
    logger = get_logger()
    if not spec.well_localized:
        logger.log_numerical_warning(
            EventType.PACKET_WIDE,
            f"packet not well localized: p_sigma={spec.p_sigma} vs p_mean={spec.p_mean}",
            metadata={"p_mean": spec.p_mean, "p_sigma": spec.p_sigma},
        )

    nodes = packet_nodes(spec)
    if nodes.clamped:
        logger.log_numerical_warning(
            EventType.PACKET_CLAMPED,
            f"{nodes.clamped} of {len(nodes.momenta)} packet nodes clamped to p = 0",
            metadata={"clamped": nodes.clamped, "order": spec.quadrature_order},
        )

    terms = [
        w * correlation_analytic(a, b, kinematics_from_momentum(spec.n, spec.mass, p))
        for w, p in zip(nodes.weights, nodes.momenta)
    ]
    return min(1.0, max(-1.0, math.fsum(terms)))

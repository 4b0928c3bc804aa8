"""
RelSpin EPR - Gauss-Hermite Quadrature

Nodes and weights for the weight function exp(-x^2), found by Newton
iteration on the orthonormal Hermite recurrence. No tables are shipped.
"""
import math
from functools import lru_cache

from src.config import settings
from src.errors import OrderOutOfRange
from src.logging import EventType, get_logger
from src.models.schemas import QuadratureRule

MAX_ORDER = 64
_PI_M4 = math.pi ** -0.25
_MAX_NEWTON = 100


def _orthonormal_hermite(order: int, z: float) -> tuple[float, float]:
    """Return (h_order(z), h_{order-1}(z)) of the orthonormal Hermite functions."""
    p1, p2 = _PI_M4, 0.0
    for j in range(1, order + 1):
        p3 = p2
        p2 = p1
        p1 = z * math.sqrt(2.0 / j) * p2 - math.sqrt((j - 1) / j) * p3
    return p1, p2


@lru_cache(maxsize=MAX_ORDER)
def _hermite_rule(order: int, newton_tol: float) -> QuadratureRule:
    half = (order + 1) // 2
    nodes = [0.0] * order
    weights = [0.0] * order

    z = 0.0
    for i in range(half):
        # Initial guesses for the largest roots first, then extrapolate inwards
        if i == 0:
            z = math.sqrt(2 * order + 1) - 1.85575 * (2 * order + 1) ** (-0.16667)
        elif i == 1:
            z -= 1.14 * order ** 0.426 / z
        elif i == 2:
            z = 1.86 * z - 0.86 * nodes[0]
        elif i == 3:
            z = 1.91 * z - 0.91 * nodes[1]
        else:
            z = 2.0 * z - nodes[i - 2]

        for _ in range(_MAX_NEWTON):
            p1, p2 = _orthonormal_hermite(order, z)
            derivative = math.sqrt(2.0 * order) * p2
            step = p1 / derivative
            z -= step
            if abs(step) <= newton_tol:
                break
        else:
            get_logger().log_numerical_warning(
                EventType.CONVERGENCE_WARNING,
                f"Hermite root {i} of order {order} stopped at step {abs(step):.2e}",
            )

        _, p2 = _orthonormal_hermite(order, z)
        derivative = math.sqrt(2.0 * order) * p2
        nodes[i] = z
        nodes[order - 1 - i] = -z
        weights[i] = weights[order - 1 - i] = 2.0 / (derivative * derivative)

    if order % 2 == 1:
        nodes[half - 1] = 0.0

    # Roots were found largest-first
    return QuadratureRule(nodes=tuple(reversed(nodes)), weights=tuple(reversed(weights)))


def gauss_hermite(order: int) -> QuadratureRule:
    """
    Gauss-Hermite rule of the given order.

    Exact for polynomials up to degree 2*order - 1 under exp(-x^2).

    Raises:
        OrderOutOfRange: order is not an integer in [1, 64]
    """
    if isinstance(order, bool) or not isinstance(order, int) or not 1 <= order <= MAX_ORDER:
        raise OrderOutOfRange(f"quadrature order must be in [1, {MAX_ORDER}], got {order!r}", order)
    return _hermite_rule(order, settings.QUADRATURE_NEWTON_TOL)

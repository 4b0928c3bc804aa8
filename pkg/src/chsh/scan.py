"""
RelSpin EPR - Beta Scans

Tabulates one of three cases over a beta grid and renders the table as CSV.
A row whose computation raises a domain error is flagged with the error
name and the scan continues.
"""
import csv
import io
import math
from typing import Optional, Sequence

import numpy as np

from src.epr import correlation_analytic, correlation_oracle
from src.errors import InvalidGrid, RelSpinError
from src.logging import EventType, get_logger, log_operation
from src.models.schemas import (
    Z_HAT,
    AngleSet,
    Direction,
    ScanCase,
    ScanRow,
    ScanTable,
)
from src.relspin import adapted_triad, kinematics_from_beta

from .angles import angle_set_directions, angle_set_from_vector
from .functional import chsh_value
from .optimizer import max_chsh, warm_start

CASE_COLUMNS: dict[ScanCase, tuple[str, ...]] = {
    ScanCase.ORTHOGONAL_AXES: ("E_analytic", "E_oracle"),
    ScanCase.FIXED_ANGLES: ("chsh", "E_ab", "E_ab_prime", "E_a_prime_b", "E_a_prime_b_prime"),
    ScanCase.CHSH_MAX: (
        "value",
        "converged",
        "theta_a",
        "phi_a",
        "theta_a_prime",
        "phi_a_prime",
        "theta_b",
        "phi_b",
        "theta_b_prime",
        "phi_b_prime",
    ),
}
CSV_DIGITS = 12


def beta_grid(beta_min: float, beta_max: float, steps: int) -> list[float]:
    """
    Evenly spaced grid with exact endpoints.

    Raises:
        InvalidGrid: bounds outside [0, 1], beta_min >= beta_max, or steps < 2
    """
    if isinstance(steps, bool) or not isinstance(steps, int) or steps < 2:
        raise InvalidGrid(f"steps must be an integer >= 2, got {steps!r}", steps)
    if not (math.isfinite(beta_min) and math.isfinite(beta_max)):
        raise InvalidGrid("beta bounds must be finite", (beta_min, beta_max))
    if not 0.0 <= beta_min < beta_max <= 1.0:
        raise InvalidGrid(
            f"need 0 <= beta_min < beta_max <= 1, got [{beta_min}, {beta_max}]",
            (beta_min, beta_max),
        )
    grid = np.linspace(beta_min, beta_max, steps)
    grid[0], grid[-1] = beta_min, beta_max
    return [float(b) for b in grid]


def orthogonal_axes_directions(n: Direction) -> tuple[Direction, Direction]:
    """a = (e1' + n)/sqrt(2), b = (-e1' + n)/sqrt(2): a.b = 0, both at 45 degrees to n."""
    e1, _, nv = adapted_triad(n)
    return (
        Direction.from_vector((e1 + nv) / math.sqrt(2.0)),
        Direction.from_vector((-e1 + nv) / math.sqrt(2.0)),
    )


def default_angle_set(n: Direction) -> AngleSet:
    """Textbook CHSH settings in the plane perpendicular to n."""
    return angle_set_from_vector(warm_start(kinematics_from_beta(n, 0.0)))


def _validate_grid(grid: Sequence[float]) -> list[float]:
    grid = [float(b) for b in grid]
    if not grid:
        raise InvalidGrid("beta grid is empty", grid)
    for beta in grid:
        if not math.isfinite(beta) or not 0.0 <= beta <= 1.0:
            raise InvalidGrid(f"beta values must lie in [0, 1], got {beta!r}", beta)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidGrid("beta grid must be strictly increasing", grid)
    return grid


@log_operation
def scan_beta(
    case: ScanCase,
    grid: Sequence[float],
    n: Direction = Z_HAT,
    angles: Optional[AngleSet] = None,
    restarts: int = None,
    seed: int = None,
    tol: float = None,
) -> ScanTable:
    """
    One row per beta for the requested case.

    Args:
        case: ORTHOGONAL_AXES (a, b at 45 degrees to n), FIXED_ANGLES or CHSH_MAX
        grid: Strictly increasing betas in [0, 1]
        n: Common momentum direction
        angles: Settings for FIXED_ANGLES; the perpendicular textbook set if None
        restarts, seed, tol: Passed to max_chsh for CHSH_MAX

    Raises:
        InvalidGrid: invalid beta grid
    """
    grid = _validate_grid(grid)
    case = ScanCase(case)
    if case == ScanCase.FIXED_ANGLES and angles is None:
        angles = default_angle_set(n)

    logger = get_logger()
    rows = []
    for beta in grid:
        kin = kinematics_from_beta(n, beta)
        try:
            values = _row_values(case, kin, n, angles, restarts, seed, tol)
        except RelSpinError as e:
            status = type(e).__name__
            logger.log_numerical_warning(
                EventType.SCAN_ROW_FLAGGED,
                f"{case.value} row at beta={beta} flagged: {e}",
                metadata={"beta": beta, "status": status},
            )
            rows.append(ScanRow(beta=beta, status=status))
            continue
        rows.append(ScanRow(beta=beta, values=values))
        logger.run_logger.debug(
            f"{case.value} row beta={beta}",
            extra=logger._create_extra(EventType.SCAN_ROW, metadata={"beta": beta, **values}),
        )

    return ScanTable(case=case, columns=CASE_COLUMNS[case], rows=tuple(rows))


def _row_values(case, kin, n, angles, restarts, seed, tol) -> dict[str, float]:
    if case == ScanCase.ORTHOGONAL_AXES:
        a, b = orthogonal_axes_directions(n)
        return {
            "E_analytic": correlation_analytic(a, b, kin),
            "E_oracle": correlation_oracle(a, b, kin),
        }

    if case == ScanCase.FIXED_ANGLES:
        a, a_prime, b, b_prime = angle_set_directions(angles)
        return {
            "chsh": chsh_value(angles, kin),
            "E_ab": correlation_analytic(a, b, kin),
            "E_ab_prime": correlation_analytic(a, b_prime, kin),
            "E_a_prime_b": correlation_analytic(a_prime, b, kin),
            "E_a_prime_b_prime": correlation_analytic(a_prime, b_prime, kin),
        }

    result = max_chsh(kin, restarts=restarts, seed=seed, tol=tol)
    columns = CASE_COLUMNS[ScanCase.CHSH_MAX]
    values = {"value": result.value, "converged": 1.0 if result.converged else 0.0}
    values.update(zip(columns[2:], result.angles.as_vector()))
    return values


# =============================================================================
# CSV rendering
# =============================================================================

def format_number(value: float, digits: int = CSV_DIGITS) -> str:
    """``digits`` significant digits; -0 is written as 0."""
    if value == 0.0:
        value = 0.0
    return f"{value:.{digits}g}"


def table_to_csv(table: ScanTable) -> str:
    """CSV text: header ``beta,<columns>,status``, LF line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["beta", *table.columns, "status"])
    for row in table.rows:
        if row.flagged:
            cells = [""] * len(table.columns)
        else:
            cells = [format_number(row.values[c]) for c in table.columns]
        writer.writerow([format_number(row.beta), *cells, row.status])
    return buffer.getvalue()

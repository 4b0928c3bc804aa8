"""
RelSpin EPR - CHSH Maximization

Multi-start Nelder-Mead over the 8 angles (theta, phi) of a, a', b, b' at
fixed kinematics. Start 0 is the textbook CHSH configuration in the plane
perpendicular to n; the remaining starts are isotropic random directions
drawn from one RngStream(seed).
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.config import settings
from src.errors import DegenerateObservable, MaxIterExceeded, UsageError
from src.logging import EventType, get_logger, log_operation, track_operation
from src.mathcore import RngStream, minimize
from src.models.schemas import AngleSet, ChshResult, Direction, Kinematics
from src.relspin import adapted_triad

from .angles import _unit_from_angles, angle_set_from_vector, angles_from_direction
from .functional import chsh_from_vector, chsh_value

INITIAL_STEP = 0.25
# Azimuths of a, a', b, b' around n for the warm start
WARM_AZIMUTHS = (0.0, 90.0, 45.0, -45.0)
# Polar angle from n used to lift the warm start off the degenerate plane at beta = 1
LIFT_POLAR = 45.0


@dataclass(frozen=True)
class _Candidate:
    value: float
    angles: AngleSet
    converged: bool
    evaluations: int

    @property
    def key(self) -> tuple[float, ...]:
        return self.angles.as_vector()


def warm_start(kin: Kinematics) -> np.ndarray:
    """
    Perpendicular-plane CHSH settings as an 8-vector of lab angles.

    At beta = 1 every perpendicular direction is degenerate, so the four
    directions are tilted LIFT_POLAR degrees towards n.
    """
    e1, e2, n = adapted_triad(kin.n)
    lift = math.radians(LIFT_POLAR) if kin.beta == 1.0 else math.pi / 2
    x = []
    for azimuth in WARM_AZIMUTHS:
        psi = math.radians(azimuth)
        v = math.sin(lift) * (math.cos(psi) * e1 + math.sin(psi) * e2) + math.cos(lift) * n
        pair = angles_from_direction(Direction.from_vector(v))
        x.extend((pair.theta, pair.phi))
    return np.array(x)


def random_starts(count: int, seed: int) -> list[np.ndarray]:
    """``count`` isotropic starts; 8 uniforms per start, consumed in order."""
    stream = RngStream(seed)
    starts = []
    for _ in range(count):
        u = stream.uniforms(8)
        theta = np.arccos(1.0 - 2.0 * u[0::2])
        phi = math.pi * (2.0 * u[1::2] - 1.0)
        starts.append(np.column_stack([theta, phi]).ravel())
    return starts


def _objective(kin: Kinematics):
    """Negated CHSH value; at beta = 1 a penalty > 0 outside |n.u| >= BETA_ONE_MIN_AXIAL."""
    n = kin.n.as_tuple()
    restricted = kin.beta == 1.0
    min_axial = settings.BETA_ONE_MIN_AXIAL

    def f(x: np.ndarray) -> float:
        if restricted:
            shortfall = 0.0
            for i in range(0, 8, 2):
                u = _unit_from_angles(x[i], x[i + 1])
                axial = abs(u[0] * n[0] + u[1] * n[1] + u[2] * n[2])
                shortfall += max(0.0, min_axial - axial)
            if shortfall > 0.0:
                return 1.0 + shortfall
        try:
            return -chsh_from_vector(x, kin)
        except DegenerateObservable:
            return 1.0
    return f


def _run_start(index: int, x0: np.ndarray, kin: Kinematics, tol: float, max_iter: int) -> Optional[_Candidate]:
    result = minimize(_objective(kin), x0, tol=tol, max_iter=max_iter, step=INITIAL_STEP)
    if result.fun > 0.0:
        return None
    angles = angle_set_from_vector(result.x)
    try:
        value = chsh_value(angles, kin)
    except DegenerateObservable:
        return None
    get_logger().numerics_logger.debug(
        f"restart {index}: S={value:.12f} converged={result.converged} "
        f"iterations={result.iterations}",
        extra=get_logger()._create_extra(
            EventType.CHSH_RESTART,
            metadata={"restart": index, "value": value, "converged": result.converged},
        ),
    )
    return _Candidate(
        value=value,
        angles=angles,
        converged=result.converged,
        evaluations=result.evaluations,
    )


def _select(candidates: list[_Candidate], tie_tol: float) -> _Candidate:
    """Largest value; near-ties go to the lexicographically smallest canonical angles."""
    best_value = max(c.value for c in candidates)
    tied = [c for c in candidates if c.value >= best_value - tie_tol]
    return min(tied, key=lambda c: c.key)


@track_operation("max_chsh")
@log_operation
def max_chsh(
    kin: Kinematics,
    restarts: int = None,
    seed: int = None,
    tol: float = None,
    max_iter: int = None,
    workers: int = 1,
) -> ChshResult:
    """
    Maximize the CHSH functional over all measurement settings at fixed kin.

    Args:
        kin: Shared kinematics of the pair
        restarts: Number of random starts; the warm start runs in addition
        seed: Seed of the random-start stream
        tol: Simplex f-spread tolerance
        max_iter: Iteration budget per start
        workers: Threads for independent restarts; the result does not depend on it

    Returns:
        ChshResult for the best candidate. converged reports that candidate's
        own termination; converged_restarts counts all converged starts.
    """
    restarts = settings.CHSH_RESTARTS if restarts is None else restarts
    seed = settings.DEFAULT_SEED if seed is None else seed
    tol = settings.CHSH_TOL if tol is None else tol
    max_iter = settings.CHSH_MAX_ITER if max_iter is None else max_iter
    if isinstance(restarts, bool) or not isinstance(restarts, int) or restarts < 1:
        raise UsageError(f"restarts must be a positive integer, got {restarts!r}", restarts)

    starts = [warm_start(kin)] + random_starts(restarts, seed)
    jobs = list(enumerate(starts))

    def run(job) -> Optional[_Candidate]:
        index, x0 = job
        return _run_start(index, x0, kin, tol, max_iter)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, jobs))
    else:
        outcomes = [run(job) for job in jobs]

    candidates = [c for c in outcomes if c is not None]
    if not candidates:
        raise MaxIterExceeded(f"no admissible CHSH candidate at beta={kin.beta}", kin.beta)

    best = _select(candidates, settings.CHSH_TIE_TOL)
    converged_restarts = sum(1 for c in candidates if c.converged)
    result = ChshResult(
        beta=kin.beta,
        value=best.value,
        angles=best.angles,
        restarts_used=len(starts),
        converged=best.converged,
        converged_restarts=converged_restarts,
        evaluations=sum(c.evaluations for c in candidates),
    )

    logger = get_logger()
    if converged_restarts == 0:
        logger.log_numerical_warning(
            EventType.CONVERGENCE_WARNING,
            f"no CHSH restart converged at beta={kin.beta} ({restarts} restarts)",
            metadata={"beta": kin.beta, "restarts": restarts},
        )
    logger.log_result(
        EventType.CHSH_RESULT,
        f"max CHSH at beta={kin.beta}: {best.value:.12f}",
        metadata={
            "beta": kin.beta,
            "value": best.value,
            "converged_restarts": converged_restarts,
            "restarts": restarts,
        },
    )
    return result

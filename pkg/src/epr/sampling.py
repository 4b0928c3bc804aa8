"""
RelSpin EPR - Monte Carlo Outcome Sampling

Draws measurement outcome pairs (r, s) from the closed-form joint
distribution with a seeded SplitMix64 stream, one uniform per pair.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Optional

import numpy as np

from src.config import settings
from src.errors import InvalidSampleCount
from src.logging import EventType, get_logger, track_operation
from src.mathcore import RngStream
from src.models.schemas import Direction, Kinematics, McEstimate

from .correlation import correlation_analytic, joint_distribution

# Outcome order used for inverse-CDF lookup; index 0 and 3 are r = s
OUTCOMES = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@track_operation("mc_estimate")
def mc_estimate(
    a: Direction,
    b: Direction,
    kin: Kinematics,
    samples: int,
    seed: int,
    kin_b: Optional[Kinematics] = None,
) -> McEstimate:
    """
    Estimate E by sampling ``samples`` i.i.d. outcome pairs.

    Sample i uses the i-th uniform u_i of RngStream(seed) and lands on the
    first outcome whose cumulative probability exceeds u_i.

    Raises:
        InvalidSampleCount: samples < MC_MIN_SAMPLES
        DegenerateObservable: either observable is undefined
    """
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < settings.MC_MIN_SAMPLES:
        raise InvalidSampleCount(
            f"samples must be an integer >= {settings.MC_MIN_SAMPLES}, got {samples!r}",
            samples,
        )

    dist = joint_distribution(a, b, kin, kin_b)
    probs = [dist.p_pp, dist.p_pm, dist.p_mp]
    cumulative = np.array([math.fsum(probs[: k + 1]) for k in range(3)] + [1.0])

    u = RngStream(seed).uniforms(samples)
    index = np.minimum(np.searchsorted(cumulative, u, side="right"), 3)
    counts = np.bincount(index, minlength=4)

    same = int(counts[0] + counts[3])
    different = int(counts[1] + counts[2])
    e_hat = (same - different) / samples
    stderr = math.sqrt(max(0.0, 1.0 - e_hat * e_hat) / samples)

    estimate = McEstimate(
        e_hat=e_hat,
        stderr=stderr,
        samples=samples,
        seed=seed,
        e_reference=correlation_analytic(a, b, kin, kin_b),
    )
    get_logger().log_result(
        EventType.MC_RUN,
        f"MC seed={seed} N={samples}: E_hat={e_hat:.6f} +- {stderr:.2e}",
        metadata={"seed": seed, "samples": samples, "e_hat": e_hat, "stderr": stderr},
    )
    return estimate


def mc_seed_sweep(
    a: Direction,
    b: Direction,
    kin: Kinematics,
    samples: int,
    seeds: Iterable[int],
    workers: int = None,
    kin_b: Optional[Kinematics] = None,
) -> list[McEstimate]:
    """
    One independent estimate per seed, in seed order.

    Each estimate owns its stream, so the result list does not depend on
    ``workers`` or on scheduling.
    """
    workers = settings.MC_WORKERS if workers is None else workers
    seeds = list(seeds)

    def run(seed: int) -> McEstimate:
        return mc_estimate(a, b, kin, samples, seed, kin_b=kin_b)

    if workers <= 1 or len(seeds) <= 1:
        return [run(seed) for seed in seeds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, seeds))


def merge_estimates(estimates: Iterable[McEstimate]) -> tuple[float, float, int]:
    """
    Count-weighted merge of independent estimates.

    Returns:
        (E_hat, stderr, total samples) of the pooled sample
    """
    estimates = list(estimates)
    if not estimates:
        raise ValueError("no estimates to merge")
    total = sum(e.samples for e in estimates)
    e_hat = math.fsum(e.e_hat * e.samples for e in estimates) / total
    stderr = math.sqrt(max(0.0, 1.0 - e_hat * e_hat) / total)
    return e_hat, stderr, total

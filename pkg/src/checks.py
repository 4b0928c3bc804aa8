"""
RelSpin EPR - Self-check Suites

Runs the invariant suites behind the ``check`` subcommand. Each suite
returns a CheckResult with the largest error it observed and the threshold
it was held to. Random inputs come from RngStream(CHECK_SEED), so a run is
reproducible.
"""
import math
from typing import Callable

import numpy as np

from src.chsh import (
    chsh_from_vector,
    chsh_value,
    default_angle_set,
    orthogonal_axes_directions,
)
from src.config import settings
from src.epr import (
    binary_observable,
    correlation_analytic,
    correlation_analytic_batch,
    correlation_oracle,
    correlation_oracle_batch,
)
from src.errors import DegenerateObservable
from src.logging import EventType, get_logger, track_operation
from src.mathcore import RngStream, commutator, eig2_hermitian, max_abs, pauli_vector
from src.models.schemas import (
    TSIRELSON_BOUND,
    BasisFrame,
    CheckResult,
    Direction,
)
from src.relspin import (
    alpha_norm,
    alpha_vector_batch,
    commutator_defect,
    kinematics_from_beta,
    spin_component_matrices,
    spin_eigenvalues,
    spin_projection_matrix,
)

ORACLE_TOL = 1e-12
EXACT_TOL = 1e-12
PARITY_TOL = 1e-15
COMMUTATOR_TOL = 1e-13
MAX_OPEN_BETA = 1.0 - 1e-6
CONTRACTION_BETAS = (0.0, 0.3, 0.6, 0.9, 0.99, 1.0)


def random_directions(stream: RngStream, count: int) -> np.ndarray:
    """(count, 3) isotropic unit vectors, two uniforms per vector."""
    u = stream.uniforms(2 * count).reshape(count, 2)
    z = 1.0 - 2.0 * u[:, 0]
    phi = 2.0 * math.pi * u[:, 1]
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    v = np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _perpendicular(v: np.ndarray, n: np.ndarray) -> np.ndarray:
    w = v - np.einsum("ni,ni->n", v, n)[:, None] * n
    return w / np.linalg.norm(w, axis=1, keepdims=True)


def _direction(v: np.ndarray) -> Direction:
    return Direction.from_vector(v)


def _result(suite: str, max_error: float, threshold: float, cases: int, detail: str = "") -> CheckResult:
    return CheckResult(
        suite=suite,
        passed=bool(max_error <= threshold),
        max_error=float(max_error),
        threshold=threshold,
        cases=cases,
        detail=detail,
    )


# =============================================================================
# Suites
# =============================================================================

def check_oracle_equivalence(stream: RngStream, size: int) -> CheckResult:
    """Closed form vs 4x4 oracle and vs -alpha^_a.alpha^_b over random inputs."""
    a = random_directions(stream, size)
    b = random_directions(stream, size)
    n = random_directions(stream, size)
    beta = MAX_OPEN_BETA * stream.uniforms(size)

    analytic = correlation_analytic_batch(a, b, n, beta)
    oracle = correlation_oracle_batch(a, b, n, beta)
    errors = [float(np.max(np.abs(analytic - oracle)))]

    unit_a = alpha_vector_batch(a, n, beta)
    unit_b = alpha_vector_batch(b, n, beta)
    unit_a /= np.linalg.norm(unit_a, axis=1, keepdims=True)
    unit_b /= np.linalg.norm(unit_b, axis=1, keepdims=True)
    reduced = -np.einsum("ni,ni->n", unit_a, unit_b)
    errors.append(float(np.max(np.abs(analytic - reduced))))

    # Scalar path in both frames on a subsample
    for i in range(min(size, 200)):
        kin = kinematics_from_beta(_direction(n[i]), float(beta[i]))
        da, db = _direction(a[i]), _direction(b[i])
        value = correlation_analytic(da, db, kin)
        for frame in BasisFrame:
            errors.append(abs(value - correlation_oracle(da, db, kin, frame=frame)))

    return _result("oracle_equivalence", max(errors), ORACLE_TOL, size)


def check_perpendicular_plane(stream: RngStream, size: int) -> CheckResult:
    """For a, b perpendicular to n, E = -a.b at every beta < 1."""
    pairs = max(1, size // 100)
    n = random_directions(stream, pairs)
    a = _perpendicular(random_directions(stream, pairs), n)
    b = _perpendicular(random_directions(stream, pairs), n)
    expected = -np.einsum("ni,ni->n", a, b)

    max_error = 0.0
    for beta in np.linspace(0.0, 1.0, 100, endpoint=False):
        values = correlation_analytic_batch(a, b, n, np.full(pairs, beta))
        max_error = max(max_error, float(np.max(np.abs(values - expected))))
    return _result("perpendicular_plane", max_error, EXACT_TOL, pairs * 100)


def check_ultrarelativistic(stream: RngStream, size: int) -> CheckResult:
    """At beta = 1, E = -sign(n.a) sign(n.b) exactly, and a perpendicular to n is degenerate."""
    target = max(1, size // 100)

    max_error = 0.0
    cases = 0
    while cases < target:
        a = random_directions(stream, target)
        b = random_directions(stream, target)
        n = random_directions(stream, target)
        for i in range(target):
            if cases == target:
                break
            ua, ub = float(a[i] @ n[i]), float(b[i] @ n[i])
            # any non-degenerate axial component gives an exact sign product
            if min(abs(ua), abs(ub)) <= settings.DEGENERACY_EPS:
                continue
            kin = kinematics_from_beta(_direction(n[i]), 1.0)
            value = correlation_analytic(_direction(a[i]), _direction(b[i]), kin)
            max_error = max(max_error, abs(value + math.copysign(1.0, ua) * math.copysign(1.0, ub)))
            cases += 1

    detail = ""
    kin = kinematics_from_beta(Direction(x=0.0, y=0.0, z=1.0), 1.0)
    try:
        binary_observable(Direction(x=1.0, y=0.0, z=0.0), kin)
        max_error = math.inf
        detail = "perpendicular direction at beta=1 was not rejected"
    except DegenerateObservable:
        pass
    return _result("ultrarelativistic", max_error, 0.0, cases + 1, detail)


def check_orthogonal_axes(stream: RngStream, size: int) -> CheckResult:
    """a, b orthogonal and at 45 degrees to n: E(beta) = -beta^2 / (2 - beta^2)."""
    n = _direction(random_directions(stream, 1)[0])
    a, b = orthogonal_axes_directions(n)
    errors = []
    for beta in np.linspace(0.0, 1.0, 1000):
        beta = float(beta)
        kin = kinematics_from_beta(n, beta)
        expected = -beta * beta / (2.0 - beta * beta)
        errors.append(abs(correlation_analytic(a, b, kin) - expected))
        errors.append(abs(correlation_oracle(a, b, kin) - expected))

    z = Direction(x=0.0, y=0.0, z=1.0)
    za, zb = orthogonal_axes_directions(z)
    errors.append(abs(correlation_analytic(za, zb, kinematics_from_beta(z, 0.0))))
    errors.append(abs(correlation_analytic(za, zb, kinematics_from_beta(z, 1.0)) + 1.0))
    errors.append(abs(correlation_analytic(za, zb, kinematics_from_beta(z, 0.6)) + 0.36 / 1.64))
    return _result("orthogonal_axes", max(errors), EXACT_TOL, 1003)


def check_spectrum(stream: RngStream, size: int) -> CheckResult:
    """a.S has eigenvalues -+|alpha|/2; p.S = p.s; S = s at rest."""
    count = max(1, size // 10)
    a = random_directions(stream, count)
    n = random_directions(stream, count)
    beta = stream.uniforms(count)

    max_error = 0.0
    for i in range(count):
        kin = kinematics_from_beta(_direction(n[i]), float(beta[i]))
        da = _direction(a[i])
        low, high = eig2_hermitian(spin_projection_matrix(da, kin).matrix)
        expected = spin_eigenvalues(0.5, da, kin)
        max_error = max(max_error, abs(low - expected[0]), abs(high - expected[1]))

        # Helicity: the projection on n is unchanged by the boost
        along_n = spin_projection_matrix(kin.n, kin, BasisFrame.LAB).matrix
        max_error = max(max_error, max_abs(along_n - 0.5 * pauli_vector(kin.n.as_array())))

        at_rest = kinematics_from_beta(kin.n, 0.0)
        rest_matrix = spin_projection_matrix(da, at_rest, BasisFrame.LAB).matrix
        max_error = max(max_error, max_abs(rest_matrix - 0.5 * pauli_vector(da.as_array())))

    # Perpendicular spectrum collapses at beta = 1
    z = Direction(x=0.0, y=0.0, z=1.0)
    kin = kinematics_from_beta(z, 1.0)
    for v in ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (math.sqrt(0.5), math.sqrt(0.5), 0.0)):
        max_error = max(max_error, max(abs(e) for e in spin_eigenvalues(0.5, _direction(np.array(v)), kin)))
        max_error = max(max_error, alpha_norm(_direction(np.array(v)), kin))
    return _result("spectrum", max_error, EXACT_TOL, count + 3)


def check_contraction(stream: RngStream, size: int) -> CheckResult:
    """Deformed so(3) relations hold; |[S1, S2]| = (1 - beta^2)/2, vanishing at beta = 1."""
    n = _direction(random_directions(stream, 1)[0])
    max_error = 0.0
    cases = 0
    for beta in CONTRACTION_BETAS:
        for direction in (n, Direction(x=0.0, y=0.0, z=1.0)):
            kin = kinematics_from_beta(direction, beta)
            for frame in BasisFrame:
                max_error = max(max_error, *commutator_defect(kin, frame))
                s1, s2, _ = spin_component_matrices(kin, frame)
                scale = float(np.linalg.norm(commutator(s1, s2), 2))
                max_error = max(max_error, abs(scale - 0.5 * kin.one_minus_beta_sq))
                cases += 1
    return _result("contraction", max_error, COMMUTATOR_TOL, cases)


def check_chsh_bound(stream: RngStream, size: int) -> CheckResult:
    """CHSH <= 2 sqrt(2) everywhere; the perpendicular textbook set reaches it for all beta < 1."""
    count = max(1, size // 10)
    excess = 0.0
    for _ in range(count):
        u = stream.uniforms(10)
        n = Direction.from_vector(random_directions(stream, 1)[0])
        kin = kinematics_from_beta(n, MAX_OPEN_BETA * float(u[0]))
        x = np.empty(8)
        x[0::2] = np.arccos(1.0 - 2.0 * u[1:5])
        x[1::2] = math.pi * (2.0 * u[5:9] - 1.0)
        excess = max(excess, chsh_from_vector(x, kin) - TSIRELSON_BOUND)

    n = Direction.from_vector(random_directions(stream, 1)[0])
    angles = default_angle_set(n)
    deviation = 0.0
    for beta in np.linspace(0.0, 1.0, 100, endpoint=False):
        kin = kinematics_from_beta(n, float(beta))
        deviation = max(deviation, abs(chsh_value(angles, kin) - TSIRELSON_BOUND))

    max_error = max(deviation, excess)
    detail = f"max excess over bound {excess:.3e}"
    return _result("chsh_bound", max_error, 1e-9, count + 100, detail)


def check_n_parity(stream: RngStream, size: int) -> CheckResult:
    """E is unchanged under n -> -n."""
    count = max(1, size // 10)
    a = random_directions(stream, count)
    b = random_directions(stream, count)
    n = random_directions(stream, count)
    beta = MAX_OPEN_BETA * stream.uniforms(count)

    forward = correlation_analytic_batch(a, b, n, beta)
    backward = correlation_analytic_batch(a, b, -n, beta)
    return _result("n_parity", float(np.max(np.abs(forward - backward))), PARITY_TOL, count)


def check_antiparallel(stream: RngStream, size: int) -> CheckResult:
    """Particle 2 moving along -n gives the same-momentum correlation."""
    count = max(1, min(size // 10, 500))
    a = random_directions(stream, count)
    b = random_directions(stream, count)
    n = random_directions(stream, count)
    beta = MAX_OPEN_BETA * stream.uniforms(count)

    max_error = 0.0
    for i in range(count):
        kin = kinematics_from_beta(_direction(n[i]), float(beta[i]))
        da, db = _direction(a[i]), _direction(b[i])
        same = correlation_analytic(da, db, kin)
        max_error = max(
            max_error,
            abs(same - correlation_analytic(da, db, kin, kin_b=kin.reversed())),
            abs(same - correlation_oracle(da, db, kin, kin_b=kin.reversed())),
        )
    return _result("antiparallel", max_error, ORACLE_TOL, count)


SUITES: dict[str, Callable[[RngStream, int], CheckResult]] = {
    "oracle_equivalence": check_oracle_equivalence,
    "perpendicular_plane": check_perpendicular_plane,
    "ultrarelativistic": check_ultrarelativistic,
    "orthogonal_axes": check_orthogonal_axes,
    "spectrum": check_spectrum,
    "contraction": check_contraction,
    "chsh_bound": check_chsh_bound,
    "n_parity": check_n_parity,
    "antiparallel": check_antiparallel,
}


@track_operation("run_check")
def run_check(sweep_size: int = None, seed: int = None) -> list[CheckResult]:
    """
    Run every suite in a fixed order.

    Args:
        sweep_size: Size of the large random sweep; smaller suites scale from it
        seed: Seed of the shared input stream
    """
    size = settings.CHECK_SWEEP_SIZE if sweep_size is None else sweep_size
    stream = RngStream(settings.CHECK_SEED if seed is None else seed)
    logger = get_logger()

    results = []
    for name, suite in SUITES.items():
        result = suite(stream.spawn(), size)
        results.append(result)
        logger.log_result(
            EventType.CHECK_SUITE,
            f"{name}: {'PASS' if result.passed else 'FAIL'} max_error={result.max_error:.3e}",
            metadata=result.model_dump(),
        )
    return results


def format_check_table(results: list[CheckResult]) -> str:
    """Fixed-width summary, one line per suite."""
    lines = [f"{'suite':<20} {'status':<6} {'max_error':>12} {'threshold':>12} {'cases':>8}"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{r.suite:<20} {status:<6} {r.max_error:>12.3e} {r.threshold:>12.3e} {r.cases:>8d}"
        )
    return "\n".join(lines) + "\n"

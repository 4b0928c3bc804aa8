"""
RelSpin EPR - Run Orchestrator

Turns a validated RunConfig into a result: dispatches to the library,
renders stdout text, maps domain errors to exit codes, and records run
start/end events and timings.
"""
import math
import time
from dataclasses import dataclass

from src.chsh import beta_grid, max_chsh, scan_beta, table_to_csv
from src.checks import format_check_table, run_check
from src.epr import correlation_analytic, mc_estimate
from src.errors import DegenerateObservable, RelSpinError
from src.logging import EventType, get_logger, get_telemetry
from src.models.schemas import Kinematics, RunConfig, Subcommand
from src.relspin import kinematics_from_beta, kinematics_from_momentum

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_NOT_CONVERGED = 4

LINE_DECIMALS = 10
ANTIPARALLEL_NOTE = (
    "note: antiparallel momenta (n2 = -n) give exactly the same correlation "
    "as equal momenta, since E is invariant under n -> -n\n"
)


@dataclass
class RunOutcome:
    """Exit code plus the text destined for stdout and stderr."""
    exit_code: int
    stdout: str = ""
    stderr: str = ""


def format_line_number(value: float) -> str:
    """Fixed LINE_DECIMALS decimals; -0 prints as 0."""
    text = f"{value:.{LINE_DECIMALS}f}"
    if float(text) == 0.0:
        text = f"{0.0:.{LINE_DECIMALS}f}"
    return text


def resolve_kinematics(config: RunConfig) -> Kinematics:
    """Kinematics from --beta or from (--mass, --p)."""
    if config.beta is not None:
        return kinematics_from_beta(config.n, config.beta)
    return kinematics_from_momentum(config.n, config.mass, config.p)


class ExperimentRunner:
    """
    Runs one CLI subcommand.

    Every run gets a correlation id; start and end are logged with the
    flags, exit code and wall time. Output text never contains timings, so
    identical flags give byte-identical stdout.
    """

    def __init__(self):
        self.logger = get_logger()
        self.telemetry = get_telemetry()
        self._handlers = {
            Subcommand.CORRELATE: self.run_correlate,
            Subcommand.SCAN: self.run_scan,
            Subcommand.CHSH: self.run_chsh,
            Subcommand.MC: self.run_mc,
            Subcommand.CHECK: self.run_check,
        }

    def run(self, config: RunConfig) -> RunOutcome:
        correlation_id = self.logger.new_correlation_id()
        subcommand = config.subcommand.value
        self.logger.log_run_start(
            subcommand, correlation_id, config.model_dump(mode="json", exclude_none=True)
        )
        start_time = time.perf_counter()

        try:
            outcome = self._handlers[config.subcommand](config)
        except DegenerateObservable as e:
            outcome = RunOutcome(EXIT_DEGENERATE, stderr=f"error: {e}\n")
        except RelSpinError as e:
            self.logger.log_usage_error(str(e), correlation_id)
            outcome = RunOutcome(EXIT_USAGE, stderr=f"error: {e}\n")
        except Exception as e:
            self.logger.log_error(
                f"{subcommand} failed: {e}",
                exception=e,
                operation=subcommand,
                correlation_id=correlation_id,
            )
            raise

        duration_ms = (time.perf_counter() - start_time) * 1000
        self.telemetry.record(operation=f"run_{subcommand}", duration_ms=duration_ms)
        self.logger.log_run_end(subcommand, correlation_id, outcome.exit_code, duration_ms)
        return outcome

    # =========================================================================
    # Subcommands
    # =========================================================================

    def run_correlate(self, config: RunConfig) -> RunOutcome:
        kin = resolve_kinematics(config)
        kin_b = kin.reversed() if config.antiparallel else None
        value = correlation_analytic(config.a, config.b, kin, kin_b)
        self.logger.log_result(
            EventType.CORRELATION_COMPUTED,
            f"E = {value!r} at beta={kin.beta}",
            metadata={"beta": kin.beta, "value": value, "antiparallel": config.antiparallel},
        )
        stderr = ANTIPARALLEL_NOTE if config.antiparallel else ""
        return RunOutcome(EXIT_OK, stdout=format_line_number(value) + "\n", stderr=stderr)

    def run_scan(self, config: RunConfig) -> RunOutcome:
        grid = beta_grid(config.beta_min, config.beta_max, config.steps)
        table = scan_beta(
            config.case,
            grid,
            n=config.n,
            angles=config.angles,
            restarts=config.restarts,
            seed=config.seed,
            tol=config.tol,
        )
        stderr = ""
        if table.flagged_rows:
            stderr = f"warning: {len(table.flagged_rows)} of {len(table.rows)} rows flagged\n"
        return RunOutcome(EXIT_OK, stdout=table_to_csv(table), stderr=stderr)

    def run_chsh(self, config: RunConfig) -> RunOutcome:
        kin = resolve_kinematics(config)
        result = max_chsh(kin, restarts=config.restarts, seed=config.seed, tol=config.tol)

        lines = [
            f"value={format_line_number(result.value)}",
            f"beta={format_line_number(result.beta)}",
        ]
        names = ("a", "a_prime", "b", "b_prime")
        for name, pair in zip(names, result.angles.pairs()):
            lines.append(f"theta_{name}={format_line_number(math.degrees(pair.theta))}")
            lines.append(f"phi_{name}={format_line_number(math.degrees(pair.phi))}")
        lines += [
            f"restarts={config.restarts}",
            f"converged_restarts={result.converged_restarts}",
            f"converged={'true' if result.converged else 'false'}",
        ]

        stderr = ANTIPARALLEL_NOTE if config.antiparallel else ""
        exit_code = EXIT_OK
        if result.converged_restarts == 0:
            exit_code = EXIT_NOT_CONVERGED
            stderr += "error: no optimizer restart converged\n"
        return RunOutcome(exit_code, stdout="\n".join(lines) + "\n", stderr=stderr)

    def run_mc(self, config: RunConfig) -> RunOutcome:
        kin = resolve_kinematics(config)
        kin_b = kin.reversed() if config.antiparallel else None
        estimate = mc_estimate(config.a, config.b, kin, config.samples, config.seed, kin_b=kin_b)
        lines = [
            f"e_hat={format_line_number(estimate.e_hat)}",
            f"stderr={format_line_number(estimate.stderr)}",
            f"samples={estimate.samples}",
            f"seed={estimate.seed}",
            f"e_reference={format_line_number(estimate.e_reference)}",
        ]
        stderr = ANTIPARALLEL_NOTE if config.antiparallel else ""
        return RunOutcome(EXIT_OK, stdout="\n".join(lines) + "\n", stderr=stderr)

    def run_check(self, config: RunConfig) -> RunOutcome:
        results = run_check(sweep_size=config.sweep_size, seed=config.seed)
        failed = [r.suite for r in results if not r.passed]
        stderr = f"failed suites: {', '.join(failed)}\n" if failed else ""
        exit_code = EXIT_CHECK_FAILED if failed else EXIT_OK
        return RunOutcome(exit_code, stdout=format_check_table(results), stderr=stderr)

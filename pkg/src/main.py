"""
RelSpin EPR - Main Entry Point

Command-line front end:

    relspin-epr correlate --beta 0.6 --a 0.70710678,0,0.70710678 --b -0.70710678,0,0.70710678
    relspin-epr scan --case eq16 --beta-min 0 --beta-max 1 --steps 5
    relspin-epr chsh --beta 0 --restarts 32 --seed 1
    relspin-epr mc --beta 0.6 --a ... --b ... --samples 1000000 --seed 7
    relspin-epr check

Exit codes: 0 success, 1 check failure, 2 usage error, 3 degenerate
observable, 4 optimizer non-convergence.
"""
import argparse
import atexit
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from src import __version__
from src.chsh import angle_set_from_degrees, direction_from_angles
from src.config import settings
from src.errors import InvalidDirection
from src.logging import init_logging, init_telemetry
from src.models.schemas import Direction, RunConfig, ScanCase, Subcommand
from src.orchestrator import EXIT_USAGE, ExperimentRunner

# Accepted spellings of --case
CASE_ALIASES = {
    "eq16": ScanCase.ORTHOGONAL_AXES,
    "fixed": ScanCase.FIXED_ANGLES,
    "fixed_angles": ScanCase.FIXED_ANGLES,
    "chsh_max": ScanCase.CHSH_MAX,
}

# Flags whose comma-separated values may start with a minus sign
VECTOR_FLAGS = frozenset({
    "--n", "--a", "--b", "--n-angles", "--a-angles", "--b-angles", "--angles",
})

_logger = None
_telemetry = None
_shutdown_registered = False


def _shutdown():
    """Flush the telemetry session report."""
    if _telemetry:
        if settings.DEBUG:
            print(_telemetry.get_timing_report(), file=sys.stderr)
        _telemetry.save_session_report()


# =============================================================================
# Flag parsing
# =============================================================================

def _floats(text: str, count: int) -> list[float]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}")


def parse_direction(text: str) -> Direction:
    """'x,y,z' with norm within PARSE_UNIT_TOL of 1, normalized."""
    try:
        return Direction.from_vector(_floats(text, 3), tol=settings.PARSE_UNIT_TOL)
    except InvalidDirection as e:
        raise argparse.ArgumentTypeError(str(e))


def parse_angle_direction(text: str) -> Direction:
    """'theta,phi' in degrees."""
    theta, phi = _floats(text, 2)
    try:
        return direction_from_angles(math.radians(theta), math.radians(phi))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def parse_angle_set(text: str):
    """Eight degrees: theta_a,phi_a,theta_a',phi_a',theta_b,phi_b,theta_b',phi_b'."""
    return angle_set_from_degrees(_floats(text, 8))


def parse_case(text: str) -> ScanCase:
    try:
        return CASE_ALIASES[text]
    except KeyError:
        raise argparse.ArgumentTypeError(
            f"unknown case {text!r}; choose from {', '.join(CASE_ALIASES)}"
        )


def _add_direction(parser: argparse.ArgumentParser, name: str, help_text: str):
    group = parser.add_mutually_exclusive_group()
    group.add_argument(f"--{name}", type=parse_direction, help=f"{help_text} as x,y,z")
    group.add_argument(
        f"--{name}-angles",
        dest=f"{name}_angles",
        type=parse_angle_direction,
        help=f"{help_text} as theta,phi in degrees",
    )


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one sub-parser per subcommand."""
    parser = argparse.ArgumentParser(
        prog="relspin-epr",
        description="Relativistic EPR-Bohm correlations of the center-of-mass spin.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument(
        "--seed",
        type=int,
        default=None,
        help="stream seed (default DEFAULT_SEED, or CHECK_SEED for check)",
    )
    _add_direction(common, "n", "momentum direction (default 0,0,1)")

    kinematic = argparse.ArgumentParser(add_help=False)
    kinematic.add_argument("--beta", type=float, help="speed |v|/c in [0, 1]")
    kinematic.add_argument("--mass", type=float, help="rest mass (natural units)")
    kinematic.add_argument("--p", type=float, help="momentum magnitude (natural units)")
    kinematic.add_argument(
        "--antiparallel",
        action="store_true",
        help="particle 2 moves along -n",
    )

    pair = argparse.ArgumentParser(add_help=False)
    _add_direction(pair, "a", "measurement direction of particle 1")
    _add_direction(pair, "b", "measurement direction of particle 2")

    optimizer = argparse.ArgumentParser(add_help=False)
    optimizer.add_argument("--restarts", type=int, default=settings.CHSH_RESTARTS)
    optimizer.add_argument("--tol", type=float, default=settings.CHSH_TOL)

    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser(
        "correlate",
        parents=[common, kinematic, pair],
        help="singlet correlation E(a, b) at one momentum",
    )

    scan = sub.add_parser("scan", parents=[common, optimizer], help="beta scan as CSV")
    scan.add_argument("--case", type=parse_case, default=ScanCase.ORTHOGONAL_AXES)
    scan.add_argument("--beta-min", type=float, default=0.0)
    scan.add_argument("--beta-max", type=float, default=1.0)
    scan.add_argument("--steps", type=int, default=101)
    scan.add_argument("--angles", type=parse_angle_set, help="8 angles in degrees for --case fixed")

    sub.add_parser(
        "chsh",
        parents=[common, kinematic, optimizer],
        help="maximize the CHSH functional at one momentum",
    )

    mc = sub.add_parser(
        "mc",
        parents=[common, kinematic, pair],
        help="Monte Carlo estimate of E(a, b)",
    )
    mc.add_argument("--samples", type=int, required=True)

    check = sub.add_parser("check", parents=[common], help="run the self-check suites")
    check.add_argument("--sweep-size", type=int, default=None)
    return parser


def attach_negative_values(argv: Sequence[str]) -> list[str]:
    """
    Rewrite `--b -0.7,0,0.7` as `--b=-0.7,0,0.7`.

    argparse only treats plain numbers such as -1.5 as values, so a triple
    starting with a minus sign would otherwise be read as an unknown option.
    """
    args = list(argv)
    out = []
    i = 0
    while i < len(args):
        arg = args[i]
        following = args[i + 1] if i + 1 < len(args) else None
        if (
            arg in VECTOR_FLAGS
            and following is not None
            and following.startswith("-")
            and not following.startswith("--")
        ):
            out.append(f"{arg}={following}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Build a RunConfig from parsed flags.

    Raises:
        pydantic.ValidationError: inconsistent flags
    """
    seed = args.seed
    if seed is None:
        seed = settings.CHECK_SEED if args.subcommand == "check" else settings.DEFAULT_SEED
    values = {"subcommand": Subcommand(args.subcommand), "seed": seed, "out": args.out}
    n = args.n or args.n_angles
    if n is not None:
        values["n"] = n
    for name in ("beta", "mass", "p", "samples", "restarts", "tol", "case", "angles",
                 "beta_min", "beta_max", "steps", "sweep_size", "antiparallel"):
        if getattr(args, name, None) is not None:
            values[name] = getattr(args, name)
    if hasattr(args, "a"):
        values["a"] = args.a or args.a_angles
        values["b"] = args.b or args.b_angles
    return RunConfig(**values)


def _write(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    global _logger, _telemetry, _shutdown_registered

    _logger = init_logging()
    _telemetry = init_telemetry()
    if not _shutdown_registered:
        atexit.register(_shutdown)
        _shutdown_registered = True

    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(attach_negative_values(argv))
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = config_from_args(args)
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        _logger.log_usage_error(messages)
        print(f"error: {messages}", file=sys.stderr)
        return EXIT_USAGE

    outcome = ExperimentRunner().run(config)
    if outcome.stderr:
        sys.stderr.write(outcome.stderr)
    if outcome.stdout:
        _write(outcome.stdout, config.out)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())

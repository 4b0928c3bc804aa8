"""Data models for RelSpin EPR."""
from .schemas import (
    TSIRELSON_BOUND,
    # Enums
    BasisFrame,
    ScanCase,
    Subcommand,
    # Geometry and kinematics
    Direction,
    X_HAT,
    Y_HAT,
    Z_HAT,
    MomentumProvenance,
    Kinematics,
    # Observables and states
    SpinObservable,
    BinaryObservable,
    SingletState,
    JointDistribution,
    PacketSpec,
    # Numerical results
    QuadratureRule,
    MinimizeResult,
    McEstimate,
    # CHSH and scans
    AnglePair,
    AngleSet,
    ChshResult,
    ScanRow,
    ScanTable,
    CheckResult,
    RunConfig,
)

__all__ = [
    "TSIRELSON_BOUND",
    "BasisFrame",
    "ScanCase",
    "Subcommand",
    "Direction",
    "X_HAT",
    "Y_HAT",
    "Z_HAT",
    "MomentumProvenance",
    "Kinematics",
    "SpinObservable",
    "BinaryObservable",
    "SingletState",
    "JointDistribution",
    "PacketSpec",
    "QuadratureRule",
    "MinimizeResult",
    "McEstimate",
    "AnglePair",
    "AngleSet",
    "ChshResult",
    "ScanRow",
    "ScanTable",
    "CheckResult",
    "RunConfig",
]

"""
RelSpin EPR - Data Models

Pydantic models for directions, kinematics, spin observables, the singlet
state, CHSH settings and scan tables. Natural units (hbar = c = 1) throughout.
"""
import math
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config import settings

TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)


# =============================================================================
# Enums
# =============================================================================

class BasisFrame(str, Enum):
    """Basis in which 2x2 spin matrices are written."""
    HELICITY = "helicity"  # quantized along the momentum direction n
    LAB = "lab"            # fixed laboratory x, y, z


class ScanCase(str, Enum):
    """Beta-scan workloads."""
    ORTHOGONAL_AXES = "eq16"
    FIXED_ANGLES = "fixed_angles"
    CHSH_MAX = "chsh_max"


class Subcommand(str, Enum):
    """CLI subcommands."""
    CORRELATE = "correlate"
    SCAN = "scan"
    CHSH = "chsh"
    MC = "mc"
    CHECK = "check"


# =============================================================================
# Geometry and Kinematics
# =============================================================================

class Direction(BaseModel):
    """Unit 3-vector for a measurement axis or momentum direction."""
    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    z: float

    @model_validator(mode="after")
    def _check_unit(self) -> "Direction":
        components = (self.x, self.y, self.z)
        if not all(math.isfinite(c) for c in components):
            raise ValueError("direction components must be finite")
        norm_sq = self.x * self.x + self.y * self.y + self.z * self.z
        if abs(norm_sq - 1.0) > settings.UNIT_TOL:
            raise ValueError(f"direction is not a unit vector (|v|^2 = {norm_sq!r})")
        return self

    @classmethod
    def from_vector(cls, vector, tol: Optional[float] = None) -> "Direction":
        """
        Normalize a 3-vector into a Direction.

        Args:
            vector: Any length-3 sequence of reals
            tol: If given, reject vectors whose norm differs from 1 by more than tol

        Raises:
            InvalidDirection: zero, non-finite or (with tol) non-unit input
        """
        from src.errors import InvalidDirection

        v = np.asarray(vector, dtype=float)
        if v.shape != (3,) or not np.all(np.isfinite(v)):
            raise InvalidDirection(f"expected 3 finite components, got {vector!r}", vector)
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            raise InvalidDirection("zero vector has no direction", vector)
        if tol is not None and abs(norm - 1.0) > tol:
            raise InvalidDirection(
                f"norm {norm:.9g} deviates from 1 by more than {tol:g}", vector
            )
        v = v / norm
        return cls(x=float(v[0]), y=float(v[1]), z=float(v[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def dot(self, other: "Direction") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def __neg__(self) -> "Direction":
        return Direction(x=-self.x, y=-self.y, z=-self.z)


X_HAT = Direction(x=1.0, y=0.0, z=0.0)
Y_HAT = Direction(x=0.0, y=1.0, z=0.0)
Z_HAT = Direction(x=0.0, y=0.0, z=1.0)


class MomentumProvenance(BaseModel):
    """Mass and momentum magnitude a beta was derived from (natural units)."""
    model_config = ConfigDict(frozen=True)

    mass: float = Field(..., gt=0, allow_inf_nan=False)
    p_mag: float = Field(..., ge=0, allow_inf_nan=False)


class Kinematics(BaseModel):
    """Momentum direction n and speed beta = |v|/c shared by both particles."""
    model_config = ConfigDict(frozen=True)

    n: Direction
    beta: float = Field(..., ge=0.0, le=1.0, allow_inf_nan=False)
    provenance: Optional[MomentumProvenance] = None

    @model_validator(mode="after")
    def _check_provenance(self) -> "Kinematics":
        if self.provenance is not None:
            p, m = self.provenance.p_mag, self.provenance.mass
            expected = p / math.hypot(p, m)
            if abs(expected - self.beta) > 1e-12:
                raise ValueError(
                    f"beta {self.beta!r} inconsistent with mass={m!r}, p={p!r}"
                )
        return self

    @property
    def one_minus_beta_sq(self) -> float:
        """1 - beta^2, evaluated as (1 - beta)(1 + beta)."""
        return (1.0 - self.beta) * (1.0 + self.beta)

    @property
    def inv_gamma(self) -> float:
        """sqrt(1 - beta^2) = m / p0."""
        return math.sqrt(self.one_minus_beta_sq)

    def reversed(self) -> "Kinematics":
        """Same speed, momentum along -n."""
        return self.model_copy(update={"n": -self.n})


# =============================================================================
# Spin Observables and States
# =============================================================================

class SpinObservable(BaseModel):
    """Spin projection a.S = alpha(a, p).s as a 2x2 Hermitian matrix."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    direction_a: Direction
    kin: Kinematics
    alpha: tuple[float, float, float]
    matrix: np.ndarray
    frame: BasisFrame = BasisFrame.HELICITY

    @property
    def alpha_norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.alpha))


class BinaryObservable(BaseModel):
    """Spin projection normalized by its top eigenvalue: a +-1 valued observable."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    direction: Direction
    kin: Kinematics
    unit_alpha: Direction
    matrix: np.ndarray
    frame: BasisFrame = BasisFrame.HELICITY


class SingletState(BaseModel):
    """Two-particle singlet in the product helicity basis (++, +-, -+, --)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vector: np.ndarray

    @field_validator("vector")
    @classmethod
    def _check_normalized(cls, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=complex)
        if v.shape != (4,):
            raise ValueError("state vector must have 4 amplitudes")
        if abs(float(np.vdot(v, v).real) - 1.0) > 1e-12:
            raise ValueError("state vector is not normalized")
        return v


class JointDistribution(BaseModel):
    """Outcome probabilities P(r, s) for r, s in {+1, -1}."""
    model_config = ConfigDict(frozen=True)

    p_pp: float = Field(..., ge=0.0)
    p_pm: float = Field(..., ge=0.0)
    p_mp: float = Field(..., ge=0.0)
    p_mm: float = Field(..., ge=0.0)

    def prob(self, r: int, s: int) -> float:
        return {
            (1, 1): self.p_pp,
            (1, -1): self.p_pm,
            (-1, 1): self.p_mp,
            (-1, -1): self.p_mm,
        }[(r, s)]

    def as_dict(self) -> dict[tuple[int, int], float]:
        return {(r, s): self.prob(r, s) for r in (1, -1) for s in (1, -1)}

    def marginal_a(self, r: int) -> float:
        return self.prob(r, 1) + self.prob(r, -1)

    def marginal_b(self, s: int) -> float:
        return self.prob(1, s) + self.prob(-1, s)


class PacketSpec(BaseModel):
    """Gaussian momentum-magnitude packet for incoherent averaging."""
    model_config = ConfigDict(frozen=True)

    mass: float = Field(..., gt=0, allow_inf_nan=False)
    p_mean: float = Field(..., ge=0, allow_inf_nan=False)
    p_sigma: float = Field(..., gt=0, allow_inf_nan=False)
    n: Direction
    quadrature_order: int = Field(default=settings.QUADRATURE_ORDER, ge=1, le=64)

    @property
    def well_localized(self) -> bool:
        """True when p_sigma < p_mean / 3, i.e. negative momenta are negligible."""
        return self.p_mean > 0 and self.p_sigma < self.p_mean / 3.0


# =============================================================================
# Numerical Results
# =============================================================================

class QuadratureRule(BaseModel):
    """Gauss-Hermite nodes and weights for the weight function exp(-x^2)."""
    model_config = ConfigDict(frozen=True)

    nodes: tuple[float, ...]
    weights: tuple[float, ...]

    @model_validator(mode="after")
    def _check_rule(self) -> "QuadratureRule":
        if len(self.nodes) != len(self.weights) or not self.nodes:
            raise ValueError("nodes and weights must be non-empty and of equal length")
        if any(b <= a for a, b in zip(self.nodes, self.nodes[1:])):
            raise ValueError("nodes must be strictly increasing")
        if abs(math.fsum(self.weights) - math.sqrt(math.pi)) > 1e-10:
            raise ValueError("weights must sum to sqrt(pi)")
        return self

    @property
    def order(self) -> int:
        return len(self.nodes)


class MinimizeResult(BaseModel):
    """Outcome of a simplex minimization."""
    model_config = ConfigDict(frozen=True)

    x: tuple[float, ...]
    fun: float
    iterations: int
    evaluations: int
    converged: bool
    message: str = ""


class McEstimate(BaseModel):
    """Monte Carlo estimate of a correlation."""
    model_config = ConfigDict(frozen=True)

    e_hat: float = Field(..., ge=-1.0, le=1.0)
    stderr: float = Field(..., ge=0.0)
    samples: int
    seed: int
    e_reference: float

    @property
    def evaluations(self) -> int:
        return self.samples


# =============================================================================
# CHSH Models
# =============================================================================

class AnglePair(BaseModel):
    """Polar angle theta in [0, pi] and azimuth phi in [-pi, pi], radians."""
    model_config = ConfigDict(frozen=True)

    theta: float = Field(..., ge=0.0, le=math.pi)
    phi: float = Field(..., ge=-math.pi, le=math.pi)


class AngleSet(BaseModel):
    """Measurement settings a, a', b, b' for the CHSH functional."""
    model_config = ConfigDict(frozen=True)

    a: AnglePair
    a_prime: AnglePair
    b: AnglePair
    b_prime: AnglePair

    def pairs(self) -> tuple[AnglePair, AnglePair, AnglePair, AnglePair]:
        return (self.a, self.a_prime, self.b, self.b_prime)

    def as_vector(self) -> tuple[float, ...]:
        """Flatten to (theta_a, phi_a, theta_a', phi_a', theta_b, ...)."""
        return tuple(v for pair in self.pairs() for v in (pair.theta, pair.phi))


class ChshResult(BaseModel):
    """Best CHSH value found by the multi-start optimizer at fixed beta."""
    model_config = ConfigDict(frozen=True)

    beta: float
    value: float = Field(..., ge=0.0, le=TSIRELSON_BOUND + 1e-9)
    angles: AngleSet
    restarts_used: int
    converged: bool
    converged_restarts: int
    evaluations: int = 0


class ScanRow(BaseModel):
    """One beta row of a scan; flagged rows carry an error marker instead of values."""
    model_config = ConfigDict(frozen=True)

    beta: float
    values: dict[str, float] = Field(default_factory=dict)
    status: str = "ok"

    @field_validator("values")
    @classmethod
    def _check_finite(cls, values: dict[str, float]) -> dict[str, float]:
        for key, value in values.items():
            if not math.isfinite(value):
                raise ValueError(f"column {key} is not finite")
        return values

    @property
    def flagged(self) -> bool:
        return self.status != "ok"


class ScanTable(BaseModel):
    """Ordered scan rows with a declared column schema."""
    model_config = ConfigDict(frozen=True)

    case: ScanCase
    columns: tuple[str, ...]
    rows: tuple[ScanRow, ...]

    @model_validator(mode="after")
    def _check_rows(self) -> "ScanTable":
        betas = [row.beta for row in self.rows]
        if any(b <= a for a, b in zip(betas, betas[1:])):
            raise ValueError("scan rows must have strictly increasing beta")
        for row in self.rows:
            if not row.flagged and set(row.values) != set(self.columns):
                raise ValueError(f"row at beta={row.beta} does not match the column schema")
        return self

    @property
    def flagged_rows(self) -> list[ScanRow]:
        return [row for row in self.rows if row.flagged]


# =============================================================================
# Check Suite
# =============================================================================

class CheckResult(BaseModel):
    """Outcome of one self-check suite."""
    model_config = ConfigDict(frozen=True)

    suite: str
    passed: bool
    max_error: float
    threshold: float
    cases: int
    detail: str = ""


# =============================================================================
# Run Configuration
# =============================================================================

_KINEMATIC_SUBCOMMANDS = (Subcommand.CORRELATE, Subcommand.CHSH, Subcommand.MC)


class RunConfig(BaseModel):
    """Validated command-line request for one subcommand."""
    model_config = ConfigDict(frozen=True)

    subcommand: Subcommand
    beta: Optional[float] = Field(default=None, ge=0.0, le=1.0, allow_inf_nan=False)
    mass: Optional[float] = Field(default=None, gt=0, allow_inf_nan=False)
    p: Optional[float] = Field(default=None, ge=0, allow_inf_nan=False)
    n: Direction = Z_HAT
    a: Optional[Direction] = None
    b: Optional[Direction] = None
    antiparallel: bool = False

    seed: int = Field(default=settings.DEFAULT_SEED, ge=0, lt=2**64)
    samples: Optional[int] = None
    restarts: int = Field(default=settings.CHSH_RESTARTS, ge=1)
    tol: float = Field(default=settings.CHSH_TOL, gt=0, allow_inf_nan=False)

    case: ScanCase = ScanCase.ORTHOGONAL_AXES
    beta_min: float = 0.0
    beta_max: float = 1.0
    steps: int = 101
    angles: Optional[AngleSet] = None

    sweep_size: Optional[int] = Field(default=None, ge=1)
    out: Optional[str] = None

    @model_validator(mode="after")
    def _check_flags(self) -> "RunConfig":
        has_beta = self.beta is not None
        has_momentum = self.mass is not None or self.p is not None
        if self.subcommand in _KINEMATIC_SUBCOMMANDS:
            if has_beta == has_momentum:
                raise ValueError("give exactly one of --beta or (--mass and --p)")
            if has_momentum and (self.mass is None or self.p is None):
                raise ValueError("--mass and --p must be given together")
        elif has_beta or has_momentum:
            raise ValueError(f"{self.subcommand.value} does not take --beta, --mass or --p")

        if self.subcommand in (Subcommand.CORRELATE, Subcommand.MC):
            if self.a is None or self.b is None:
                raise ValueError("directions --a and --b are required")
        if self.subcommand == Subcommand.MC:
            if self.samples is None or self.samples < settings.MC_MIN_SAMPLES:
                raise ValueError(f"--samples must be >= {settings.MC_MIN_SAMPLES}")
        return self

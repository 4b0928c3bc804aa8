"""
RelSpin EPR - Configuration Module

Handles environment variables and numerical defaults.
"""
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == "true"


class Settings:
    """Application configuration settings."""

    # Application Settings
    DEBUG: bool = _env_bool("DEBUG", "false")
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_TO_FILE: bool = _env_bool("LOG_TO_FILE", "true")

    # Output directories
    OUTPUT_DIR: str = os.getenv("OUTPUT_DIR", "output")
    LOGS_DIR: str = os.getenv("LOGS_DIR", "logs")

    # Numerical tolerances
    DEGENERACY_EPS: float = float(os.getenv("DEGENERACY_EPS", "1e-12"))
    HERMITIAN_TOL: float = float(os.getenv("HERMITIAN_TOL", "1e-12"))
    UNIT_TOL: float = float(os.getenv("UNIT_TOL", "1e-12"))
    PARSE_UNIT_TOL: float = float(os.getenv("PARSE_UNIT_TOL", "1e-6"))

    # CHSH optimizer
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", "1"))
    CHSH_RESTARTS: int = int(os.getenv("CHSH_RESTARTS", "32"))
    CHSH_TOL: float = float(os.getenv("CHSH_TOL", "1e-12"))
    CHSH_MAX_ITER: int = int(os.getenv("CHSH_MAX_ITER", "4000"))
    CHSH_TIE_TOL: float = float(os.getenv("CHSH_TIE_TOL", "1e-12"))
    BETA_ONE_MIN_AXIAL: float = float(os.getenv("BETA_ONE_MIN_AXIAL", "0.1"))

    # Monte Carlo
    MC_MIN_SAMPLES: int = int(os.getenv("MC_MIN_SAMPLES", "100"))
    MC_WORKERS: int = int(os.getenv("MC_WORKERS", "1"))

    # Wave-packet quadrature
    QUADRATURE_ORDER: int = int(os.getenv("QUADRATURE_ORDER", "16"))
    QUADRATURE_NEWTON_TOL: float = float(os.getenv("QUADRATURE_NEWTON_TOL", "1e-14"))

    # Self-check suite
    CHECK_SWEEP_SIZE: int = int(os.getenv("CHECK_SWEEP_SIZE", "100000"))
    CHECK_SEED: int = int(os.getenv("CHECK_SEED", "20240501"))


settings = Settings()

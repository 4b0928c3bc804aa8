"""
RelSpin EPR - Logging Module

Structured run logging and runtime telemetry for numerical workflows.
"""

from .run_logger import (
    SimulationLogger,
    EventType,
    get_logger,
    init_logging,
    log_operation,
)

from .telemetry import (
    RuntimeTelemetry,
    OperationMetrics,
    SessionMetrics,
    get_telemetry,
    get_tracer,
    init_telemetry,
    track_operation,
    setup_opentelemetry,
)

__all__ = [
    # Run Logging
    "SimulationLogger",
    "EventType",
    "get_logger",
    "init_logging",
    "log_operation",
    # Telemetry
    "RuntimeTelemetry",
    "OperationMetrics",
    "SessionMetrics",
    "get_telemetry",
    "get_tracer",
    "init_telemetry",
    "track_operation",
    "setup_opentelemetry",
]

"""
RelSpin EPR - Runtime Telemetry

Timing and evaluation counts for the expensive operations (optimizer
restarts, Monte Carlo draws, check sweeps), with optional OpenTelemetry spans.
"""
import json
import logging
import sys
import threading
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from functools import wraps
from pathlib import Path
from typing import Optional

from src.config import settings


@dataclass
class OperationMetrics:
    """Metrics for a single tracked operation."""
    call_id: str
    timestamp: str
    operation: str

    # Timing
    duration_ms: float = 0.0

    # Work done (objective evaluations, samples, sweep points)
    evaluations: int = 0

    # Error tracking
    error: Optional[str] = None
    success: bool = True


@dataclass
class SessionMetrics:
    """Aggregated metrics for a session."""
    session_id: str
    start_time: str
    end_time: Optional[str] = None

    total_calls: int = 0
    successful_calls: int = 0
    failed_calls: int = 0

    total_evaluations: int = 0
    total_duration_ms: float = 0.0

    # By operation breakdown
    calls_by_operation: dict = field(default_factory=dict)
    duration_by_operation: dict = field(default_factory=dict)
    evaluations_by_operation: dict = field(default_factory=dict)


# =============================================================================
# Telemetry Collector
# =============================================================================

class RuntimeTelemetry:
    """
    Runtime telemetry for numerical workloads.

    Tracks:
    - Wall time per operation and session
    - Work counts (function evaluations, samples)
    - Failures
    """

    _instance: Optional["RuntimeTelemetry"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        self._initialized = True
        self._session_id = datetime.now(timezone.utc).strftime("%Y%m%d_%H%M%S")
        self._session_metrics = SessionMetrics(
            session_id=self._session_id,
            start_time=datetime.now(timezone.utc).isoformat(),
        )
        self._call_history: list[OperationMetrics] = []
        self._call_counter = 0
        # record() is called from the seed-sweep and restart thread pools
        self._lock = threading.Lock()
        self.logs_dir = Path(settings.LOGS_DIR)

        self.telemetry_logger = logging.getLogger("relspin.telemetry")
        self.telemetry_logger.setLevel(logging.INFO)
        self.telemetry_logger.handlers.clear()
        self.telemetry_logger.propagate = False
        if settings.LOG_TO_FILE:
            self.logs_dir.mkdir(parents=True, exist_ok=True)
            handler = logging.FileHandler(
                self.logs_dir / "telemetry.jsonl",
                encoding="utf-8",
            )
            handler.setFormatter(logging.Formatter("%(message)s"))
            self.telemetry_logger.addHandler(handler)
        else:
            self.telemetry_logger.addHandler(logging.NullHandler())

    @property
    def session_id(self) -> str:
        return self._session_id

    @property
    def history(self) -> list[OperationMetrics]:
        return list(self._call_history)

    def _generate_call_id(self) -> str:
        self._call_counter += 1
        return f"{self._session_id}_{self._call_counter:04d}"

    def record(
        self,
        operation: str,
        duration_ms: float,
        evaluations: int = 0,
        error: Optional[str] = None,
    ) -> OperationMetrics:
        """
        Record one completed operation.

        Args:
            operation: Operation name
            duration_ms: Wall time in milliseconds
            evaluations: Work units performed (objective calls, samples, ...)
            error: Error message if the operation failed

        Returns:
            OperationMetrics with all recorded data
        """
        with self._lock:
            metrics = OperationMetrics(
                call_id=self._generate_call_id(),
                timestamp=datetime.now(timezone.utc).isoformat(),
                operation=operation,
                duration_ms=duration_ms,
                evaluations=evaluations,
                error=error,
                success=error is None,
            )
            self._call_history.append(metrics)
            self._update_session_metrics(metrics)
        self.telemetry_logger.info(json.dumps(asdict(metrics)))
        return metrics

    def _update_session_metrics(self, call: OperationMetrics):
        s = self._session_metrics

        s.total_calls += 1
        if call.success:
            s.successful_calls += 1
        else:
            s.failed_calls += 1

        s.total_evaluations += call.evaluations
        s.total_duration_ms += call.duration_ms

        op = call.operation
        s.calls_by_operation[op] = s.calls_by_operation.get(op, 0) + 1
        s.duration_by_operation[op] = s.duration_by_operation.get(op, 0.0) + call.duration_ms
        s.evaluations_by_operation[op] = (
            s.evaluations_by_operation.get(op, 0) + call.evaluations
        )

    def get_session_summary(self) -> dict:
        """Get current session metrics summary."""
        with self._lock:
            s = self._session_metrics
            s.end_time = datetime.now(timezone.utc).isoformat()
            return asdict(s)

    def get_timing_report(self) -> str:
        """Generate a human-readable timing report."""
        s = self._session_metrics
        lines = [
            f"session {s.session_id}: {s.total_calls} operations, "
            f"{s.failed_calls} failed, {s.total_duration_ms:,.0f} ms",
        ]
        for op, calls in sorted(s.calls_by_operation.items()):
            lines.append(
                f"  {op:<24} {calls:>4} calls "
                f"{s.evaluations_by_operation.get(op, 0):>12,} evals "
                f"{s.duration_by_operation.get(op, 0.0):>10,.1f} ms"
            )
        return "\n".join(lines)

    def save_session_report(self):
        """Save final session report to LOGS_DIR."""
        if not settings.LOG_TO_FILE:
            return
        self.logs_dir.mkdir(parents=True, exist_ok=True)
        report_file = self.logs_dir / f"session_{self._session_id}_report.json"
        with open(report_file, "w", encoding="utf-8") as f:
            json.dump(self.get_session_summary(), f, indent=2)
        text_file = self.logs_dir / f"session_{self._session_id}_report.txt"
        text_file.write_text(self.get_timing_report() + "\n", encoding="utf-8")


# =============================================================================
# Operation Wrapper with Telemetry
# =============================================================================

def track_operation(operation: Optional[str] = None):
    """
    Decorator to time an operation and record it with telemetry.

    If the wrapped function returns an object with an ``evaluations``
    attribute, that count is recorded as the work done.

    Usage:
        @track_operation("max_chsh")
        def max_chsh(kin, restarts, seed, tol):
            ...
    """
    def decorator(func):
        name = operation or func.__name__

        @wraps(func)
        def wrapper(*args, **kwargs):
            telemetry = get_telemetry()
            tracer = get_tracer()
            start_time = time.perf_counter()
            error = None
            evaluations = 0
            span = tracer.start_as_current_span(name) if tracer else None
            try:
                if span is not None:
                    with span:
                        result = func(*args, **kwargs)
                else:
                    result = func(*args, **kwargs)
                evaluations = int(getattr(result, "evaluations", 0) or 0)
                return result
            except Exception as e:
                error = str(e)
                raise
            finally:
                telemetry.record(
                    operation=name,
                    duration_ms=(time.perf_counter() - start_time) * 1000,
                    evaluations=evaluations,
                    error=error,
                )
        return wrapper
    return decorator


# =============================================================================
# OpenTelemetry Integration (Optional)
# =============================================================================

def setup_opentelemetry(service_name: str = "relspin-epr") -> bool:
    """
    Setup OpenTelemetry for tracing.

    Returns True if setup successful, False otherwise.
    """
    try:
        from opentelemetry import trace
        from opentelemetry.sdk.resources import Resource
        from opentelemetry.sdk.trace import TracerProvider
        from opentelemetry.sdk.trace.export import (
            BatchSpanProcessor,
            ConsoleSpanExporter,
        )

        resource = Resource.create({"service.name": service_name})
        provider = TracerProvider(resource=resource)

        # stdout carries results only
        if settings.DEBUG:
            processor = BatchSpanProcessor(ConsoleSpanExporter(out=sys.stderr))
            provider.add_span_processor(processor)

        trace.set_tracer_provider(provider)
        return True

    except ImportError:
        return False


def get_tracer(name: str = "relspin"):
    """Get OpenTelemetry tracer."""
    try:
        from opentelemetry import trace
        return trace.get_tracer(name)
    except ImportError:
        return None


# =============================================================================
# Module-level accessor
# =============================================================================

_telemetry_instance: Optional[RuntimeTelemetry] = None
_tracing_configured = False


def get_telemetry() -> RuntimeTelemetry:
    """Get the singleton telemetry instance."""
    global _telemetry_instance
    if _telemetry_instance is None:
        _telemetry_instance = RuntimeTelemetry()
    return _telemetry_instance


def init_telemetry() -> RuntimeTelemetry:
    """Initialize telemetry system. Call at application startup."""
    global _tracing_configured
    telemetry = get_telemetry()
    if not _tracing_configured:
        setup_opentelemetry()
        _tracing_configured = True
    return telemetry

"""
RelSpin EPR - Run Logger

Structured logging for numerical runs. Every CLI invocation gets a session id
and every workflow a correlation id, so scan rows, optimizer restarts and
check suites can be traced back to the run that produced them.
"""
import json
import logging
import os
import time
import uuid
from datetime import datetime, timezone
from enum import Enum
from functools import wraps
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Callable, Optional

from src.config import settings


# =============================================================================
# Enums for Run Events
# =============================================================================

class EventType(str, Enum):
    """Types of run events."""
    # Run lifecycle
    RUN_START = "RUN_START"
    RUN_END = "RUN_END"
    USAGE_ERROR = "USAGE_ERROR"

    # Physics results
    CORRELATION_COMPUTED = "CORRELATION_COMPUTED"
    SCAN_ROW = "SCAN_ROW"
    SCAN_ROW_FLAGGED = "SCAN_ROW_FLAGGED"
    CHSH_RESTART = "CHSH_RESTART"
    CHSH_RESULT = "CHSH_RESULT"
    MC_RUN = "MC_RUN"
    CHECK_SUITE = "CHECK_SUITE"

    # Numerical warnings
    DEGENERATE_OBSERVABLE = "DEGENERATE_OBSERVABLE"
    CONVERGENCE_WARNING = "CONVERGENCE_WARNING"
    PACKET_CLAMPED = "PACKET_CLAMPED"
    PACKET_WIDE = "PACKET_WIDE"
    OPERATION = "OPERATION"


# =============================================================================
# Custom Formatters
# =============================================================================

class StructuredFormatter(logging.Formatter):
    """Formats log records as one JSON object per line."""

    EXTRA_FIELDS = (
        "event_type",
        "session_id",
        "correlation_id",
        "operation",
        "duration_ms",
        "metadata",
    )

    def __init__(self):
        super().__init__()
        self.hostname = os.getenv("HOSTNAME", "localhost")

    def format(self, record: logging.LogRecord) -> str:
        log_entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "hostname": self.hostname,
            "process_id": record.process,
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }
        for name in self.EXTRA_FIELDS:
            if hasattr(record, name):
                log_entry[name] = getattr(record, name)

        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_entry, default=str)


class ConsoleFormatter(logging.Formatter):
    """Human-readable stderr formatter with colors."""

    COLORS = {
        "DEBUG": "\033[36m",     # Cyan
        "INFO": "\033[32m",      # Green
        "WARNING": "\033[33m",   # Yellow
        "ERROR": "\033[31m",     # Red
        "CRITICAL": "\033[35m",  # Magenta
    }
    RESET = "\033[0m"

    def format(self, record: logging.LogRecord) -> str:
        color = self.COLORS.get(record.levelname, self.RESET)
        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")

        prefix_parts = [f"{color}[{record.levelname}]{self.RESET}"]
        if hasattr(record, "operation"):
            prefix_parts.append(f"[{record.operation}]")
        if hasattr(record, "event_type"):
            prefix_parts.append(f"<{record.event_type}>")

        return f"{timestamp} {' '.join(prefix_parts)} {record.getMessage()}"


# =============================================================================
# Main Logger Class
# =============================================================================

class SimulationLogger:
    """
    Session-scoped logger for simulation runs.

    Provides:
    - Structured JSON log files (rotating) when LOG_TO_FILE is enabled
    - Colored console output on stderr when DEBUG is enabled
    - Session and correlation ids on every record
    - Helpers for the physics events the CLI reports
    """

    _instance: Optional["SimulationLogger"] = None

    def __new__(cls):
        """Singleton pattern for consistent logging."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        self._initialized = True
        self._session_id = str(uuid.uuid4())
        self.logs_dir = Path(settings.LOGS_DIR)

        self._setup_loggers()

    @property
    def session_id(self) -> str:
        return self._session_id

    def _setup_loggers(self):
        """Set up all required loggers."""
        log_level = getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)

        # Application lifecycle and errors
        self.app_logger = logging.getLogger("relspin.app")
        # Physics results of each run
        self.run_logger = logging.getLogger("relspin.runs")
        # Numerical warnings: degeneracy, convergence, clamping
        self.numerics_logger = logging.getLogger("relspin.numerics")

        for logger in (self.app_logger, self.run_logger, self.numerics_logger):
            logger.setLevel(log_level)
            logger.handlers.clear()
            logger.propagate = False

        self._add_handlers()

    def _add_handlers(self):
        """Add file and console handlers."""
        loggers = (self.app_logger, self.run_logger, self.numerics_logger)

        if settings.DEBUG:
            console_handler = logging.StreamHandler()  # stderr
            console_handler.setFormatter(ConsoleFormatter())
            for logger in loggers:
                logger.addHandler(console_handler)

        if not settings.LOG_TO_FILE:
            if not settings.DEBUG:
                for logger in loggers:
                    logger.addHandler(logging.NullHandler())
            return

        self.logs_dir.mkdir(parents=True, exist_ok=True)
        file_names = {
            self.app_logger: "app.log",
            self.run_logger: "runs.log",
            self.numerics_logger: "numerics.log",
        }
        for logger, file_name in file_names.items():
            handler = RotatingFileHandler(
                self.logs_dir / file_name,
                maxBytes=10 * 1024 * 1024,  # 10MB
                backupCount=5,
                encoding="utf-8",
            )
            handler.setFormatter(StructuredFormatter())
            logger.addHandler(handler)

    # =========================================================================
    # Utility Methods
    # =========================================================================

    def new_correlation_id(self) -> str:
        """Generate a new correlation ID for run tracking."""
        return str(uuid.uuid4())

    def _create_extra(
        self,
        event_type: EventType,
        correlation_id: Optional[str] = None,
        operation: Optional[str] = None,
        duration_ms: Optional[float] = None,
        metadata: Optional[dict] = None,
    ) -> dict:
        """Create extra fields for log record."""
        extra = {
            "event_type": event_type.value,
            "session_id": self._session_id,
        }
        if correlation_id:
            extra["correlation_id"] = correlation_id
        if operation:
            extra["operation"] = operation
        if duration_ms is not None:
            extra["duration_ms"] = duration_ms
        if metadata:
            extra["metadata"] = metadata
        return extra

    # =========================================================================
    # Run Event Logging
    # =========================================================================

    def log_run_start(self, subcommand: str, correlation_id: str, flags: dict):
        """Log the start of a CLI workflow."""
        extra = self._create_extra(
            EventType.RUN_START,
            correlation_id=correlation_id,
            operation=subcommand,
            metadata={"flags": flags},
        )
        self.app_logger.info(f"Run started: {subcommand}", extra=extra)

    def log_run_end(
        self,
        subcommand: str,
        correlation_id: str,
        exit_code: int,
        duration_ms: float,
    ):
        """Log the end of a CLI workflow."""
        extra = self._create_extra(
            EventType.RUN_END,
            correlation_id=correlation_id,
            operation=subcommand,
            duration_ms=duration_ms,
            metadata={"exit_code": exit_code},
        )
        self.app_logger.info(
            f"Run finished: {subcommand} exit={exit_code} in {duration_ms:.0f}ms",
            extra=extra,
        )

    def log_usage_error(self, message: str, correlation_id: Optional[str] = None):
        """Log a rejected command line."""
        extra = self._create_extra(EventType.USAGE_ERROR, correlation_id=correlation_id)
        self.app_logger.warning(f"Usage error: {message}", extra=extra)

    def log_result(
        self,
        event_type: EventType,
        message: str,
        correlation_id: Optional[str] = None,
        metadata: Optional[dict] = None,
    ):
        """Log a physics result (correlation, scan row, CHSH value, MC run)."""
        extra = self._create_extra(
            event_type, correlation_id=correlation_id, metadata=metadata
        )
        self.run_logger.info(message, extra=extra)

    def log_numerical_warning(
        self,
        event_type: EventType,
        message: str,
        correlation_id: Optional[str] = None,
        metadata: Optional[dict] = None,
    ):
        """Log a numerical condition worth a second look."""
        extra = self._create_extra(
            event_type, correlation_id=correlation_id, metadata=metadata
        )
        self.numerics_logger.warning(message, extra=extra)

    def log_error(
        self,
        error_message: str,
        exception: Optional[Exception] = None,
        operation: Optional[str] = None,
        correlation_id: Optional[str] = None,
    ):
        """Log errors with full context."""
        extra = self._create_extra(
            EventType.OPERATION,
            correlation_id=correlation_id,
            operation=operation,
        )
        self.app_logger.error(error_message, exc_info=exception, extra=extra)


# =============================================================================
# Decorators for Easy Logging
# =============================================================================

def log_operation(func: Callable) -> Callable:
    """
    Decorator to log a library operation with timing.

    Usage:
        @log_operation
        def max_chsh(kin, restarts, seed, tol):
            ...
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        logger = get_logger()
        start_time = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            duration_ms = (time.perf_counter() - start_time) * 1000
            logger.numerics_logger.debug(
                f"{func.__name__} failed after {duration_ms:.1f}ms: {e}",
                extra=logger._create_extra(
                    EventType.OPERATION,
                    operation=func.__name__,
                    duration_ms=duration_ms,
                ),
            )
            raise
        duration_ms = (time.perf_counter() - start_time) * 1000
        logger.numerics_logger.debug(
            f"{func.__name__} completed in {duration_ms:.1f}ms",
            extra=logger._create_extra(
                EventType.OPERATION,
                operation=func.__name__,
                duration_ms=duration_ms,
            ),
        )
        return result

    return wrapper


# =============================================================================
# Module-level accessor
# =============================================================================

_logger_instance: Optional[SimulationLogger] = None


def get_logger() -> SimulationLogger:
    """Get the singleton logger instance."""
    global _logger_instance
    if _logger_instance is None:
        _logger_instance = SimulationLogger()
    return _logger_instance


def init_logging() -> SimulationLogger:
    """Initialize the logging system. Call at application startup."""
    return get_logger()

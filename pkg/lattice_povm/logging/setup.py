"""
Structured logging setup with run ID support.
"""
import logging
import sys
import uuid
from contextvars import ContextVar
from typing import Any, Optional

import structlog
from structlog.types import EventDict

from .formatters import DurationFormatter, NumpyJSONFormatter

# One run ID per CLI invocation; tagged onto every event and the run manifest
run_id: ContextVar[Optional[str]] = ContextVar('run_id', default=None)


def set_run_id(rid: Optional[str] = None) -> str:
    """Set run ID in context."""
    if rid is None:
        rid = uuid.uuid4().hex[:12]
    run_id.set(rid)
    return rid


def get_run_id() -> Optional[str]:
    """Get current run ID from context."""
    return run_id.get()


def add_run_id(logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
    """Add run ID to log event."""
    rid = get_run_id()
    if rid:
        event_dict['run_id'] = rid
    return event_dict


def setup_logging(
    log_level: str = "INFO",
    log_format: str = "console",
    stream: Any = None,
) -> None:
    """
    Setup structured logging.

    Events go to stderr by default so that stdout stays reserved for
    command output (occupations, energies, verification verdicts).

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
        log_format: Format type ('json' or 'console')
        stream: Optional stream override
    """
    processors = [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        add_run_id,
        DurationFormatter(),
        NumpyJSONFormatter(),
    ]

    if log_format == "json":
        processors.extend([structlog.processors.format_exc_info, structlog.processors.JSONRenderer()])
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=False))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        context_class=dict,
        cache_logger_on_first_use=True,
    )

    logging.basicConfig(
        format="%(message)s",
        stream=stream or sys.stderr,
        level=getattr(logging, log_level.upper()),
        force=True,
    )


def get_logger(name: str = __name__) -> structlog.stdlib.BoundLogger:
    """Get a logger instance with the given name."""
    return structlog.get_logger(name)

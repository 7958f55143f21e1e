"""
Structured logging utilities with run ID support.
"""
from .setup import (
    setup_logging,
    get_logger,
    set_run_id,
    get_run_id,
)
from .formatters import (
    DurationFormatter,
    NumpyJSONFormatter,
    to_builtin,
)

__all__ = [
    'setup_logging',
    'get_logger',
    'set_run_id',
    'get_run_id',
    'DurationFormatter',
    'NumpyJSONFormatter',
    'to_builtin',
]

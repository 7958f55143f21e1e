"""
Structlog processors for simulation events.
"""
from typing import Any

import numpy as np
from structlog.types import EventDict


def to_builtin(value: Any) -> Any:
    """Convert numpy scalars/arrays (possibly nested) to plain Python values."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, dict):
        return {k: to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    return value


class NumpyJSONFormatter:
    """Make event values JSON-serializable."""

    def __call__(self, logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
        return {key: to_builtin(value) for key, value in event_dict.items()}


class DurationFormatter:
    """Formatter for timing information."""

    def __init__(self, slow_seconds: float = 30.0):
        self.slow_seconds = slow_seconds

    def __call__(self, logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
        """Replace a raw `duration` in seconds with a rounded millisecond field."""
        duration = event_dict.pop('duration', None)
        if duration is not None:
            event_dict['duration_ms'] = round(float(duration) * 1000, 2)
            if duration > self.slow_seconds:
                event_dict['slow'] = True
        return event_dict

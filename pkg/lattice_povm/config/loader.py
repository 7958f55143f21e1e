"""
Flat `key = value` configuration files.

    # reference run with a stronger secondary lattice
    N = 170
    V2 = 12.5
    v2_list = 0, 2, 5, 9.9, 15
    method = insertion

Values are integers, floats, comma-separated number lists or bare strings.
Keys match settings fields case-insensitively; unknown keys are an error.
"""
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union, get_origin

from pydantic import ValidationError

from ..exceptions import ConfigurationError
from ..logging import get_logger
from .settings import SimulationSettings

logger = get_logger(__name__)

_FIELDS = {name.lower(): name for name in SimulationSettings.model_fields}


def field_name(key: str) -> str:
    """Canonical settings field for a config key."""
    name = _FIELDS.get(key.strip().lower().replace('-', '_'))
    if name is None:
        raise ConfigurationError(f"unknown configuration key: {key}", config_key=key)
    return name


def parse_value(raw: str) -> Any:
    raw = raw.strip()
    if ',' in raw:
        try:
            return [float(part) for part in raw.split(',') if part.strip()]
        except ValueError:
            return [part.strip() for part in raw.split(',') if part.strip()]
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            continue
    return raw.strip('"\'')


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Parse a config file into settings keyword arguments.

    Raises:
        ConfigurationError: for a missing file, malformed line, duplicate or unknown key
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"config file not found: {path}")
    values: Dict[str, Any] = {}
    for number, line in enumerate(path.read_text().splitlines(), start=1):
        content = line.split('#', 1)[0].strip()
        if not content:
            continue
        if '=' not in content:
            raise ConfigurationError(f"{path}:{number}: expected 'key = value', got {line.strip()!r}")
        key, raw = content.split('=', 1)
        name = field_name(key)
        if name in values:
            raise ConfigurationError(f"{path}:{number}: duplicate key {key.strip()}", config_key=name)
        if not raw.strip():
            raise ConfigurationError(f"{path}:{number}: missing value for {key.strip()}", config_key=name)
        value = parse_value(raw)
        if get_origin(SimulationSettings.model_fields[name].annotation) is list and not isinstance(value, list):
            value = [value]
        values[name] = value
    logger.debug("config file loaded", path=str(path), keys=sorted(values))
    return values


def resolve_settings(
    config_path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> SimulationSettings:
    """
    Merge settings with precedence overrides > config file > environment > defaults.

    Overrides whose value is None are ignored, so unset CLI flags fall through.

    Raises:
        ConfigurationError: if a value fails validation
    """
    values: Dict[str, Any] = load_config_file(config_path) if config_path is not None else {}
    for key, value in (overrides or {}).items():
        if value is not None:
            values[field_name(key)] = value
    try:
        return SimulationSettings(**values)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = ".".join(str(part) for part in first.get('loc', ())) or None
        raise ConfigurationError(f"invalid configuration: {key}: {first.get('msg')}", config_key=key) from exc

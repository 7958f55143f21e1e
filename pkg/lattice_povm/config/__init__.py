"""Configuration management for lattice-povm."""

from .settings import SimulationSettings, get_settings
from .loader import field_name, load_config_file, parse_value, resolve_settings

__all__ = [
    "SimulationSettings",
    "get_settings",
    "field_name",
    "load_config_file",
    "parse_value",
    "resolve_settings",
]

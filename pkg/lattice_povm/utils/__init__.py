"""
Common utilities for lattice-povm.
"""
from .files import (
    format_meta,
    format_value,
    read_table_csv,
    write_key_values,
    write_table_csv,
)

__all__ = [
    'format_meta',
    'format_value',
    'read_table_csv',
    'write_key_values',
    'write_table_csv',
]

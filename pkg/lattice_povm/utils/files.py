"""
Flat-file output: CSV tables with a parameter comment line, and key-value reports.
"""
from pathlib import Path
from typing import Any, Dict, Mapping, Sequence, Tuple, Union

import numpy as np

from ..logging import to_builtin

PathLike = Union[str, Path]


def format_value(value: Any) -> str:
    """Render a scalar or list for headers and key-value files."""
    value = to_builtin(value)
    if isinstance(value, float):
        return format(value, '.17g')
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(v) for v in value)
    if hasattr(value, 'value'):
        return str(value.value)
    return str(value)


def format_meta(meta: Mapping[str, Any]) -> str:
    """One `key=value` token per entry, sorted for stable output."""
    return " ".join(f"{key}={format_value(meta[key]).replace(' ', '')}" for key in sorted(meta))


def write_table_csv(
    path: PathLike,
    columns: Sequence[str],
    data: Sequence[np.ndarray],
    meta: Mapping[str, Any],
) -> Path:
    """
    Write equally long columns to CSV.

    The first line is a `# key=value ...` comment, the second the column header.
    Floats use 17 significant digits so identical inputs give identical bytes.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table = np.column_stack([np.asarray(col, dtype=float) for col in data])
    header = f"# {format_meta(meta)}\n{','.join(columns)}"
    np.savetxt(path, table, delimiter=",", fmt="%.17g", header=header, comments="")
    return path


def read_table_csv(path: PathLike) -> Tuple[Dict[str, str], Dict[str, np.ndarray]]:
    """Inverse of write_table_csv: returns (meta, columns)."""
    path = Path(path)
    with path.open() as handle:
        comment = handle.readline().lstrip('#').strip()
        names = handle.readline().strip().split(',')
    meta = dict(token.split('=', 1) for token in comment.split() if '=' in token)
    table = np.loadtxt(path, delimiter=",", skiprows=2, ndmin=2)
    return meta, {name: table[:, i] for i, name in enumerate(names)}


def write_key_values(path: PathLike, values: Mapping[str, Any]) -> Path:
    """Write `key = value` lines in insertion order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{key} = {format_value(value)}" for key, value in values.items()]
    path.write_text("\n".join(lines) + "\n")
    return path

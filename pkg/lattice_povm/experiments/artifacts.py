"""Run directory bookkeeping: the provenance manifest written next to CSV outputs."""
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from ..logging import get_logger, get_run_id
from ..utils import write_key_values

logger = get_logger(__name__)

MANIFEST_NAME = "manifest.txt"


def write_manifest(
    out_dir: Union[str, Path],
    command: str,
    parameters: Mapping[str, Any],
    artifacts: Optional[Mapping[str, Union[str, Path]]] = None,
) -> Path:
    """Write `key = value` provenance: command, package version, run id, parameters, artifacts."""
    from .. import __version__

    entries: Dict[str, Any] = {
        'command': command,
        'version': __version__,
        'run_id': get_run_id() or 'none',
        'created': datetime.now(timezone.utc).isoformat(timespec='seconds'),
    }
    entries.update({f"param.{key}": value for key, value in sorted(parameters.items()) if value is not None})
    for name, path in (artifacts or {}).items():
        entries[f"artifact.{name}"] = Path(path).name
    path = write_key_values(Path(out_dir) / MANIFEST_NAME, entries)
    logger.debug("manifest written", path=str(path))
    return path

# coulombxs/utils/emit.py
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Union

from coulombxs import __version__
from coulombxs.core.config import get_settings
from coulombxs.core.errors import IoError
from coulombxs.schemas import OutputFormat

logger = logging.getLogger(__name__)

Cell = Union[float, int, str, bool, None]


@dataclass
class Table:
    rows: List[Dict[str, Cell]]
    parameters: Dict[str, Any] = field(default_factory=dict)


def _format_cell(value: Cell) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def metadata(parameters: Dict[str, Any]) -> Dict[str, Any]:
    """Run metadata for JSON output; the timestamp lives only here."""
    settings = get_settings()
    return {
        "parameters": parameters,
        "version": __version__,
        "tolerances": {
            "rel_tol": settings.rel_tol,
            "abs_tol": settings.abs_tol,
            "max_depth": settings.max_depth,
            "tail_threshold": settings.tail_threshold,
            "series_eps": settings.series_eps,
            "asymptotic_tol": settings.asymptotic_tol,
            "switch_z_low": settings.switch_z_low,
            "switch_z_high": settings.switch_z_high,
        },
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def emit(table: Table, output: OutputFormat) -> bytes:
    """
    Serialize a table. CSV: header row, 17 significant digits, LF endings.
    JSON: {"metadata": {...}, "rows": [...]}.
    """
    if not table.rows:
        raise IoError("Refusing to emit an empty table")

    if OutputFormat(output) is OutputFormat.JSON:
        document = {"metadata": metadata(table.parameters), "rows": table.rows}
        return (json.dumps(document, indent=2) + "\n").encode("utf-8")

    columns = list(table.rows[0].keys())
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in table.rows:
        writer.writerow([_format_cell(row.get(column)) for column in columns])
    return buffer.getvalue().encode("utf-8")


def write_output(payload: bytes, out_path: Optional[str] = None) -> None:
    """Write to out_path, or to stdout when no path is given."""
    try:
        if out_path is None:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
            return

        directory = os.path.dirname(os.path.abspath(out_path))
        if not os.path.isdir(directory):
            raise IoError("Output directory does not exist", path=out_path)
        with open(out_path, "wb") as handle:
            handle.write(payload)
        logger.info(f"Wrote {len(payload)} bytes to {out_path}")

    except OSError as e:
        logger.error(f"Failed to write output: {e}")
        raise IoError("Failed to write output", path=out_path, reason=str(e)) from e

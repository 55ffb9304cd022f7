import csv
import json
import os
from typing import Iterable, Optional, Sequence

from salem_lp.common.salem_logger import harness_logger
from salem_lp.helpers.utils import json_safe

SWEEP_COLUMNS = [
    "field", "q", "d", "set_name", "set_size", "p", "lp_norm", "s_emp",
    "s_theory", "ratio", "in_band", "claim",
]
TRIAL_COLUMNS = [
    "field", "q", "p", "alpha", "trials", "exceedances", "frequency",
    "threshold", "constant", "ci_low", "ci_high", "passed",
]


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: str, rows: Iterable[dict], columns: Optional[Sequence[str]] = None) -> int:
    """Writes rows with a header line; columns default to the keys of the first row."""
    rows = list(rows)
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    _ensure_parent(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(columns)
        for row in rows:
            w.writerow([_cell(row.get(column)) for column in columns])
    harness_logger.info(f"Wrote {len(rows)} rows to {path}")
    return len(rows)


def write_json(path: str, payload) -> None:
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(json_safe(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")
    harness_logger.info(f"Wrote {path}")


def read_csv(path: str) -> list[dict]:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))

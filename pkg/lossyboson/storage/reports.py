# storage/reports.py
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List

from lossyboson.cli.models import SWEEP_COLUMNS, SweepRow


def format_float(x: float) -> str:
    return format(x, ".17g")


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def rows_to_csv(rows: Iterable[SweepRow], columns: List[str] = SWEEP_COLUMNS) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        data = row.model_dump()
        writer.writerow([_cell(data[c]) for c in columns])
    return buf.getvalue()


def record_to_csv(record: Dict[str, Any]) -> str:
    """One-row CSV of the scalar fields of a flat report."""
    columns = [k for k, v in record.items() if not isinstance(v, (dict, list))]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerow([_cell(record[c]) for c in columns])
    return buf.getvalue()


def write_atomic(path: Path, payload: bytes) -> None:
    """Write to a temp file next to `path`, then rename over it."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class ReportStore:
    """
    Report files plus a JSON run record next to them.

    - The report itself is written atomically; readers never see a
      partial file.
    - The run record `<out>.runs.json` holds {run_id: payload};
      read-modify-write is fine for a single batch process.
    """

    def __init__(self, out_path: str):
        self.out_path = Path(out_path)
        self.runs_path = self.out_path.with_name(self.out_path.name + ".runs.json")

    def write_bytes(self, payload: bytes) -> None:
        write_atomic(self.out_path, payload)

    def _read_record(self) -> Dict[str, Any]:
        if not self.runs_path.exists():
            return {}
        rec = json.loads(self.runs_path.read_text(encoding="utf-8"))
        return rec if isinstance(rec, dict) else {}

    def _write_record(self, record: Dict[str, Any]) -> None:
        write_atomic(self.runs_path, json.dumps(record, indent=2, sort_keys=True).encode("utf-8"))

    def put_run(self, run_id: str, payload: Dict[str, Any]) -> None:
        record = self._read_record()
        record[run_id] = payload
        self._write_record(record)

# excel/io.py
"""
Excel I/O for sweeps.

Config sheet (header in row 1, one sweep cell per row from row 2):
  - n, k                   (required)
  - epsilon, delta, model, noise, epsilon_prime, nodes, probs,
    trials, seed           (optional; probs as "p0,p1,...")

Report workbook:
  - sheet "rows":    SWEEP_COLUMNS, one row per (cell, trial)
  - sheet "summary": one row per (n, k, epsilon, delta) cell
"""
from __future__ import annotations

import io
import zipfile
from typing import Any, Dict, List

import openpyxl
from openpyxl.utils.exceptions import InvalidFileException

from lossyboson.cli.models import SWEEP_COLUMNS, CellSummary, SweepReport
from lossyboson.errors import ConfigError

HEADER_ROW = 1
DATA_START_ROW = 2

SUMMARY_COLUMNS = list(CellSummary.model_fields)
_INT_FIELDS = {"n", "k", "nodes", "trials", "seed", "stream"}
_FLOAT_FIELDS = {"epsilon", "delta", "epsilon_prime"}


def normalize_header(value) -> str:
    if value is None:
        return ""
    return " ".join(str(value).split())


def load_workbook_from_bytes(xlsx_bytes: bytes):
    try:
        return openpyxl.load_workbook(io.BytesIO(xlsx_bytes))
    except (zipfile.BadZipFile, InvalidFileException, KeyError, OSError, ValueError) as e:
        raise ConfigError(f"not a readable .xlsx workbook: {e}") from None


def workbook_to_bytes(wb) -> bytes:
    buf = io.BytesIO()
    wb.save(buf)
    return buf.getvalue()


def map_headers(ws) -> Dict[str, int]:
    headers: Dict[str, int] = {}
    for col in range(1, ws.max_column + 1):
        h = normalize_header(ws.cell(HEADER_ROW, col).value)
        if h:
            headers[h] = col
    return headers


def _convert(name: str, value: Any) -> Any:
    if name in _INT_FIELDS:
        return int(value)
    if name in _FLOAT_FIELDS:
        return float(value)
    if name == "probs":
        return [float(p) for p in str(value).split(",")]
    return normalize_header(value)


def read_configs(xlsx_bytes: bytes) -> List[Dict[str, Any]]:
    """One config dict per non-empty data row of the active sheet."""
    ws = load_workbook_from_bytes(xlsx_bytes).active
    headers = map_headers(ws)
    for required in ("n", "k"):
        if required not in headers:
            raise ConfigError(f"required column '{required}' missing in row {HEADER_ROW}")

    configs: List[Dict[str, Any]] = []
    for r in range(DATA_START_ROW, ws.max_row + 1):
        if ws.cell(r, headers["n"]).value in (None, ""):
            continue
        cfg: Dict[str, Any] = {}
        for name, col in headers.items():
            value = ws.cell(r, col).value
            if value not in (None, ""):
                try:
                    cfg[name] = _convert(name, value)
                except (TypeError, ValueError):
                    raise ConfigError(f"row {r}: bad value {value!r} for {name}") from None
        configs.append(cfg)
    return configs


def _write_sheet(ws, columns: List[str], records: List[Dict[str, Any]]) -> None:
    for c, name in enumerate(columns, start=1):
        ws.cell(HEADER_ROW, c).value = name
    for r, rec in enumerate(records, start=DATA_START_ROW):
        for c, name in enumerate(columns, start=1):
            ws.cell(r, c).value = rec.get(name)


def write_sweep_workbook(report: SweepReport) -> bytes:
    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = "rows"
    _write_sheet(ws, SWEEP_COLUMNS, [row.model_dump() for row in report.rows])
    _write_sheet(wb.create_sheet("summary"), SUMMARY_COLUMNS, [s.model_dump() for s in report.summary])
    return workbook_to_bytes(wb)

import openpyxl
import pytest
from pydantic import ValidationError

from lossyboson.cli.models import SWEEP_COLUMNS, CellSummary, ExperimentConfig, SweepReport, SweepRow
from lossyboson.errors import ConfigError
from lossyboson.excel.io import SUMMARY_COLUMNS, load_workbook_from_bytes, read_configs, workbook_to_bytes, write_sweep_workbook


def _config_sheet(rows):
    wb = openpyxl.Workbook()
    ws = wb.active
    for r, values in enumerate(rows, start=1):
        for c, v in enumerate(values, start=1):
            ws.cell(r, c).value = v
    return workbook_to_bytes(wb)


def test_read_configs_converts_types_and_skips_blank_rows():
    data = _config_sheet([
        ["n", " k ", "epsilon", "model", "probs", "trials"],
        [3, 1, 0.2, "shuffle-mix", "0.5,0.5", 4],
        [None, None, None, None, None, None],
        ["4", "2", "0.1", "input", None, None],
    ])
    cells = read_configs(data)
    assert cells == [
        {"n": 3, "k": 1, "epsilon": 0.2, "model": "shuffle-mix", "probs": [0.5, 0.5], "trials": 4},
        {"n": 4, "k": 2, "epsilon": 0.1, "model": "input"},
    ]
    for cell in cells:
        ExperimentConfig(subcommand="reduce", **cell)


def test_read_configs_requires_n_and_k():
    with pytest.raises(ValueError, match="required column 'k'"):
        read_configs(_config_sheet([["n"], [3]]))


def test_write_sweep_workbook():
    row = SweepRow(n=3, k=1, epsilon=0.1, delta=0.2, seed=1, trial=0, estimate=1.5,
                   truth=1.4, abs_err=0.1, err_units_nfact=0.1 / 6, success=True)
    summary = CellSummary(n=3, k=1, epsilon=0.1, delta=0.2, model="input", noise="none",
                          trials=1, failures=0, failure_rate=0.0)
    wb = load_workbook_from_bytes(write_sweep_workbook(SweepReport(rows=[row], summary=[summary])))
    rows, summ = wb["rows"], wb["summary"]
    assert [rows.cell(1, c).value for c in range(1, len(SWEEP_COLUMNS) + 1)] == SWEEP_COLUMNS
    assert rows.cell(2, SWEEP_COLUMNS.index("estimate") + 1).value == 1.5
    assert rows.cell(2, SWEEP_COLUMNS.index("success") + 1).value is True
    assert [summ.cell(1, c).value for c in range(1, len(SUMMARY_COLUMNS) + 1)] == SUMMARY_COLUMNS
    assert summ.cell(2, SUMMARY_COLUMNS.index("failure_rate") + 1).value == 0.0


@pytest.mark.parametrize("data", [b"junk", b"PK\x03\x04 truncated"])
def test_unreadable_workbook_is_a_config_error(data):
    with pytest.raises(ConfigError):
        read_configs(data)


def test_unknown_config_keys_are_rejected():
    with pytest.raises(ValidationError):
        ExperimentConfig(subcommand="reduce", n=3, bogus=1)

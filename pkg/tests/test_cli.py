import json

import pytest

from lossyboson.cli.main import EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, main

ONES3 = {"rows": 3, "cols": 3, "re": [1.0] * 9, "im": [0.0] * 9}


@pytest.fixture(autouse=True)
def no_seed_override(monkeypatch):
    monkeypatch.delenv("LOSSYBOSON_SEED", raising=False)


def _write(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_permanent_of_ones_matrix(tmp_path, capsys):
    f = _write(tmp_path / "ones3.json", ONES3)
    assert main(["permanent", "--matrix-file", f]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["re"] == pytest.approx(6.0)
    assert out["im"] == pytest.approx(0.0)
    assert out["abs_squared"] == pytest.approx(36.0)


def test_permanent_naive_agrees(tmp_path, capsys):
    f = _write(tmp_path / "ones3.json", ONES3)
    assert main(["permanent", "--matrix-file", f, "--naive", "--format", "csv"]) == EXIT_OK
    header, row = capsys.readouterr().out.strip().splitlines()
    assert header.split(",")[:3] == ["n", "method", "re"]
    assert row.split(",")[1] == "naive"
    assert float(row.split(",")[2]) == pytest.approx(6.0)


@pytest.mark.parametrize("text", ["{not json", '{"rows": 2, "cols": 2, "re": [1, 2, 3], "im": [0, 0, 0, 0]}', "[1, 2]"])
def test_malformed_matrix_exits_2_without_output(tmp_path, capsys, text):
    f = tmp_path / "bad.json"
    f.write_text(text, encoding="utf-8")
    out = tmp_path / "report.json"
    assert main(["permanent", "--matrix-file", str(f), "--out", str(out)]) == EXIT_CONFIG
    captured = capsys.readouterr()
    assert captured.out == ""
    assert len(captured.err.strip().splitlines()) == 1
    assert not out.exists()


def test_missing_matrix_file_exits_2(tmp_path, capsys):
    assert main(["permanent", "--matrix-file", str(tmp_path / "nope.json")]) == EXIT_CONFIG


def test_reduce_noise_free_is_exact(capsys):
    assert main(["reduce", "--n", "3", "--k", "1", "--noise", "none", "--seed", "7"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["error_units_nfact"] <= 1e-8
    assert report["succeeded"] is True
    assert report["seed"] == 7


def test_reduce_csv_is_one_flat_row(capsys):
    assert main(["reduce", "--n", "3", "--k", "1", "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2
    assert "estimate" in lines[0].split(",")
    assert "nodes" not in lines[0].split(",")


def test_invalid_range_exits_2(capsys):
    assert main(["reduce", "--n", "3", "--k", "1", "--epsilon", "1.5"]) == EXIT_CONFIG
    err = capsys.readouterr().err
    assert len(err.strip().splitlines()) == 1
    assert "epsilon" in err


def test_bad_probs_exit_2(capsys):
    assert main(["phi", "--model", "shuffle-mix", "--n", "2", "--k", "1", "--probs", "0.3,0.3"]) == EXIT_CONFIG
    assert main(["phi", "--model", "shuffle-mix", "--n", "2", "--k", "1", "--probs", "a,b"]) == EXIT_CONFIG


def test_numeric_failure_exits_3(capsys):
    assert main(["permanent", "--n", "10", "--naive"]) == EXIT_NUMERIC
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "CapExceededError" in captured.err


def test_state_cap_exits_3(capsys):
    assert main(["sample", "--m", "40", "--n", "8", "--draws", "1"]) == EXIT_NUMERIC


def test_seed_env_overrides_flag(monkeypatch, capsys):
    assert main(["reduce", "--n", "3", "--k", "1", "--noise", "uniform", "--seed", "7"]) == EXIT_OK
    expected = capsys.readouterr().out
    monkeypatch.setenv("LOSSYBOSON_SEED", "7")
    assert main(["reduce", "--n", "3", "--k", "1", "--noise", "uniform", "--seed", "99"]) == EXIT_OK
    assert capsys.readouterr().out == expected


def test_bad_seed_env_exits_2(monkeypatch, capsys):
    monkeypatch.setenv("LOSSYBOSON_SEED", "seven")
    assert main(["reduce", "--n", "3"]) == EXIT_CONFIG


@pytest.mark.parametrize("model,extra", [("input", []), ("dark", []), ("shuffle", []), ("shuffle-mix", ["--probs", "0.5,0.5"])])
def test_phi_models(capsys, model, extra):
    assert main(["phi", "--model", model, "--n", "2", "--k", "1", "--seed", "3", *extra]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["phi"] > 0


def test_sample_prints_occupations(capsys):
    assert main(["sample", "--m", "5", "--n", "2", "--k", "1", "--draws", "7", "--seed", "4", "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 7
    for line in lines:
        occ = [int(v) for v in line.split(",")]
        assert len(occ) == 5 and sum(occ) == 2


def test_sample_needs_enough_modes(capsys):
    assert main(["sample", "--m", "2", "--n", "2", "--k", "1"]) == EXIT_CONFIG


def test_verify_lemma1(capsys):
    assert main(["verify-lemma1", "--n", "3", "--k", "1", "--c", "1.05", "--trials", "20000", "--jobs", "2"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["kl"] == pytest.approx(out["kl_numerical"], abs=1e-6)
    assert out["within_bound"] is True


def test_verify_lemma1_needs_trials(capsys):
    assert main(["verify-lemma1", "--n", "3", "--k", "1", "--trials", "10"]) == EXIT_CONFIG


def test_correlate(capsys):
    assert main(["correlate", "--n", "2", "--k", "1", "--trials", "20", "--seed", "2"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert -1 <= out["pearson_r"] <= 1


def test_writes_to_out_file(tmp_path, capsys):
    out = tmp_path / "sub" / "phi.json"
    assert main(["phi", "--n", "2", "--k", "1", "--out", str(out)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["model"] == "input-loss"


CELLS = [
    {"n": 3, "k": 1, "epsilon": 0.3, "delta": 0.2, "noise": "uniform", "trials": 3, "seed": 5},
    {"n": 2, "k": 2, "epsilon": 0.3, "delta": 0.2, "noise": "adversarial", "trials": 2, "seed": 6},
]


def test_sweep_csv_is_byte_identical_across_runs(tmp_path, capsys):
    cfg = _write(tmp_path / "cells.json", CELLS)
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "--config", cfg, "--out", str(first), "--format", "csv"]) == EXIT_OK
    assert main(["sweep", "--config", cfg, "--out", str(second), "--format", "csv", "--jobs", "2"]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    lines = first.read_text().strip().splitlines()
    assert lines[0] == "n,k,epsilon,delta,seed,trial,estimate,truth,abs_err,err_units_nfact,success"
    assert len(lines) == 1 + 3 + 2
    assert [line.split(",")[5] for line in lines[1:]] == ["0", "1", "2", "0", "1"]
    err = capsys.readouterr().err
    assert err.count("cell n=") == 4
    runs = json.loads((tmp_path / "a.csv.runs.json").read_text())
    assert len(runs) == 1
    assert len(next(iter(runs.values()))["summary"]) == 2


def test_sweep_json_with_configs_key(tmp_path, capsys):
    cfg = _write(tmp_path / "cells.json", {"configs": CELLS})
    assert main(["sweep", "--config", cfg]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert len(report["rows"]) == 5
    assert [s["trials"] for s in report["summary"]] == [3, 2]


def test_empty_sweep(tmp_path, capsys):
    cfg = _write(tmp_path / "cells.json", [])
    assert main(["sweep", "--config", cfg, "--format", "csv"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "n,k,epsilon,delta,seed,trial,estimate,truth,abs_err,err_units_nfact,success"


def test_sweep_rejects_mixed_subcommands(tmp_path, capsys):
    cfg = _write(tmp_path / "cells.json", [CELLS[0], {"subcommand": "phi", "n": 2}])
    assert main(["sweep", "--config", cfg]) == EXIT_CONFIG


def test_sweep_rejects_malformed_json(tmp_path, capsys):
    f = tmp_path / "cells.json"
    f.write_text("[{", encoding="utf-8")
    assert main(["sweep", "--config", str(f)]) == EXIT_CONFIG


def test_sweep_seed_env_applies_to_every_cell(tmp_path, monkeypatch, capsys):
    cfg = _write(tmp_path / "cells.json", CELLS)
    monkeypatch.setenv("LOSSYBOSON_SEED", "42")
    assert main(["sweep", "--config", cfg]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert {row["seed"] for row in report["rows"]} == {42}


def test_sweep_xlsx(tmp_path, capsys):
    import openpyxl

    cfg = _write(tmp_path / "cells.json", CELLS)
    out = tmp_path / "sweep.xlsx"
    assert main(["sweep", "--config", cfg, "--format", "xlsx", "--out", str(out)]) == EXIT_OK
    wb = openpyxl.load_workbook(out)
    assert wb.sheetnames == ["rows", "summary"]
    assert wb["rows"].max_row == 6
    assert wb["summary"].max_row == 3


def test_xlsx_needs_out(tmp_path, capsys):
    cfg = _write(tmp_path / "cells.json", CELLS)
    assert main(["sweep", "--config", cfg, "--format", "xlsx"]) == EXIT_CONFIG


def test_sweep_rejects_unreadable_workbook(tmp_path, capsys):
    f = tmp_path / "cells.xlsx"
    f.write_bytes(b"definitely not a zip archive")
    assert main(["sweep", "--config", str(f)]) == EXIT_CONFIG
    captured = capsys.readouterr()
    assert captured.out == ""
    assert len(captured.err.strip().splitlines()) == 1


def test_sweep_rejects_unknown_cell_keys(tmp_path, capsys):
    cfg = _write(tmp_path / "cells.json", [{**CELLS[0], "trails": 200}])
    assert main(["sweep", "--config", cfg]) == EXIT_CONFIG
    assert "trails" in capsys.readouterr().err


def test_matrix_file_rejects_unknown_keys(tmp_path, capsys):
    f = _write(tmp_path / "m.json", {**ONES3, "scale": 2})
    assert main(["permanent", "--matrix-file", f]) == EXIT_CONFIG


@pytest.mark.parametrize("argv", [
    ["permanent", "--n", "25"],
    ["reduce", "--n", "25", "--k", "1"],
    ["phi", "--n", "21", "--k", "0"],
])
def test_oversized_permanents_exit_3(argv, capsys):
    assert main(argv) == EXIT_NUMERIC
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "CapExceededError" in captured.err


def test_linear_algebra_failure_exits_3(monkeypatch, capsys):
    import numpy as np

    from lossyboson.cli import main as cli_main

    def broken(config):
        raise np.linalg.LinAlgError("Singular matrix")

    monkeypatch.setitem(cli_main.COMMANDS, "reduce", broken)
    assert main(["reduce", "--n", "3", "--k", "1"]) == EXIT_NUMERIC
    assert "NumericError" in capsys.readouterr().err


def test_sample_json_carries_interferometer_and_distribution(capsys):
    from lossyboson.cli.models import MatrixPayload
    from lossyboson.optics.distributions import lossy_distribution

    assert main(["sample", "--m", "4", "--n", "2", "--k", "1", "--draws", "200", "--seed", "9"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    u = MatrixPayload(**out["interferometer"]).to_array()
    dist = lossy_distribution(u, 2, 1)
    assert out["distribution"]["outcomes"] == [list(t) for t in dist.outcomes]
    assert out["distribution"]["probs"] == pytest.approx(list(dist.probs), abs=1e-15)
    assert sum(out["distribution"]["probs"]) == pytest.approx(1.0, abs=1e-9)
    assert 0.0 < out["no_collision_mass"] <= 1.0
    assert 0.0 <= out["chi_square_p"] <= 1.0
    assert len(out["outcomes"]) == 200


def test_phi_json_carries_the_sampled_matrix(capsys):
    from lossyboson.cli.models import MatrixPayload
    from lossyboson.optics.loss import phi_input_loss

    assert main(["phi", "--n", "3", "--k", "1", "--seed", "5"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    a = MatrixPayload(**out["matrix"]).to_array()
    assert a.shape == (3, 4)
    assert phi_input_loss(a) == pytest.approx(out["phi"], rel=1e-12)

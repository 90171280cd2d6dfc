# cli/main.py
"""
Batch command line for lossyboson.

    python -m lossyboson permanent --matrix-file ones3.json
    python -m lossyboson reduce --n 3 --k 1 --noise none --seed 7
    python -m lossyboson sweep --config cells.json --jobs 4 --out sweep.csv --format csv

Exit status: 0 ok, 2 bad configuration or input, 3 numerical failure.
The report goes to stdout (or --out, written atomically); diagnostics and
the one-line failure reason go to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from lossyboson.cli.models import ExperimentConfig, MatrixPayload, SweepReport
from lossyboson.errors import ConfigError, LossyBosonError, NumericError
from lossyboson.excel.io import read_configs, write_sweep_workbook
from lossyboson.linalg.random import sample_gaussian_matrix, sample_haar_unitary
from lossyboson.optics.distributions import goodness_of_fit, lossy_distribution, sample_outcomes
from lossyboson.optics.lemma import (
    GaussianEnsembleSpec,
    kl_numerical,
    kl_scaled_gaussian,
    max_c_offset,
    pinsker_tv_bound,
    tv_monte_carlo,
)
from lossyboson.optics.loss import phi_for_model, row_norm_correlation, row_norm_product
from lossyboson.permanent.kernels import check_permanent_size, permanent, permanent_naive
from lossyboson.storage.reports import ReportStore, record_to_csv, rows_to_csv
from lossyboson.worker.runner import run_trial, sweep

logger = logging.getLogger(__name__)

SEED_ENV = "LOSSYBOSON_SEED"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


class Emission(NamedTuple):
    payload: bytes
    notes: Sequence[str] = ()
    run_record: Optional[Dict[str, Any]] = None


def seed_override() -> Optional[int]:
    raw = os.environ.get(SEED_ENV, "").strip()
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------
def _dump(payload: Dict[str, Any]) -> bytes:
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


def _encode(config: ExperimentConfig, record: Dict[str, Any]) -> bytes:
    if config.format == "csv":
        return record_to_csv(record).encode("utf-8")
    return _dump(record)


def _load_matrix(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read matrix file {path}: {e.strerror}") from None
    return MatrixPayload.model_validate_json(text).to_array()


def cmd_permanent(config: ExperimentConfig) -> Emission:
    if config.matrix_file is not None:
        m = _load_matrix(config.matrix_file)
    else:
        check_permanent_size(config.n, naive=config.naive)
        m = sample_gaussian_matrix(config.n, config.n, config.base_seed())
    value = permanent_naive(m) if config.naive else permanent(m)
    record = {
        "n": int(m.shape[0]),
        "method": "naive" if config.naive else "glynn",
        "re": float(value.value.real),
        "im": float(value.value.imag),
        "abs_squared": value.abs_squared,
        "seed": config.seed if config.matrix_file is None else None,
    }
    return Emission(_encode(config, record))


def cmd_phi(config: ExperimentConfig) -> Emission:
    model = config.loss_model()
    check_permanent_size(config.n)
    rows, cols = model.matrix_shape(config.n)
    a = sample_gaussian_matrix(rows, cols, config.base_seed())
    record = {
        "model": model.kind,
        "n": config.n,
        "k": config.k,
        "rows": rows,
        "cols": cols,
        "seed": config.seed,
        "phi": phi_for_model(a, model),
        "row_norm_product": row_norm_product(a),
    }
    if config.format == "json":
        record["matrix"] = MatrixPayload.from_array(a).model_dump()
    return Emission(_encode(config, record))


def cmd_sample(config: ExperimentConfig) -> Emission:
    check_permanent_size(config.n)
    seed = config.base_seed()
    u = sample_haar_unitary(config.m, seed.child(0))
    dist = lossy_distribution(u, config.n, config.k)
    outcomes = sample_outcomes(dist, config.draws, seed.child(1))
    if config.format == "csv":
        text = "".join(",".join(str(v) for v in t) + "\n" for t in outcomes)
        return Emission(text.encode("utf-8"))
    return Emission(_dump({
        "m": config.m,
        "n": config.n,
        "k": config.k,
        "seed": config.seed,
        "support": len(dist.outcomes),
        "no_collision_mass": dist.no_collision_view().total(),
        "chi_square_p": goodness_of_fit(dist, outcomes),
        "outcomes": [list(t) for t in outcomes],
        "interferometer": MatrixPayload.from_array(u).model_dump(),
        "distribution": dist.to_payload(),
    }))


def cmd_reduce(config: ExperimentConfig) -> Emission:
    report = run_trial(config, 0)
    if config.format == "csv":
        return Emission(record_to_csv(report.model_dump()).encode("utf-8"))
    return Emission((report.model_dump_json(indent=2) + "\n").encode("utf-8"))


def cmd_verify_lemma1(config: ExperimentConfig) -> Emission:
    spec = GaussianEnsembleSpec(n=config.n, k=config.k, c=config.c)
    kl = kl_scaled_gaussian(spec.n, spec.k, spec.c)
    tv = tv_monte_carlo(spec, config.trials, config.base_seed(), partitions=config.jobs)
    pinsker = pinsker_tv_bound(kl)
    record = {
        "n": spec.n,
        "k": spec.k,
        "c": spec.c,
        "trials": config.trials,
        "seed": config.seed,
        "kl": kl,
        "kl_numerical": kl_numerical(spec.n, spec.k, spec.c),
        "pinsker_bound": pinsker,
        "tv_estimate": tv.estimate,
        "tv_stderr": tv.stderr,
        "within_bound": tv.estimate <= pinsker + 3.0 * tv.stderr,
        "max_c_offset": max_c_offset(spec.n, spec.k, config.delta),
    }
    return Emission(_encode(config, record))


def cmd_correlate(config: ExperimentConfig) -> Emission:
    check_permanent_size(config.n)
    corr = row_norm_correlation(config.n, config.k, config.trials, config.base_seed())
    record = {
        "n": config.n,
        "k": config.k,
        "seed": config.seed,
        "trials": corr.trials,
        "pearson_r": corr.pearson_r,
        "p_value": corr.p_value,
    }
    return Emission(_encode(config, record))


def load_sweep_configs(path: str, seed: Optional[int] = None) -> List[ExperimentConfig]:
    """
    Sweep cells from a .json file (a list, or {"configs": [...]}) or an
    .xlsx sheet. Every cell must be a reduce config.
    """
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as e:
        raise ConfigError(f"cannot read sweep config {path}: {e.strerror}") from None

    if p.suffix.lower() == ".xlsx":
        cells = read_configs(raw)
    else:
        try:
            doc = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise ConfigError(f"sweep config {path} is not valid JSON: {e}") from None
        cells = doc.get("configs") if isinstance(doc, dict) else doc
        if not isinstance(cells, list):
            raise ConfigError('sweep config must be a list of cells or {"configs": [...]}')

    configs: List[ExperimentConfig] = []
    for i, cell in enumerate(cells):
        if not isinstance(cell, dict):
            raise ConfigError(f"sweep cell {i} is not an object")
        sub = cell.get("subcommand", "reduce")
        if sub != "reduce":
            raise ConfigError(f"sweep cell {i} has subcommand {sub!r}; all cells must be 'reduce'")
        fields = {**cell, "subcommand": "reduce"}
        if seed is not None:
            fields["seed"] = seed
        configs.append(ExperimentConfig(**fields))
    return configs


def summary_lines(report: SweepReport) -> List[str]:
    return [
        f"cell n={s.n} k={s.k} epsilon={s.epsilon:g} delta={s.delta:g} model={s.model} noise={s.noise}: "
        f"{s.failures}/{s.trials} failed (rate {s.failure_rate:.4f})"
        + (f" error={s.error}" if s.error else "")
        for s in report.summary
    ]


def cmd_sweep(config: ExperimentConfig) -> Emission:
    configs = load_sweep_configs(config.config_file, seed_override())
    report = sweep(configs, jobs=config.jobs)
    if config.format == "csv":
        record = {
            "created_at": utc_now_iso(),
            "config_file": config.config_file,
            "summary": [s.model_dump() for s in report.summary],
        }
        return Emission(rows_to_csv(report.rows).encode("utf-8"), summary_lines(report), record)
    if config.format == "xlsx":
        return Emission(write_sweep_workbook(report), summary_lines(report))
    return Emission((report.model_dump_json(indent=2) + "\n").encode("utf-8"))


COMMANDS = {
    "permanent": cmd_permanent,
    "phi": cmd_phi,
    "sample": cmd_sample,
    "reduce": cmd_reduce,
    "verify-lemma1": cmd_verify_lemma1,
    "correlate": cmd_correlate,
    "sweep": cmd_sweep,
}


# ---------------------------------------------------------------------------
# run / main
# ---------------------------------------------------------------------------
def _reason(e: BaseException) -> str:
    if isinstance(e, ValidationError):
        first = e.errors()[0]
        loc = ".".join(str(p) for p in first.get("loc", ())) or "input"
        return f"invalid {loc}: {first.get('msg', str(e))}"
    return f"{type(e).__name__}: {e}"


def _fail(code: int, e: BaseException, stderr) -> int:
    print(f"error: {_reason(e)}".splitlines()[0], file=stderr)
    return code


def run(config: ExperimentConfig, stdout=None, stderr=None) -> int:
    """
    Execute one validated config and emit its report. The report is fully
    computed before anything is written.
    """
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        emission = COMMANDS[config.subcommand](config)
    except NumericError as e:
        return _fail(EXIT_NUMERIC, e, stderr)
    except np.linalg.LinAlgError as e:
        # must precede ValueError, which it subclasses
        return _fail(EXIT_NUMERIC, NumericError(f"linear algebra failed: {e}"), stderr)
    except (ValidationError, ConfigError, LossyBosonError, ValueError) as e:
        return _fail(EXIT_CONFIG, e, stderr)

    for line in emission.notes:
        print(line, file=stderr)

    if config.out is None:
        stdout.write(emission.payload.decode("utf-8"))
        stdout.flush()
        return EXIT_OK

    store = ReportStore(config.out)
    try:
        store.write_bytes(emission.payload)
        if emission.run_record is not None:
            store.put_run(str(uuid.uuid4()), emission.run_record)
    except OSError as e:
        return _fail(EXIT_CONFIG, ConfigError(f"cannot write {config.out}: {e.strerror}"), stderr)
    logger.info("wrote %s (%d bytes)", config.out, len(emission.payload))
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, fmt_choices: Sequence[str] = ("json", "csv")) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=list(fmt_choices), default="json")
    p.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lossyboson", description="Lossy BosonSampling toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("permanent", help="exact permanent of a matrix file or a Gaussian draw")
    p.add_argument("--matrix-file", dest="matrix_file")
    p.add_argument("--n", type=int)
    p.add_argument("--naive", action="store_true")
    _add_common(p)

    p = sub.add_parser("phi", help="Phi functional of a Gaussian matrix")
    p.add_argument("--model", choices=["input", "dark", "shuffle", "shuffle-mix"], default="input")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--probs", default=None)
    _add_common(p)

    p = sub.add_parser("sample", help="sample lossy outcomes from a Haar interferometer")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--draws", type=int, default=10)
    _add_common(p)

    p = sub.add_parser("reduce", help="recover |Per(X)|^2 from a noisy Phi oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--model", choices=["input", "dark", "shuffle", "shuffle-mix"], default="input")
    p.add_argument("--probs", default=None)
    p.add_argument("--noise", choices=["none", "uniform", "adversarial"], default="none")
    p.add_argument("--epsilon-prime", dest="epsilon_prime", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.2)
    p.add_argument("--nodes", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("verify-lemma1", help="KL, Pinsker and Monte Carlo TV for scaled Gaussians")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", type=float, default=1.05)
    p.add_argument("--delta", type=float, default=0.2)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--jobs", type=int, default=1, help="Monte Carlo partitions")
    _add_common(p)

    p = sub.add_parser("correlate", help="Pearson correlation of R(A) and Phi(A)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=200)
    _add_common(p)

    p = sub.add_parser("sweep", help="batch of reduce cells")
    p.add_argument("--config", dest="config_file", required=True)
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p, ("json", "csv", "xlsx"))

    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    fields = {k: v for k, v in vars(args).items() if k != "verbose" and v is not None}
    if "probs" in fields:
        try:
            fields["probs"] = [float(p) for p in fields["probs"].split(",")]
        except ValueError:
            raise ConfigError(f"--probs must be comma-separated numbers, got {args.probs!r}") from None
    override = seed_override()
    if override is not None:
        fields["seed"] = override
    return ExperimentConfig(**fields)


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = config_from_args(args)
    except (ValidationError, ConfigError) as e:
        return _fail(EXIT_CONFIG, e, sys.stderr)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

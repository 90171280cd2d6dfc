# worker/runner.py
"""
Orchestrates one full sweep:
  - every config is one (n, k, epsilon, delta, model, noise) cell
  - each cell runs `trials` independent reductions, trial t drawing X and
    the oracle noise from child stream t of the cell's seed
  - cells run concurrently up to `jobs`; rows come back in config order
"""
from __future__ import annotations

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Tuple

from lossyboson.cli.models import CellSummary, ExperimentConfig, SweepReport, SweepRow
from lossyboson.errors import LossyBosonError
from lossyboson.linalg.random import sample_gaussian_matrix
from lossyboson.permanent.kernels import check_permanent_size
from lossyboson.reduction.pipeline import ReductionReport, recover_permanent_squared

logger = logging.getLogger(__name__)


def run_trial(config: ExperimentConfig, trial: int) -> ReductionReport:
    """One reduction on a fresh Gaussian X; trial t is fully determined by (seed, stream, t)."""
    check_permanent_size(config.n)
    seed = config.base_seed().child(trial)
    x = sample_gaussian_matrix(config.n, config.n, seed.child(0))
    return recover_permanent_squared(
        x,
        config.k,
        config.loss_model(),
        config.noise_spec(),
        config.epsilon,
        config.delta,
        seed.child(1),
        node_count=config.nodes,
    )


def _row(config: ExperimentConfig, trial: int, rep: ReductionReport) -> SweepRow:
    return SweepRow(
        n=rep.n,
        k=rep.k,
        epsilon=rep.epsilon,
        delta=rep.delta,
        seed=config.seed,
        trial=trial,
        estimate=rep.estimate,
        truth=rep.truth,
        abs_err=rep.abs_err,
        err_units_nfact=rep.error_units_nfact,
        success=rep.succeeded,
    )


def run_cell(config_json: str) -> Tuple[List[Dict[str, Any]], Dict[str, Any]]:
    """
    All trials of one cell. Takes and returns plain JSON-able data so it
    can cross a process boundary.
    """
    config = ExperimentConfig.model_validate_json(config_json)
    rows: List[SweepRow] = []
    error: Optional[str] = None
    try:
        for t in range(config.trials):
            rows.append(_row(config, t, run_trial(config, t)))
    except (LossyBosonError, ValueError) as e:
        error = f"{type(e).__name__}: {e}"
        logger.warning("cell n=%s k=%s failed after %d trials: %s", config.n, config.k, len(rows), error)

    failures = sum(1 for r in rows if not r.success)
    summary = CellSummary(
        n=config.n,
        k=config.k,
        epsilon=config.epsilon,
        delta=config.delta,
        model=config.model,
        noise=config.noise,
        trials=len(rows),
        failures=failures,
        failure_rate=failures / len(rows) if rows else 0.0,
        error=error,
    )
    return [r.model_dump() for r in rows], summary.model_dump()


async def run_sweep(configs: List[ExperimentConfig], jobs: int = 1) -> SweepReport:
    results_by_cell: Dict[int, Tuple[List[Dict[str, Any]], Dict[str, Any]]] = {}
    sem = asyncio.Semaphore(jobs)
    loop = asyncio.get_running_loop()
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 and len(configs) > 1 else None

    async def process_one(index: int, config: ExperimentConfig):
        async with sem:
            payload = config.model_dump_json()
            if pool is None:
                results_by_cell[index] = run_cell(payload)
            else:
                results_by_cell[index] = await loop.run_in_executor(pool, run_cell, payload)

    try:
        await asyncio.gather(*(process_one(i, c) for i, c in enumerate(configs)))
    finally:
        if pool is not None:
            pool.shutdown()

    report = SweepReport()
    for i in range(len(configs)):
        rows, summary = results_by_cell[i]
        report.rows.extend(SweepRow.model_validate(r) for r in rows)
        report.summary.append(CellSummary.model_validate(summary))
    return report


def sweep(configs: List[ExperimentConfig], jobs: int = 1) -> SweepReport:
    for c in configs:
        if c.subcommand != "reduce":
            raise ValueError(f"sweep cells must all be 'reduce' configs, got {c.subcommand!r}")
    if not configs:
        return SweepReport()
    return asyncio.run(run_sweep(configs, jobs))

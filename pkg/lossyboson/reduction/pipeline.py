# reduction/pipeline.py
"""
Recover |Per(X)|^2 from a noisy Phi oracle.

Strategy
--------
1. Embed X into a larger Gaussian matrix A: [X | Y] for input loss,
   [X ; Y] for dark counts, [[X, Y], [V, W]] for shuffling.
2. For each node c_i = sqrt(x_i), scale the bordering columns and/or
   rows by c_i and query the oracle.
3. Fit the polynomial in x = c^2 and read off the constant term beta0.
4. |Per(X)|^2 = |Lambda| * beta0 (divided by p_k for the shuffle mixture).

Every report carries the bound diagnostics (Gautschi, variance,
Chebyshev envelope) next to the achieved error.
"""
from __future__ import annotations

import logging
import math
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel

from lossyboson.errors import ShapeError
from lossyboson.linalg.matrices import as_complex_matrix, scale_bottom_rows, scale_right_columns
from lossyboson.linalg.random import Seed, sample_gaussian_matrix
from lossyboson.optics.loss import LossModel
from lossyboson.permanent.kernels import permanent
from lossyboson.reduction.interpolation import (
    NodeSet,
    build_vandermonde,
    chebyshev_envelope,
    condition_number,
    estimate_beta0,
    gautschi_bound,
    interpolation_nodes,
    nodes_on_interval,
    vandermonde_inverse_norm,
    variance_bound,
)
from lossyboson.reduction.oracle import NoiseSpec, noisy_phi_oracle

logger = logging.getLogger(__name__)

Layout = Literal["columns", "rows", "block"]

_LAYOUTS = {
    "input-loss": "columns",
    "dark-counts": "rows",
    "shuffle-exact": "block",
    "shuffle-mixture": "block",
}


class ReductionReport(BaseModel):
    model: str
    n: int
    k: int
    epsilon: float
    delta: float
    noise: NoiseSpec
    seed: int
    stream: int
    estimate: float
    truth: float
    abs_err: float
    error_units_nfact: float
    succeeded: bool
    variance_bound: float
    envelope: float
    gautschi_norm_bound: float
    inverse_norm: float
    condition_number: float
    subset_count: int
    p_k: float
    interpolation_variable: str = "x = c^2"
    nodes: NodeSet
    oracle_values: List[float]


def embed(x, k: int, seed: Seed, layout: Layout = "columns") -> np.ndarray:
    """
    Place the n x n matrix X in the top-left corner of a Gaussian matrix
    with k extra columns, rows, or both. Same seed, same matrix.
    """
    x = as_complex_matrix(x, "X")
    n = x.shape[0]
    if x.shape[1] != n:
        raise ShapeError(f"X must be square, got {x.shape}")
    if k < 0:
        raise ShapeError(f"k must be >= 0, got {k}")
    if k == 0:
        return x
    if layout == "columns":
        return np.hstack([x, sample_gaussian_matrix(n, k, seed)])
    if layout == "rows":
        return np.vstack([x, sample_gaussian_matrix(k, n, seed)])
    if layout == "block":
        y = sample_gaussian_matrix(n, k, seed.child(0))
        v = sample_gaussian_matrix(k, n, seed.child(1))
        w = sample_gaussian_matrix(k, k, seed.child(2))
        return np.block([[x, y], [v, w]])
    raise ShapeError(f"unknown embedding layout {layout!r}")


def scale_embedding(a: np.ndarray, k: int, c: float, layout: Layout) -> np.ndarray:
    if layout == "columns":
        return scale_right_columns(a, k, c)
    if layout == "rows":
        return scale_bottom_rows(a, k, c)
    return scale_bottom_rows(scale_right_columns(a, k, c), k, c)


def recover_permanent_squared(
    x,
    k: int,
    model: LossModel,
    noise: NoiseSpec,
    epsilon: float,
    delta: float,
    seed: Seed,
    node_count: Optional[int] = None,
) -> ReductionReport:
    x = as_complex_matrix(x, "X")
    n = x.shape[0]
    if x.shape[1] != n:
        raise ShapeError(f"X must be square, got {x.shape}")
    if model.k != k:
        raise ShapeError(f"loss model has k={model.k}, reduction asked for k={k}")
    layout = _LAYOUTS[model.kind]
    degree = model.degree

    nodes = interpolation_nodes(n, k, delta, degree, node_count)
    a = embed(x, k, seed.child(0), layout)

    w = []
    for i, c in enumerate(nodes.c_values):
        w.append(noisy_phi_oracle(scale_embedding(a, k, c, layout), model, noise, seed.child(1 + i), call_index=i))

    v = build_vandermonde(nodes)
    beta0 = estimate_beta0(v, w)
    lam = model.subset_count(n)
    p_k = model.mixture_probs[-1] if model.kind == "shuffle-mixture" else 1.0
    estimate = beta0 * lam / p_k

    square = nodes_on_interval(nodes.a, degree)
    eps_prime = noise.epsilon_prime if noise.kind != "none" else 0.0
    var = variance_bound(eps_prime, n, k, nodes.a, degree).explicit

    nfact = math.factorial(n)
    truth = permanent(x).abs_squared
    abs_err = abs(estimate - truth)
    report = ReductionReport(
        model=model.kind,
        n=n,
        k=k,
        epsilon=epsilon,
        delta=delta,
        noise=noise,
        seed=seed.value,
        stream=seed.stream,
        estimate=estimate,
        truth=truth,
        abs_err=abs_err,
        error_units_nfact=abs_err / nfact,
        succeeded=abs_err <= epsilon * nfact,
        variance_bound=var,
        envelope=chebyshev_envelope(var, delta) * lam / p_k,
        gautschi_norm_bound=gautschi_bound(square),
        inverse_norm=vandermonde_inverse_norm(square),
        condition_number=condition_number(v),
        subset_count=lam,
        p_k=p_k,
        nodes=nodes,
        oracle_values=[float(val) for val in w],
    )
    logger.info(
        "reduction %s n=%d k=%d: fit in x=c^2 on [%.6g, %.6g] with %d nodes, estimate=%.6g truth=%.6g err=%.3g n!",
        model.kind, n, k, 1 - nodes.a, 1 + nodes.a, nodes.count, estimate, truth, report.error_units_nfact,
    )
    return report

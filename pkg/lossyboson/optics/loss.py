# optics/loss.py
"""
Lossy probability functionals.

  phi_input_loss      n x (n+k) matrix, average of |Per|^2 over column subsets
  phi_dark            (n+k) x n matrix, average over row subsets
  phi_shuffle_exact   square matrix, average over row AND column subsets
                      with `dropped` rows and columns removed
  phi_shuffle_mixture probability-weighted sum of the exact shuffle terms
  row_norm_product    R(A), product of squared row 2-norms

No n! normalization happens here; error units are applied by the
reduction layer only. Subsets are visited in lexicographic order, so
sums are reproducible to the bit.
"""
from __future__ import annotations

import itertools
import logging
import math
from math import comb
from typing import List, Literal, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import BaseModel, model_validator
from scipy import stats

from lossyboson.errors import CapExceededError, ShapeError
from lossyboson.linalg.matrices import as_complex_matrix
from lossyboson.linalg.random import Seed, sample_gaussian_matrix
from lossyboson.permanent.kernels import permanent_abs2

logger = logging.getLogger(__name__)

MAX_SUBMATRICES = 1_000_000

LossKind = Literal["input-loss", "dark-counts", "shuffle-exact", "shuffle-mixture"]


class LossModel(BaseModel):
    kind: LossKind
    k: int
    mixture_probs: Optional[List[float]] = None

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check(self) -> "LossModel":
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if self.kind == "shuffle-mixture":
            p = self.mixture_probs
            if p is None or len(p) != self.k + 1:
                raise ValueError(f"shuffle-mixture needs k+1 = {self.k + 1} probabilities")
            if any(x < 0 for x in p):
                raise ValueError("mixture probabilities must be non-negative")
            if abs(math.fsum(p) - 1.0) > 1e-12:
                raise ValueError(f"mixture probabilities sum to {math.fsum(p)!r}, not 1")
            if p[-1] <= 0:
                raise ValueError("p_k must be > 0, the reduction divides by it")
        elif self.mixture_probs is not None:
            raise ValueError(f"mixture_probs only apply to shuffle-mixture, not {self.kind}")
        return self

    @property
    def is_shuffle(self) -> bool:
        return self.kind in ("shuffle-exact", "shuffle-mixture")

    @property
    def degree(self) -> int:
        """Degree of Phi(A[c]) as a polynomial in x = c^2."""
        return 2 * self.k if self.is_shuffle else self.k

    def subset_count(self, n: int) -> int:
        """|Lambda| factor multiplying the fitted constant term."""
        lam = comb(n + self.k, self.k)
        return lam * lam if self.is_shuffle else lam

    def matrix_shape(self, n: int) -> Tuple[int, int]:
        if self.kind == "input-loss":
            return n, n + self.k
        if self.kind == "dark-counts":
            return n + self.k, n
        return n + self.k, n + self.k

    def detected_photons(self, shape: Tuple[int, int]) -> int:
        rows, cols = shape
        if self.kind == "input-loss":
            return rows
        if self.kind == "dark-counts":
            return cols
        return rows - self.k


def _check_cap(count: int, what: str) -> None:
    if count > MAX_SUBMATRICES:
        raise CapExceededError(what, count, MAX_SUBMATRICES)


def phi_input_loss(a) -> float:
    a = as_complex_matrix(a, "A")
    n, cols = a.shape
    if n > cols:
        raise ShapeError(f"input-loss needs rows <= cols, got {n}x{cols}")
    total = comb(cols, n)
    _check_cap(total, f"column subsets of a {n}x{cols} matrix")
    acc = [permanent_abs2(a[:, list(sub)]) for sub in itertools.combinations(range(cols), n)]
    return math.fsum(acc) / total


def phi_dark(a) -> float:
    a = as_complex_matrix(a, "A")
    rows, n = a.shape
    if rows < n:
        raise ShapeError(f"dark counts need rows >= cols, got {rows}x{n}")
    total = comb(rows, n)
    _check_cap(total, f"row subsets of a {rows}x{n} matrix")
    acc = [permanent_abs2(a[list(sub), :]) for sub in itertools.combinations(range(rows), n)]
    return math.fsum(acc) / total


def phi_shuffle_exact(a, dropped: int) -> float:
    """
    Average |Per|^2 over all (N-dropped) x (N-dropped) submatrices of the
    square N x N matrix `a`, rows and columns chosen independently.
    """
    a = as_complex_matrix(a, "A")
    side, cols = a.shape
    if side != cols:
        raise ShapeError(f"shuffle model needs a square matrix, got {side}x{cols}")
    if dropped < 0 or dropped >= side:
        raise ShapeError(f"cannot drop {dropped} of {side} rows and columns")
    keep = side - dropped
    per_axis = comb(side, keep)
    _check_cap(per_axis * per_axis, f"row/column subset pairs of a {side}x{side} matrix")
    subsets = [list(sub) for sub in itertools.combinations(range(side), keep)]
    acc = []
    for rows in subsets:
        block = a[rows, :]
        for cols_ in subsets:
            acc.append(permanent_abs2(block[:, cols_]))
    return math.fsum(acc) / (per_axis * per_axis)


def phi_shuffle_mixture(a, model: LossModel) -> float:
    if model.kind != "shuffle-mixture":
        raise ShapeError(f"phi_shuffle_mixture needs a shuffle-mixture model, got {model.kind}")
    a = as_complex_matrix(a, "A")
    if a.shape[0] != a.shape[1] or a.shape[0] <= model.k:
        raise ShapeError(f"shuffle mixture needs a square matrix of side n+k > k, got {a.shape}")
    terms = [p * phi_shuffle_exact(a, j) for j, p in enumerate(model.mixture_probs) if p > 0]
    return math.fsum(terms)


def phi_for_model(a, model: LossModel) -> float:
    if model.kind == "input-loss":
        return phi_input_loss(a)
    if model.kind == "dark-counts":
        return phi_dark(a)
    if model.kind == "shuffle-exact":
        return phi_shuffle_exact(a, model.k)
    return phi_shuffle_mixture(a, model)


def row_norm_product(a) -> float:
    a = as_complex_matrix(a, "A")
    return float(np.prod(np.sum(np.abs(a) ** 2, axis=1)))


class Correlation(NamedTuple):
    pearson_r: float
    p_value: float
    trials: int


def row_norm_correlation(n: int, k: int, trials: int, seed: Seed) -> Correlation:
    """Pearson correlation of R(A) against Phi(A) over Gaussian n x (n+k) draws."""
    if trials < 3:
        raise ValueError("correlation needs at least 3 trials")
    r_vals = np.empty(trials)
    phi_vals = np.empty(trials)
    for t in range(trials):
        a = sample_gaussian_matrix(n, n + k, seed.child(t))
        r_vals[t] = row_norm_product(a)
        phi_vals[t] = phi_input_loss(a)
    res = stats.pearsonr(r_vals, phi_vals)
    logger.info("R(A) vs Phi(A): n=%d k=%d trials=%d r=%.4f", n, k, trials, res[0])
    return Correlation(float(res[0]), float(res[1]), trials)

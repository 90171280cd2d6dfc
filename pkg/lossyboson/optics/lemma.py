# optics/lemma.py
"""
Distance between the Gaussian ensemble N_A[1] and its column-scaled
version N_A[c].

N_A[c] differs from N_A[1] only in the n*k entries of the scaled block,
whose complex variance becomes c^2. The KL divergence has a closed form;
Pinsker turns it into a total-variation bound, and `tv_monte_carlo`
measures the total variation directly for comparison.
"""
from __future__ import annotations

import logging
import math
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, Field
from scipy import integrate

from lossyboson.linalg.random import Seed

logger = logging.getLogger(__name__)

MIN_TV_TRIALS = 10_000


class GaussianEnsembleSpec(BaseModel):
    n: int = Field(ge=1)
    k: int = Field(ge=0)
    c: float = Field(gt=0)

    model_config = {"frozen": True}


def kl_scaled_gaussian(n: int, k: int, c: float) -> float:
    """D_KL(N_A[1] || N_A[c]) = nk (1/c^2 - 1 + 2 ln c)."""
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    return n * k * (1.0 / (c * c) - 1.0 + 2.0 * math.log(c))


def kl_numerical(n: int, k: int, c: float) -> float:
    """
    Same divergence by quadrature. For one complex entry r = |z|^2 is
    Exp(1) under N(0,1)_C and Exp(mean c^2) under N(0,c^2)_C; the phase is
    uniform under both, so the KL reduces to one radial integral.
    """
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    inv = 1.0 / (c * c)
    log_c2 = 2.0 * math.log(c)

    def integrand(r: float) -> float:
        return math.exp(-r) * (-r + r * inv + log_c2)

    value, _ = integrate.quad(integrand, 0.0, math.inf, epsabs=1e-13, epsrel=1e-12)
    return n * k * value


def pinsker_tv_bound(kl: float) -> float:
    if kl < 0:
        raise ValueError(f"KL divergence must be non-negative, got {kl}")
    return math.sqrt(kl / 2.0)


def max_c_offset(n: int, k: int, delta: float) -> float:
    """Largest |c-1| keeping N_A[c] within O(delta) of N_A[1]."""
    if n < 1 or k < 1:
        raise ValueError(f"need n, k >= 1, got n={n}, k={k}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return delta / math.sqrt(n * k)


class TVEstimate(NamedTuple):
    estimate: float
    stderr: float


def tv_monte_carlo(spec: GaussianEnsembleSpec, trials: int, seed: Seed, partitions: int = 1) -> TVEstimate:
    """
    ||N_A[c] - N_A[1]|| estimated as E_{N_A[1]}[max(0, 1 - q/p)].

    Only the n*k scaled entries enter the density ratio, so only those are
    drawn. Trials are split over `partitions` child streams and merged in
    partition order.
    """
    if trials < MIN_TV_TRIALS:
        raise ValueError(f"tv_monte_carlo needs at least {MIN_TV_TRIALS} trials, got {trials}")
    if partitions < 1:
        raise ValueError("partitions must be >= 1")
    dim = spec.n * spec.k
    if dim == 0 or spec.c == 1.0:
        return TVEstimate(0.0, 0.0)

    log_norm = -2.0 * dim * math.log(spec.c)
    slope = 1.0 - 1.0 / (spec.c * spec.c)
    total = 0.0
    total_sq = 0.0
    for p in range(partitions):
        lo = p * trials // partitions
        hi = (p + 1) * trials // partitions
        if hi == lo:
            continue
        draws = seed.child(p).rng().standard_normal((hi - lo, dim, 2))
        radial = 0.5 * np.sum(draws * draws, axis=(1, 2))
        f = np.maximum(0.0, 1.0 - np.exp(log_norm + slope * radial))
        total += math.fsum(f)
        total_sq += math.fsum(f * f)

    mean = total / trials
    var = max(0.0, (total_sq - trials * mean * mean) / (trials - 1))
    stderr = math.sqrt(var / trials)
    logger.debug("tv_monte_carlo n=%d k=%d c=%g: %.6g +- %.2g", spec.n, spec.k, spec.c, mean, stderr)
    return TVEstimate(mean, stderr)

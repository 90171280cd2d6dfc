# optics/distributions.py
"""
Exact output distributions at desk scale.

Ideal:  Pr[S -> T] = |Per(U_{S,T})|^2 / (s_1!...s_m! t_1!...t_m!)
Lossy:  n+k photons enter the first n+k modes, exactly k are lost at the
        sources; Pr[T] averages the ideal probability over which n of the
        n+k photons survived.

The lossy outcome space is all of Phi_{m,n}, collision outcomes
included, so that probabilities sum to one exactly. `no_collision_view`
gives the collision-free part for experiments that ignore collisions.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from math import comb
from typing import Any, Dict, List, Sequence

import numpy as np
from scipy import stats

from lossyboson.errors import CapExceededError, NormalizationError, ShapeError
from lossyboson.linalg.matrices import (
    OccupationState,
    as_complex_matrix,
    as_occupation_state,
    repeat_indices,
    submatrix_st,
)
from lossyboson.linalg.random import Seed
from lossyboson.optics.loss import phi_input_loss
from lossyboson.optics.states import count_states, enumerate_states, is_no_collision
from lossyboson.permanent.kernels import permanent

logger = logging.getLogger(__name__)

MAX_LOSSY_PERMANENTS = 10_000_000
NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class OutcomeDistribution:
    outcomes: List[OccupationState]
    probs: np.ndarray

    def __post_init__(self):
        if len(self.outcomes) != len(self.probs):
            raise ShapeError("outcomes and probs differ in length")

    def total(self) -> float:
        return math.fsum(self.probs)

    def check_normalized(self) -> None:
        if np.any(self.probs < 0):
            raise NormalizationError("distribution has negative probabilities")
        if abs(self.total() - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(f"probabilities sum to {self.total()!r}, not 1")

    def prob(self, outcome: Sequence[int]) -> float:
        return float(self.probs[self.outcomes.index(tuple(outcome))])

    def no_collision_view(self, renormalize: bool = False) -> "OutcomeDistribution":
        keep = [i for i, o in enumerate(self.outcomes) if is_no_collision(o)]
        probs = self.probs[keep].copy()
        if renormalize and probs.sum() > 0:
            probs /= math.fsum(probs)
        return OutcomeDistribution([self.outcomes[i] for i in keep], probs)

    def to_payload(self) -> Dict[str, Any]:
        return {"outcomes": [list(o) for o in self.outcomes], "probs": [float(p) for p in self.probs]}


def _factorial_weight(state: Sequence[int]) -> float:
    return float(math.prod(math.factorial(v) for v in state))


def ideal_outcome_prob(u, s: Sequence[int], t: Sequence[int]) -> float:
    s = as_occupation_state(s, "S")
    t = as_occupation_state(t, "T")
    if sum(s) != sum(t):
        raise ShapeError(f"photon number mismatch: S has {sum(s)}, T has {sum(t)}")
    if sum(s) == 0:
        return 1.0
    sub = submatrix_st(u, s, t)
    return permanent(sub).abs_squared / (_factorial_weight(s) * _factorial_weight(t))


def lossy_distribution(u, n: int, k: int) -> OutcomeDistribution:
    """
    Output distribution when n+k photons enter the first n+k modes and
    exactly k are lost before the interferometer. Independent per-photon
    loss is not modelled; it reduces to this fixed-k case by repeating the
    experiment until the typical number of losses occurs.
    """
    u = as_complex_matrix(u, "U")
    m = u.shape[0]
    if u.shape[1] != m:
        raise ShapeError(f"U must be square, got {u.shape}")
    if n < 1 or k < 0 or n + k > m:
        raise ShapeError(f"need 1 <= n and n+k <= m, got n={n}, k={k}, m={m}")
    work = count_states(m, n, no_collision=False) * comb(n + k, k)
    if work > MAX_LOSSY_PERMANENTS:
        raise CapExceededError(f"permanent evaluations for m={m}, n={n}, k={k}", work, MAX_LOSSY_PERMANENTS)

    outcomes = enumerate_states(m, n, no_collision=False)
    probs = np.empty(len(outcomes))
    inputs = u[:, : n + k]
    for i, t in enumerate(outcomes):
        b = inputs[repeat_indices(t), :]
        probs[i] = phi_input_loss(b) / _factorial_weight(t)
    logger.debug("lossy distribution m=%d n=%d k=%d: %d outcomes, sum=%.15f",
                 m, n, k, len(outcomes), math.fsum(probs))
    return OutcomeDistribution(outcomes, probs)


def ideal_distribution(u, s: Sequence[int]) -> OutcomeDistribution:
    """Full D_U for input S over Phi_{m,n}."""
    u = as_complex_matrix(u, "U")
    s = as_occupation_state(s, "S")
    outcomes = enumerate_states(u.shape[0], sum(s), no_collision=False)
    probs = np.array([ideal_outcome_prob(u, s, t) for t in outcomes])
    return OutcomeDistribution(outcomes, probs)


def sample_outcomes(dist: OutcomeDistribution, draws: int, seed: Seed) -> List[OccupationState]:
    """Inverse-CDF sampling of `draws` outcomes from one stream."""
    dist.check_normalized()
    cdf = np.cumsum(dist.probs)
    u = seed.rng().random(draws) * cdf[-1]
    idx = np.minimum(np.searchsorted(cdf, u, side="right"), len(cdf) - 1)
    return [dist.outcomes[i] for i in idx]


def sample_outcome(dist: OutcomeDistribution, seed: Seed) -> OccupationState:
    return sample_outcomes(dist, 1, seed)[0]


def goodness_of_fit(dist: OutcomeDistribution, draws: Sequence[OccupationState]) -> float:
    """Chi-square p-value of `draws` against `dist` (zero-probability outcomes excluded)."""
    position = {o: i for i, o in enumerate(dist.outcomes)}
    observed = np.zeros(len(dist.outcomes))
    for d in draws:
        observed[position[tuple(d)]] += 1
    support = dist.probs > 0
    if support.sum() < 2:
        return 1.0
    expected = dist.probs[support] / dist.probs[support].sum() * len(draws)
    return float(stats.chisquare(observed[support], expected).pvalue)

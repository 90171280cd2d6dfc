# optics/states.py
"""
Occupation-number states.

A state of n photons in m modes is a tuple (s_1, ..., s_m) with sum n.
Enumeration is lexicographic in the underlying index multiset, which
puts (1,1,0) before (1,0,1) before (0,1,1); this is the order every
sum over states in the package uses.
"""
from __future__ import annotations

import itertools
import logging
from math import comb
from typing import List

from lossyboson.errors import CapExceededError, ShapeError
from lossyboson.linalg.matrices import OccupationState

logger = logging.getLogger(__name__)

MAX_STATES = 10_000_000


def count_states(m: int, n: int, no_collision: bool) -> int:
    return comb(m, n) if no_collision else comb(m + n - 1, n)


def state_from_indices(m: int, indices) -> OccupationState:
    occ = [0] * m
    for i in indices:
        occ[i] += 1
    return tuple(occ)


def enumerate_states(m: int, n: int, no_collision: bool) -> List[OccupationState]:
    if m < 1 or n < 0:
        raise ShapeError(f"invalid state space: m={m}, n={n}")
    if no_collision and n > m:
        raise ShapeError(f"no-collision states need n <= m, got n={n}, m={m}")
    total = count_states(m, n, no_collision)
    if total > MAX_STATES:
        raise CapExceededError(f"state count for m={m}, n={n}", total, MAX_STATES)
    logger.debug("enumerating %d states (m=%d, n=%d, no_collision=%s)", total, m, n, no_collision)
    picker = itertools.combinations if no_collision else itertools.combinations_with_replacement
    return [state_from_indices(m, idx) for idx in picker(range(m), n)]


def is_no_collision(state: OccupationState) -> bool:
    return all(v <= 1 for v in state)

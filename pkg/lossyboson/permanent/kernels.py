# permanent/kernels.py
"""
Exact permanents of complex square matrices.

Two implementations:
  - `permanent`: Glynn's +-1 formula walked in Gray-code order, one row
    update per step, O(2^(n-1) * n). Summation order is the Gray-code
    order, so results are bit-reproducible.
  - `permanent_naive`: direct sum over all n! permutations. Slow, but
    independent of the fast kernel; used to cross-check it.

The kernel is JIT-compiled with numba when available; without numba the
same loops run as plain Python (fine for n <= 12 or so).
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from lossyboson.errors import CapExceededError, ShapeError
from lossyboson.linalg.matrices import as_complex_matrix

logger = logging.getLogger(__name__)

MAX_GLYNN_SIZE = 20
MAX_NAIVE_SIZE = 9

try:
    from numba import njit, prange
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f

    prange = range


@dataclass(frozen=True)
class PermanentValue:
    value: complex
    abs_squared: float

    @classmethod
    def of(cls, value: complex) -> "PermanentValue":
        value = complex(value)
        return cls(value=value, abs_squared=value.real * value.real + value.imag * value.imag)


def check_permanent_size(n: int, naive: bool = False) -> None:
    """Raise CapExceededError before any work on an n x n permanent that is out of reach."""
    cap = MAX_NAIVE_SIZE if naive else MAX_GLYNN_SIZE
    if n > cap:
        raise CapExceededError("naive permanent size" if naive else "permanent size", n, cap)


# ---------------------------------------------------------------------------
# Glynn kernel
# ---------------------------------------------------------------------------
@njit(cache=True)
def _glynn_segment(m, start, stop):
    """
    Partial Glynn sum over Gray-code steps [start, stop).

    Row 0 keeps delta=+1; bit b of the Gray code g = i ^ (i >> 1) flips the
    sign of row b+1.
    """
    n = m.shape[0]
    g = start ^ (start >> 1)
    v = np.zeros(n, dtype=np.complex128)
    sign = 1.0
    for i in range(n):
        if i > 0 and (g >> (i - 1)) & 1:
            sign = -sign
            for j in range(n):
                v[j] -= m[i, j]
        else:
            for j in range(n):
                v[j] += m[i, j]

    total = 0.0 + 0.0j
    step = start
    while True:
        p = 1.0 + 0.0j
        for j in range(n):
            p *= v[j]
        total += sign * p
        step += 1
        if step >= stop:
            break
        # the bit that changes between gray(step-1) and gray(step)
        bit = 0
        t = step
        while (t & 1) == 0:
            t >>= 1
            bit += 1
        row = bit + 1
        if (g >> bit) & 1:
            for j in range(n):
                v[j] += 2.0 * m[row, j]
        else:
            for j in range(n):
                v[j] -= 2.0 * m[row, j]
        g ^= 1 << bit
        sign = -sign
    return total


@njit(cache=True)
def _glynn_serial(m):
    n = m.shape[0]
    return _glynn_segment(m, 0, 1 << (n - 1)) / (1 << (n - 1))


@njit(cache=True, parallel=True)
def _glynn_parallel(m, segments):
    n = m.shape[0]
    steps = 1 << (n - 1)
    partial = np.zeros(segments, dtype=np.complex128)
    for s in prange(segments):
        lo = s * steps // segments
        hi = (s + 1) * steps // segments
        if hi > lo:
            partial[s] = _glynn_segment(m, lo, hi)
    # pairwise merge
    width = 1
    while width < segments:
        for i in range(0, segments - width, 2 * width):
            partial[i] += partial[i + width]
        width *= 2
    return partial[0] / steps


def permanent(m, parallel: bool = False, segments: int = 16) -> PermanentValue:
    """
    Exact permanent of a square complex matrix with 1 <= n <= 20.

    `parallel=True` splits the Gray-code walk into `segments` contiguous
    pieces; its result may differ from the serial one by ~1e-12 relative.
    """
    m = as_complex_matrix(m, "M")
    n, cols = m.shape
    if n != cols:
        raise ShapeError(f"permanent needs a square matrix, got {n}x{cols}")
    check_permanent_size(n)
    if n == 1:
        return PermanentValue.of(m[0, 0])
    arr = np.ascontiguousarray(m)
    if parallel:
        segments = max(1, min(segments, 1 << (n - 1)))
        return PermanentValue.of(_glynn_parallel(arr, segments))
    return PermanentValue.of(_glynn_serial(arr))


def permanent_abs2(m: np.ndarray) -> float:
    """|Per(m)|^2 for an already validated square array (inner-loop helper)."""
    n = m.shape[0]
    if n == 0:
        return 1.0
    if n == 1:
        z = m[0, 0]
    else:
        z = _glynn_serial(np.ascontiguousarray(m))
    return z.real * z.real + z.imag * z.imag


# ---------------------------------------------------------------------------
# Factorial-time oracle
# ---------------------------------------------------------------------------
@lru_cache(maxsize=None)
def _permutation_table(n: int) -> np.ndarray:
    table = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    table.setflags(write=False)
    return table


def permanent_naive(m) -> PermanentValue:
    """Sum over all n! permutations (n <= 9)."""
    m = as_complex_matrix(m, "M")
    n, cols = m.shape
    if n != cols:
        raise ShapeError(f"permanent needs a square matrix, got {n}x{cols}")
    check_permanent_size(n, naive=True)
    perms = _permutation_table(n)
    terms = m[np.arange(n), perms].prod(axis=1)
    logger.debug("naive permanent n=%d over %d permutations", n, math.factorial(n))
    return PermanentValue.of(terms.sum())

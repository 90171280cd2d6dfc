# linalg/matrices.py
"""
Dense complex matrices and the constructions built on top of them:
the U_{S,T} row/column repetition and the c-scaling of bordering
columns and rows used by the interpolation argument.

Matrices are plain numpy complex128 arrays, row-major, never mutated in
place by this package.
"""
from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np

from lossyboson.errors import ShapeError

OccupationState = Tuple[int, ...]


def as_complex_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and return `a` as a read-only 2-D complex128 array."""
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ShapeError(f"{name} has non-finite entries")
    arr.setflags(write=False)
    return arr


def as_occupation_state(s: Sequence[int], name: str = "state") -> OccupationState:
    state = tuple(int(v) for v in s)
    if any(v < 0 for v in state):
        raise ShapeError(f"{name} has negative occupations: {state}")
    return state


def repeat_indices(state: Sequence[int]) -> List[int]:
    """Mode j repeated state[j] times, in mode order."""
    out: List[int] = []
    for j, count in enumerate(state):
        out.extend([j] * count)
    return out


def submatrix_st(u, s: Sequence[int], t: Sequence[int]) -> np.ndarray:
    """
    U_{S,T}: rows of U repeated according to T, then columns repeated
    according to S. Result is sum(T) x sum(S); S and T may carry
    different photon numbers.
    """
    u = as_complex_matrix(u, "U")
    s = as_occupation_state(s, "S")
    t = as_occupation_state(t, "T")
    m = u.shape[0]
    if len(s) > u.shape[1] or len(t) > m:
        raise ShapeError(f"occupation states longer than the {m} modes of U")
    rows = repeat_indices(t)
    cols = repeat_indices(s)
    return u[np.ix_(rows, cols)]


def scale_right_columns(a, k: int, c: float) -> np.ndarray:
    """A[c]: the k rightmost columns multiplied by c. Input untouched."""
    a = as_complex_matrix(a, "A")
    if k < 0 or k > a.shape[1]:
        raise ShapeError(f"cannot scale {k} columns of a matrix with {a.shape[1]}")
    out = a.copy()
    if k:
        out[:, a.shape[1] - k:] *= c
    return out


def scale_bottom_rows(a, k: int, c: float) -> np.ndarray:
    """Row counterpart of scale_right_columns (dark-count / shuffle embeddings)."""
    a = as_complex_matrix(a, "A")
    if k < 0 or k > a.shape[0]:
        raise ShapeError(f"cannot scale {k} rows of a matrix with {a.shape[0]}")
    out = a.copy()
    if k:
        out[a.shape[0] - k:, :] *= c
    return out

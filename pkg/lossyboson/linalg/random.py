# linalg/random.py
"""
Reproducible random ensembles.

Every random draw in the package goes through a `Seed`, a (value, stream)
pair that keys numpy's counter-based Philox bit generator. Sub-tasks get
their own streams via `Seed.child(i)`, so parallel work stays
reproducible no matter how it is scheduled.

Complex Gaussian convention: N(0,1)_C has unit total variance, i.e. each
real component has variance 1/2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import qr

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


@dataclass(frozen=True)
class Seed:
    value: int
    stream: int = 0

    def __post_init__(self):
        if not (0 <= self.value <= _MASK64 and 0 <= self.stream <= _MASK64):
            raise ValueError("seed value and stream must be 64-bit unsigned integers")

    def child(self, index: int) -> "Seed":
        """Independent sub-stream number `index` of this stream."""
        return Seed(self.value, _splitmix64(self.stream ^ _splitmix64(index + 1)))

    def rng(self) -> np.random.Generator:
        key = (self.stream << 64) | self.value
        return np.random.Generator(np.random.Philox(key=key))


def sample_gaussian_matrix(rows: int, cols: int, seed: Seed) -> np.ndarray:
    """rows x cols matrix of i.i.d. N(0,1)_C entries."""
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix shape must be positive, got {rows}x{cols}")
    parts = seed.rng().standard_normal((2, rows, cols))
    out = (parts[0] + 1j * parts[1]) / np.sqrt(2.0)
    out.setflags(write=False)
    return out


def sample_haar_unitary(m: int, seed: Seed) -> np.ndarray:
    """
    Haar-random m x m unitary.

    QR of a complex Ginibre matrix, then each column of Q is multiplied by
    the phase r_jj/|r_jj| of the matching diagonal entry of R. Without the
    phase fix Q is unitary but not Haar distributed.
    """
    if m < 1:
        raise ValueError(f"mode count must be positive, got {m}")
    z = sample_gaussian_matrix(m, m, seed)
    q, r = qr(z)
    d = np.diag(r)
    u = q * (d / np.abs(d))
    u.setflags(write=False)
    return u

import itertools

import numpy as np
import pytest

from lossyboson.linalg.random import Seed


@pytest.fixture
def seed():
    return Seed(20240611)


def brute_permanent(m):
    """Textbook sum over permutations, independent of the package kernels."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    total = 0j
    for perm in itertools.permutations(range(n)):
        term = 1 + 0j
        for i, j in enumerate(perm):
            term *= m[i, j]
        total += term
    return total

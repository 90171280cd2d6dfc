import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_permanent
from lossyboson.errors import CapExceededError, ShapeError
from lossyboson.linalg.random import Seed, sample_gaussian_matrix
from lossyboson.permanent.kernels import MAX_NAIVE_SIZE, check_permanent_size, permanent, permanent_abs2, permanent_naive


@pytest.mark.parametrize("n", range(1, 8))
def test_ones_matrix_gives_factorial(n):
    ones = np.ones((n, n))
    assert permanent(ones).value == pytest.approx(math.factorial(n))
    assert permanent_naive(ones).value == pytest.approx(math.factorial(n))


def test_identity_and_known_2x2():
    assert permanent(np.eye(5)).value == pytest.approx(1.0)
    assert permanent([[1, 2], [3, 4]]).value == pytest.approx(10.0)
    assert permanent([[1j, 2], [3, -1]]).value == pytest.approx(6 - 1j)


def test_known_3x3():
    m = np.arange(1, 10).reshape(3, 3)
    assert permanent(m).value == pytest.approx(450.0)


def test_fast_kernel_matches_textbook_expansion():
    for n in range(2, 7):
        for i in range(5):
            m = sample_gaussian_matrix(n, n, Seed(n).child(i))
            expected = brute_permanent(m)
            assert abs(permanent(m).value - expected) <= 1e-10 * max(1.0, abs(expected))


def test_fast_kernel_matches_naive_over_many_draws():
    seed = Seed(1000)
    count = 0
    for n in range(2, MAX_NAIVE_SIZE + 1):
        draws = 150 if n < 8 else 60
        for i in range(draws):
            m = sample_gaussian_matrix(n, n, seed.child(n * 1000 + i))
            fast = permanent(m).value
            slow = permanent_naive(m).value
            assert abs(fast - slow) <= 1e-10 * abs(slow)
            count += 1
    assert count >= 1000


@pytest.mark.parametrize("n", [3, 6, 10])
@pytest.mark.parametrize("segments", [1, 3, 16])
def test_parallel_segments_agree_with_serial(n, segments):
    m = sample_gaussian_matrix(n, n, Seed(42).child(n))
    serial = permanent(m).value
    par = permanent(m, parallel=True, segments=segments).value
    assert abs(par - serial) <= 1e-12 * max(1.0, abs(serial))


def test_kernel_is_bitwise_reproducible():
    m = sample_gaussian_matrix(9, 9, Seed(3))
    assert permanent(m).value == permanent(m).value


def test_abs_squared_field_and_inner_helper():
    m = sample_gaussian_matrix(4, 4, Seed(8))
    v = permanent(m)
    assert v.abs_squared == pytest.approx(abs(v.value) ** 2)
    assert permanent_abs2(np.ascontiguousarray(m)) == pytest.approx(v.abs_squared)
    assert permanent_abs2(np.zeros((0, 0), dtype=complex)) == 1.0


def test_rejects_non_square():
    with pytest.raises(ShapeError):
        permanent(np.ones((2, 3)))
    with pytest.raises(ShapeError):
        permanent_naive(np.ones((3, 2)))


def test_size_caps():
    with pytest.raises(CapExceededError):
        permanent(np.ones((21, 21)))
    with pytest.raises(CapExceededError):
        permanent_naive(np.ones((MAX_NAIVE_SIZE + 1, MAX_NAIVE_SIZE + 1)))


@given(seed=st.integers(0, 2 ** 32), n=st.integers(1, 6))
@settings(max_examples=40, deadline=None)
def test_transpose_invariance(seed, n):
    m = sample_gaussian_matrix(n, n, Seed(seed))
    a = permanent(m).value
    assert abs(permanent(m.T).value - a) <= 1e-10 * max(1.0, abs(a))


@given(seed=st.integers(0, 2 ** 32), n=st.integers(1, 6), row=st.integers(0, 5), re=st.floats(-3, 3), im=st.floats(-3, 3))
@settings(max_examples=40, deadline=None)
def test_row_scaling_is_linear(seed, n, row, re, im):
    row = row % n
    lam = complex(re, im)
    m = sample_gaussian_matrix(n, n, Seed(seed)).copy()
    base = permanent(m).value
    m[row] *= lam
    assert abs(permanent(m).value - lam * base) <= 1e-9 * max(1.0, abs(lam * base), abs(base))


@given(seed=st.integers(0, 2 ** 32), n=st.integers(2, 6))
@settings(max_examples=30, deadline=None)
def test_permutation_invariance(seed, n):
    m = sample_gaussian_matrix(n, n, Seed(seed))
    rng = Seed(seed).child(1).rng()
    p_rows = rng.permutation(n)
    p_cols = rng.permutation(n)
    a = permanent(m).value
    assert abs(permanent(m[p_rows][:, p_cols]).value - a) <= 1e-10 * max(1.0, abs(a))


@given(seed=st.integers(0, 2 ** 32), n=st.integers(2, 7))
@settings(max_examples=40, deadline=None)
def test_first_row_expansion(seed, n):
    m = sample_gaussian_matrix(n, n, Seed(seed))
    terms = [m[0, j] * permanent(np.delete(m[1:], j, axis=1)).value for j in range(n)]
    scale = sum(abs(t) for t in terms)
    assert abs(permanent(m).value - sum(terms)) <= 1e-10 * max(1.0, scale)


def test_size_check_runs_before_any_work():
    with pytest.raises(CapExceededError):
        check_permanent_size(21)
    with pytest.raises(CapExceededError):
        check_permanent_size(MAX_NAIVE_SIZE + 1, naive=True)
    check_permanent_size(20)

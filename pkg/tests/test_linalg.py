import itertools

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from qclab import linalg as la
from qclab.gf import build_tower

FIELDS = {(p, k): build_tower(p, {k}).field(k) for p, k in [(2, 1), (3, 1), (2, 2), (5, 1)]}


@st.composite
def matrices(draw, max_dim=4):
    F = FIELDS[draw(st.sampled_from(sorted(FIELDS)))]
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.integers(0, F.size - 1), min_size=r * c, max_size=r * c))
    return F, np.array(entries, dtype=np.int64).reshape(r, c)


def _brute_kernel_size(F, A):
    return sum(
        1 for x in itertools.product(range(F.size), repeat=A.shape[1])
        if not la.matmul(F, A, np.array(x, dtype=np.int64)[:, None]).any()
    )


@settings(max_examples=60)
@given(matrices(max_dim=3))
def test_nullspace_matches_brute_force(data):
    F, A = data
    N = la.nullspace(F, A)
    assert not la.matmul(F, A, N).any()
    assert la.rank(F, N) == N.shape[1]
    assert F.size ** N.shape[1] == _brute_kernel_size(F, A)
    assert la.rank(F, A) + N.shape[1] == A.shape[1]


@settings(max_examples=60)
@given(matrices())
def test_solve_round_trip(data):
    F, A = data
    rng = np.random.default_rng(A.sum())
    x = rng.integers(0, F.size, size=A.shape[1])
    b = la.matmul(F, A, x[:, None])[:, 0]
    y = la.solve(F, A, b)
    assert y is not None
    assert np.array_equal(la.matmul(F, A, y[:, None])[:, 0], b)


@settings(max_examples=60)
@given(matrices())
def test_inverse(data):
    F, A = data
    if A.shape[0] != A.shape[1] or la.rank(F, A) < A.shape[0]:
        return
    Ainv = la.inverse(F, A)
    assert np.array_equal(la.matmul(F, A, Ainv), np.eye(A.shape[0], dtype=np.int64))


def test_solve_inconsistent():
    F = FIELDS[(2, 1)]
    A = np.array([[1, 0], [1, 0]])
    assert la.solve(F, A, np.array([0, 1])) is None


def test_rref_is_reduced():
    F = FIELDS[(2, 2)]
    A = np.array([[2, 3, 1], [3, 1, 0], [1, 2, 1]])
    R, r, piv = la.rref(F, A)
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert np.count_nonzero(R[:, c]) == 1
    assert not R[r:].any()

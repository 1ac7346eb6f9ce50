import itertools

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from hermicode import linalg
from hermicode.gf import build_tower

CTX = build_tower(p=3, a=1, b=1, N=1)
ELS = CTX.elements("t2").tolist()

matrices = st.integers(1, 3).flatmap(
    lambda r: st.integers(1, 3).flatmap(
        lambda c: st.lists(st.lists(st.sampled_from(ELS), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def brute_kernel_size(a):
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    pts = CTX.points(cols, "t2")
    return int(np.count_nonzero(np.all(np.asarray(linalg.matmul(CTX, pts, a.T)) == 0, axis=1)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_nullity_against_enumeration(a):
    a = np.array(a, dtype=np.int64)
    r = linalg.rank(CTX, a)
    ker = linalg.nullspace(CTX, a)
    assert r + ker.shape[0] == a.shape[1]
    assert brute_kernel_size(a) == CTX.q ** ker.shape[0]
    if ker.size:
        assert np.all(np.asarray(linalg.matmul(CTX, a, ker.T)) == 0)


@settings(max_examples=80, deadline=None)
@given(matrices, st.data())
def test_solve_is_consistent_with_enumeration(a, data):
    a = np.array(a, dtype=np.int64)
    b = np.array(data.draw(st.lists(st.sampled_from(ELS), min_size=a.shape[0], max_size=a.shape[0])), dtype=np.int64)
    x = linalg.solve(CTX, a, b)
    solvable = any(
        np.array_equal(linalg.matmul(CTX, a, np.array(v)), b) for v in itertools.product(ELS, repeat=a.shape[1])
    )
    assert (x is not None) == solvable
    if x is not None:
        assert np.array_equal(linalg.matmul(CTX, a, x), b)


def test_rref_is_canonical():
    a = np.array([[1, 2], [2, 1]], dtype=np.int64)
    r, piv = linalg.rref(CTX, a)
    assert piv == [0]
    assert r[1].tolist() == [0, 0]
    assert linalg.row_basis(CTX, np.vstack([a, a])).tolist() == linalg.row_basis(CTX, a).tolist()


def test_invertible():
    assert linalg.is_invertible(CTX, np.eye(2, dtype=np.int64))
    assert not linalg.is_invertible(CTX, np.ones((2, 2), dtype=np.int64))

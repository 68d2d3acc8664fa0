import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from footprint import linalg
from footprint.errors import NotABasis
from footprint.field import GF, RATIONAL

import oracles

FIELDS = [GF(2), GF(3), GF(4), GF(5), GF(8)]


@st.composite
def matrices(draw, max_rows=4, max_cols=5):
    F = draw(st.sampled_from(FIELDS))
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = [[draw(st.integers(0, F.q - 1)) for _ in range(c)] for _ in range(r)]
    return F, F.array(rows)


@given(matrices())
def test_rref_rowspace_and_rank(data):
    F, M = data
    R, piv = linalg.rref(F, M)
    n = M.shape[1]
    assert oracles.span(F, R, n) == oracles.span(F, M, n)
    assert len(piv) == oracles.rank_by_span(F, M, n)
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert all(R[j, c] == 0 for j in range(R.shape[0]) if j != i)


@given(matrices())
def test_nullspace(data):
    F, M = data
    N = linalg.nullspace(F, M)
    assert N.shape[0] == M.shape[1] - linalg.rank(F, M)
    if N.shape[0]:
        assert not np.any(linalg.matmul(F, M, N.T))


@given(matrices())
def test_left_nullspace(data):
    F, M = data
    Y = linalg.left_nullspace(F, M)
    assert Y.shape[0] == M.shape[0] - linalg.rank(F, M)
    if Y.shape[0]:
        assert not np.any(linalg.matmul(F, Y, M))


@given(matrices())
def test_reverse_echelon(data):
    F, M = data
    R, last = linalg.reverse_echelon(F, M)
    n = M.shape[1]
    assert last == sorted(set(last))
    for row, c in zip(R, last):
        assert row[c] == 1 and not np.any(row[c + 1:])
    assert oracles.span(F, R, n) == oracles.span(F, M, n)


@given(matrices(max_rows=4, max_cols=4))
def test_matmul_matches_scalar(data):
    F, M = data
    P = linalg.matmul(F, M, M.T)
    for i in range(M.shape[0]):
        for j in range(M.shape[0]):
            acc = 0
            for a, b in zip(M[i], M[j]):
                acc = F.add(acc, F.mul(int(a), int(b)))
            assert P[i, j] == acc


def test_inverse():
    F = GF(5)
    M = F.array([[1, 2], [3, 4]])
    inv = linalg.inverse(F, M)
    assert (linalg.matmul(F, M, inv) == np.eye(2, dtype=np.int64)).all()
    with pytest.raises(NotABasis):
        linalg.inverse(F, F.array([[1, 2], [2, 4]]))


def test_rational_elimination():
    F = RATIONAL
    M = F.array([[1, 2, 3], [2, 4, 7]])
    R, piv = linalg.rref(F, M)
    assert piv == [0, 2]
    N = linalg.nullspace(F, M)
    assert N.shape == (1, 3)
    assert not np.any(linalg.matmul(F, M, N.T) != 0)


def test_same_rowspace():
    F = GF(3)
    A = F.array([[1, 1, 0], [0, 1, 1]])
    B = F.array([[1, 2, 1], [1, 0, 2]])
    assert not linalg.same_rowspace(F, A, F.array([[1, 2, 2], [1, 0, 2]]))
    assert linalg.same_rowspace(F, A, B)


@given(st.sampled_from([2, 3, 5, 7]), st.data())
def test_small_and_array_elimination_agree(p, data):
    F = GF(p)
    r, c = data.draw(st.integers(1, 6)), data.draw(st.integers(1, 7))
    M = F.array([[data.draw(st.integers(0, p - 1)) for _ in range(c)] for _ in range(r)])
    R1, piv1 = linalg.rref(F, M)
    saved = linalg._SMALL
    linalg._SMALL = -1
    try:
        R2, piv2 = linalg.rref(F, M)
    finally:
        linalg._SMALL = saved
    assert piv1 == piv2 and np.array_equal(R1, R2)

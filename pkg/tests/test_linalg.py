import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from p1codes import linalg
from p1codes.gfpoly import field_of_order

F3 = field_of_order(3)
F9 = field_of_order(9)


def _brute_rank(F, M):
    """Rank via the size of the row space (enumerate all combinations)."""
    rows = [tuple(r) for r in M.tolist()]
    span = set()
    for coefs in itertools.product(range(F.q), repeat=len(rows)):
        v = [0] * M.shape[1]
        for c, r in zip(coefs, rows):
            for j, x in enumerate(r):
                v[j] = F.add(v[j], F.mul(c, x))
        span.add(tuple(v))
    return round(np.log(len(span)) / np.log(F.q))


mats3 = st.lists(st.lists(st.integers(0, 2), min_size=4, max_size=4), min_size=1, max_size=3)


@settings(max_examples=60, deadline=None)
@given(mats3)
def test_rank_matches_span_size(rows):
    M = np.array(rows)
    assert linalg.rank(F3, M) == _brute_rank(F3, M)


@settings(max_examples=60, deadline=None)
@given(mats3)
def test_nullspace(rows):
    M = np.array(rows)
    N = linalg.nullspace(F3, M)
    assert N.shape[0] == 4 - linalg.rank(F3, M)
    if N.size:
        assert not F3.matmul(M, N.T).any()


def test_inverse_and_solve_gf9():
    rng = np.random.default_rng(0)
    done = 0
    while done < 10:
        A = rng.integers(0, 9, (4, 4))
        if linalg.rank(F9, A) < 4:
            continue
        Ainv = linalg.inverse(F9, A)
        assert np.array_equal(F9.matmul(A, Ainv), np.eye(4, dtype=np.int64))
        B = rng.integers(0, 9, (4, 2))
        assert np.array_equal(F9.matmul(A, linalg.solve(F9, A, B)), B)
        done += 1


def test_rowspace_helpers():
    A = np.array([[1, 0, 2], [0, 1, 1]])
    B = np.array([[1, 1, 0], [2, 0, 1]])  # rows are sums/multiples of A's rows mod 3
    assert linalg.rowspace_equal(F3, A, B)
    assert linalg.in_rowspace(F3, A, [1, 1, 0])
    assert not linalg.in_rowspace(F3, A, [0, 0, 1])
    assert linalg.independent_rows(F3, np.array([[1, 2], [2, 1], [0, 1]])) == [0, 2]


def test_batch_nonsingular_matches_rank():
    rng = np.random.default_rng(5)
    for F in (F3, F9):
        mats = rng.integers(0, F.q, (200, 3, 3))
        got = linalg.batch_nonsingular(F, mats)
        want = np.array([linalg.rank(F, m) == 3 for m in mats])
        assert np.array_equal(got, want)

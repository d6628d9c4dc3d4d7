import itertools

import numpy as np
import pytest

from p1codes import linalg
from p1codes.gfpoly import PoleError, field_of_order
from p1codes.projline import Divisor, P1Point
from p1codes.rrspace import eval_functions, m_function, rr_basis, rr_split, verify_in_LD

F7 = field_of_order(7)
F9 = field_of_order(9)
INF = P1Point(F7, None)


def pt(a):
    return P1Point(F7, a)


def test_effective_basis_shape():
    D = Divisor({INF: 2, pt(0): 1})
    b = rr_basis(D)
    assert b.dimension == 4
    assert b.tags == (None, (INF, 1), (INF, 2), (pt(0), 1))
    assert all(verify_in_LD(f, D) for f in b.functions)


def test_negative_degree_is_empty():
    assert rr_basis(Divisor({INF: 1, pt(0): -2})).dimension == 0


def test_degree_zero_noneffective():
    D = Divisor({pt(1): 1, pt(2): -1})
    b = rr_basis(D)
    assert b.dimension == 1
    assert verify_in_LD(b.functions[0], D)


def test_split():
    D = Divisor({INF: 2, pt(3): -1})
    D1, D2, q = rr_split(D)
    assert D1 + D2 == D and D1.is_effective() and D2.degree == 0
    assert verify_in_LD(q, D2)
    with pytest.raises(ValueError):
        rr_split(Divisor({INF: 1}))


@pytest.mark.parametrize("F", [F7, F9])
def test_dimension_and_independence_sweep(F):
    pts = [P1Point(F, None), P1Point(F, 0), P1Point(F, 1)]
    for cs in itertools.product(range(-2, 3), repeat=3):
        D = Divisor(list(zip(pts, cs)))
        b = rr_basis(D, F)
        if D.degree < 0:
            assert b.dimension == 0
            continue
        assert b.dimension == D.degree + 1
        assert all(verify_in_LD(f, D) for f in b.functions)
        avoid = set(D.support())
        evals = [P for P in [P1Point(F, None)] + [P1Point(F, c) for c in F.order_codes] if P not in avoid]
        if len(evals) <= D.degree:
            continue
        M = eval_functions(b.functions, evals[: D.degree + 1])
        assert linalg.rank(F, M) == b.dimension


def test_m_function():
    assert m_function(INF).num.degree == 1
    f = m_function(pt(3))
    with pytest.raises(PoleError):
        f.value_code(3)


def test_eval_functions_raises_at_pole():
    with pytest.raises(PoleError):
        eval_functions([m_function(pt(2))], [pt(1), pt(2)])


def test_eval_functions_infinity_column():
    D = Divisor({pt(0): 1})
    b = rr_basis(D)
    M = eval_functions(b.functions, [INF, pt(1)])
    assert M.tolist() == [[1, 1], [0, 1]]  # 1/x vanishes at infinity
    assert np.asarray(M).dtype == np.int64

import numpy as np
import pytest

from p1codes import linalg
from p1codes.agcode import (LinearCode, ag_code, dual_code, formally_self_dual, goppa_lower_bound,
                            grs_code, injectivity_check, injectivity_report, mds_certificate,
                            min_distance_exact, monomial_equiv_to_grs, rescale_columns,
                            spectrum_exact, spectrum_mds, weight_witness)
from p1codes.gfpoly import BudgetError, field_of_order
from p1codes.projline import Divisor, P1Point

F7 = field_of_order(7)
INF = P1Point(F7, None)
PTS = [P1Point(F7, a) for a in range(1, 7)]
E6 = Divisor.from_points(PTS)


def rs(k):
    return ag_code(Divisor({INF: k - 1}), E6)


def test_rs_generator_rows():
    C = rs(2)
    assert C.generator.tolist() == [[1] * 6, [1, 2, 3, 4, 5, 6]]


def test_spectrum_mds_known_values():
    assert spectrum_mds(6, 2, 5, 7).counts == (1, 0, 0, 0, 0, 36, 12)
    assert spectrum_mds(4, 4, 1, 3).total == 81
    assert spectrum_mds(5, 1, 5, 7).counts == (1, 0, 0, 0, 0, 6)


def test_exact_spectra_of_rs_codes():
    for k in range(1, 6):
        C = rs(k)
        assert spectrum_exact(C) == spectrum_mds(6, k, 7 - k, 7)


def test_enumeration_budget():
    with pytest.raises(BudgetError):
        spectrum_exact(rs(5), budget=100)


def test_mds_certificates():
    C = rs(3)
    assert mds_certificate(C, "exact").verdict
    s = mds_certificate(C, "sampled", trials=50, seed=3)
    assert s.verdict and s.seed == 3 and s.trials == 50
    bad = C.generator.copy()
    bad[:, 2] = bad[:, 3]  # repeated column
    cert = mds_certificate(LinearCode(F7, bad), "exact")
    assert not cert.verdict and cert.witness is not None
    sub = bad[:, list(cert.witness)]
    assert linalg.rank(F7, sub) < 3


def test_dual_and_self_duality():
    D = dual_code(rs(2))
    assert D.k == 4 and min_distance_exact(D) == 3
    assert not formally_self_dual(rs(2))
    assert formally_self_dual(rs(3))


def test_grs_matches_scaled_rs():
    mult = [1, 2, 3, 4, 5, 6]
    G = grs_code(1, PTS, [F7(m) for m in mult])
    assert linalg.rowspace_equal(F7, G.generator, rescale_columns(rs(2), [F7(m) for m in mult]))
    with pytest.raises(ValueError):
        grs_code(1, PTS, [F7(0)] + [F7(1)] * 5)


def test_monomial_equivalence_mixed_support():
    D = Divisor({P1Point(F7, 0): 2, INF: -1})
    E = Divisor.from_points([P1Point(F7, a) for a in (1, 2, 3, 5, 6)])
    C = ag_code(D, E)
    mult, target = monomial_equiv_to_grs(D, E)
    assert target.k == C.k == 2
    assert linalg.rowspace_equal(F7, rescale_columns(C, mult), target.generator)


def test_overlap_rejected():
    with pytest.raises(ValueError):
        ag_code(Divisor({PTS[0]: 1}), E6)


def test_injectivity():
    assert injectivity_check(Divisor({INF: 5}), E6)
    small = Divisor.from_points(PTS[:2])
    assert not injectivity_check(Divisor({INF: 3}), small)
    rep = injectivity_report(Divisor({INF: 3}), small)
    assert rep["injective"] is False and "note" in rep


def test_weight_witness_and_goppa_bound():
    D = Divisor({INF: 2})
    w, f, chosen = weight_witness(D, E6)
    assert int((w != 0).sum()) == 4 == goppa_lower_bound(D, E6)
    assert rs(3).contains(w)
    assert len(chosen) == 2


def test_encode_and_contains():
    C = rs(2)
    c = C.encode([1, 1])
    assert c.tolist() == [2, 3, 4, 5, 6, 0]
    assert C.contains(c)
    assert not C.contains(np.array([1, 0, 0, 0, 0, 0]))

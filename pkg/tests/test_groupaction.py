import pytest

from p1codes.gfpoly import BudgetError, FieldError, Polynomial, field_of_order
from p1codes.groupaction import (all_orbits, catalog_entry, catalog_labels, field_sufficient,
                                 generic_orbit_report, group_closure, make_family, orbit,
                                 orbit_decomposition, orbit_polynomial_report,
                                 ramification_profile, search_field, special_orbits,
                                 verify_orbit_polynomial)
from p1codes.projline import MoebiusMap, P1Point, all_points, moebius_make

F7, F13, F17, F61 = (field_of_order(q) for q in (7, 13, 17, 61))


def test_closure_identity_first_and_bound():
    g = moebius_make(F7(2), 0, 0, 1)
    G = group_closure([g], 10)
    assert G.order == 3 and G.elements[0].is_identity()
    with pytest.raises(BudgetError):
        group_closure([moebius_make(F7(1), 1, 0, 1), moebius_make(F7(0), 1, 1, 0)], 5)


@pytest.mark.parametrize("family,params,q,order", [
    ("cyclic", {"delta": 3}, 7, 3),
    ("dihedral", {"delta": 3}, 7, 6),
    ("a4", {}, 13, 12),
    ("s4", {}, 73, 24),
    ("a5", {}, 61, 60),
    ("semidirect", {"t": 1, "m": 3}, 7, 21),
    ("psl2", {"t": 1}, 7, 168),
    ("pgl2", {"t": 1}, 7, 336),
])
def test_family_orders(family, params, q, order):
    assert make_family(family, params, field_of_order(q)).order == order


def test_family_constants_missing():
    with pytest.raises(FieldError):
        make_family("cyclic", {"delta": 4}, F7)
    with pytest.raises(FieldError):
        make_family("a4", {}, F7)  # no square root of -1
    with pytest.raises(FieldError):
        make_family("semidirect", {"t": 2, "m": 1}, F7)


def test_orbits_partition():
    G = make_family("dihedral", {"delta": 4}, F17)
    dec = all_orbits(G)
    pts = [P for O in dec for P in O]
    assert sorted(pts, key=P1Point.sort_key) == all_points(F17)
    assert all(G.order % len(O) == 0 for O in dec)
    assert orbit(G, P1Point(F17, None)) == [P1Point(F17, None), P1Point(F17, 0)]


def test_orbit_decomposition_rejects_unstable():
    G = make_family("cyclic", {"delta": 3}, F7)
    with pytest.raises(ValueError):
        orbit_decomposition(G, [P1Point(F7, 1)])
    assert orbit_decomposition(G, [P1Point(F7, a) for a in (1, 2, 4)]).sizes == [3]


def test_trivial_group_has_no_special_orbits():
    G = group_closure([MoebiusMap.identity(F7)], 1)
    with pytest.raises(ValueError):
        special_orbits(G)


def test_a5_special_orbits_and_catalog():
    G = make_family("a5", {}, F61)
    assert sorted(special_orbits(G).sizes) == [12, 20, 30]
    assert sorted(ramification_profile(G).indices) == [2, 3, 5]
    for label in catalog_labels("a5"):
        e = catalog_entry("a5", label, {}, F61)
        assert verify_orbit_polynomial(G, e.poly, e.with_infinity)


def test_a5_generic_orbit_correction():
    F = field_of_order(181)
    G = make_family("a5", {}, F)
    P = next(O for O in all_orbits(G) if len(O) == 60)[0]
    assert generic_orbit_report(G, P)["verdict"]
    assert not generic_orbit_report(G, P, printed=True)["verdict"]
    with pytest.raises(ValueError):
        generic_orbit_report(G, special_orbits(G).orbits[0][0])


def test_a4_catalog_alternative_sign():
    G = make_family("a4", {}, F13)
    b1 = orbit_polynomial_report(G, catalog_entry("a4", "B_1", {}, F13))
    b2 = orbit_polynomial_report(G, catalog_entry("a4", "B_2", {}, F13))
    assert b1["verdict"] and b2["verdict"]
    assert b1["orbit_sizes"] == b2["orbit_sizes"] == [4]


def test_psl_catalog_needs_q0_not_q0_minus_one():
    F49 = field_of_order(49)
    G = make_family("psl2", {"t": 1}, F49)
    assert orbit_polynomial_report(G, catalog_entry("psl2", "B_0", {"t": 1}, F49))["verdict"]
    assert not orbit_polynomial_report(G, catalog_entry("psl2", "B_0_printed", {"t": 1}, F49))["splits"]


def test_dihedral_generic_orbit():
    G = make_family("dihedral", {"delta": 4}, F17)
    P = next(O for O in all_orbits(G) if len(O) == 8)[0]
    assert generic_orbit_report(G, P)["verdict"]


def test_verify_orbit_polynomial_non_union():
    G = make_family("cyclic", {"delta": 3}, F7)
    x = Polynomial.x(F7)
    assert verify_orbit_polynomial(G, (x - 1) * (x - 2) * (x - 4))
    assert not verify_orbit_polynomial(G, (x - 1) * (x - 2))


def test_field_sufficient_diagnostics():
    res = field_sufficient("a5", {}, 41)
    assert not res and "62" in res.diagnostics[0]
    assert not field_sufficient("dihedral", {"delta": 4}, 13)
    assert field_sufficient("dihedral", {"delta": 4}, 17)
    assert not field_sufficient("cyclic", {"delta": 2}, 25)  # characteristic 5
    assert not field_sufficient("cyclic", {"delta": 2}, 12)


def test_search_field():
    assert search_field("dihedral", {"delta": 4}, 100) == 17
    assert search_field("a5", {}, 100) == 61
    assert search_field("cyclic", {"delta": 97}, 50) is None


def test_profile_over_other_field():
    G = make_family("psl2", {"t": 1}, F7)
    assert sorted(ramification_profile(G, field_of_order(49)).indices) == [4, 21]

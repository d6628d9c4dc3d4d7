"""Named, fully determined instances: field, group, D and E."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .gfpoly import GF, field_make, field_of_order
from .groupaction import GroupOnP1, all_orbits, make_family, search_field, special_orbits
from .projline import Divisor, P1Point

SCENARIOS = ("ex41", "ex42", "rs62", "dihedral17", "psl27")


@dataclass
class Scenario:
    name: str
    field: GF
    group: GroupOnP1 | None
    D: Divisor
    E: Divisor
    notes: list[str] = dc_field(default_factory=list)


def _orbit_divisor(orbits, coef=1) -> Divisor:
    return Divisor([(P, coef) for O in orbits for P in O])


def ex41(q: int | None = None) -> Scenario:
    """The A5 code of length 42: D on the 20-point orbit, E on the 12- and 30-point orbits."""
    q = q or search_field("a5", {}, 400)
    F = field_of_order(q)
    G = make_family("a5", {}, F)
    by_size = {len(O): O for O in special_orbits(G).orbits}
    D = _orbit_divisor([by_size[20]])
    E = _orbit_divisor([by_size[12], by_size[30]])
    notes = ["D is the 20-point orbit and E the union of the 12- and 30-point orbits, "
             "so that n = 42 and k = deg(D) + 1 = 21"]
    return Scenario("ex41", F, G, D, E, notes)


def ex42(p: int = 7, k: int = 4) -> Scenario:
    """Desk-scale PSL(2, p) code with n = 2k over GF(p^k).

    D is a multiple of the orbit P^1(GF(p)) and E the orbit GF(p^2) - GF(p)
    plus the generic orbits of least points, with the multiple chosen so that
    n = 2 (deg D + 1).
    """
    F = field_make(p, k)
    G = make_family("psl2", {"t": 1}, F)
    orbs = all_orbits(G).orbits
    B_inf = next(O for O in orbs if len(O) == p + 1)
    mid = next(O for O in orbs if len(O) == p * p - p)
    generic = [O for O in orbs if len(O) == G.order]
    E_orbits = [mid]
    for O in generic:
        E_orbits.append(O)
        n = sum(len(X) for X in E_orbits)
        if n % 2 == 0 and (n // 2 - 1) % (p + 1) == 0:
            a = (n // 2 - 1) // (p + 1)
            D = _orbit_divisor([B_inf], a)
            E = _orbit_divisor(E_orbits)
            notes = [f"D = {a} * P^1(GF({p})), E = {len(E_orbits) - 1} generic orbit(s) plus the "
                     f"{len(mid)}-point orbit; n = {n}, k = {n // 2}"]
            return Scenario("ex42", F, G, D, E, notes)
    raise ValueError(f"no n = 2k configuration over GF({p}^{k})")


def rs62() -> Scenario:
    F = field_of_order(7)
    D = Divisor([(P1Point(F, None), 1)])
    E = Divisor.from_points([P1Point(F, a) for a in range(1, 7)])
    G = make_family("cyclic", {"delta": 6}, F)
    return Scenario("rs62", F, G, D, E, ["Reed-Solomon [6,2] on GF(7)*"])


def dihedral17() -> Scenario:
    F = field_of_order(17)
    G = make_family("dihedral", {"delta": 4}, F)
    sp = special_orbits(G).orbits
    D = _orbit_divisor([O for O in sp if len(O) == 2])
    E = _orbit_divisor([O for O in sp if len(O) == 4])
    return Scenario("dihedral17", F, G, D, E, ["D = (0) + (inf), E = roots of x^8 - 1"])


def psl27() -> Scenario:
    F = field_of_order(7)
    G = make_family("psl2", {"t": 1}, F)
    E = Divisor.from_points(P for O in all_orbits(G).orbits for P in O)
    return Scenario("psl27", F, G, Divisor(), E,
                    ["PSL(2,7) is transitive on P^1(GF(7)); the only stable code is the repetition code"])


def build(name: str, q: int | None = None) -> Scenario:
    if name == "ex41":
        return ex41(q)
    if name == "ex42":
        return ex42(q or 7)
    if name in ("rs62", "dihedral17", "psl27"):
        return {"rs62": rs62, "dihedral17": dihedral17, "psl27": psl27}[name]()
    raise ValueError(f"unknown scenario {name!r}; choose from {SCENARIOS}")

"""Finite subgroups of PGL(2, q): explicit generators, orbits and ramification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field

import numpy as np

from .gfpoly import (GF, BudgetError, FieldElement, FieldError, NonSplitError, Polynomial,
                     field_of_order, field_sqrt, prime_power, primitive_root_of_unity,
                     sqrt_minus_one, split_roots)
from .projline import MoebiusMap, P1Point, all_points, canonical_point_codes

FAMILIES = ("cyclic", "dihedral", "a4", "s4", "a5", "semidirect", "psl2", "pgl2")
DEFAULT_SCAN_BUDGET = 1 << 20


class InsufficientFieldError(FieldError):
    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = list(diagnostics)


@dataclass
class GroupOnP1:
    field: GF
    elements: tuple[MoebiusMap, ...]
    family: str = "custom"
    params: dict = dc_field(default_factory=dict)
    generators: tuple[MoebiusMap, ...] = ()
    constants: dict = dc_field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in set(self.elements)

    def index(self) -> dict[MoebiusMap, int]:
        return {g: i for i, g in enumerate(self.elements)}


@dataclass(frozen=True)
class OrbitDecomposition:
    orbits: tuple[tuple[P1Point, ...], ...]

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def __iter__(self):
        return iter(self.orbits)

    def __len__(self):
        return len(self.orbits)


@dataclass(frozen=True)
class RamificationProfile:
    indices: tuple[int, ...]

    def as_multiset(self) -> Counter:
        return Counter(self.indices)

    def __eq__(self, other):
        if isinstance(other, RamificationProfile):
            return self.as_multiset() == other.as_multiset()
        return self.as_multiset() == Counter(other)

    def __hash__(self):
        return hash(tuple(sorted(self.indices)))


def group_closure(gens, bound: int, family: str = "custom", params: dict | None = None,
                  constants: dict | None = None) -> GroupOnP1:
    """The subgroup generated by ``gens``; identity first, then canonical order."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator (pass the identity for the trivial group)")
    F = gens[0].field
    if any(g.field != F for g in gens):
        raise FieldError("generators over different fields")
    ident = MoebiusMap.identity(F)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x.compose(g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > bound:
                        raise BudgetError(f"closure exceeds bound {bound}")
        frontier = nxt
    rest = sorted((g for g in seen if g != ident), key=MoebiusMap.sort_key)
    return GroupOnP1(F, tuple([ident] + rest), family, dict(params or {}), tuple(gens), dict(constants or {}))


def family_order(family: str, params: dict, p: int) -> int:
    if family in ("cyclic",):
        return params["delta"]
    if family == "dihedral":
        return 2 * params["delta"]
    if family == "a4":
        return 12
    if family == "s4":
        return 24
    if family == "a5":
        return 60
    if family == "semidirect":
        return p ** params["t"] * params["m"]
    q0 = p ** params["t"]
    if family == "psl2":
        return q0 * (q0 * q0 - 1) // (2 if p != 2 else 1)
    if family == "pgl2":
        return q0**3 - q0
    raise ValueError(f"unknown family {family!r}")


def expected_ramification(family: str, params: dict, p: int) -> list[int]:
    """Ramification indices of P^1 -> P^1/G for the family (characteristic p > 5)."""
    if family == "cyclic":
        return [params["delta"]] * 2
    if family == "dihedral":
        return [2, params["delta"]] if p == 2 else [2, 2, params["delta"]]
    if family == "a4":
        return [2, 3, 3]
    if family == "s4":
        return [2, 3, 4]
    if family == "a5":
        return [2, 3, 5]
    if family == "semidirect":
        pt, m = p ** params["t"], params["m"]
        return [pt * m, m] if m > 1 else [pt]
    q0 = p ** params["t"]
    if family == "psl2":
        return [q0 * (q0 - 1) // 2, (q0 + 1) // 2]
    if family == "pgl2":
        return [q0 * (q0 - 1), q0 + 1]
    raise ValueError(f"unknown family {family!r}")


def normalize_params(family: str, params: dict | None) -> dict:
    params = dict(params or {})
    if family in ("cyclic", "dihedral"):
        if "delta" not in params:
            raise ValueError(f"{family} needs delta")
        return {"delta": int(params["delta"])}
    if family in ("a4", "s4", "a5"):
        return {}
    if family == "semidirect":
        return {"t": int(params.get("t", 1)), "m": int(params["m"])}
    if family in ("psl2", "pgl2"):
        return {"t": int(params.get("t", 1))}
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def _mm(F: GF, a, b, c, d) -> MoebiusMap:
    return MoebiusMap.from_codes(F, *[F(v).code for v in (a, b, c, d)])


def _subfield_check(F: GF, t: int):
    if F.k % t:
        raise FieldError(f"GF({F.p}^{t}) is not a subfield of GF({F.q})")


def make_family(family: str, params: dict | None, F: GF, bound: int | None = None) -> GroupOnP1:
    """Build a family member from its explicit generators and verify its order."""
    family = family.lower()
    params = normalize_params(family, params)
    p = F.p
    expected = family_order(family, params, p)
    bound = bound if bound is not None else 2 * expected
    one, zero = F.one, F.zero
    consts: dict = {}
    if family == "cyclic":
        xi = primitive_root_of_unity(F, params["delta"])
        consts["xi"] = xi
        gens = [_mm(F, xi, 0, 0, 1)]
    elif family == "dihedral":
        xi = primitive_root_of_unity(F, params["delta"])
        consts["xi"] = xi
        gens = [_mm(F, xi, 0, 0, 1), _mm(F, 0, 1, 1, 0)]
    elif family in ("a4", "s4"):
        i = sqrt_minus_one(F)
        consts["i"] = i
        sigma = _mm(F, -one, 0, 0, 1) if family == "a4" else _mm(F, i, 0, 0, 1)
        gens = [sigma, _mm(F, i, i, 1, -one)]
    elif family == "a5":
        xi = primitive_root_of_unity(F, 5)
        i = sqrt_minus_one(F)
        b = -i * (xi**4 + xi)
        consts.update(xi=xi, i=i, b=b)
        gens = [_mm(F, xi, 0, 0, 1), _mm(F, -one, -b, b, 1)]
    elif family == "semidirect":
        t, m = params["t"], params["m"]
        _subfield_check(F, t)
        pt = p**t
        if (pt - 1) % m:
            raise FieldError(f"m = {m} does not divide {pt} - 1")
        zeta = primitive_root_of_unity(F, m)
        gamma = primitive_root_of_unity(F, pt - 1)
        consts.update(zeta=zeta, gamma=gamma)
        gens = [_mm(F, zeta, 0, 0, 1)] + [_mm(F, 1, gamma**j, 0, 1) for j in range(t)]
    elif family in ("psl2", "pgl2"):
        t = params["t"]
        _subfield_check(F, t)
        xi = primitive_root_of_unity(F, p**t - 1)
        consts["xi"] = xi
        if family == "psl2":
            gens = [_mm(F, xi**2, 0, 0, 1), _mm(F, 0, -one, 1, 0), _mm(F, 1, 1, 0, 1)]
        else:
            gens = [_mm(F, xi, 0, 0, 1), _mm(F, 0, 1, 1, 0), _mm(F, 1, 1, 0, 1)]
    else:
        raise ValueError(f"unknown family {family!r}")
    del zero
    G = group_closure(gens, bound, family, params, consts)
    if G.order != expected:
        raise FieldError(f"{family} generators over GF({F.q}) close to order {G.order}, expected {expected}")
    return G


# -- orbits ------------------------------------------------------------------

def orbit(G: GroupOnP1, P: P1Point) -> list[P1Point]:
    F = G.field
    gens = G.generators or G.elements
    seen = {P.code}
    stack = [P.code]
    while stack:
        c = stack.pop()
        for g in gens:
            d = g.apply_code(c)
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return sorted((P1Point.from_code(F, c) for c in seen), key=P1Point.sort_key)


def orbit_decomposition(G: GroupOnP1, S) -> OrbitDecomposition:
    S = list(S)
    Sset = set(S)
    remaining = sorted(Sset, key=P1Point.sort_key)
    done: set = set()
    orbits = []
    for P in remaining:
        if P in done:
            continue
        O = orbit(G, P)
        if not set(O) <= Sset:
            raise ValueError(f"point set is not G-stable (orbit of {P!r} leaves it)")
        done.update(O)
        orbits.append(tuple(O))
    return OrbitDecomposition(tuple(orbits))


def _point_orbit_labels(G: GroupOnP1, budget: int) -> tuple[np.ndarray, np.ndarray]:
    F = G.field
    if F.q + 1 > budget:
        raise BudgetError(f"scan of {F.q + 1} points exceeds budget {budget}")
    codes = canonical_point_codes(F)
    parent = np.arange(F.q + 1)

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for g in G.generators or G.elements:
        img = g.apply_codes(codes)
        for a, b in zip(codes.tolist(), img.tolist()):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    labels = np.array([find(c) for c in range(F.q + 1)])
    return codes, labels


def all_orbits(G: GroupOnP1, budget: int = DEFAULT_SCAN_BUDGET) -> OrbitDecomposition:
    """Every orbit on P^1(F), ordered by size and then least point."""
    F = G.field
    codes, labels = _point_orbit_labels(G, budget)
    groups: dict[int, list[P1Point]] = {}
    for c in codes.tolist():
        groups.setdefault(int(labels[c]), []).append(P1Point.from_code(F, c))
    orbs = [tuple(v) for v in groups.values()]  # codes were visited in canonical order
    orbs.sort(key=lambda o: (len(o), o[0].sort_key()))
    return OrbitDecomposition(tuple(orbs))


def special_orbits(G: GroupOnP1, budget: int = DEFAULT_SCAN_BUDGET) -> OrbitDecomposition:
    """Orbits on P^1(F) of size strictly less than |G|."""
    if G.order == 1:
        raise ValueError("the trivial group has no special orbits")
    return OrbitDecomposition(tuple(o for o in all_orbits(G, budget) if len(o) < G.order))


def _profile_complete(G: GroupOnP1, indices: list[int]) -> tuple[bool, str]:
    if G.family in FAMILIES:
        exp = expected_ramification(G.family, G.params, G.field.p)
        ok = Counter(indices) == Counter(exp)
        return ok, f"found indices {sorted(indices)}, family row {sorted(exp)}"
    n = G.order
    if n % G.field.p == 0:
        return True, "wild action: completeness not checkable, assumed"
    total = sum(n - n // e for e in indices)
    return total == 2 * n - 2, f"tame Riemann-Hurwitz sum {total} vs {2 * n - 2}"


def ramification_profile(G: GroupOnP1, field: GF | None = None,
                         budget: int = DEFAULT_SCAN_BUDGET) -> RamificationProfile:
    """Multiset {|G|/|O| : O a special orbit}, computed over ``field`` (default G.field)."""
    if field is not None and field != G.field:
        if G.family not in FAMILIES:
            raise ValueError("custom groups can only be analysed over their own field")
        G = make_family(G.family, G.params, field)
    sizes = special_orbits(G, budget).sizes
    indices = [G.order // s for s in sizes]
    ok, why = _profile_complete(G, indices)
    if not ok:
        raise InsufficientFieldError(f"special orbits incomplete over GF({G.field.q}): {why}", [why])
    return RamificationProfile(tuple(sorted(indices)))


# -- catalog of orbit polynomials -------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    family: str
    label: str
    poly: Polynomial
    with_infinity: bool = False
    printed: bool = True
    note: str = ""


def _X(F):
    return Polynomial.x(F)


def catalog_labels(family: str) -> list[str]:
    return {
        "cyclic": ["B_0", "B_inf"],
        "dihedral": ["B_inf", "B_minus", "B_plus"],
        "a4": ["B_0", "B_1", "B_2", "B_2_printed"],
        "s4": ["B_0", "B_1", "B_2"],
        "a5": ["B_inf", "B_0", "B_0_star"],
        "semidirect": ["B_inf", "B_0"],
        "psl2": ["B_inf", "B_inf_printed", "B_0", "B_0_printed"],
        "pgl2": ["B_inf", "B_inf_printed", "B_0", "B_0_printed"],
    }[family]


def catalog_entry(family: str, label: str, params: dict | None, F: GF, a=None) -> CatalogEntry:
    """Instantiate a catalog orbit polynomial over F.

    Labels ending in ``_printed`` reproduce the formula as printed where it
    differs from the corrected form; ``B_a`` entries need the parameter ``a``.
    """
    family = family.lower()
    params = normalize_params(family, params)
    x = _X(F)
    one = Polynomial.constant(F, 1)
    if label.startswith("B_a"):
        U, V, note, printed = _generic_pair(family, params, F, printed=label.endswith("_printed"))
        if a is None:
            raise ValueError("generic orbit polynomial needs the parameter a")
        a = a if isinstance(a, FieldElement) else F(a)
        return CatalogEntry(family, label, U - V * a, False, printed, note)
    if family == "cyclic":
        table = {"B_0": (x, False), "B_inf": (one, True)}
    elif family == "dihedral":
        d = params["delta"]
        table = {"B_inf": (x, True), "B_minus": (x**d - 1, False), "B_plus": (x**d + 1, False)}
    elif family in ("a4", "s4"):
        i = sqrt_minus_one(F)
        table = {"B_0": (x**5 - x, True)}
        if family == "a4":
            r3 = field_sqrt(F(3))
            if r3 is None:
                raise FieldError(f"3 is not a square in GF({F.q})")
            c = (i * r3 * 2)
            table["B_1"] = (x**4 - x**2 * c + 1, False)
            table["B_2"] = (x**4 + x**2 * c + 1, False)
            table["B_2_printed"] = (x**4 - x**2 * c + 1, False)
        else:
            table["B_1"] = (x**8 + x**4 * 14 + 1, False)
            table["B_2"] = ((x**4 + 1) * (x**8 - x**4 * 34 + 1), False)
    elif family == "a5":
        i = sqrt_minus_one(F)
        f0 = x**10 + x**5 * (i * 11) + 1
        table = {
            "B_inf": (x * f0, True),
            "B_0": (x**20 - x**15 * (i * 228) - x**10 * 494 - x**5 * (i * 228) + 1, False),
            "B_0_star": (x**30 + x**25 * (i * 522) + x**20 * 10005 - x**10 * 10005 - x**5 * (i * 522) - 1, False),
        }
    elif family == "semidirect":
        pt = F.p ** params["t"]
        table = {"B_inf": (one, True), "B_0": (x**pt - x, False)}
    elif family in ("psl2", "pgl2"):
        q0 = F.p ** params["t"]
        m = q0 - 1
        table = {
            "B_inf": (x**q0 - x, True),
            "B_inf_printed": (x**m - x, True),
            "B_0": ((x**q0 - x) ** (q0 - 1) + 1, False),
            "B_0_printed": ((x**m - x) ** (m - 1) + 1, False),
        }
    else:
        raise ValueError(f"unknown family {family!r}")
    if label not in table:
        raise ValueError(f"no catalog entry {label!r} for {family}")
    poly, inf = table[label]
    printed = not (label in ("B_2",) and family == "a4") and not (
        family in ("psl2", "pgl2") and label in ("B_inf", "B_0"))
    note = ""
    if family == "a4" and label == "B_2_printed":
        note = "printed with the same polynomial as B_1"
    if family in ("psl2", "pgl2") and label.endswith("_printed"):
        note = "printed with m = p^t - 1 where p^t is needed"
    return CatalogEntry(family, label, poly, inf, printed, note)


def _generic_pair(family, params, F, printed=False):
    """(U, V) such that the generic orbit through P is the root set of U - a V, a = U(P)/V(P)."""
    x = _X(F)
    one = Polynomial.constant(F, 1)
    note = ""
    if family == "cyclic":
        return x ** params["delta"], one, note, True
    if family == "dihedral":
        d = params["delta"]
        if printed:
            return x ** (2 * d) + x**d + 1, Polynomial(F, []), "parameter a absent as printed", True
        return x ** (2 * d) + 1, -(x**d), "corrected: x^(2d) + a x^d + 1", False
    if family == "a4":
        raise ValueError("the A4 generic orbit is a product of three quartics; use the orbit oracle")
    if family == "s4":
        return (x**8 + x**4 * 14 + 1) ** 3, (x**5 - x) ** 4, note, True
    if family == "a5":
        i = sqrt_minus_one(F)
        f0 = x**10 + x**5 * (i * 11) + 1
        f1 = x**20 - x**15 * (i * 228) - x**10 * 494 - x**5 * (i * 228) + 1
        if printed:
            return f1**3, f0**5, note, True
        return f1**3, (x * f0) ** 5, "corrected: f1^3 - a (x f0)^5", False
    if family == "semidirect":
        pt = F.p ** params["t"]
        return (x**pt - x) ** params["m"], one, note, True
    q0 = F.p ** params["t"]
    base = q0 - 1 if printed else q0
    L = x**base - x
    if family == "psl2":
        return (L ** (base - 1) + 1) ** ((base + 1) // 2), L ** (base * (base - 1) // 2), note, printed
    return (L ** (base - 1) + 1) ** (base + 1), L ** (base * (base - 1)), note, printed


def orbit_polynomial(family: str, label: str, params: dict | None, F: GF, a=None) -> Polynomial:
    return catalog_entry(family, label, params, F, a).poly


def _root_points(G: GroupOnP1, f: Polynomial, with_infinity: bool) -> set[P1Point]:
    F = G.field
    pts = {P1Point(F, r.code) for r in split_roots(f)} if f.degree > 0 else set()
    if with_infinity:
        pts.add(P1Point(F, None))
    return pts


def verify_orbit_polynomial(G: GroupOnP1, f: Polynomial, with_infinity: bool = False) -> bool:
    """True iff the roots of f (plus infinity if asked) form a union of G-orbits.

    Raises NonSplitError when f does not split over G.field.
    """
    pts = _root_points(G, f, with_infinity)
    if not pts:
        return False
    return all(set(orbit(G, P)) <= pts for P in pts)


def orbit_polynomial_report(G: GroupOnP1, entry: CatalogEntry) -> dict:
    out = {"label": entry.label, "degree": int(entry.poly.degree) if not entry.poly.is_zero() else None,
           "with_infinity": entry.with_infinity, "as_printed": entry.printed}
    if entry.note:
        out["note"] = entry.note
    try:
        pts = _root_points(G, entry.poly, entry.with_infinity)
    except NonSplitError as exc:
        out.update(splits=False, verdict=False, detail=str(exc))
        return out
    out["splits"] = True
    out["points"] = len(pts)
    if not pts:
        out["verdict"] = False
        return out
    dec_sizes = []
    union = True
    done = set()
    for P in sorted(pts, key=P1Point.sort_key):
        if P in done:
            continue
        O = set(orbit(G, P))
        done |= O
        dec_sizes.append(len(O))
        union &= O <= pts
    out["verdict"] = union
    out["orbit_sizes"] = dec_sizes
    return out


def generic_orbit_report(G: GroupOnP1, P: P1Point, printed: bool = False) -> dict:
    """Check the generic-orbit formula U - aV at the parameter a = U(P)/V(P)."""
    U, V, note, _ = _generic_pair(G.family, G.params, G.field, printed)
    F = G.field
    O = set(orbit(G, P))
    if len(O) != G.order:
        raise ValueError(f"{P!r} lies on a special orbit of size {len(O)}")
    out = {"point": repr(P), "orbit_size": len(O)}
    v = V.eval_code(P.x) if not V.is_zero() else 0
    if v == 0:
        out.update(verdict=False, detail="V vanishes at the point; parameter undefined")
        return out
    a = F.div(U.eval_code(P.x), v)
    f = U - V.scale(a)
    try:
        roots = {P1Point(F, r.code) for r in split_roots(f)}
    except NonSplitError as exc:
        out.update(verdict=False, detail=str(exc))
        return out
    out["a"] = list(F.coeffs_of(a))
    out["verdict"] = roots == O
    if note:
        out["note"] = note
    return out


# -- field sufficiency ---------------------------------------------------------

@dataclass
class Sufficiency:
    ok: bool
    diagnostics: list[str]

    def __bool__(self):
        return self.ok


def field_sufficient(family: str, params: dict | None, q: int,
                     budget: int = DEFAULT_SCAN_BUDGET) -> Sufficiency:
    """Whether GF(q) hosts the family with every special orbit rational."""
    family = family.lower()
    params = normalize_params(family, params)
    diag: list[str] = []
    pk = prime_power(q)
    if pk is None:
        return Sufficiency(False, [f"{q} is not a prime power"])
    p, _ = pk
    if p <= 5:
        return Sufficiency(False, [f"characteristic {p} is not > 5"])
    order = family_order(family, params, p)
    row = expected_ramification(family, params, p)
    need = sum(order // e for e in row)
    if need > q + 1:
        return Sufficiency(False, [f"special orbits need {need} rational points but |P^1(GF({q}))| = {q + 1}"])
    if q + 1 > budget:
        return Sufficiency(False, [f"GF({q}) exceeds scan budget {budget}"])
    try:
        F = field_of_order(q)
        G = make_family(family, params, F)
    except (FieldError, BudgetError) as exc:
        return Sufficiency(False, [str(exc)])
    sizes = special_orbits(G, budget).sizes
    indices = [G.order // s for s in sizes]
    ok, why = _profile_complete(G, indices)
    diag.append(why)
    if ok:
        for label in catalog_labels(family):
            try:
                entry = catalog_entry(family, label, params, F)
            except FieldError as exc:
                diag.append(f"{label}: {exc}")
                continue
            rep = orbit_polynomial_report(G, entry)
            if not rep["splits"]:
                diag.append(f"catalog {label} does not split over GF({q}) ({rep.get('detail')})")
    return Sufficiency(ok, diag)


def search_field(family: str, params: dict | None, qmax: int, qmin: int = 7) -> int | None:
    """Smallest prime power q in [qmin, qmax] with p > 5 over which the family is complete."""
    for q in range(qmin, qmax + 1):
        pk = prime_power(q)
        if pk is None or pk[0] <= 5:
            continue
        if field_sufficient(family, params, q):
            return q
    return None


def point_list(F: GF) -> list[P1Point]:
    return all_points(F)


__all__ = [name for name in dir() if not name.startswith("_")] + ["FieldElement"]

"""Induced coordinate permutations, Perm(C), the Aut_{D,E} scan and the representation on L(D)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

import numpy as np

from . import linalg
from .agcode import LinearCode, ag_code
from .gfpoly import (GF, BudgetError, FieldElement, Polynomial, RationalFunction,
                     quadratic_extension)
from .groupaction import GroupOnP1, group_closure, orbit_decomposition
from .projline import Divisor, MoebiusMap, P1Point, canonical_point_codes
from .rrspace import RRBasis, eval_functions, rr_basis

DEFAULT_SN_MAX_N = 8
DEFAULT_PGL_MAX_Q = 11


@dataclass(frozen=True)
class CoordinatePermutation:
    """sigma acting on F^n by (sigma c)_i = c_{sigma(i)}; ``images`` is 0-indexed."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images must be a permutation of 0..n-1")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "CoordinatePermutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_one_indexed(cls, images) -> "CoordinatePermutation":
        return cls(tuple(int(i) - 1 for i in images))

    def one_indexed(self) -> list[int]:
        return [i + 1 for i in self.images]

    def compose(self, other: "CoordinatePermutation") -> "CoordinatePermutation":
        """The operator self o other (apply other first)."""
        if other.n != self.n:
            raise ValueError("length mismatch")
        return CoordinatePermutation(tuple(other.images[i] for i in self.images))

    __mul__ = compose

    def inverse(self) -> "CoordinatePermutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return CoordinatePermutation(tuple(inv))

    def apply(self, word) -> np.ndarray:
        w = np.asarray(word)
        if w.shape[-1] != self.n:
            raise ValueError("length mismatch")
        return w[..., list(self.images)]

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))


def coordinate_perm(g: MoebiusMap, E: Divisor) -> CoordinatePermutation:
    """phi(g): position i goes to the position of g^{-1}(P_i), points in canonical order."""
    pts = E.support()
    index = {P: i for i, P in enumerate(pts)}
    ginv = g.inverse()
    images = []
    for P in pts:
        Q = ginv(P)
        if Q not in index:
            raise ValueError(f"{g!r} does not stabilise supp(E): {P!r} is hit from outside")
        images.append(index[Q])
    return CoordinatePermutation(tuple(images))


@dataclass
class PermActionTable:
    group: GroupOnP1
    perms: dict
    faithful: bool

    def __getitem__(self, g):
        return self.perms[g]


def perm_action_table(G: GroupOnP1, E: Divisor) -> PermActionTable:
    perms = {g: coordinate_perm(g, E) for g in G.elements}
    faithful = len(set(perms.values())) == len(perms)
    return PermActionTable(G, perms, faithful)


def _parity(code: LinearCode) -> np.ndarray:
    return code.parity_check()


def _rows_in_code(code: LinearCode, H: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """For a stack (m, k, n) of candidate generator images, whether each lies in the code."""
    m = rows.shape[0]
    if H.shape[0] == 0 or rows.shape[1] == 0:
        return np.ones(m, dtype=bool)
    flat = rows.reshape(-1, code.n)
    syn = code.field.matmul(flat, H.T).reshape(m, -1)
    return ~syn.any(axis=1)


def preserves_code(code: LinearCode, sigma: CoordinatePermutation) -> bool:
    """True iff sigma maps every generator row back into the code."""
    if sigma.n != code.n:
        raise ValueError(f"permutation length {sigma.n} != code length {code.n}")
    rows = sigma.apply(code.generator)[None]
    return bool(_rows_in_code(code, _parity(code), rows)[0])


def _perm_table_closed(perms: np.ndarray) -> bool:
    m, n = perms.shape
    keys = set(map(tuple, perms.tolist()))
    for a in range(m):
        comp = perms[:, perms[a]]  # rows: b.images[a.images[i]] for all b
        if any(tuple(r) not in keys for r in comp.tolist()):
            return False
    return True


def perm_group_exhaustive(code: LinearCode, max_n: int = DEFAULT_SN_MAX_N,
                          check_closure: bool = True) -> list[CoordinatePermutation]:
    """Perm(C) by brute force over S_n."""
    n = code.n
    if n > max_n:
        raise BudgetError(f"S_{n} scan exceeds the n <= {max_n} budget ({factorial(n)} permutations)")
    H = _parity(code)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    keep = np.zeros(len(perms), dtype=bool)
    chunk = 5040
    for s in range(0, len(perms), chunk):
        P = perms[s:s + chunk]
        rows = code.generator[:, P].transpose(1, 0, 2)  # (m, k, n)
        keep[s:s + chunk] = _rows_in_code(code, H, rows)
    found = perms[keep]
    if check_closure and len(found) <= 5040 and not _perm_table_closed(found):
        raise AssertionError("Perm(C) scan is not closed under composition")
    return [CoordinatePermutation(tuple(r)) for r in found.tolist()]


def pgl2_elements(F: GF) -> list[MoebiusMap]:
    """All of PGL(2, q) in canonical form and canonical order."""
    order = F.order_codes
    out = []
    for b in order:
        for c in order:
            bc = F.mul(b, c)
            for d in order:
                if d != bc:
                    out.append(MoebiusMap(F, 1, b, c, d))
    for c in order:
        if c:
            for d in order:
                out.append(MoebiusMap(F, 0, 1, c, d))
    out.sort(key=MoebiusMap.sort_key)
    return out


def _pgl2_arrays(F: GF):
    c = np.arange(F.q, dtype=np.int64)
    B, C, Dd = np.meshgrid(c, c, c, indexing="ij")
    B, C, Dd = B.ravel(), C.ravel(), Dd.ravel()
    ok = Dd != F.vmul(B, C)
    a1 = np.ones(ok.sum(), dtype=np.int64)
    C2, D2 = np.meshgrid(c[1:], c, indexing="ij")
    A = np.concatenate([a1, np.zeros(C2.size, dtype=np.int64)])
    Bv = np.concatenate([B[ok], np.ones(C2.size, dtype=np.int64)])
    Cv = np.concatenate([C[ok], C2.ravel()])
    Dv = np.concatenate([Dd[ok], D2.ravel()])
    return A, Bv, Cv, Dv


def _apply_many(F: GF, A, B, C, D, pc: int) -> np.ndarray:
    """Image of one point code under many maps."""
    q = F.q
    if pc == q:
        safe = np.where(C == 0, 1, C)
        return np.where(C == 0, q, F.vmul(A, F.vinv(safe)))
    x = np.full_like(A, pc)
    num = F.vadd(F.vmul(A, x), B)
    den = F.vadd(F.vmul(C, x), D)
    safe = np.where(den == 0, 1, den)
    return np.where(den == 0, q, F.vmul(num, F.vinv(safe)))


def _generated(elements: list[MoebiusMap]) -> GroupOnP1:
    F = elements[0].field
    have = {MoebiusMap.identity(F)}
    gens = []
    for g in elements:
        if g not in have:
            gens.append(g)
            have = set(group_closure(gens, len(elements) + 1).elements)
    if not gens:
        return group_closure([MoebiusMap.identity(F)], 1)
    return group_closure(gens, len(elements) + 1)


def aut_DE_scan(D: Divisor, E: Divisor, F: GF, max_q: int = DEFAULT_PGL_MAX_Q) -> GroupOnP1:
    """All g in PGL(2, q) with g(D) = D and g(E) = E, returned as a verified group."""
    if F.q > max_q:
        raise BudgetError(f"PGL(2,{F.q}) scan exceeds the q <= {max_q} budget")
    A, B, C, Dv = _pgl2_arrays(F)
    keep = np.ones(A.size, dtype=bool)
    for Div in (D, E):
        coef = np.zeros(F.q + 1, dtype=np.int64)
        for P, c in Div.items():
            coef[P.code] = c
        for P, c in Div.items():
            img = _apply_many(F, A, B, C, Dv, P.code)
            keep &= coef[img] == c
    found = sorted((MoebiusMap(F, int(a), int(b), int(c), int(d))
                    for a, b, c, d in zip(A[keep], B[keep], C[keep], Dv[keep])), key=MoebiusMap.sort_key)
    G = _generated(found)
    if set(G.elements) != set(found):
        raise AssertionError("Aut_{D,E} scan result is not a group")
    G.family = "aut_DE"
    return G


def lift_consistency_check(D: Divisor, E: Divisor, F: GF, max_n: int = DEFAULT_SN_MAX_N,
                           max_q: int = DEFAULT_PGL_MAX_Q) -> dict:
    """Compare Aut_{D,E} (via phi) with the brute-force Perm(C)."""
    n = len(E.support())
    report = {"n": n, "deg_D": D.degree}
    if D.degree <= 0 or n <= 2 * D.degree:
        report.update(hypothesis_met=False, verdict=None)
        return report
    report["hypothesis_met"] = True
    code = ag_code(D, E, F)
    A = aut_DE_scan(D, E, F, max_q)
    perm_c = perm_group_exhaustive(code, max_n)
    images = [coordinate_perm(g, E) for g in A.elements]
    pset = set(perm_c)
    injective = len(set(images)) == len(images)
    contained = all(s in pset for s in images)
    report.update(aut_DE_order=A.order, perm_order=len(perm_c), injective=injective,
                  contained=contained, onto=contained and set(images) == pset)
    report["verdict"] = injective and contained and A.order == len(perm_c)
    return report


# -- the representation rho on L(D) ----------------------------------------

def _rho_points(F: GF, D: Divisor, count: int) -> list[P1Point]:
    avoid = {P.code for P in D.support()}
    pts = []
    for c in canonical_point_codes(F).tolist():
        if c not in avoid:
            pts.append(P1Point.from_code(F, c))
            if len(pts) == count:
                return pts
    raise ValueError("not enough points outside supp(D)")


@dataclass(frozen=True)
class _EvalContext:
    """Where rho is evaluated: F itself, or GF(q^2) when F has too few points."""

    field: GF
    points: tuple[P1Point, ...]
    embedding: np.ndarray | None = None

    def lift_functions(self, functions):
        if self.embedding is None:
            return list(functions)
        e, F2 = self.embedding, self.field
        return [RationalFunction(Polynomial.from_codes(F2, e[list(f.num.codes)]),
                                 Polynomial.from_codes(F2, e[list(f.den.codes)])) for f in functions]

    def lift_map(self, g: MoebiusMap) -> MoebiusMap:
        if self.embedding is None:
            return g
        return MoebiusMap.from_codes(self.field, *[int(self.embedding[c]) for c in g.entries])

    def lower(self, M: np.ndarray, F: GF) -> np.ndarray:
        if self.embedding is None:
            return M
        back = {int(v): c for c, v in enumerate(self.embedding.tolist())}
        try:
            return np.vectorize(lambda v: back[int(v)], otypes=[np.int64])(M)
        except KeyError:
            raise AssertionError("representation matrix left the base field")


def _eval_context(F: GF, D: Divisor, count: int) -> _EvalContext:
    try:
        return _EvalContext(F, tuple(_rho_points(F, D, count)))
    except ValueError:
        pass
    F2, emb = quadratic_extension(F)
    avoid = {F2.q if P.is_infinity else int(emb[P.x]) for P in D.support()}
    pts = [P1Point.from_code(F2, c) for c in canonical_point_codes(F2).tolist() if c not in avoid][:count]
    if len(pts) < count:
        raise ValueError("not enough points outside supp(D) even over GF(q^2)")
    return _EvalContext(F2, tuple(pts), emb)


def rho_matrix(g: MoebiusMap, basis: RRBasis, context: _EvalContext | None = None) -> np.ndarray:
    """Matrix of f -> f o g^{-1} on L(D); column j holds the coordinates of the image of basis_j.

    Basis functions are evaluated at deg(D) + 1 points outside supp(D), the
    first ones in canonical order; over GF(q^2) if P^1(F) has too few.
    """
    D = basis.divisor
    F = g.field
    if D.apply(g) != D:
        raise ValueError(f"{g!r} does not stabilise {D!r}")
    k = basis.dimension
    if k == 0:
        return np.zeros((0, 0), dtype=np.int64)
    ctx = context or _eval_context(F, D, D.degree + 1)
    K = ctx.field
    funcs = ctx.lift_functions(basis.functions)
    ginv = ctx.lift_map(g).inverse()
    pts = list(ctx.points)
    M = eval_functions(funcs, pts).T  # (points, k)
    V = eval_functions(funcs, [ginv(P) for P in pts]).T
    piv = linalg.independent_rows(K, M)
    return ctx.lower(linalg.solve(K, M[piv], V[piv]), F)


@dataclass
class RepMatrixTable:
    group: GroupOnP1
    divisor: Divisor
    basis: RRBasis
    matrices: dict
    points: tuple[P1Point, ...]
    eval_field: GF | None = None

    def __getitem__(self, g):
        return self.matrices[g]


def rep_table(G: GroupOnP1, D: Divisor, basis: RRBasis | None = None) -> RepMatrixTable:
    if not D.stabilized_by(G):
        raise ValueError("D is not G-stable")
    basis = basis or rr_basis(D, G.field)
    ctx = _eval_context(G.field, D, D.degree + 1) if basis.dimension else None
    mats = {g: rho_matrix(g, basis, ctx) for g in G.elements}
    return RepMatrixTable(G, D, basis, mats, ctx.points if ctx else (), ctx.field if ctx else G.field)


def _is_identity(M: np.ndarray) -> bool:
    return np.array_equal(M, np.eye(M.shape[0], dtype=np.int64))


def rep_homomorphism_check(table: RepMatrixTable) -> dict:
    F = table.group.field
    els = table.group.elements
    hom = True
    for g in els:
        for h in els:
            if not np.array_equal(table[g.compose(h)], F.matmul(table[g], table[h])):
                hom = False
                break
        if not hom:
            break
    ident = _is_identity(table[MoebiusMap.identity(F)])
    k = table.basis.dimension
    inv = all(linalg.rank(F, table[g]) == k for g in els) if k else True
    return {"homomorphism": hom, "identity": ident, "invertible": inv}


def _triangular_ok(F: GF, M: np.ndarray, tags, g: MoebiusMap) -> bool:
    pos = {t: i for i, t in enumerate(tags)}
    for j, t in enumerate(tags):
        col = M[:, j]
        if t is None:
            continue
        P, ell = t
        Q = g(P)
        allowed = {pos[None]} | {pos[(Q, i)] for i in range(1, ell + 1) if (Q, i) in pos}
        if any(col[i] for i in range(len(tags)) if i not in allowed):
            return False
        if (Q, ell) not in pos or col[pos[(Q, ell)]] == 0:
            return False
    return True


def _fix_count(g: MoebiusMap, orbit_pts) -> int:
    return sum(1 for P in orbit_pts if g(P) == P)


def rep_structure_check(G: GroupOnP1, D: Divisor) -> dict:
    """Invariants of rho on L(D): constants fixed, triangularity, character experiment, submodules."""
    F = G.field
    if not D.stabilized_by(G):
        raise ValueError("D is not G-stable")
    table = rep_table(G, D)
    report = {"order": G.order, "dimension": table.basis.dimension,
              "effective": D.is_effective(), "evaluation_field_order": table.eval_field.q,
              "points": [repr(P) for P in table.points]}
    report.update(rep_homomorphism_check(table))
    if D.is_effective():
        tags = table.basis.tags
        c0 = tags.index(None)
        e0 = np.zeros(len(tags), dtype=np.int64)
        e0[c0] = 1
        report["constants_fixed"] = all(np.array_equal(table[g][:, c0], e0) for g in G.elements)
        report["triangular"] = all(_triangular_ok(F, table[g], tags, g) for g in G.elements)
        orbits = orbit_decomposition(G, D.support()).orbits if D.support() else ()
        mult = [D.coefficient(O[0]) for O in orbits]
        rows = []
        for g in G.elements:
            M = table[g]
            tr = 0
            for i in range(M.shape[0]):
                tr = F.add(tr, int(M[i, i]))
            count = 1 + sum(a * _fix_count(g, O) for a, O in zip(mult, orbits))
            pred = F(count).code
            rows.append({"element": repr(g), "trace": list(F.coeffs_of(tr)), "fixed_point_formula": count,
                         "formula_mod_p": count % F.p, "equal": tr == pred})
        report["character"] = rows
        report["character_all_equal"] = all(r["equal"] for r in rows)
    else:
        report["submodule"] = submodule_check(G, D)
    return report


def submodule_check(G: GroupOnP1, D: Divisor) -> dict:
    """L(D) inside L(D+) and stable under every rho_{D+}(g)."""
    F = G.field
    Dp = D.positive_part()
    small = rr_basis(D, F)
    big = rep_table(G, Dp)
    if small.dimension == 0:
        return {"dim_D": 0, "dim_D_plus": big.basis.dimension, "embedded": True, "stable": True}
    ctx = _eval_context(F, Dp, Dp.degree + 1)
    K, pts = ctx.field, list(ctx.points)
    Mb = eval_functions(ctx.lift_functions(big.basis.functions), pts).T
    Ms = eval_functions(ctx.lift_functions(small.functions), pts).T
    # columns: coordinates of the L(D) basis in the L(D+) basis
    emb_K = linalg.solve(K, Mb, Ms)
    embedded = np.array_equal(K.matmul(Mb, emb_K), Ms)
    emb = ctx.lower(emb_K, F)
    embedded = embedded and linalg.rank(F, emb) == small.dimension
    stable = True
    for g in G.elements:
        img = F.matmul(big[g], emb)
        if linalg.rank(F, np.concatenate([emb, img], axis=1)) != small.dimension:
            stable = False
            break
    return {"dim_D": small.dimension, "dim_D_plus": big.basis.dimension,
            "embedded": bool(embedded), "stable": stable}


__all__ = ["CoordinatePermutation", "PermActionTable", "RepMatrixTable", "coordinate_perm",
           "perm_action_table", "preserves_code", "perm_group_exhaustive", "pgl2_elements",
           "aut_DE_scan", "lift_consistency_check", "rho_matrix", "rep_table",
           "rep_homomorphism_check", "rep_structure_check", "submodule_check", "FieldElement"]

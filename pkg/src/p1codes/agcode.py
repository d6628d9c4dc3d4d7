"""Evaluation codes C(D, E) on the projective line and their parameters."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb

import numpy as np

from . import linalg
from .gfpoly import GF, BudgetError, FieldElement, Polynomial, RationalFunction
from .projline import Divisor, P1Point
from .rrspace import RRBasis, eval_functions, rr_basis

DEFAULT_ENUMERATION_BUDGET = 10**6
DEFAULT_SAMPLE_TRIALS = 10**4


@dataclass
class LinearCode:
    field: GF
    generator: np.ndarray
    eval_points: tuple[P1Point, ...] | None = None
    source: tuple[Divisor, Divisor] | None = None
    notes: list[str] = dc_field(default_factory=list)

    def __post_init__(self):
        self.generator = np.asarray(self.generator, dtype=np.int64)
        if self.generator.ndim != 2:
            raise ValueError("generator must be a k x n matrix")

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @classmethod
    def from_rows(cls, field: GF, rows, **kw) -> "LinearCode":
        """Code spanned by ``rows``, keeping the first maximal independent subset."""
        M = linalg.as_matrix(rows)
        keep = linalg.independent_rows(field, M) if M.size else []
        n = M.shape[1] if M.ndim == 2 else 0
        return cls(field, M[keep].reshape(len(keep), n), **kw)

    def parity_check(self) -> np.ndarray:
        """Rows spanning the dual code (cached; do not modify the result)."""
        H = self.__dict__.get("_parity")
        if H is None:
            H = linalg.nullspace(self.field, self.generator, ncols=self.n)
            self.__dict__["_parity"] = H
        return H

    def contains(self, word) -> bool:
        return linalg.in_rowspace(self.field, self.generator, word)

    def encode(self, message) -> np.ndarray:
        m = np.asarray(message, dtype=np.int64).reshape(1, -1)
        return self.field.matmul(m, self.generator)[0]


@dataclass(frozen=True)
class Spectrum:
    counts: tuple[int, ...]

    def __getitem__(self, j):
        return self.counts[j]

    def __len__(self):
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def min_weight(self) -> int | None:
        return next((j for j, a in enumerate(self.counts) if j > 0 and a), None)


@dataclass
class MDSCertificate:
    mode: str
    verdict: bool
    trials: int = 0
    seed: int | None = None
    witness: tuple[int, ...] | None = None
    distance: int | None = None


def _check_E(E: Divisor, D: Divisor | None = None) -> list[P1Point]:
    if not E.is_effective() or any(c != 1 for _, c in E.items()):
        raise ValueError("E must be a sum of distinct points")
    pts = E.support()
    if D is not None:
        overlap = set(pts) & set(D.support())
        if overlap:
            raise ValueError(f"supp(D) and supp(E) overlap at {sorted(overlap, key=P1Point.sort_key)}")
    return pts


def evaluate_basis(basis: RRBasis, E: Divisor) -> np.ndarray:
    """Matrix with entry (i, j) = basis_i(P_j), P_j in canonical order of supp(E)."""
    pts = _check_E(E, basis.divisor)
    return eval_functions(basis.functions, pts)


def ag_code(D: Divisor, E: Divisor, field: GF | None = None) -> LinearCode:
    """C(D, E): the image of L(D) under evaluation at the points of E."""
    pts = _check_E(E, D)
    F = field or (pts[0].field if pts else None)
    if D.degree < 0:
        return LinearCode(F, np.zeros((0, len(pts)), dtype=np.int64), tuple(pts), (D, E))
    basis = rr_basis(D, F)
    M = eval_functions(basis.functions, pts)
    code = LinearCode.from_rows(F, M, eval_points=tuple(pts), source=(D, E))
    if code.k < basis.dimension:
        code.notes.append(f"evaluation not injective: rank {code.k} < dim L(D) = {basis.dimension}")
    return code


def grs_code(ell: int, points: list[P1Point], multipliers) -> LinearCode:
    """Generalised Reed-Solomon code: diag(alpha) applied to evaluations of 1, x, ..., x^ell."""
    if not points:
        raise ValueError("no evaluation points")
    F = points[0].field
    if len(set(points)) != len(points):
        raise ValueError("repeated evaluation point")
    if any(P.is_infinity for P in points):
        raise ValueError("GRS points must be affine")
    alpha = np.array([F(a).code for a in multipliers], dtype=np.int64)
    if alpha.size != len(points):
        raise ValueError("one multiplier per point required")
    if (alpha == 0).any():
        raise ValueError("multipliers must be nonzero")
    xs = np.array([P.x for P in points], dtype=np.int64)
    rows = [np.ones_like(xs)]
    for _ in range(ell):
        rows.append(F.vmul(rows[-1], xs))
    M = F.vmul(np.array(rows), alpha[None, :])
    D = Divisor([(P1Point(F, None), ell)])
    return LinearCode.from_rows(F, M, eval_points=tuple(points), source=(D, Divisor.from_points(points)))


def injectivity_check(D: Divisor, E: Divisor, field: GF | None = None) -> bool:
    """True iff evaluation at E is injective on L(D)."""
    if D.degree < 0:
        return True
    return ag_code(D, E, field).k == D.degree + 1


def injectivity_report(D: Divisor, E: Divisor, field: GF | None = None) -> dict:
    computed = injectivity_check(D, E, field)
    literal = D.degree > E.degree  # the reversed inequality
    out = {"injective": computed, "deg_D": D.degree, "deg_E": E.degree,
           "criterion_deg_D_lt_deg_E": D.degree < E.degree}
    if literal != computed:
        out["note"] = ("the condition deg(D) > deg(E) disagrees with the computed rank; "
                       "injectivity on P^1 holds exactly when deg(D) < deg(E)")
    return out


def _messages(q: int, k: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    cols = [(idx // q**i) % q for i in range(k)]
    return np.stack(cols, axis=1) if cols else np.zeros((stop - start, 0), dtype=np.int64)


def _weight_histogram(code: LinearCode, budget: int) -> np.ndarray:
    F, k, n = code.field, code.k, code.n
    total = F.q**k
    if total > budget:
        raise BudgetError(f"{F.q}^{k} codewords exceed enumeration budget {budget}")
    hist = np.zeros(n + 1, dtype=np.int64)
    if k == 0:
        hist[0] = 1
        return hist
    chunk = max(1, min(total, 1 << 16))
    for start in range(0, total, chunk):
        msgs = _messages(F.q, k, start, min(total, start + chunk))
        words = F.matmul(msgs, code.generator)
        hist += np.bincount((words != 0).sum(axis=1), minlength=n + 1)
    return hist


def spectrum_exact(code: LinearCode, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Spectrum:
    """Weight distribution by enumerating every codeword."""
    return Spectrum(tuple(int(a) for a in _weight_histogram(code, budget)))


def min_distance_exact(code: LinearCode, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    if code.k == 0:
        raise ValueError("the zero code has no nonzero codewords")
    return spectrum_exact(code, budget).min_weight()


def spectrum_mds(n: int, k: int, d: int, q: int) -> Spectrum:
    """Weight distribution of any [n, k, d] MDS code over GF(q)."""
    if not 0 <= k <= n or d != n + 1 - k:
        raise ValueError(f"({n}, {k}, {d}) are not MDS parameters")
    A = [0] * (n + 1)
    A[0] = 1
    if k == 0:
        return Spectrum(tuple(A))
    for j in range(d, n + 1):
        s = sum((-1) ** i * comb(j - 1, i) * q ** (j - d - i) for i in range(j - d + 1))
        A[j] = comb(n, j) * (q - 1) * s
    return Spectrum(tuple(A))


def dual_code(code: LinearCode) -> LinearCode:
    H = linalg.nullspace(code.field, code.generator, ncols=code.n)
    return LinearCode(code.field, H.reshape(-1, code.n), eval_points=code.eval_points)


def _columns_nonsingular(code: LinearCode, subsets: np.ndarray, chunk: int = 1024):
    """First singular column subset (or None)."""
    F, G = code.field, code.generator
    for s in range(0, len(subsets), chunk):
        part = subsets[s:s + chunk]
        mats = np.transpose(G[:, part], (1, 0, 2))
        ok = linalg.batch_nonsingular(F, mats)
        if not ok.all():
            return tuple(int(c) for c in sorted(part[int(np.flatnonzero(~ok)[0])]))
    return None


def mds_certificate(code: LinearCode, mode: str = "exact", trials: int = DEFAULT_SAMPLE_TRIALS,
                    seed: int = 0, budget: int = DEFAULT_ENUMERATION_BUDGET) -> MDSCertificate:
    """Certify n + 1 = k + d.

    ``exact`` enumerates codewords (or all k-column subsets when cheaper);
    ``sampled`` checks ``trials`` random k-column subsets for nonsingularity.
    A singular subset is returned as a witness against MDS.
    """
    F, n, k = code.field, code.n, code.k
    if k == 0:
        return MDSCertificate(mode, True)
    if mode == "exact":
        n_words, n_subsets = F.q**k, comb(n, k)
        if n_words <= budget and n_words <= n_subsets * k:
            d = min_distance_exact(code, budget)
            witness = None
            if d != n + 1 - k:
                witness = _find_singular_subset(code)
            return MDSCertificate("exact", d == n + 1 - k, distance=d, witness=witness)
        if n_subsets <= budget:
            subsets = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64)
            w = _columns_nonsingular(code, subsets)
            return MDSCertificate("exact", w is None, trials=n_subsets, witness=w,
                                  distance=n + 1 - k if w is None else None)
        raise BudgetError(f"exact MDS check of a [{n},{k}] code over GF({F.q}) exceeds budget {budget}")
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    subsets = np.argsort(rng.random((trials, n)), axis=1)[:, :k]
    w = _columns_nonsingular(code, subsets)
    return MDSCertificate("sampled", w is None, trials=trials, seed=seed, witness=w)


def _find_singular_subset(code: LinearCode, limit: int = 200_000):
    n, k = code.n, code.k
    batch = []
    for i, s in enumerate(itertools.combinations(range(n), k)):
        if i >= limit:
            break
        batch.append(s)
        if len(batch) == 4096:
            w = _columns_nonsingular(code, np.array(batch))
            if w:
                return w
            batch = []
    if batch:
        return _columns_nonsingular(code, np.array(batch))
    return None


def formally_self_dual(code: LinearCode, budget: int = DEFAULT_ENUMERATION_BUDGET,
                       mds: tuple[MDSCertificate, MDSCertificate] | None = None) -> bool:
    """True iff C and its dual have the same weight distribution.

    Uses exhaustive spectra when both fit in ``budget``; otherwise MDS
    certificates for C and C-dual must be supplied and the closed-form
    MDS spectrum is compared.
    """
    F, n, k = code.field, code.n, code.k
    if F.q**k <= budget and F.q ** (n - k) <= budget:
        return spectrum_exact(code, budget) == spectrum_exact(dual_code(code), budget)
    if mds is None or not (mds[0].verdict and mds[1].verdict):
        raise BudgetError("spectra too large to enumerate and no MDS certificates supplied")
    return spectrum_mds(n, k, n + 1 - k, F.q) == spectrum_mds(n, n - k, k + 1, F.q)


def monomial_equiv_to_grs(D: Divisor, E: Divisor, field: GF | None = None):
    """Diagonal rescaling taking C(D, E) onto the GRS code C(deg(D)*inf, E).

    Returns ``(multipliers, target)`` with multipliers h(P_1..P_n) for
    h = prod over affine P in supp(D) of (x - p)^{a_P}.
    """
    pts = _check_E(E, D)
    F = field or pts[0].field
    if any(P.is_infinity for P in pts):
        raise ValueError("infinity must not lie in supp(E)")
    h = RationalFunction(Polynomial(F, [1]))
    for P, a in D.items():
        if not P.is_infinity:
            h = h * RationalFunction(Polynomial.from_codes(F, [F.neg(P.x), 1])) ** a
    mult = eval_functions([h], pts)[0]
    target = ag_code(Divisor([(P1Point(F, None), D.degree)]), E, F)
    return [FieldElement(F, int(c)) for c in mult], target


def rescale_columns(code: LinearCode, multipliers) -> np.ndarray:
    F = code.field
    alpha = np.array([F(a).code for a in multipliers], dtype=np.int64)
    return F.vmul(code.generator, alpha[None, :])


def goppa_lower_bound(D: Divisor, E: Divisor) -> int:
    """Every nonzero codeword of C(D, E) has weight >= n - deg(D)."""
    return E.degree - D.degree


def weight_witness(D: Divisor, E: Divisor, field: GF | None = None):
    """A codeword of weight exactly n - deg(D), from a function vanishing on deg(D) points of E.

    Returns ``(codeword, function, chosen_points)``.
    """
    pts = _check_E(E, D)
    F = field or pts[0].field
    if not 0 <= D.degree < len(pts):
        raise ValueError("need 0 <= deg(D) < n")
    chosen = pts[:D.degree]
    basis = rr_basis(D - Divisor.from_points(chosen), F)
    f = basis.functions[0]
    word = eval_functions([f], pts)[0]
    return word, f, chosen

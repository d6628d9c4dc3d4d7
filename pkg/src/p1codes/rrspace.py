"""Riemann-Roch spaces L(D) on the projective line."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gfpoly import GF, BudgetError, PoleError, Polynomial, RationalFunction
from .projline import Divisor, P1Point, divisor_of


@dataclass(frozen=True)
class RRBasis:
    """Basis of L(D).

    ``tags[i]`` is None for the constant (or the bare factor q(x) when D is
    not effective) and ``(P, l)`` for ``m_P^l`` (times q(x)).
    """

    divisor: Divisor
    functions: tuple[RationalFunction, ...]
    tags: tuple
    factor: RationalFunction | None = None
    split: tuple[Divisor, Divisor] | None = None

    def __len__(self):
        return len(self.functions)

    @property
    def dimension(self) -> int:
        return len(self.functions)


def _field_of(D: Divisor, field: GF | None) -> GF:
    if field is not None:
        return field
    supp = D.support()
    if not supp:
        raise ValueError("cannot infer the field of the zero divisor; pass field=")
    return supp[0].field


def m_function(P: P1Point) -> RationalFunction:
    """x at infinity, 1/(x - p) at [p:1]: the simple-pole function attached to P."""
    F = P.field
    if P.is_infinity:
        return RationalFunction.x(F)
    return RationalFunction(Polynomial(F, [1]), Polynomial.from_codes(F, [F.neg(P.x), 1]))


def rr_split(D: Divisor, field: GF | None = None):
    """Write a non-effective D of degree >= 0 as D1 + D2 with D1 effective, deg D2 = 0.

    Returns ``(D1, D2, q)`` where div(q) = -D2, so q spans L(D2).
    """
    if D.degree < 0:
        raise ValueError("rr_split needs deg(D) >= 0")
    if D.is_effective():
        raise ValueError("D is effective; no split needed")
    F = _field_of(D, field)
    need = D.negative_part().degree
    take = {}
    for P, c in sorted(D.positive_part().items(), key=lambda it: (-it[1], it[0].sort_key())):
        if need == 0:
            break
        t = min(c, need)
        take[P] = t
        need -= t
    E_prime = Divisor(take)
    D2 = E_prime - D.negative_part()
    D1 = D - D2
    q = RationalFunction(Polynomial(F, [1]))
    for P, c in D2.items():
        if not P.is_infinity:
            lin = RationalFunction(Polynomial.from_codes(F, [F.neg(P.x), 1]))
            q = q * lin ** (-c)
    return D1, D2, q


def rr_basis(D: Divisor, field: GF | None = None) -> RRBasis:
    """A basis of L(D) built from constants and powers of the m_P functions."""
    if D.degree < 0:
        return RRBasis(D, (), ())
    F = _field_of(D, field)
    for P in D.support():
        if P.field != F:
            raise ValueError("divisor support must consist of rational points of one field")
    if D.is_effective():
        base, source, factor, split = RationalFunction(Polynomial(F, [1])), D, None, None
    else:
        D1, D2, factor = rr_split(D, F)
        base, source, split = factor, D1, (D1, D2)
    funcs = [base]
    tags: list = [None]
    for P, a in source.items():
        m = m_function(P)
        power = base
        for ell in range(1, a + 1):
            power = power * m
            funcs.append(power)
            tags.append((P, ell))
    return RRBasis(D, tuple(funcs), tuple(tags), factor, split)


def verify_in_LD(f: RationalFunction, D: Divisor) -> bool:
    """True iff div(f) + D is effective (the zero function is always in L(D))."""
    if f.is_zero():
        return True
    return (divisor_of(f) + D).is_effective()


def eval_functions(functions, points: list[P1Point]) -> np.ndarray:
    """Matrix of values ``functions[i](points[j])`` as element codes."""
    if not functions:
        return np.zeros((0, len(points)), dtype=np.int64)
    F = functions[0].field
    aff_idx = [j for j, P in enumerate(points) if not P.is_infinity]
    inf_idx = [j for j, P in enumerate(points) if P.is_infinity]
    xs = np.array([points[j].x for j in aff_idx], dtype=np.int64)
    out = np.zeros((len(functions), len(points)), dtype=np.int64)
    for i, f in enumerate(functions):
        if aff_idx:
            den = f.den.eval_all(xs)
            if (den == 0).any():
                j = aff_idx[int(np.flatnonzero(den == 0)[0])]
                f.value_code(points[j].x)  # raises PoleError with the order
            out[i, aff_idx] = F.vmul(f.num.eval_all(xs), F.vinv(den))
        for j in inf_idx:
            out[i, j] = f.value_code(None)
    return out


__all__ = ["RRBasis", "m_function", "rr_basis", "rr_split", "verify_in_LD", "eval_functions",
           "PoleError", "BudgetError"]

"""Points of P^1(F), Moebius maps (PGL(2,F)), divisors and the pullback action."""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .gfpoly import (GF, FieldElement, FieldError, Polynomial, RationalFunction,
                     split_roots)


class P1Point:
    """A rational point of the projective line: ``x is None`` encodes infinity = [1:0]."""

    __slots__ = ("field", "x")

    def __init__(self, field: GF, x: int | None):
        self.field = field
        self.x = x

    @classmethod
    def inf(cls, field: GF) -> "P1Point":
        return cls(field, None)

    @classmethod
    def affine(cls, field: GF, a) -> "P1Point":
        if isinstance(a, FieldElement):
            return cls(field, field(a).code)
        return cls(field, int(a) % field.p)

    @classmethod
    def from_code(cls, field: GF, c: int) -> "P1Point":
        return cls(field, None if c == field.q else int(c))

    @property
    def code(self) -> int:
        return self.field.q if self.x is None else self.x

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def value(self) -> FieldElement:
        if self.x is None:
            raise ValueError("infinity has no affine coordinate")
        return FieldElement(self.field, self.x)

    def sort_key(self):
        return (0,) if self.x is None else (1, self.field.sort_key(self.x))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        return isinstance(other, P1Point) and self.x == other.x and self.field == other.field

    def __hash__(self):
        return hash(self.x)

    def __repr__(self):
        return "inf" if self.x is None else repr(FieldElement(self.field, self.x))


def all_points(F: GF) -> list[P1Point]:
    """P^1(F) in canonical order: infinity first, then affine points."""
    return [P1Point(F, None)] + [P1Point(F, c) for c in F.order_codes]


def canonical_point_codes(F: GF) -> np.ndarray:
    return np.array([F.q] + list(F.order_codes), dtype=np.int64)


class MoebiusMap:
    """x -> (a x + b)/(c x + d), stored in canonical PGL form (first nonzero entry is 1)."""

    __slots__ = ("field", "a", "b", "c", "d")

    def __init__(self, field: GF, a: int, b: int, c: int, d: int):
        # callers must pass canonical codes; use moebius_make for arbitrary input
        self.field = field
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def from_codes(cls, field: GF, a: int, b: int, c: int, d: int) -> "MoebiusMap":
        F = field
        if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
            raise FieldError("singular matrix: ad - bc = 0")
        for lead in (a, b, c, d):
            if lead:
                s = F.inv(lead)
                return cls(F, F.mul(a, s), F.mul(b, s), F.mul(c, s), F.mul(d, s))
        raise FieldError("zero matrix")

    @classmethod
    def identity(cls, field: GF) -> "MoebiusMap":
        return cls(field, 1, 0, 0, 1)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def apply_code(self, pc: int) -> int:
        F = self.field
        q = F.q
        a, b, c, d = self.a, self.b, self.c, self.d
        if pc == q:
            return q if c == 0 else F.div(a, c)
        den = F.add(F.mul(c, pc), d)
        if den == 0:
            return q
        return F.div(F.add(F.mul(a, pc), b), den)

    def apply_codes(self, pcs: np.ndarray) -> np.ndarray:
        F = self.field
        q = F.q
        pcs = np.asarray(pcs, dtype=np.int64)
        is_inf = pcs == q
        x = np.where(is_inf, 0, pcs)
        num = F.vadd(F.vmul(np.full_like(x, self.a), x), np.full_like(x, self.b))
        den = F.vadd(F.vmul(np.full_like(x, self.c), x), np.full_like(x, self.d))
        den_zero = den == 0
        safe = np.where(den_zero, 1, den)
        out = F.vmul(num, F.vinv(safe))
        out = np.where(den_zero, q, out)
        inf_img = q if self.c == 0 else F.div(self.a, self.c)
        return np.where(is_inf, inf_img, out)

    def __call__(self, P: P1Point) -> P1Point:
        return P1Point.from_code(self.field, self.apply_code(P.code))

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """self o other, i.e. P -> self(other(P))."""
        F = self.field
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return MoebiusMap.from_codes(
            F,
            F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h)),
            F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h)))

    __mul__ = compose

    def inverse(self) -> "MoebiusMap":
        F = self.field
        return MoebiusMap.from_codes(F, self.d, F.neg(self.b), F.neg(self.c), self.a)

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    def sort_key(self):
        k = self.field.sort_key
        return (k(self.a), k(self.b), k(self.c), k(self.d))

    def __eq__(self, other):
        return isinstance(other, MoebiusMap) and self.entries == other.entries and self.field == other.field

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        F = self.field
        e = [repr(FieldElement(F, v)) for v in self.entries]
        return f"Moebius(({e[0]}x+{e[1]})/({e[2]}x+{e[3]}))"


def moebius_make(a, b, c, d) -> MoebiusMap:
    """Canonical PGL(2,F) representative of x -> (ax+b)/(cx+d).

    Entries may be FieldElements (which fix the field) or, if at least one
    entry is a FieldElement, plain ints coerced into that field.
    """
    field = next((v.field for v in (a, b, c, d) if isinstance(v, FieldElement)), None)
    if field is None:
        raise FieldError("at least one entry must be a FieldElement")
    codes = [field(v).code for v in (a, b, c, d)]
    return MoebiusMap.from_codes(field, *codes)


def moebius_apply(g: MoebiusMap, P: P1Point) -> P1Point:
    return g(P)


def moebius_compose(g: MoebiusMap, h: MoebiusMap) -> MoebiusMap:
    return g.compose(h)


def moebius_inverse(g: MoebiusMap) -> MoebiusMap:
    return g.inverse()


class Divisor:
    """Finite formal sum of rational points with nonzero integer coefficients."""

    __slots__ = ("_coef",)

    def __init__(self, coefficients: Mapping[P1Point, int] | Iterable[tuple[P1Point, int]] = ()):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        coef: dict[P1Point, int] = {}
        for P, c in items:
            c = int(c)
            if c:
                coef[P] = coef.get(P, 0) + c
                if coef[P] == 0:
                    del coef[P]
        self._coef = coef

    @classmethod
    def from_points(cls, points: Iterable[P1Point], coefficient: int = 1) -> "Divisor":
        return cls([(P, coefficient) for P in points])

    def items(self) -> list[tuple[P1Point, int]]:
        return sorted(self._coef.items(), key=lambda it: it[0].sort_key())

    def support(self) -> list[P1Point]:
        return sorted(self._coef, key=P1Point.sort_key)

    def coefficient(self, P: P1Point) -> int:
        return self._coef.get(P, 0)

    @property
    def degree(self) -> int:
        return sum(self._coef.values())

    def is_effective(self) -> bool:
        return all(c > 0 for c in self._coef.values())

    def positive_part(self) -> "Divisor":
        return Divisor({P: c for P, c in self._coef.items() if c > 0})

    def negative_part(self) -> "Divisor":
        return Divisor({P: -c for P, c in self._coef.items() if c < 0})

    def is_zero(self) -> bool:
        return not self._coef

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(list(self._coef.items()) + list(other._coef.items()))

    def __neg__(self) -> "Divisor":
        return Divisor({P: -c for P, c in self._coef.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, n: int) -> "Divisor":
        return Divisor({P: n * c for P, c in self._coef.items()})

    __rmul__ = __mul__

    def __ge__(self, other: "Divisor") -> bool:
        return (self - other).is_effective()

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._coef == other._coef

    def __hash__(self):
        return hash(frozenset(self._coef.items()))

    def __len__(self):
        return len(self._coef)

    def apply(self, g: MoebiusMap) -> "Divisor":
        return divisor_apply(g, self)

    def stabilized_by(self, G) -> bool:
        elements = getattr(G, "elements", G)
        return all(divisor_apply(g, self) == self for g in elements)

    def __repr__(self):
        if not self._coef:
            return "0"
        parts = []
        for P, c in self.items():
            parts.append(f"{'+' if c > 0 else '-'} {abs(c) if abs(c) != 1 else ''}({P!r})")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s


def divisor_apply(g: MoebiusMap, D: Divisor) -> Divisor:
    return Divisor([(g(P), c) for P, c in D.items()])


def ratfun_eval(f: RationalFunction, P: P1Point) -> FieldElement:
    """Value of f at P; raises PoleError (carrying the pole order) at a pole."""
    return FieldElement(f.field, f.value_code(P.x))


def divisor_of(f: RationalFunction) -> Divisor:
    """Principal divisor (zeros minus poles, including infinity) of a split f."""
    if f.is_zero():
        raise ValueError("the zero function has no divisor")
    F = f.field
    coef: dict[P1Point, int] = {}
    for r in split_roots(f.num) if f.num.degree > 0 else []:
        P = P1Point(F, r.code)
        coef[P] = coef.get(P, 0) + 1
    for r in split_roots(f.den) if f.den.degree > 0 else []:
        P = P1Point(F, r.code)
        coef[P] = coef.get(P, 0) - 1
    at_inf = f.den.degree - f.num.degree
    if at_inf:
        coef[P1Point(F, None)] = int(at_inf)
    return Divisor(coef)


def compose_rational(f: RationalFunction, h: MoebiusMap) -> RationalFunction:
    """f o h as a reduced rational function."""
    F = f.field
    if f.is_zero():
        return f
    n, m = int(f.num.degree), int(f.den.degree)
    a, b, c, d = h.entries
    num = f.num.substitute_moebius(a, b, c, d)
    den = f.den.substitute_moebius(a, b, c, d)
    lin = Polynomial.from_codes(F, [d, c])
    if m >= n:
        num = num * lin ** (m - n)
    else:
        den = den * lin ** (n - m)
    return RationalFunction(num, den)


def pullback(g: MoebiusMap, f: RationalFunction) -> RationalFunction:
    """The action f -> f o g^{-1}; a left action: pullback(g, pullback(h, f)) = pullback(g*h, f)."""
    return compose_rational(f, g.inverse())


def point_to_json(P: P1Point):
    return "inf" if P.x is None else list(P.field.coeffs_of(P.x))


def point_from_json(F: GF, obj) -> P1Point:
    if obj == "inf":
        return P1Point(F, None)
    if isinstance(obj, int):
        return P1Point(F, F(obj).code)
    return P1Point(F, F.from_coeffs(obj).code)


def divisor_to_json(D: Divisor) -> list:
    return [[point_to_json(P), c] for P, c in D.items()]


def divisor_from_json(F: GF, obj) -> Divisor:
    return Divisor([(point_from_json(F, P), c) for P, c in obj])

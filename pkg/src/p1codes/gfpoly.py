"""Exact arithmetic in GF(p^k), univariate polynomials and rational functions.

Field elements are stored as integer *codes*: the element
``c_0 + c_1 t + ... + c_{k-1} t^{k-1}`` (``t`` a root of the field modulus)
has code ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.  The prime subfield is
therefore the codes ``0..p-1``.  All heavy computation (linear algebra,
orbit scans, root scans) works on codes, either as Python ints or as numpy
``int64`` arrays; :class:`FieldElement` is the user-facing scalar.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

import numpy as np

DEG_ZERO = -math.inf  # degree of the zero polynomial

DEFAULT_FIELD_BUDGET = 1 << 20
_ADD_TABLE_MAX_Q = 2500


class FieldError(ValueError):
    pass


class BudgetError(RuntimeError):
    pass


class PoleError(ValueError):
    def __init__(self, order: int, where: str = ""):
        super().__init__(f"pole of order {order}{' at ' + where if where else ''}")
        self.order = order


class NonSplitError(ValueError):
    def __init__(self, degree: int, q: int):
        super().__init__(f"irreducible factor of degree {degree} does not split over GF({q})")
        self.degree = degree


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = 3
    while r * r <= n:
        if n % r == 0:
            return False
        r += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    r = 2
    while r * r <= n:
        if n % r == 0:
            out.append(r)
            while n % r == 0:
                n //= r
        r += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q = p**k`` or None when q is not a prime power."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    k = round(math.log(q, p))
    while p**k < q:
        k += 1
    while p**k > q:
        k -= 1
    return (p, k) if p**k == q else None


# -- raw Z_p[x] helpers used only to build extension fields -----------------

def _zp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _zp_trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _zp_trim(a)
    return a


def _zp_irreducible(m: Sequence[int], p: int) -> bool:
    k = len(m) - 1
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _zp_mod(m, list(tail) + [1], p):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    # lexicographic on (c_0, c_1, ..., c_{k-1}); product() varies the last slot fastest
    for lower in itertools.product(range(p), repeat=k):
        m = list(lower) + [1]
        if k > 1 and m[0] == 0:
            continue
        if _zp_irreducible(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible polynomial of degree {k} over Z_{p}")


class GF:
    """The finite field GF(p^k) with an explicit monic irreducible modulus."""

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None,
                 budget: int = DEFAULT_FIELD_BUDGET):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if p**k > budget:
            raise BudgetError(f"field order {p}^{k} exceeds budget {budget}")
        self.p = p
        self.k = k
        self.q = p**k
        if modulus is None:
            modulus = (0, 1) if k == 1 else _smallest_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if not _zp_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over Z_{p}")
        self.modulus = modulus
        self._build_tables()

    # -- construction ---------------------------------------------------------

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            self._inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
            self.order_codes = list(range(p))
            self._inv_np = np.array(self._inv, dtype=np.int64)
            return
        digits = [tuple((c // p**i) % p for i in range(k)) for c in range(q)]
        self._digits = digits
        self._pw = [p**i for i in range(k)]
        self._digits_np = np.array(digits, dtype=np.int64)
        self._pw_np = np.array(self._pw, dtype=np.int64)

        def polymul(a, b):
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
            r = _zp_mod(prod, self.modulus, p)
            return r + [0] * (k - len(r))

        def code(ds):
            return sum(d * w for d, w in zip(ds, self._pw))

        self.order_codes = sorted(range(q), key=lambda c: digits[c])
        prime_divs = prime_factors(q - 1)
        for g in self.order_codes:
            if g == 0:
                continue
            exp = [1]
            cur = [1] + [0] * (k - 1)
            gd = list(digits[g])
            for _ in range(q - 2):
                cur = polymul(cur, gd)
                exp.append(code(cur))
            if len(set(exp)) == q - 1 and all(exp[(q - 1) // r] != 1 for r in prime_divs):
                break
        self._exp = exp + exp  # doubled so log sums need no reduction
        log = [0] * q
        for e, c in enumerate(exp):
            log[c] = e
        self._log = log
        self._exp_np = np.array(self._exp, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)
        self._inv = [0] + [exp[(q - 1 - log[c]) % (q - 1)] for c in range(1, q)]
        self._inv_np = np.array(self._inv, dtype=np.int64)
        self._add_tab = None
        if q <= _ADD_TABLE_MAX_Q:
            d = self._digits_np.astype(np.int32)
            tab = np.zeros((q, q), dtype=np.int32)
            for i, w in enumerate(self._pw):
                tab += ((d[:, i, None] + d[None, :, i]) % p) * w
            self._add_tab = tab
        self._neg = [code([(-x) % p for x in digits[c]]) for c in range(q)]
        self._neg_np = np.array(self._neg, dtype=np.int64)
        # digit vectors of t^s mod the modulus, for s < 2k - 1
        red = []
        for s_ in range(2 * k - 1):
            r = _zp_mod([0] * s_ + [1], self.modulus, p)
            red.append(r + [0] * (k - len(r)))
        self._reduce_np = np.array(red, dtype=np.int64)

    # -- identity -------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    # -- element construction -------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, int(value) % self.p)
        return self.from_coeffs(value)

    def from_code(self, code: int) -> "FieldElement":
        code = int(code)
        if not 0 <= code < self.q:
            raise FieldError(f"code {code} out of range for {self}")
        return FieldElement(self, code)

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        r = _zp_mod([int(c) for c in coeffs], self.modulus, self.p)
        r = r + [0] * (self.k - len(r))
        return FieldElement(self, sum(c * self.p**i for i, c in enumerate(r)))

    def coeffs_of(self, code: int) -> tuple[int, ...]:
        if self.k == 1:
            return (code,)
        return self._digits[code]

    def sort_key(self, code: int):
        return code if self.k == 1 else self._digits[code]

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in self.order_codes]

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    # -- scalar code arithmetic -----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self._add_tab is not None:
            return int(self._add_tab[a, b])
        p = self.p
        return sum(((x + y) % p) * w for x, y, w in zip(self._digits[a], self._digits[b], self._pw))

    def neg(self, a: int) -> int:
        return (-a) % self.p if self.k == 1 else self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(a, e, self.p)
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.q - 1
        for r in prime_factors(n):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    # -- vectorised code arithmetic (numpy int64 arrays) ----------------------

    def vadd(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self._add_tab is not None:
            return self._add_tab[a, b].astype(np.int64)
        d = (self._digits_np[a] + self._digits_np[b]) % self.p
        return d @ self._pw_np

    def vneg(self, a):
        return (-a) % self.p if self.k == 1 else self._neg_np[a]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = self._exp_np[self._log_np[a] + self._log_np[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        return self._inv_np[a]

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.k == 1:
            return (A @ B) % self.p
        # write entries as polynomials in t over Z_p and multiply digit matrices
        p, k = self.p, self.k
        Ad, Bd = self._digits_np[A], self._digits_np[B]
        conv = np.zeros((2 * k - 1, A.shape[0], B.shape[1]), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                conv[i + j] += Ad[..., i] @ Bd[..., j]
        conv %= p
        digits = np.tensordot(conv, self._reduce_np, axes=([0], [0])) % p
        return digits @ self._pw_np


def field_make(p: int, k: int = 1, budget: int = DEFAULT_FIELD_BUDGET) -> GF:
    """Build GF(p^k) with the lexicographically smallest irreducible monic modulus."""
    return GF(p, k, budget=budget)


def field_of_order(q: int, budget: int = DEFAULT_FIELD_BUDGET) -> GF:
    pk = prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    return GF(pk[0], pk[1], budget=budget)


class FieldElement:
    __slots__ = ("field", "code")

    def __init__(self, field: GF, code: int):
        self.field = field
        self.code = code

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("mixed fields")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, int(e)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def order(self) -> int:
        return self.field.order(self.code)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash(self.code)

    def __bool__(self):
        return self.code != 0

    def __lt__(self, other):
        return self.field.sort_key(self.code) < self.field.sort_key(other.code)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs_of(self.code)

    def __repr__(self):
        if self.field.k == 1:
            return str(self.code)
        return "GF[" + ",".join(map(str, self.coeffs)) + "]"


def element_order(a: FieldElement) -> int:
    return a.order()


def primitive_root_of_unity(F: GF, m: int) -> FieldElement:
    """Smallest element (canonical order) of exact multiplicative order m."""
    if m < 1 or (F.q - 1) % m:
        raise FieldError(f"GF({F.q}) has no primitive {m}-th root of unity ({m} does not divide {F.q - 1})")
    for c in F.order_codes:
        if c and F.order(c) == m:
            return FieldElement(F, c)
    raise FieldError("unreachable: cyclic group has elements of every order dividing q-1")


def sqrt_minus_one(F: GF) -> FieldElement:
    if F.q % 4 != 1:
        raise FieldError(f"-1 is not a square in GF({F.q}) (q is not 1 mod 4)")
    target = F.neg(1)
    for c in F.order_codes:
        if F.mul(c, c) == target:
            return FieldElement(F, c)
    raise FieldError("unreachable")


def field_sqrt(a: FieldElement) -> FieldElement | None:
    """Smallest square root of ``a`` in canonical order, or None."""
    F = a.field
    for c in F.order_codes:
        if F.mul(c, c) == a.code:
            return FieldElement(F, c)
    return None


def _codes(field: GF, coeffs: Iterable) -> list[int]:
    out = []
    for c in coeffs:
        if isinstance(c, FieldElement):
            if c.field != field:
                raise FieldError("mixed fields")
            out.append(c.code)
        else:
            out.append(int(c) % field.p)
    return out


class Polynomial:
    """Immutable univariate polynomial over a GF; ``codes[i]`` is the x^i coefficient."""

    __slots__ = ("field", "codes")

    def __init__(self, field: GF, coeffs: Iterable = ()):
        cs = _codes(field, coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.codes = tuple(cs)

    @classmethod
    def _raw(cls, field, codes):
        obj = object.__new__(cls)
        cs = list(codes)
        while cs and cs[-1] == 0:
            cs.pop()
        obj.field = field
        obj.codes = tuple(cs)
        return obj

    @classmethod
    def from_codes(cls, field, codes):
        """Build from element codes (plain ints in the constructor mean integers mod p)."""
        return cls._raw(field, [int(c) for c in codes])

    @classmethod
    def x(cls, field):
        return cls._raw(field, (0, 1))

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def monomial(cls, field, n, c=1):
        return cls(field, [0] * n + [c])

    @classmethod
    def from_roots(cls, field, roots):
        out = cls._raw(field, (1,))
        for r in roots:
            code = r.code if isinstance(r, FieldElement) else int(r)
            out = out * cls._raw(field, (field.neg(code), 1))
        return out

    @property
    def degree(self):
        return len(self.codes) - 1 if self.codes else DEG_ZERO

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, c) for c in self.codes)

    def is_zero(self):
        return not self.codes

    @property
    def leading(self) -> int:
        return self.codes[-1] if self.codes else 0

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldError("mixed fields")
            return other
        if isinstance(other, (FieldElement, int, np.integer)):
            return Polynomial(self.field, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        F = self.field
        a, b = self.codes, o.codes
        n = max(len(a), len(b))
        return Polynomial._raw(F, [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.field, [self.field.neg(c) for c in self.codes])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        F = self.field
        a, b = self.codes, o.codes
        if not a or not b:
            return Polynomial._raw(F, ())
        if F.k == 1:
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Polynomial._raw(F, [c % p for c in out])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Polynomial._raw(F, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial._raw(self.field, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.codes)
        db = len(o.codes) - 1
        inv_lead = F.inv(o.leading)
        qt = [0] * max(len(r) - db, 0)
        while len(r) - 1 >= db and r:
            c = F.mul(r[-1], inv_lead)
            shift = len(r) - 1 - db
            qt[shift] = c
            for i, bc in enumerate(o.codes):
                r[shift + i] = F.sub(r[shift + i], F.mul(c, bc))
            while r and r[-1] == 0:
                r.pop()
        return Polynomial._raw(F, qt), Polynomial._raw(F, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.codes == other.codes
        if isinstance(other, (int, FieldElement)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.codes)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading))

    def scale(self, c: int) -> "Polynomial":
        F = self.field
        return Polynomial._raw(F, [F.mul(c, x) for x in self.codes])

    def eval_code(self, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.codes):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def __call__(self, a):
        if isinstance(a, FieldElement):
            return FieldElement(self.field, self.eval_code(a.code))
        return FieldElement(self.field, self.eval_code(int(a) % self.field.p))

    def eval_all(self, xs):
        """Vectorised Horner over an array of element codes."""
        F = self.field
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(self.codes):
            acc = F.vadd(F.vmul(acc, xs), np.full_like(xs, c))
        return acc

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def substitute_moebius(self, a: int, b: int, c: int, d: int, total: int | None = None) -> "Polynomial":
        """Return ``sum_i p_i (a x + b)^i (c x + d)^(total - i)`` (homogenised substitution)."""
        F = self.field
        n = self.degree if total is None else total
        if self.is_zero():
            return self
        lin1 = Polynomial._raw(F, (b, a))
        lin2 = Polynomial._raw(F, (d, c))
        pw2 = [Polynomial._raw(F, (1,))]
        for _ in range(n):
            pw2.append(pw2[-1] * lin2)
        out = Polynomial._raw(F, ())
        pw1 = Polynomial._raw(F, (1,))
        for i, coef in enumerate(self.codes):
            if coef:
                out = out + (pw1 * pw2[n - i]).scale(coef)
            pw1 = pw1 * lin1
        return out

    def roots(self, budget: int = DEFAULT_FIELD_BUDGET) -> list[FieldElement]:
        return poly_roots_in_field(self, budget)

    def __repr__(self):
        if self.is_zero():
            return "0"
        F = self.field
        terms = []
        for i in range(len(self.codes) - 1, -1, -1):
            c = self.codes[i]
            if not c:
                continue
            cs = repr(FieldElement(F, c))
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mon:
                terms.append(cs)
            elif c == 1:
                terms.append(mon)
            else:
                terms.append(f"{cs}*{mon}")
        return " + ".join(terms)


def poly_roots_in_field(f: Polynomial, budget: int = DEFAULT_FIELD_BUDGET) -> list[FieldElement]:
    """All roots of f in its field, with multiplicity, in canonical element order."""
    if f.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    F = f.field
    if F.q > budget:
        raise BudgetError(f"root scan over GF({F.q}) exceeds budget {budget}")
    if f.degree == 0:
        return []
    xs = np.array(F.order_codes, dtype=np.int64)
    vals = f.eval_all(xs)
    roots = []
    for r in xs[vals == 0]:
        r = int(r)
        lin = Polynomial._raw(F, (F.neg(r), 1))
        g = f
        while True:
            qt, rem = divmod(g, lin)
            if not rem.is_zero():
                break
            roots.append(FieldElement(F, r))
            g = qt
    return roots


def quadratic_extension(F: GF, budget: int = DEFAULT_FIELD_BUDGET) -> tuple[GF, np.ndarray]:
    """GF(q^2) together with the embedding of F as an array of element codes."""
    if F.q * F.q > budget:
        raise BudgetError(f"GF({F.q}^2) exceeds field budget {budget}")
    F2 = field_make(F.p, 2 * F.k, budget)
    if F.k == 1:
        return F2, np.arange(F.p, dtype=np.int64)
    # send t to a root of F's modulus inside F2
    alpha = poly_roots_in_field(Polynomial.from_codes(F2, F.modulus), budget)[0].code
    powers = [1]
    for _ in range(F.k - 1):
        powers.append(F2.mul(powers[-1], alpha))
    emb = np.zeros(F.q, dtype=np.int64)
    for c in range(F.q):
        acc = 0
        for d, w in zip(F.coeffs_of(c), powers):
            acc = F2.add(acc, F2.mul(d, w))
        emb[c] = acc
    return F2, emb


def _linear_part_removed(f: Polynomial) -> tuple[list[FieldElement], Polynomial]:
    roots = poly_roots_in_field(f) if f.degree > 0 else []
    rest = f
    for r in roots:
        rest = rest // Polynomial._raw(f.field, (f.field.neg(r.code), 1))
    return roots, rest


def smallest_factor_degree(f: Polynomial) -> int:
    """Degree of the smallest irreducible factor of f (deg f >= 1)."""
    F = f.field
    x = Polynomial.x(F)
    h = x
    for j in range(1, f.degree + 1):
        h = _powmod(h, F.q, f)
        g = (h - x).gcd(f)
        if g.degree >= 1:
            return j
    return f.degree


def _powmod(base: Polynomial, e: int, m: Polynomial) -> Polynomial:
    result = Polynomial._raw(base.field, (1,))
    base = base % m
    while e:
        if e & 1:
            result = (result * base) % m
        base = (base * base) % m
        e >>= 1
    return result


def split_roots(f: Polynomial) -> list[FieldElement]:
    """Roots with multiplicity; raises NonSplitError if f does not split completely."""
    roots, rest = _linear_part_removed(f)
    if rest.degree >= 1:
        raise NonSplitError(smallest_factor_degree(rest), f.field.q)
    return roots


class RationalFunction:
    """Reduced quotient num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            raise TypeError("numerator must be a Polynomial")
        F = num.field
        if den is None:
            den = Polynomial._raw(F, (1,))
        elif not isinstance(den, Polynomial):
            den = Polynomial(F, [den])
        if den.field != F:
            raise FieldError("mixed fields")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Polynomial._raw(F, (1,))
        elif den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.leading
        if lead != 1:
            inv = F.inv(lead)
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def field(self) -> GF:
        return self.num.field

    @classmethod
    def x(cls, field):
        return cls(Polynomial.x(field))

    @classmethod
    def constant(cls, field, c):
        return cls(Polynomial(field, [c]))

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (FieldElement, int, np.integer)):
            return RationalFunction(Polynomial(self.field, [other]))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, e: int):
        if e >= 0:
            return RationalFunction(self.num**e, self.den**e)
        return RationalFunction(self.den ** (-e), self.num ** (-e))

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, RationalFunction) else other
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self):
        return self.num.is_zero()

    def value_code(self, x: int | None) -> int:
        """Value at the affine point with code x, or at infinity when x is None."""
        F = self.field
        if x is None:
            dn, dd = self.num.degree, self.den.degree
            if self.num.is_zero() or dn < dd:
                return 0
            if dn == dd:
                return F.div(self.num.leading, self.den.leading)
            raise PoleError(int(dn - dd), "infinity")
        d = self.den.eval_code(x)
        if d == 0:
            order = 0
            g = self.den
            lin = Polynomial._raw(F, (F.neg(x), 1))
            while True:
                qt, rem = divmod(g, lin)
                if not rem.is_zero():
                    break
                order += 1
                g = qt
            raise PoleError(order, repr(FieldElement(F, x)))
        return F.div(self.num.eval_code(x), d)

    def __repr__(self):
        if self.den.degree == 0:
            return f"({self.num})"
        return f"({self.num})/({self.den})"

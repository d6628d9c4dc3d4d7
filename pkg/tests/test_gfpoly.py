import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from p1codes.gfpoly import (GF, BudgetError, FieldError, NonSplitError, PoleError, Polynomial,
                            RationalFunction, field_make, field_of_order, field_sqrt,
                            poly_roots_in_field, prime_power, primitive_root_of_unity,
                            quadratic_extension, smallest_factor_degree, split_roots,
                            sqrt_minus_one)

F7 = field_of_order(7)
F9 = field_of_order(9)
F49 = field_of_order(49)


def _naive_mul(a, b, p, modulus):
    """Schoolbook product of coefficient tuples modulo a monic modulus."""
    k = len(modulus) - 1
    prod = [0] * (2 * k)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i, m in enumerate(modulus):
                prod[d - k + i] = (prod[d - k + i] - c * m) % p
    return tuple(prod[:k])


def test_prime_power():
    assert prime_power(49) == (7, 2)
    assert prime_power(61) == (61, 1)
    assert prime_power(12) is None
    assert prime_power(1) is None


def test_default_moduli():
    assert tuple(F9.modulus) == (1, 0, 1)
    assert tuple(field_make(7, 4).modulus) == (1, 0, 0, 1, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        GF(3, 2, [2, 0, 1])  # x^2 - 1
    with pytest.raises(FieldError):
        GF(6)


@pytest.mark.parametrize("F", [F9, F49, field_make(5, 3)])
def test_extension_mul_matches_schoolbook(F):
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, F.q, size=(200, 2)):
        got = F.coeffs_of(F.mul(int(a), int(b)))
        want = _naive_mul(F.coeffs_of(int(a)), F.coeffs_of(int(b)), F.p, F.modulus)
        assert tuple(got) == want


@pytest.mark.parametrize("F", [F7, F9, F49])
def test_field_axioms_exhaustive_small(F):
    els = range(F.q)
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a, b in itertools.product(range(min(F.q, 12)), repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 48), st.integers(0, 48), st.integers(0, 48))
def test_distributive_gf49(a, b, c):
    F = F49
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_vector_ops_agree_with_scalar():
    F = F49
    rng = np.random.default_rng(2)
    a, b = rng.integers(0, F.q, 50), rng.integers(1, F.q, 50)
    assert list(F.vadd(a, b)) == [F.add(int(x), int(y)) for x, y in zip(a, b)]
    assert list(F.vmul(a, b)) == [F.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert list(F.vinv(b)) == [F.inv(int(y)) for y in b]


def test_matmul_matches_loop():
    for F in (F7, F9, field_make(7, 4)):
        rng = np.random.default_rng(3)
        A, B = rng.integers(0, F.q, (4, 6)), rng.integers(0, F.q, (6, 3))
        want = np.zeros((4, 3), dtype=np.int64)
        for i, j, t in itertools.product(range(4), range(3), range(6)):
            want[i, j] = F.add(int(want[i, j]), F.mul(int(A[i, t]), int(B[t, j])))
        assert np.array_equal(F.matmul(A, B), want)


def test_canonical_order_constant_term_first():
    assert F9.elements()[:4] == [F9.from_coeffs(c) for c in ([0, 0], [0, 1], [0, 2], [1, 0])]


def test_element_api():
    a = F7(3)
    assert a + 5 == F7(1)
    assert (a * a.inverse()) == F7(1)
    assert a.order() == 6
    assert F7(2).order() == 3
    with pytest.raises(ZeroDivisionError):
        F7(0).inverse()


def test_roots_of_unity_and_square_roots():
    xi = primitive_root_of_unity(F7, 3)
    assert xi == F7(2)
    with pytest.raises(FieldError):
        primitive_root_of_unity(F7, 4)
    i = sqrt_minus_one(field_of_order(13))
    assert i * i == field_of_order(13)(-1)
    with pytest.raises(FieldError):
        sqrt_minus_one(F7)
    assert field_sqrt(F7(3)) is None
    r = field_sqrt(F7(2))
    assert r * r == F7(2)


def test_polynomial_arithmetic():
    x = Polynomial.x(F7)
    f = (x - 1) * (x - 2) * (x + 3)
    assert f.degree == 3
    q, r = divmod(f, x - 2)
    assert r.is_zero() and q == (x - 1) * (x + 3)
    assert f(F7(2)) == F7(0)
    assert (x**2 + 1).gcd(x**3 + x) == x**2 + 1
    assert Polynomial(F7, []).degree == float("-inf")


def test_from_codes_differs_from_integer_coefficients():
    F = F49
    assert Polynomial.from_codes(F, [10, 1]).codes == (10, 1)
    assert Polynomial(F, [10, 1]).codes == (3, 1)  # plain ints are integers mod p


def test_roots_with_multiplicity_and_split():
    x = Polynomial.x(F7)
    f = (x - 3) ** 2 * (x - 5)
    assert [r.code for r in poly_roots_in_field(f)] == [3, 3, 5]
    assert [r.code for r in split_roots(f)] == [3, 3, 5]
    with pytest.raises(NonSplitError):
        split_roots(x**2 + 1)
    assert smallest_factor_degree(x**2 + 1) == 2
    assert smallest_factor_degree((x**2 + 1) * (x - 1)) == 1


def test_root_scan_budget():
    with pytest.raises(BudgetError):
        poly_roots_in_field(Polynomial.x(F49) - 1, budget=10)


def test_rational_function_values():
    x = RationalFunction.x(F7)
    f = (x**2 + 1) / (x - 2)
    assert f.value_code(3) == F7(10 * pow(1, -1, 7)).code
    with pytest.raises(PoleError) as e:
        f.value_code(2)
    assert e.value.order == 1
    with pytest.raises(PoleError) as e:
        f.value_code(None)
    assert e.value.order == 1
    g = (x * 3 + 1) / (x * 2 + 5)
    assert g.value_code(None) == F7.div(3, 2)
    assert (1 / (x - 1)).value_code(None) == 0


def test_rational_function_reduces():
    x = RationalFunction.x(F7)
    f = (x**2 - 1) / (x - 1)
    assert f.den.degree == 0 and f.num.degree == 1


def test_quadratic_extension_embedding_is_a_homomorphism():
    for F in (F7, F9):
        F2, emb = quadratic_extension(F)
        assert F2.q == F.q**2
        for a, b in itertools.product(range(F.q), repeat=2):
            assert emb[F.mul(a, b)] == F2.mul(int(emb[a]), int(emb[b]))
            assert emb[F.add(a, b)] == F2.add(int(emb[a]), int(emb[b]))

import random
from fractions import Fraction

import pytest

from bispectral import (Cyclotomic, DomainError, UsageError,
                        cyclotomic_polynomial, euler_phi, format_rational,
                        parse_rational, primitive_root)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert euler_phi(12) == 4


def test_primitive_roots_degenerate_orders():
    assert primitive_root(1) == 1
    assert primitive_root(2) == -1
    eps = primitive_root(4)
    assert eps * eps == -1


def test_primitive_root_order_six():
    eps = primitive_root(6)
    assert eps ** 6 == 1
    assert eps ** 3 == -1
    for k in range(1, 6):
        assert eps ** k != 1


def test_root_inverse_reference_value():
    # 1 + eps has inverse -eps when eps^2 + eps + 1 = 0
    eps = primitive_root(3)
    assert (1 + eps).inverse() == -eps
    assert (1 + eps) * (-eps) == 1


def test_character_orthogonality():
    for n in (2, 3, 4, 5, 6, 8, 12):
        eps = primitive_root(n)
        for k in range(1, n):
            total = Cyclotomic.zero(n)
            for i in range(n):
                total = total + eps ** (i * k)
            assert not total, (n, k)


def test_field_axioms_randomized():
    rng = random.Random(20240)
    for n in (3, 4, 5, 6):
        phi = euler_phi(n)
        def rand():
            return Cyclotomic(n, [Fraction(rng.randint(-9, 9),
                                           rng.randint(1, 4))
                                  for _ in range(phi)])
        for _ in range(60):
            a, b, c = rand(), rand(), rand()
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            if a:
                assert a * a.inverse() == 1
                assert (a / a) == 1


def test_inversion_of_zero_rejected():
    with pytest.raises(DomainError):
        Cyclotomic.zero(5).inverse()


def test_mixed_orders_rejected():
    with pytest.raises(UsageError):
        primitive_root(3) + primitive_root(4)


def test_rational_parse_print_round_trip():
    rng = random.Random(7)
    for _ in range(200):
        q = Fraction(rng.randint(-10**12, 10**12), rng.randint(1, 10**9))
        assert parse_rational(format_rational(q)) == q
    assert format_rational(Fraction(4, 2)) == "2"
    assert parse_rational("-6/4") == Fraction(-3, 2)
    with pytest.raises(UsageError):
        parse_rational("1/0")


def test_cyclotomic_json_round_trip():
    eps = primitive_root(5)
    v = eps ** 3 + 2 * eps - Fraction(1, 3)
    assert Cyclotomic.from_json(v.to_json()) == v


def test_rational_coercion_inside_field():
    eps = primitive_root(3)
    assert (Fraction(1, 2) * eps) * 2 == eps
    assert (eps - eps) == 0
    assert Cyclotomic.from_rational(3, Fraction(5, 7)).as_rational() == Fraction(5, 7)
    with pytest.raises(DomainError):
        eps.as_rational()

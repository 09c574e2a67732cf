import random
from fractions import Fraction

import pytest

from bispectral import DomainError, Poly, RationalFunction, UsageError


def rand_poly(rng, var="x", deg=4):
    return Poly(var, [Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                      for _ in range(rng.randint(0, deg + 1))])


def test_normalization_strips_trailing_zeros():
    p = Poly("x", [1, 2, 0, 0])
    assert p.degree == 1
    assert Poly("x", [0, 0]).is_zero


def test_divmod_reconstructs():
    rng = random.Random(11)
    for _ in range(150):
        a = rand_poly(rng)
        b = rand_poly(rng)
        if b.is_zero:
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero or r.degree < b.degree


def test_gcd_divides_both():
    rng = random.Random(12)
    for _ in range(80):
        a, b = rand_poly(rng), rand_poly(rng)
        if a.is_zero or b.is_zero:
            continue
        g = Poly.gcd(a, b)
        assert (a % g).is_zero and (b % g).is_zero


def test_expand_contract_power():
    p = Poly("y", [1, 0, -2, 3])
    q = p.expand_arg_power(2, var="x")
    assert q.coeffs == (Fraction(1), 0, 0, 0, Fraction(-2), 0, Fraction(3))
    assert q.is_power_pattern(2)
    assert q.contract_arg_power(2, var="y") == p
    with pytest.raises(UsageError):
        Poly("x", [0, 1]).contract_arg_power(2)


def test_theta_and_derivative():
    p = Poly("x", [5, 1, 3])
    assert p.derivative() == Poly("x", [1, 6])
    assert p.theta() == Poly("x", [0, 1, 6])


def test_rational_function_canonical_form():
    x2 = Poly("x", [0, 0, 1])
    r = RationalFunction(Poly("x", [0, 2]), Poly("x", [0, 0, 4]))
    assert r.num == Poly("x", [Fraction(1, 2)])
    assert r.den == Poly("x", [0, 1])
    assert r.is_laurent
    assert r.laurent_terms() == [(-1, Fraction(1, 2))]
    assert RationalFunction(x2).is_polynomial


def test_rational_function_field_ops():
    rng = random.Random(13)
    for _ in range(80):
        def rand_rf():
            num = rand_poly(rng)
            den = rand_poly(rng)
            while den.is_zero:
                den = rand_poly(rng)
            return RationalFunction(num, den)
        a, b, c = rand_rf(), rand_rf(), rand_rf()
        assert a * (b + c) == a * b + a * c
        if not b.is_zero:
            assert (a / b) * b == a


def test_rational_function_derivative_quotient_rule():
    x = Poly.variable("x")
    r = RationalFunction(Poly("x", [1]), Poly("x", [0, 1]))  # 1/x
    assert r.derivative() == RationalFunction(Poly("x", [-1]), Poly("x", [0, 0, 1]))
    assert r.theta() == -r


def test_non_laurent_rejected():
    r = RationalFunction(Poly("x", [1]), Poly("x", [1, 1]))
    assert not r.is_laurent
    from bispectral import UnsupportedInputError
    with pytest.raises(UnsupportedInputError):
        r.laurent_terms()


def test_zero_denominator_rejected():
    with pytest.raises(DomainError):
        RationalFunction(Poly("x", [1]), Poly.zero("x"))


def test_poly_json_round_trip():
    p = Poly("x", [Fraction(1, 3), 0, -2])
    assert Poly.from_json("x", p.to_json()) == p
    r = RationalFunction(p, Poly("x", [0, 0, 5]))
    assert RationalFunction.from_json("x", r.to_json()) == r

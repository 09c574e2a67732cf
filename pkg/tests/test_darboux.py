import random
from fractions import Fraction

import pytest

from bispectral import (AtPointGroup, AtZeroGroup, BesselIndex,
                        CertificationError, DarbouxCertificate, DiffOp,
                        KernelSpec, Poly, RankDeficiencyError,
                        RationalFunction, SpecInvalidError,
                        UnsupportedInputError, UsageError, bessel_op,
                        build_P_general, build_P_monomial, build_certificate,
                        certify, cleared_coefficients, compute_Q,
                        kernel_matrix, monomial_kernel, validate_spec)

F = Fraction


def rank1_spec():
    return monomial_kernel(BesselIndex.parse("0"), [[(F(1), F(1))]])


def order2_point_spec(nu=F(1, 3), a=F(1), lam=F(1)):
    bi = BesselIndex(2, (1 - nu, nu))
    return KernelSpec(bi, (), (AtPointGroup(lam, (F(1), a)),))


def closed_order2_factor(a, lam2, mu2):
    """The printed closed-form order-2 factor, used as an oracle."""
    var = "x"
    p2 = Poly(var, [-mu2, 0, 1])
    p1 = Poly(var, [mu2, 0, -3])
    c0 = 2 * lam2 * mu2 + (a + 1) * (2 * a - 1) / a ** 2
    d0 = ((a + 1) / a ** 2 - lam2 * mu2) * mu2
    p0 = Poly(var, [d0, 0, c0, 0, -lam2])
    den = Poly(var, [0, 0, 1]) * p2
    dee = DiffOp.dee(var)
    op = (DiffOp.mult(var, p2, "D") * dee * dee
          + DiffOp.mult(var, p1, "D") * dee + DiffOp.mult(var, p0, "D"))
    return op.lmul_fn(RationalFunction(Poly.const(var, 1), den))


def test_validate_counts_and_polynomials():
    val = validate_spec(rank1_spec())
    assert val.n0 == 1 and val.n == 1
    assert val.g == Poly("z", [0, 1])
    assert val.f == Poly("z", [0, 1])
    assert val.h == Poly("y", [0, 0, 1])

    val2 = validate_spec(order2_point_spec())
    assert val2.n0 == 0 and val2.n == 2
    assert val2.g == Poly("z", [-1, 0, 1])
    assert val2.f == Poly("z", [-1, 0, 1])
    assert val2.h == Poly("y", [1, -2, 1])


def test_congruence_violation_rejected():
    with pytest.raises(SpecInvalidError):
        monomial_kernel(BesselIndex.parse("0,1"), [[(F(0), F(1)), (F(1), F(1))]])


def test_unreachable_exponent_rejected():
    with pytest.raises(SpecInvalidError):
        monomial_kernel(BesselIndex.parse("0,1"), [[(F(-2), F(1))]])


def test_log_power_beyond_multiplicity_rejected():
    bi = BesselIndex.parse("0,1")
    with pytest.raises(SpecInvalidError):
        validate_spec(KernelSpec(bi, (AtZeroGroup(0, ((F(0), F(1)),)),), ()))


def test_dependent_conditions_rejected():
    bi = BesselIndex.parse("0")
    dup = monomial_kernel(bi, [[(F(1), F(1))], [(F(1), F(2))]])
    with pytest.raises(RankDeficiencyError):
        validate_spec(dup)
    bi2 = BesselIndex.parse("2/3,1/3")
    spec = KernelSpec(bi2, (), (AtPointGroup(F(1), (F(1), F(1))),
                                AtPointGroup(F(1), (F(2), F(2)))))
    with pytest.raises(RankDeficiencyError):
        validate_spec(spec)


def test_orbit_collision_rejected():
    bi = BesselIndex.parse("0,1")
    spec = KernelSpec(bi, (), (AtPointGroup(F(1), (F(1),)),
                               AtPointGroup(F(-1), (F(1),))))
    with pytest.raises(SpecInvalidError):
        validate_spec(spec)


def test_build_monomial_reference_factors():
    assert build_P_monomial(rank1_spec()) == \
        DiffOp("x", "del", [RationalFunction.x_power("x", -1).__neg__(), 1])
    bi = BesselIndex.parse("0,1")
    p = build_P_monomial(monomial_kernel(bi, [[(F(0), F(1))]]))
    assert p == DiffOp.partial("x")
    bi2 = BesselIndex.parse("1/2,1/2")
    p2 = build_P_monomial(monomial_kernel(bi2, [[(F(1, 2), F(1))]]))
    want = DiffOp("x", "D", [RationalFunction(Poly("x", [F(-1, 2)]), Poly("x", [0, 1])),
                             RationalFunction(Poly("x", [1]), Poly("x", [0, 1]))])
    assert p2 == want


def test_build_monomial_rejects_point_specs():
    with pytest.raises(UsageError):
        build_P_monomial(order2_point_spec())


def test_log_group_build():
    bi = BesselIndex.parse("1/2,1/2")
    spec = KernelSpec(bi, (AtZeroGroup(0, ((F(0), F(1)),)),), ())
    cert = build_certificate(spec)
    assert cert.P == bessel_op(bi)
    assert cert.Q == DiffOp.identity("x")
    assert cert.h == Poly("y", [0, 1])
    assert cert.g == Poly("z", [0, 0, 1])
    assert cert.f == Poly("z", [1])


def test_log_groups_rejected_alongside_points():
    bi = BesselIndex.parse("1/2,1/2")
    spec = KernelSpec(bi, (AtZeroGroup(0, ((F(0), F(1)),)),),
                      (AtPointGroup(F(1), (F(1),)),))
    with pytest.raises(UnsupportedInputError):
        build_P_general(spec)


def test_compute_q_reference_values():
    bi = BesselIndex.parse("0")
    p = DiffOp("x", "del", [-RationalFunction.x_power("x", -1), 1])
    q = compute_Q(p, Poly("y", [0, 0, 1]), bi)
    assert q == DiffOp("x", "del", [RationalFunction.x_power("x", -1), 1])
    # dividing the base operator by itself
    bi2 = BesselIndex.parse("2/3,1/3")
    assert compute_Q(bessel_op(bi2), Poly("y", [0, 1]), bi2) == \
        DiffOp.identity("x")
    # kernel not inside the eigenvalue kernel
    with pytest.raises(CertificationError):
        compute_Q(DiffOp.partial("x") - DiffOp.identity("x"),
                  Poly("y", [0, 1]), bi)


def test_point_build_matches_closed_form():
    nu, a, lam = F(1, 3), F(1), F(1)
    cert = build_certificate(order2_point_spec(nu, a, lam))
    mu2 = (a + 1 - a ** 2 * nu * (nu - 1)) / (a ** 2 * lam ** 2)
    assert mu2 == F(20, 9)
    assert cert.P == closed_order2_factor(a, lam ** 2, mu2)
    b = -a / (a + 1)
    assert cert.Q == closed_order2_factor(b, lam ** 2, mu2).adjoint()
    n, pks = cleared_coefficients(cert.P, 2)
    assert n == 2
    assert pks[2] == Poly("y", [F(-20, 9), 1])
    assert pks[1] == Poly("y", [F(20, 9), -3])
    assert pks[0] == Poly("y", [F(-40, 81), F(58, 9), -1])


def test_point_build_random_parameters_certify():
    rng = random.Random(51)
    done = 0
    while done < 3:
        nu = F(rng.randint(-3, 4), rng.choice([3, 5]))
        a = F(rng.randint(-4, 4), rng.choice([1, 2, 3]))
        lam = F(rng.randint(-3, 3), rng.choice([1, 2]))
        if a in (0, -1) or lam == 0:
            continue
        done += 1
        cert = build_certificate(order2_point_spec(nu, a, lam))
        assert cert.witnesses["product"] and cert.witnesses["normalization"]


def test_single_branch_exponential_kernel():
    # one-point condition over the order-one base: kernel {e^{lam x}}
    spec = KernelSpec(BesselIndex.parse("0"), (),
                      (AtPointGroup(F(1), (F(1),)),))
    cert = build_certificate(spec)
    assert cert.P == DiffOp("x", "del", [-1, 1])
    assert cert.Q == DiffOp.identity("x")
    assert cert.g == Poly("z", [-1, 1])
    assert cert.f == Poly("z", [1])
    assert cert.h == Poly("y", [-1, 1])
    # first-jet condition at lam = -2 forces the squared eigenvalue factor
    spec2 = KernelSpec(BesselIndex.parse("0"), (),
                       (AtPointGroup(F(-2), (F(1), F(1))),))
    cert2 = build_certificate(spec2)
    assert cert2.P.order == 1
    assert cert2.g == Poly("z", [2, 1])
    assert cert2.f == Poly("z", [2, 1])
    assert cert2.h == Poly("y", [4, 4, 1])


def test_order_three_orbit_kernels():
    bi = BesselIndex.parse("0,1,2")
    # value conditions on the whole orbit of 1: the kernel of d^3 - 1
    cert = build_certificate(KernelSpec(bi, (), (AtPointGroup(F(1), (F(1),)),)))
    assert cert.P == DiffOp("x", "del", [-1, 0, 0, 1])
    assert cert.Q == DiffOp.identity("x")
    assert cert.h == Poly("y", [-1, 1])

    # first-jet conditions: order-3 factor, second orbit at z^3 = -6
    cert2 = build_certificate(
        KernelSpec(bi, (), (AtPointGroup(F(1), (F(1), F(1))),)))
    n, pks = cleared_coefficients(cert2.P, 3)
    assert n == 3
    assert pks[3] == Poly("y", [6, 1])
    assert pks[2] == Poly("y", [-18, -6])
    assert pks[1] == Poly("y", [12, 14])
    assert pks[0] == Poly("y", [0, -24, -1])
    # independent checks: exact product identity and kernel annihilation
    from bispectral import bessel_op, poly_at_operator, wave_jet_at
    lb = bessel_op(bi)
    assert cert2.Q * cert2.P == poly_at_operator(Poly("y", [1, -2, 1]), lb)
    for branch in range(3):
        jet = wave_jet_at(bi, F(1), branch, 1, 20)
        element = jet.series[0] + jet.series[1]
        assert not element.apply(cert2.P).coeffs


def test_empty_spec_rejected():
    with pytest.raises(SpecInvalidError):
        validate_spec(KernelSpec(BesselIndex.parse("0,1"), (), ()))


def test_mixed_origin_and_orbit_spec():
    bi = BesselIndex.parse("2/3,1/3")
    spec = KernelSpec(bi, (AtZeroGroup(0, ((F(1),),)),),
                      (AtPointGroup(F(1), (F(1),)),))
    val = validate_spec(spec)
    assert val.n0 == 1 and val.n == 3
    assert val.g == Poly("z", [0, -1, 0, 1])
    assert val.f == Poly("z", [0, 1])
    assert val.h == Poly("y", [0, -1, 1])
    cert = build_certificate(spec)
    assert cert.P.order == 3
    from bispectral import QuasiPolynomial
    assert QuasiPolynomial.monomial(F(2, 3)).apply(cert.P).is_zero


def test_certify_negative_controls():
    cert = build_certificate(rank1_spec())
    with pytest.raises(CertificationError, match="remainder nonzero"):
        certify(cert.beta, cert.P, cert.Q + DiffOp.identity("x"),
                cert.f, cert.g)
    with pytest.raises(CertificationError):
        certify(cert.beta, cert.P, cert.Q, cert.f,
                cert.g.scale(2))  # g no longer monic
    bad_g = Poly("z", [1, 1])
    with pytest.raises(CertificationError):
        certify(cert.beta, cert.P, cert.Q, cert.f, bad_g)


def test_certificate_json_round_trip():
    cert = build_certificate(rank1_spec())
    back = DarbouxCertificate.from_json(cert.to_json())
    assert back.P == cert.P and back.Q == cert.Q
    assert back.f == cert.f and back.g == cert.g and back.h == cert.h
    assert back.spec.to_json() == cert.spec.to_json()


def test_kernel_matrix_round_trip():
    bi = BesselIndex.parse("0,1")
    spec = monomial_kernel(bi, [[(F(0), F(1)), (F(2), F(3))]])
    d, gammas, rows = kernel_matrix(spec)
    assert d == 2 and gammas == (0, 2, 1, 3)
    assert rows == [[F(1), F(3), F(0), F(0)]]


def test_spec_json_round_trip():
    spec = order2_point_spec()
    assert KernelSpec.from_json(spec.to_json()).to_json() == spec.to_json()
    spec2 = rank1_spec()
    assert KernelSpec.from_json(spec2.to_json()).to_json() == spec2.to_json()

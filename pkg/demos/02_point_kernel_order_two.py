"""An order-two transformation supported on a nonzero spectral orbit.

The base operator d^2 + nu(1-nu)/x^2 has a two-branch orbit {lam, -lam};
imposing one jet condition along the orbit yields an order-two factor with
a second spectral point mu determined by (nu, a, lam).  The involution
swaps lam and mu exactly.

Run:  python demos/02_point_kernel_order_two.py
"""

from fractions import Fraction as F

from bispectral import (AtPointGroup, BesselIndex, KernelSpec, bessel_op,
                        build_certificate, cleared_coefficients, make_pair,
                        spectral_algebra, verify_pair)

nu, a, lam = F(1, 3), F(1), F(1)
bi = BesselIndex(2, (1 - nu, nu))
print("base operator:", bessel_op(bi).convert("del"))

# condition  psi + a D_z psi  at z = lam and z = -lam (one orbit)
spec = KernelSpec(bi, (), (AtPointGroup(lam, (F(1), a)),))
cert = build_certificate(spec)

n, pks = cleared_coefficients(cert.P, bi.N)
print(f"factor of order {n}; cleared coefficients (argument y = x^2):")
for k, p in enumerate(pks):
    print(f"  p_{k}(y) =", p.to_str("y"))
mu2 = (a + 1 - a ** 2 * nu * (nu - 1)) / (a ** 2 * lam ** 2)
print("the second spectral point: mu^2 =", mu2)
print("f =", cert.f, "  g =", cert.g,
      "  h(y) =", cert.h.to_str("y"))

pair = make_pair(cert)
print()
print("g_b =", pair.g_b, "  f_b =", pair.f_b, "   (lam <-> mu swap)")
print("theta(y) =", pair.theta.to_str("y"))
print("L has order", pair.L.order, "and Lambda has order", pair.Lambda.order)

report = verify_pair(pair, depth=16)
print("series residuals:", report["residuals"])

# the spectral algebra sees operators of orders 4, 6, 8, ...
rep = spectral_algebra(cert, 8)
print("algebra degrees:", list(rep.degrees),
      "generators", list(rep.generators), "rank", rep.rank)

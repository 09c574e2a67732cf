"""The smallest interesting factorization, worked end to end.

Start from the order-one base operator with weight (0), whose formal
eigenfunction is the bare exponential e^{xz}.  Asking for the one-dimensional
kernel {x} produces the classical rational potential -2/x^2 together with
its spectral-side twin, and every identity is certified exactly.

Run:  python demos/01_rank_one_pair.py
"""

from fractions import Fraction

from bispectral import (BesselIndex, bessel_op, build_certificate, make_pair,
                        monomial_kernel, spectral_algebra, verify_pair)

bi = BesselIndex.parse("0")
print("base operator      :", bessel_op(bi).convert("del"))

# one kernel condition: the span of x
spec = monomial_kernel(bi, [[(Fraction(1), Fraction(1))]])
cert = build_certificate(spec)
print("factor P           :", cert.P)
print("complement Q       :", cert.Q)
print("f, g               :", cert.f, ",", cert.g)
print("eigenvalue poly h  :", cert.h.to_str("y"), "  (argument y = z^N)")
print("witnesses          :", cert.witnesses)

pair = make_pair(cert)
print()
print("L = P Q            :", pair.L)
print("Lambda             :", pair.Lambda)
print("h(z^N)             :", pair.h.expand_arg_power(bi.N, var="z").to_str("z"))
print("theta(x^N)         :", pair.theta.expand_arg_power(bi.N, var="x").to_str("x"))

report = verify_pair(pair, depth=10)
print("series residuals   :", report["residuals"], "on", report["window_L"])

# z^2 and z^3 both preserve the kernel span, so the rank drops to one
algebra = spectral_algebra(cert, 4)
print("algebra degrees    :", list(algebra.degrees),
      "generators", list(algebra.generators), "rank", algebra.rank)

"""Kernels with logarithms and the multiplicity bookkeeping behind them.

When a weight repeats modulo N, powers of x alone cannot span the kernel;
x^g (ln x)^j terms appear, with the admissible log power bounded by the
ladder multiplicity of the exponent.  The direct quasi-polynomial algebra
builds annihilators for these spans exactly.

Run:  python demos/04_log_kernels_and_multiplicities.py
"""

from fractions import Fraction as F

from bispectral import (AtZeroGroup, BesselIndex, KernelSpec, bessel_op,
                        build_certificate, kernel_basis, monomial_kernel,
                        zero_exponent_basis)

bi = BesselIndex.parse("1/2,1/2")
print("base operator:", bessel_op(bi).convert("del"))
print("multiplicity of 1/2:", bi.multiplicity(F(1, 2)))
print("kernel of the base operator:",
      [q.to_str() for q in zero_exponent_basis(bi, 1)])

# the full log group: {x^(1/2) ln x, x^(1/2)} via derivatives of one seed
spec = KernelSpec(bi, (AtZeroGroup(0, ((F(0), F(1)),)),), ())
cert = build_certificate(spec)
print("annihilator of the log pair:", cert.P)
print("h(y) =", cert.h.to_str("y"), " g =", cert.g, " f =", cert.f)
print("(the factorization collapses to the base operator itself: Q =",
      str(cert.Q) + ")")

# log-free single condition inside the same plane
single = monomial_kernel(bi, [[(F(1, 2), F(1))]])
print("annihilator of {x^(1/2)}:", build_certificate(single).P)

# a deeper kernel description with both origin and orbit parts
bi2 = BesselIndex.parse("2/3,1/3")
kb = kernel_basis(bi2, d0=1, points=[(F(1), 2)], depth=14)
print()
print("kernel description for y*(y-1)^2 eigenvalue data over", bi2, ":")
print("  at 0:", [q.to_str() for q in kb.at_zero])
lam, depth, jets = kb.at_points[0]
print(f"  at the orbit of {lam}: {len(jets)} branches x {depth} jets,")
print("  leading branch series window:", jets[0].series[0].box)

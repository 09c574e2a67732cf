"""Bessel-type operators, their powers, wave expansions and kernels.

The basic object is x^{-N} (D - b_1)...(D - b_N) with D = x d/dx and
rational weights b_i summing to N(N-1)/2.  Its formal eigenfunction is
e^{xz} (1 + sum a_k (xz)^{-k}); the a_k are produced by a recursion that
is derived here generically, by expanding the conjugated operator with
exact product arithmetic rather than trusting a per-order formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError
from .poly import Poly, RationalFunction
from .quasi import ExpSeries, PointJet, QuasiPolynomial, WaveSeries
from .scalars import Cyclotomic, format_rational, parse_rational, primitive_root
from .weyl import DFORM, DiffOp


@dataclass(frozen=True)
class BesselIndex:
    """A weight vector of length N whose entries sum to N(N-1)/2."""

    N: int
    beta: tuple

    def __post_init__(self):
        if self.N < 1 or len(self.beta) != self.N:
            raise UsageError("weight vector length must equal N >= 1")
        object.__setattr__(self, "beta", tuple(Fraction(b) for b in self.beta))
        want = Fraction(self.N * (self.N - 1), 2)
        if sum(self.beta) != want:
            raise UsageError(
                f"weights must sum to N(N-1)/2 = {want}, got {sum(self.beta)}")

    @classmethod
    def parse(cls, text: str) -> "BesselIndex":
        parts = [parse_rational(p) for p in str(text).split(",") if p.strip()]
        return cls(len(parts), tuple(parts))

    def power(self, d: int) -> tuple:
        """The length-dN weight vector of the d-th power operator."""
        if d < 1:
            raise UsageError("power must be >= 1")
        out = []
        for b in self.beta:
            out.extend(b + k * self.N for k in range(d))
        return tuple(out)

    def multiplicity(self, gamma) -> int:
        """How many weights reach gamma by steps of N: |{i : gamma in b_i + N Z>=0}|."""
        gamma = Fraction(gamma)
        count = 0
        for b in self.beta:
            step = (gamma - b) / self.N
            if step.denominator == 1 and step >= 0:
                count += 1
        return count

    def multiplicity_table(self, bound: int) -> dict:
        """Exponent -> multiplicity for all ladder exponents below beta_i + bound*N."""
        table = {}
        for b in self.beta:
            for k in range(bound):
                g = b + k * self.N
                table[g] = self.multiplicity(g)
        return table

    def to_json(self):
        return {"N": self.N, "beta": [format_rational(b) for b in self.beta]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["N"]), tuple(parse_rational(b) for b in data["beta"]))

    def __str__(self):
        return "(" + ", ".join(str(b) for b in self.beta) + ")"


def indicial_poly(entries, var="y") -> Poly:
    """prod (y - g) over the given exponents."""
    out = Poly.const(var, 1)
    for g in entries:
        out = out * Poly(var, (-Fraction(g), 1))
    return out


def ladder_op(entries, var="x") -> DiffOp:
    """x^{-L} prod (D - g) for any exponent list of length L."""
    entries = tuple(Fraction(g) for g in entries)
    p = indicial_poly(entries)
    xl = Poly.monomial(var, len(entries))
    coeffs = [RationalFunction(Poly.const(var, c), xl) for c in p.coeffs]
    return DiffOp(var, DFORM, coeffs)


def bessel_poly(bi: BesselIndex, var="x") -> DiffOp:
    """The constant-coefficient D-polynomial prod (D - b_i)."""
    p = indicial_poly(bi.beta)
    return DiffOp(var, DFORM, p.coeffs)


def bessel_op(bi: BesselIndex, var="x") -> DiffOp:
    """x^{-N} prod (D - b_i), an operator of order N."""
    return ladder_op(bi.beta, var)


def _conjugated_images(bi: BesselIndex, depth: int):
    """Laurent images b_m(z) of z^{-m} under prod(D + z - b_i) - z^N.

    Returned as dicts {absolute power: coefficient}, m = 0..depth.
    """
    acc = DiffOp.identity("z", DFORM)
    for b in bi.beta:
        acc = acc * DiffOp("z", DFORM, (Poly("z", (-b, 1)), 1))
    polys = [c.as_poly() for c in acc.coeffs]
    images = []
    for m in range(depth + 1):
        img = {}
        for j, p in enumerate(polys):
            w = Fraction(-m) ** j
            if not w:
                continue
            for t, c in enumerate(p.coeffs):
                if c:
                    img[t - m] = img.get(t - m, Fraction(0)) + w * c
        img[bi.N - m] = img.get(bi.N - m, Fraction(0)) - 1
        images.append({k: v for k, v in img.items() if v})
    return images


def wave_coeffs(bi: BesselIndex, depth: int):
    """The asymptotic coefficients a_1..a_depth of the formal eigenfunction."""
    if depth <= 0:
        return []
    images = _conjugated_images(bi, depth)
    a = [Fraction(1)]
    for k in range(1, depth + 1):
        power = bi.N - 1 - k
        acc = Fraction(0)
        for m in range(max(0, k + 1 - bi.N), k):
            acc += a[m] * images[m].get(power, Fraction(0))
        pivot = images[k].get(power, Fraction(0))
        if not pivot:
            raise UsageError("degenerate recursion pivot")  # cannot happen
        a.append(-acc / pivot)
    return a[1:]


def bessel_wave(bi: BesselIndex, depth: int) -> WaveSeries:
    """The formal eigenfunction as a prefactor-stripped double series."""
    a = wave_coeffs(bi, depth)
    coeffs = {(0, 0): Fraction(1)}
    for m, am in enumerate(a, start=1):
        if am:
            coeffs[(-m, -m)] = am
    return WaveSeries(coeffs, (-depth, 0, -depth, 0))


def exp_wave(bi: BesselIndex, depth: int) -> ExpSeries:
    """The one-variable profile e^z (1 + sum a_k z^{-k})."""
    a = wave_coeffs(bi, depth)
    coeffs = {0: Fraction(1)}
    for m, am in enumerate(a, start=1):
        if am:
            coeffs[-m] = am
    return ExpSeries("z", Fraction(1), coeffs, (-depth, 0))


def wave_jet_at(bi: BesselIndex, lam, branch: int, jet_order: int,
                depth: int) -> PointJet:
    """Jets D_z^k at z = eps^branch * lam, as truncated series in x.

    The homogeneity of the eigenfunction turns z-jets into jets of the
    one-variable profile; substituting w = (eps^branch lam) x then yields
    exact series with coefficients in Q(eps).
    """
    lam = Fraction(lam)
    if lam == 0:
        raise UsageError("jets require a nonzero point; "
                         "use exponent conditions at 0 instead")
    if not 0 <= branch < bi.N:
        raise UsageError("branch index out of range")
    a = wave_coeffs(bi, depth)
    cur = {0: Fraction(1)}
    cur.update({-m: am for m, am in enumerate(a, start=1) if am})
    lo, hi = -depth, 0
    jets_w = [dict(cur)]
    for _ in range(jet_order):
        nxt = {}
        for d, c in cur.items():
            nxt[d + 1] = nxt.get(d + 1, Fraction(0)) + c
            if d:
                nxt[d] = nxt.get(d, Fraction(0)) + d * c
        lo, hi = lo + 1, hi + 1
        cur = {d: v for d, v in nxt.items() if lo <= d <= hi and v}
        jets_w.append(dict(cur))
    eps = primitive_root(bi.N)
    rate = eps ** branch * Cyclotomic.from_rational(bi.N, lam)
    series = []
    for k, jw in enumerate(jets_w):
        coeffs = {d: rate ** d * v for d, v in jw.items()}
        series.append(ExpSeries("x", rate, coeffs, (-depth + k, k)))
    return PointJet(lam=lam, branch=branch, rate=rate, series=tuple(series))


def zero_exponent_basis(bi: BesselIndex, d0: int):
    """Quasi-monomial kernel basis of the d0-th power operator at the origin."""
    if d0 < 0:
        raise UsageError("depth at 0 must be >= 0")
    if d0 == 0:
        return []
    entries = bi.power(d0)
    mult = {}
    for g in entries:
        mult[g] = mult.get(g, 0) + 1
    out = []
    for g in sorted(mult):
        for j in range(mult[g]):
            out.append(QuasiPolynomial.monomial(g, j))
    return out


@dataclass(frozen=True)
class KernelBasis:
    """Direct-sum description of ker h(L) for factored eigenvalue data."""

    at_zero: tuple          # QuasiPolynomial generators
    at_points: tuple        # (lam, depth, jets per branch) triples


def kernel_basis(bi: BesselIndex, d0: int, points=(), depth: int = 24) -> KernelBasis:
    """Kernel description for z^{d0} * prod (z - lam_i^N)^{d_i} root data.

    `points` is a list of (lam_i, d_i) with nonzero rational lam_i; the
    values lam_i^N must be pairwise distinct (each orbit named once).
    """
    seen = {}
    normalized = []
    for lam, d in points:
        lam = Fraction(lam)
        if lam == 0:
            raise UsageError("points must be nonzero; 0 belongs to d0")
        if int(d) < 1:
            raise UsageError("point depth must be >= 1")
        key = lam ** bi.N
        if key in seen:
            raise UsageError(
                f"points {seen[key]} and {lam} name the same orbit "
                f"(equal N-th powers)")
        seen[key] = lam
        normalized.append((lam, int(d)))
    at_points = []
    for lam, d in normalized:
        jets = tuple(wave_jet_at(bi, lam, j, d - 1, depth) for j in range(bi.N))
        at_points.append((lam, d, jets))
    return KernelBasis(at_zero=tuple(zero_exponent_basis(bi, d0)),
                       at_points=tuple(at_points))

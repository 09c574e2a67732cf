"""Factor construction and exactness certificates.

A kernel specification selects a homogeneous, orbit-closed subspace: groups
of quasi-polynomial conditions at the origin plus jet conditions along the
orbits of nonzero points.  From it we build the unique monic annihilating
factor P by an escalating polynomial ansatz, recover the complement Q by
exact left division, and certify the pair by structural identities; series
solving may propose, but only division-certified operators are returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .bessel import BesselIndex, bessel_op, bessel_wave, wave_jet_at
from .errors import (CertificationError, InconsistentSpecError,
                     RankDeficiencyError, ShapeError, SpecInvalidError,
                     UnsupportedInputError, UsageError)
from .poly import Poly, RationalFunction
from .quasi import QuasiPolynomial
from .scalars import euler_phi, format_rational, parse_rational
from .weyl import DEL, DFORM, DiffOp, common_denominator, poly_at_operator


@dataclass(frozen=True)
class AtZeroGroup:
    """Conditions at the origin spanned by y-derivatives of one seed.

    ``b[k][j]`` weights x^(base + k N) (ln x)^j in the seed; the group
    contains the y-derivatives of orders 0..j0 of the seed, where j0 is
    the highest log power actually used.
    """

    base_index: int
    b: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(c) for c in row) for row in self.b)
        if not rows or not any(any(row) for row in rows):
            raise SpecInvalidError("empty condition group at 0")
        object.__setattr__(self, "b", rows)

    @property
    def j0(self):
        return max(j for row in self.b for j, c in enumerate(row) if c)

    def to_json(self):
        return {"base_index": self.base_index,
                "b": [[format_rational(c) for c in row] for row in self.b],
                "j0": self.j0}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["base_index"]),
                   tuple(tuple(parse_rational(c) for c in row) for row in data["b"]))


@dataclass(frozen=True)
class AtPointGroup:
    """One orbit of jet conditions sum_k a_k D_z^k at eps^i lam, all branches."""

    lam: Fraction
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "a", tuple(Fraction(c) for c in self.a))
        if self.lam == 0:
            raise SpecInvalidError("point conditions require lam != 0")
        if not self.a or not self.a[-1]:
            raise SpecInvalidError("highest jet coefficient must be nonzero")

    @property
    def k0(self):
        return len(self.a) - 1

    def to_json(self):
        return {"lambda": format_rational(self.lam),
                "a": [format_rational(c) for c in self.a]}

    @classmethod
    def from_json(cls, data):
        return cls(parse_rational(data["lambda"]),
                   tuple(parse_rational(c) for c in data["a"]))


@dataclass(frozen=True)
class KernelSpec:
    beta: BesselIndex
    at_zero: tuple = ()
    at_points: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "at_zero", tuple(self.at_zero))
        object.__setattr__(self, "at_points", tuple(self.at_points))

    @property
    def is_monomial(self):
        return not self.at_points

    @property
    def is_log_free(self):
        return all(g.j0 == 0 for g in self.at_zero)

    def to_json(self):
        return {"beta": self.beta.to_json(),
                "at_zero": [g.to_json() for g in self.at_zero],
                "at_points": [g.to_json() for g in self.at_points]}

    @classmethod
    def from_json(cls, data):
        return cls(BesselIndex.from_json(data["beta"]),
                   tuple(AtZeroGroup.from_json(g) for g in data.get("at_zero", ())),
                   tuple(AtPointGroup.from_json(g) for g in data.get("at_points", ())))


def monomial_kernel(beta: BesselIndex, rows) -> KernelSpec:
    """Build a log-free at-zero spec from rows of (exponent, coefficient) pairs.

    Every row must stay inside one ladder base + N Z>=0; exponents mixing
    residues (or stepping below every admissible base) are rejected, with
    the offending pair reported.
    """
    groups = []
    for row in rows:
        items = [(Fraction(g), Fraction(c)) for g, c in row if c]
        if not items:
            raise SpecInvalidError("empty kernel row")
        exps = [g for g, _ in items]
        for g1, g2 in itertools.combinations(exps, 2):
            diff = g1 - g2
            if diff == 0 or (diff / beta.N).denominator != 1:
                raise SpecInvalidError(
                    f"exponents {g1} and {g2} in one element differ by "
                    f"{diff}, not a nonzero multiple of {beta.N}")
        base = None
        for s, b in enumerate(beta.beta):
            if all(((g - b) / beta.N).denominator == 1 and g >= b for g in exps):
                base = s
                break
        if base is None:
            raise SpecInvalidError(
                f"no admissible base exponent for row with exponents {exps}")
        b0 = beta.beta[base]
        k0 = max(int((g - b0) / beta.N) for g in exps)
        brows = [[Fraction(0)] for _ in range(k0 + 1)]
        for g, c in items:
            brows[int((g - b0) / beta.N)][0] = c
        groups.append(AtZeroGroup(base, tuple(tuple(r) for r in brows)))
    return KernelSpec(beta, tuple(groups), ())


def _group_elements(beta: BesselIndex, group: AtZeroGroup):
    """The quasi-polynomial elements of one at-zero group (seed derivatives)."""
    if not 0 <= group.base_index < beta.N:
        raise SpecInvalidError(f"base index {group.base_index} out of range")
    b0 = beta.beta[group.base_index]
    seed_terms = []
    for k, row in enumerate(group.b):
        gamma = b0 + k * beta.N
        mult = beta.multiplicity(gamma)
        for j, c in enumerate(row):
            if not c:
                continue
            if j >= mult:
                raise SpecInvalidError(
                    f"log power {j} at exponent {gamma} exceeds its "
                    f"multiplicity {mult}")
            seed_terms.append(((gamma, j), c))
    seed = QuasiPolynomial(seed_terms)
    elements = [seed]
    for _ in range(group.j0):
        elements.append(elements[-1].log_derivative())
    return elements


def _zero_depth(beta: BesselIndex, elements):
    """Minimal d with every element inside the kernel of the d-th power."""
    d0 = 0
    for q in elements:
        for (gamma, p), _ in q.items():
            ms = sorted(int((gamma - b) / beta.N) for b in beta.beta
                        if ((gamma - b) / beta.N).denominator == 1
                        and gamma >= b)
            if p >= len(ms):
                raise SpecInvalidError(
                    f"log power {p} at exponent {gamma} exceeds multiplicity")
            d0 = max(d0, ms[p] + 1)
    return d0


@dataclass(frozen=True)
class ValidatedSpec:
    spec: KernelSpec
    elements_at_zero: tuple
    point_groups: tuple     # (lam, a, depth_requirement) per group
    n0: int
    n: int
    d0: int
    point_depths: dict      # lam -> d_i
    g: Poly                 # in z
    f: Poly                 # in z
    h: Poly                 # in the argument y = z^N


def validate_spec(spec: KernelSpec) -> ValidatedSpec:
    """Check structural conditions and derive the certificate polynomials."""
    beta = spec.beta
    elements = []
    for group in spec.at_zero:
        elements.extend(_group_elements(beta, group))
    n0 = len(elements)
    if elements:
        cols = sorted({key for q in elements for key, _ in q.items()})
        rows = [[q.terms.get(c, Fraction(0)) for c in cols] for q in elements]
        if linalg.rank(rows) != n0:
            raise RankDeficiencyError("conditions at 0 are linearly dependent")

    seen_power = {}
    point_depths = {}
    per_lam_vectors = {}
    for group in spec.at_points:
        key = group.lam ** beta.N
        other = seen_power.get(key)
        if other is not None and other != group.lam:
            raise SpecInvalidError(
                f"points {other} and {group.lam} name the same orbit")
        seen_power[key] = group.lam
        point_depths[group.lam] = max(point_depths.get(group.lam, 0),
                                      group.k0 + 1)
        per_lam_vectors.setdefault(group.lam, []).append(group.a)
    for lam, vectors in per_lam_vectors.items():
        width = max(len(v) for v in vectors)
        rows = [list(v) + [Fraction(0)] * (width - len(v)) for v in vectors]
        if linalg.rank(rows) != len(rows):
            raise RankDeficiencyError(
                f"jet conditions at {lam} are linearly dependent")

    n = n0 + beta.N * len(spec.at_points)
    if n == 0:
        raise SpecInvalidError("empty kernel specification")
    d0 = _zero_depth(beta, elements)

    g = Poly.monomial("z", n0)
    for lam in sorted(point_depths):
        count = sum(1 for gp in spec.at_points if gp.lam == lam)
        factor = Poly("z", [-(lam ** beta.N)] + [0] * (beta.N - 1) + [1])
        g = g * factor ** count
    h = Poly.monomial("y", d0)
    for lam in sorted(point_depths):
        h = h * Poly("y", (-(lam ** beta.N), 1)) ** point_depths[lam]
    h_z = h.expand_arg_power(beta.N, var="z")
    f, rem = h_z.divmod(g)
    if not rem.is_zero:
        raise RankDeficiencyError(
            "more conditions than the eigenvalue depth supports")
    groups = tuple((gp.lam, gp.a, point_depths[gp.lam]) for gp in spec.at_points)
    return ValidatedSpec(spec=spec, elements_at_zero=tuple(elements),
                         point_groups=groups, n0=n0, n=n, d0=d0,
                         point_depths=point_depths, g=g, f=f, h=h)


def _zero_condition_rows(elements, n, N, bound):
    """Linear conditions on the ansatz coefficients from quasi-polynomials."""
    rows = []
    ncols = (n + 1) * (bound + 1)
    for q in elements:
        powers = [q]
        for _ in range(n):
            powers.append(powers[-1].apply_theta())
        keys = {}
        cells = {}
        for k in range(n + 1):
            for j in range(bound + 1):
                image = powers[k].xshift(j * N - n)
                col = k * (bound + 1) + j
                for key, c in image.terms.items():
                    keys[key] = True
                    cells[(key, col)] = cells.get((key, col), Fraction(0)) + c
        for key in sorted(keys):
            row = [Fraction(0)] * ncols
            hit = False
            for col in range(ncols):
                v = cells.get((key, col))
                if v:
                    row[col] = v
                    hit = True
            if hit:
                rows.append(row)
    return rows


def _point_condition_rows(beta, group_data, n, N, bound, depth):
    """Linear conditions from one orbit group, all branches, split over Q.

    group_data is (lam, a, jets_by_branch); each coefficient equation over
    Q(eps) contributes phi(N) rational rows.
    """
    lam, avec, jets = group_data
    phi = euler_phi(beta.N)
    ncols = (n + 1) * (bound + 1)
    rows = []
    slots = 0
    for jet in jets:
        series = None
        for k, c in enumerate(avec):
            if not c:
                continue
            piece = jet.series[k].scale(c)
            series = piece if series is None else series + piece
        powers = [series]
        for _ in range(n):
            prev = powers[-1]
            powers.append(prev.xshift(1).scale(jet.rate) + prev.theta())
        images = {}
        lo = None
        hi = None
        for k in range(n + 1):
            for j in range(bound + 1):
                img = powers[k].xshift(j * N - n)
                images[(k, j)] = img
                lo = img.box[0] if lo is None else max(lo, img.box[0])
                hi = img.box[1] if hi is None else max(hi, img.box[1])
        slots += phi * (hi - lo + 1)
        for deg in range(lo, hi + 1):
            cellrows = [[Fraction(0)] * ncols for _ in range(phi)]
            hit = False
            for (k, j), img in images.items():
                c = img.coeffs.get(deg)
                if c is None:
                    continue
                col = k * (bound + 1) + j
                for t, coord in enumerate(c.coords):
                    if coord:
                        cellrows[t][col] += coord
                        hit = True
            if hit:
                rows.extend(r for r in cellrows if any(r))
    return rows, slots


def _assemble(beta, n, N, solution, bound):
    """Turn an ansatz coefficient vector into the monic rational-form operator."""
    pks = []
    for k in range(n + 1):
        pks.append(Poly("y", solution[k * (bound + 1):(k + 1) * (bound + 1)]))
    content = Poly.zero("y")
    for p in pks:
        content = Poly.gcd(content, p) if not content.is_zero else p
    if content.degree > 0:
        pks = [p // content for p in pks]
    if pks[-1].is_zero:
        return None
    xn = Poly.monomial("x", n)
    coeffs = [RationalFunction(p.expand_arg_power(N, var="x"), xn) for p in pks]
    op = DiffOp("x", DFORM, coeffs)
    lead = op.coeffs[-1]
    return op.lmul_fn(1 / (lead * RationalFunction(xn)))


def _structured(P: DiffOp, N: int):
    """(n, [p_k as Poly in y]) from the D-form coefficients, or ShapeError."""
    d = P.convert(DFORM)
    if d.is_zero:
        raise ShapeError("zero operator has no structured form")
    n = d.order
    xn = Poly.monomial(d.var, n)
    parts = []
    for c in d.coeffs:
        r = c * RationalFunction(xn)
        if not (r.num.is_power_pattern(N) and r.den.is_power_pattern(N)):
            raise ShapeError(
                f"coefficient {c} of D^{len(parts)} does not live in x^{N}")
        parts.append((r.num.contract_arg_power(N, var="y"),
                      r.den.contract_arg_power(N, var="y")))
    den = Poly.const("y", 1)
    for _, dd in parts:
        g = Poly.gcd(den, dd)
        den = den * (dd // g)
    pks = []
    for num, dd in parts:
        pks.append(num * (den // dd))
    content = Poly.zero("y")
    for p in pks:
        content = Poly.gcd(content, p) if not content.is_zero else p
    if content.degree > 0:
        pks = [p // content for p in pks]
    lead = pks[-1].leading
    if lead != 1:
        pks = [p.scale(1 / lead) for p in pks]
    return n, pks


def cleared_coefficients(P: DiffOp, N: int):
    """Public name for the cleared polynomial coefficients (p_n monic)."""
    return _structured(P, N)


def _solve_annihilator(val: ValidatedSpec, depth=None):
    """Find the minimal monic annihilator by escalating polynomial degree."""
    beta = val.spec.beta
    n, N = val.n, beta.N
    d = max(1, val.h.degree)
    base_bound = max(1, n * d)
    default_depth = 2 * (d * N + n) + 8
    outer = base_bound
    tried = 0
    bound_start = 0
    lbeta = bessel_op(beta)
    h_at_l = poly_at_operator(val.h, lbeta)
    while tried < 5:
        for bound in range(bound_start, outer + 1):
            ncols = (n + 1) * (bound + 1)
            rows = _zero_condition_rows(val.elements_at_zero, n, N, bound)
            if val.point_groups:
                K = max(depth or default_depth, 2 * ncols + 2 * n + 10)
                jets_cache = {}
                slots = 0
                for lam, avec, drequired in val.point_groups:
                    key = (lam, len(avec) - 1)
                    if key not in jets_cache:
                        jets_cache[key] = tuple(
                            wave_jet_at(beta, lam, br, len(avec) - 1, K)
                            for br in range(N))
                    new_rows, new_slots = _point_condition_rows(
                        beta, (lam, avec, jets_cache[key]), n, N, bound, K)
                    rows.extend(new_rows)
                    slots += new_slots
                if slots < ncols + 5:
                    raise InconsistentSpecError(
                        "could not over-determine the point conditions")
            if not rows:
                continue
            sols = linalg.nullspace(rows, ncols)
            for sol in sols:
                if not any(sol[val.n * (bound + 1):]):
                    continue
                op = _assemble(beta, n, N, sol, bound)
                if op is None or op.order != n:
                    continue
                quot, rem = h_at_l.left_divide(op)
                if rem.is_zero:
                    return op, quot
        bound_start = outer + 1
        outer *= 2
        tried += 1
    raise InconsistentSpecError(
        f"no certified annihilator up to coefficient degree {outer // 2}")


def build_P_monomial(spec: KernelSpec) -> DiffOp:
    """The unique monic annihilator for a spec supported entirely at 0."""
    if spec.at_points:
        raise UsageError("spec has point conditions; use build_P_general")
    val = validate_spec(spec)
    op, _ = _solve_annihilator(val)
    return op.convert(DEL)


def build_P_general(spec: KernelSpec, depth=None) -> DiffOp:
    """Monic annihilator for mixed specs; series-solved, division-certified."""
    val = validate_spec(spec)
    if spec.at_points and not spec.is_log_free:
        raise UnsupportedInputError(
            "log-bearing conditions are only supported for kernels at 0")
    op, _ = _solve_annihilator(val, depth=depth)
    return op.convert(DEL)


def compute_Q(P: DiffOp, h: Poly, beta: BesselIndex) -> DiffOp:
    """Exact left quotient of h evaluated at the base operator by P."""
    lbeta = bessel_op(beta, P.var)
    target = poly_at_operator(h, lbeta)
    quot, rem = target.left_divide(P)
    if not rem.is_zero:
        raise CertificationError(
            "remainder nonzero: kernel is not inside the eigenvalue kernel")
    return quot.convert(DEL)


@dataclass(frozen=True)
class DarbouxCertificate:
    beta: BesselIndex
    P: DiffOp
    Q: DiffOp
    f: Poly
    g: Poly
    h: Poly
    witnesses: dict
    depth: int
    spec: KernelSpec = None

    def to_json(self):
        out = {"beta": self.beta.to_json(),
               "P": self.P.to_json(), "Q": self.Q.to_json(),
               "f": self.f.to_json(), "g": self.g.to_json(),
               "h": self.h.to_json(),
               "witnesses": dict(self.witnesses),
               "depth": self.depth}
        if self.spec is not None:
            out["spec"] = self.spec.to_json()
        return out

    @classmethod
    def from_json(cls, data):
        spec = (KernelSpec.from_json(data["spec"])
                if data.get("spec") is not None else None)
        return cls(beta=BesselIndex.from_json(data["beta"]),
                   P=DiffOp.from_json(data["P"]), Q=DiffOp.from_json(data["Q"]),
                   f=Poly.from_json("z", data["f"]),
                   g=Poly.from_json("z", data["g"]),
                   h=Poly.from_json("y", data["h"]),
                   witnesses=dict(data["witnesses"]),
                   depth=int(data["depth"]), spec=spec)


def _eigenvalue_pattern(f: Poly, g: Poly, N: int) -> Poly:
    fg = f * g
    if not fg.is_power_pattern(N):
        raise CertificationError(
            "f*g is not a polynomial in z^N; eigenvalue pattern broken")
    return fg.contract_arg_power(N, var="y")


def certify(beta: BesselIndex, P: DiffOp, Q: DiffOp, f: Poly, g: Poly,
            spec: KernelSpec = None, depth=None) -> DarbouxCertificate:
    """Verify every exactness witness; raise a named failure otherwise."""
    witnesses = {}
    if g.is_zero or g.leading != 1:
        raise CertificationError("g is not monic")
    if f.is_zero or f.leading != 1:
        raise CertificationError("f is not monic")
    h = _eigenvalue_pattern(f, g, beta.N)
    witnesses["eigenvalue_pattern"] = True

    lbeta = bessel_op(beta, P.var)
    target = poly_at_operator(h, lbeta)
    product = Q * P
    if product != target:
        raise CertificationError("remainder nonzero: Q*P differs from h(L)")
    witnesses["product"] = True
    dual = Q.convert(DFORM) * P.convert(DFORM)
    if dual != target:
        raise CertificationError("product disagrees between coordinate forms")
    witnesses["product_dual_form"] = True

    n, pks = _structured(P, beta.N)
    if n != P.order or g.degree != n:
        raise CertificationError(
            f"degree of g ({g.degree}) does not match the order of P ({n})")
    witnesses["shape"] = True

    K = depth if depth is not None else 2 * (h.degree * beta.N + n) + 8
    if spec is not None:
        val = validate_spec(spec)
        if val.g != g or val.f != f or val.h != h:
            raise CertificationError(
                "certificate polynomials do not match the kernel group counts")
        witnesses["counts"] = True
        _, cleared = common_denominator(P.convert(DFORM))
        for q in val.elements_at_zero:
            if not q.apply(cleared).is_zero:
                raise CertificationError(
                    f"kernel element {q} is not annihilated by P")
        for lam, avec, _d in val.point_groups:
            for branch in range(beta.N):
                jet = wave_jet_at(beta, lam, branch, len(avec) - 1, K)
                element = None
                for k, c in enumerate(avec):
                    if not c:
                        continue
                    piece = jet.series[k].scale(c)
                    element = piece if element is None else element + piece
                if element.apply(cleared).coeffs:
                    raise CertificationError(
                        f"orbit kernel element at {lam} (branch {branch}) "
                        f"is not annihilated by P")
        witnesses["kernel"] = True
    psi = bessel_wave(beta, K)
    image = psi.apply(P, "x")
    xlo, xhi, zlo, zhi = image.box
    for (i, j), c in image.coeffs.items():
        if i > 0 and c:
            raise CertificationError(
                f"normalization: positive power x^{i} survives in P psi")
    row0 = image.x_row(0)
    if zhi < g.degree:
        raise CertificationError("window too small to read off g; raise depth")
    for j in range(zlo, zhi + 1):
        want = g.coeff(j) if 0 <= j <= g.degree else Fraction(0)
        if row0.get(j, Fraction(0)) != want:
            raise CertificationError(
                f"normalization: x^0 row of P psi is not g at z^{j}")
    witnesses["normalization"] = True

    return DarbouxCertificate(beta=beta, P=P, Q=Q, f=f, g=g, h=h,
                              witnesses=witnesses, depth=K, spec=spec)


def build_certificate(spec: KernelSpec, depth=None) -> DarbouxCertificate:
    """End-to-end: validate, build P, divide for Q, certify everything."""
    val = validate_spec(spec)
    if spec.at_points and not spec.is_log_free:
        raise UnsupportedInputError(
            "log-bearing conditions are only supported for kernels at 0")
    P, Q = _solve_annihilator(val, depth=depth)
    return certify(spec.beta, P.convert(DEL), Q.convert(DEL),
                   val.f, val.g, spec=spec, depth=depth)


def kernel_matrix(spec: KernelSpec):
    """(d, gammas, rows) of the flat exponent description of a log-free
    monomial spec; needed by the closed-form route."""
    if not (spec.is_monomial and spec.is_log_free):
        raise UnsupportedInputError("flat form needs a log-free monomial spec")
    beta = spec.beta
    d = 1
    for g in spec.at_zero:
        d = max(d, len(g.b))
    gammas = beta.power(d)
    if len(set(gammas)) != len(gammas):
        raise UnsupportedInputError(
            "repeated ladder exponents; the flat form needs them distinct")
    index = {g: i for i, g in enumerate(gammas)}
    rows = []
    for g in spec.at_zero:
        row = [Fraction(0)] * len(gammas)
        b0 = beta.beta[g.base_index]
        for k, brow in enumerate(g.b):
            if brow[0]:
                row[index[b0 + k * beta.N]] = brow[0]
        rows.append(row)
    return d, gammas, rows

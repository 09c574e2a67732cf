"""The x <-> z involution, bispectral pair assembly and spectral algebras.

Given a certified factorization Q P = h(L) over a Bessel-type base, the
involuted factors act on the spectral side.  They are assembled from the
cleared coefficient presentations

    P = (x^n p_n(x^N))^{-1} sum_k p_k(x^N) D^k
    Q = sum_s D^s q_s(x^N) (x^m q_m(x^N))^{-1}

as P_b = g(x)^{-1} sum_k D^k p_k(L) and Q_b = sum_s q_s(L) D^s f(x)^{-1},
then reduced to minimal representatives by peeling base-operator factors
and normalizing the spectral polynomials monic.  Everything is exact; the
pair is re-certified on the involuted side and optionally checked against
truncated series identities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .bessel import BesselIndex, bessel_op, bessel_wave, exp_wave, ladder_op
from .darboux import (DarbouxCertificate, _structured, certify,
                      validate_spec)
from .errors import (AssociationError, RankDeficiencyError, ShapeError,
                     UsageError, VerificationError)
from .poly import Poly, RationalFunction
from .weyl import DEL, DFORM, DiffOp, poly_at_operator


def _monicized(op: DiffOp, poly: Poly):
    lead = poly.leading
    if lead == 1:
        return op, poly
    return op.scale(Fraction(1) / lead), poly.scale(1 / lead)


def _peel_right(op: DiffOp, poly: Poly, beta: BesselIndex):
    """Remove trailing base-operator factors: op = op' L, poly = z^N poly'."""
    lbeta = bessel_op(beta, op.var)
    zN = Poly.monomial("z", beta.N)
    while poly.valuation() >= beta.N:
        quot, rem = op.left_divide(lbeta)
        if not rem.is_zero:
            break
        op = quot
        poly = poly // zN
    return op, poly


def _peel_left(op: DiffOp, poly: Poly, beta: BesselIndex):
    """Remove leading base-operator factors: op = L op', poly = z^N poly'."""
    lbeta = bessel_op(beta, op.var)
    zN = Poly.monomial("z", beta.N)
    while poly.valuation() >= beta.N:
        quot, rem = op.right_divide(lbeta)
        if not rem.is_zero:
            break
        op = quot
        poly = poly // zN
    return op, poly


def involute_P(P: DiffOp, g: Poly, beta: BesselIndex):
    """(P_b, g_b): the involuted left factor and its spectral polynomial."""
    n, pks = _structured(P, beta.N)
    lbeta = bessel_op(beta, P.var)
    dee = DiffOp.dee(P.var)
    out = DiffOp.zero(P.var, DFORM)
    for k, p in enumerate(pks):
        if p.is_zero:
            continue
        out = out + (dee ** k) * poly_at_operator(p, lbeta)
    gx = Poly(P.var, g.coeffs)
    out = out.lmul_fn(RationalFunction(Poly.const(P.var, 1), gx))
    g_b = pks[-1].expand_arg_power(beta.N, var="z").shift_mul(n)
    out, g_b = _peel_right(out, g_b, beta)
    out, g_b = _monicized(out, g_b)
    return out.convert(DEL), g_b


def _right_form(Q: DiffOp):
    """Coefficients e_s with Q = sum_s D^s e_s(x), by exact peeling."""
    d = Q.convert(DFORM)
    var = d.var
    rem = d
    es = [None] * (d.order + 1)
    for s in range(d.order, -1, -1):
        c = rem.coeff(s)
        es[s] = c
        if not c.is_zero:
            rem = rem - DiffOp.monomial(var, DFORM, s) * DiffOp.mult(var, c, DFORM)
        if not rem.is_zero and rem.order >= s:
            raise ShapeError("right-form extraction failed")
    if not rem.is_zero:
        raise ShapeError("right-form extraction failed")
    return es


def involute_Q(Q: DiffOp, f: Poly, beta: BesselIndex):
    """(Q_b, f_b): the involuted right factor and its spectral polynomial."""
    es = _right_form(Q)
    m = len(es) - 1
    var = Q.var
    xm = RationalFunction(Poly.monomial(var, m))
    parts = []
    for e in es:
        r = e * xm
        if not (r.num.is_power_pattern(beta.N) and r.den.is_power_pattern(beta.N)):
            raise ShapeError(
                f"right coefficient {e} does not reduce to the x^{beta.N} form")
        parts.append((r.num.contract_arg_power(beta.N, var="y"),
                      r.den.contract_arg_power(beta.N, var="y")))
    den = Poly.const("y", 1)
    for _, dd in parts:
        gcd = Poly.gcd(den, dd)
        den = den * (dd // gcd)
    qs = [num * (den // dd) for num, dd in parts]
    content = Poly.zero("y")
    for p in qs:
        content = Poly.gcd(content, p) if not content.is_zero else p
    if content.degree > 0:
        qs = [p // content for p in qs]

    lbeta = bessel_op(beta, var)
    dee = DiffOp.dee(var)
    fx = Poly(var, f.coeffs)
    inv_f = DiffOp.mult(var, RationalFunction(Poly.const(var, 1), fx), DFORM)
    out = DiffOp.zero(var, DFORM)
    for s, q in enumerate(qs):
        if q.is_zero:
            continue
        out = out + poly_at_operator(q, lbeta) * (dee ** s) * inv_f
    f_b = qs[-1].expand_arg_power(beta.N, var="z").shift_mul(m)
    out, f_b = _peel_left(out, f_b, beta)
    out, f_b = _monicized(out, f_b)
    return out.convert(DEL), f_b


@dataclass(frozen=True)
class BispectralPair:
    """Operators L (in x) and Lambda (in z) with polynomial eigenvalues.

    h and theta are stored in the composite argument: the eigenvalue
    identities read L psi = h(z^N) psi and Lambda psi = theta(x^N) psi.
    """

    beta: BesselIndex
    L: DiffOp
    Lambda: DiffOp
    h: Poly
    theta: Poly
    P_b: DiffOp
    Q_b: DiffOp
    f_b: Poly
    g_b: Poly
    certificate: DarbouxCertificate
    b_witnesses: dict

    def to_json(self):
        return {"beta": self.beta.to_json(),
                "L": self.L.to_json(), "Lambda": self.Lambda.to_json(),
                "h": self.h.to_json(), "theta": self.theta.to_json(),
                "P_b": self.P_b.to_json(), "Q_b": self.Q_b.to_json(),
                "f_b": self.f_b.to_json(), "g_b": self.g_b.to_json(),
                "provenance": self.certificate.to_json(),
                "b_witnesses": dict(self.b_witnesses)}

    @classmethod
    def from_json(cls, data):
        cert = DarbouxCertificate.from_json(data["provenance"])
        return cls(beta=cert.beta,
                   L=DiffOp.from_json(data["L"]),
                   Lambda=DiffOp.from_json(data["Lambda"]),
                   h=Poly.from_json("y", data["h"]),
                   theta=Poly.from_json("y", data["theta"]),
                   P_b=DiffOp.from_json(data["P_b"]),
                   Q_b=DiffOp.from_json(data["Q_b"]),
                   f_b=Poly.from_json("z", data["f_b"]),
                   g_b=Poly.from_json("z", data["g_b"]),
                   certificate=cert,
                   b_witnesses=dict(data["b_witnesses"]))


def make_pair(cert: DarbouxCertificate) -> BispectralPair:
    """Assemble (L, Lambda, h, theta) and re-certify both sides."""
    beta = cert.beta
    certify(beta, cert.P, cert.Q, cert.f, cert.g, spec=cert.spec)
    P_b, g_b = involute_P(cert.P, cert.g, beta)
    Q_b, f_b = involute_Q(cert.Q, cert.f, beta)
    bcert = certify(beta, P_b, Q_b, f_b, g_b)
    L = cert.P * cert.Q
    lam_x = P_b * Q_b
    theta_x = Poly(P_b.var, (f_b * g_b).coeffs)
    if not theta_x.is_power_pattern(beta.N):
        raise ShapeError("f_b * g_b is not a polynomial in x^N")
    theta = theta_x.contract_arg_power(beta.N, var="y")
    return BispectralPair(beta=beta, L=L.convert(DEL),
                          Lambda=lam_x.relabel("z").convert(DEL),
                          h=cert.h, theta=theta,
                          P_b=P_b, Q_b=Q_b, f_b=f_b, g_b=g_b,
                          certificate=cert, b_witnesses=bcert.witnesses)


def verify_pair(pair: BispectralPair, depth: int = None) -> dict:
    """Check both eigenvalue identities on truncated series windows.

    The identities are checked in cleared form: with S = P psi (so that
    g(z) S is the wave function times g), L S = h(z^N) S; and with
    T = P_b psi, Lambda(x) T = theta(z^N) T after the variable swap.
    A nonzero residual raises VerificationError.
    """
    beta = pair.beta
    n = pair.certificate.P.order
    if depth is None:
        depth = 2 * (pair.h.degree * beta.N + n) + 8
    psi = bessel_wave(beta, depth)
    h_z = pair.h.expand_arg_power(beta.N, var="z")
    theta_z = pair.theta.expand_arg_power(beta.N, var="z")

    s = psi.apply(pair.certificate.P, "x")
    lhs = s.apply(pair.L, "x")
    rhs = s.mul_poly(h_z, axis=1)
    res1 = lhs - rhs
    if any(res1.coeffs.values()):
        raise VerificationError("L psi - h(z^N) psi has a nonzero residual")

    t = psi.apply(pair.P_b, "x")
    lhs2 = t.apply(pair.Lambda.relabel("x"), "x")
    rhs2 = t.mul_poly(theta_z, axis=1)
    res2 = lhs2 - rhs2
    if any(res2.coeffs.values()):
        raise VerificationError(
            "Lambda psi - theta(x^N) psi has a nonzero residual")

    return {"depth": depth,
            "window_L": list(res1.box),
            "window_Lambda": list(res2.box),
            "residuals": [0, 0]}


# ---------------------------------------------------------------------------
# closed forms for log-free monomial kernels
# ---------------------------------------------------------------------------


def closed_form_monomial(beta: BesselIndex, gammas, rows) -> dict:
    """All eight certified objects from subset sums over the kernel matrix.

    For a log-free kernel basis f_k = sum_i a_ki x^{gamma_i} the factors and
    their involutions are finite alternating sums over column subsets I with
    nonsingular minors; this is an independent route that must agree with
    the division pipeline exactly.
    """
    gammas = tuple(Fraction(g) for g in gammas)
    rows = [list(map(Fraction, r)) for r in rows]
    n = len(rows)
    dN = len(gammas)
    if n == 0 or dN % beta.N:
        raise UsageError("bad kernel matrix shape")
    d = dN // beta.N
    # trim the ladder embedding to the deepest rung actually used, so the
    # eigenvalue depth is minimal and matches the division pipeline
    used = 1 + max(i % d for row in rows for i, c in enumerate(row) if c)
    if used < d:
        keep = [s * d + k for s in range(beta.N) for k in range(used)]
        gammas = tuple(gammas[i] for i in keep)
        rows = [[row[i] for i in keep] for row in rows]
        d = used
        dN = len(gammas)
    subsets = []
    for comb in itertools.combinations(range(dN), n):
        minor = _det([[rows[k][i] for i in comb] for k in range(n)])
        if not minor:
            continue
        delta = Fraction(1)
        for r in range(n):
            for s in range(r + 1, n):
                delta *= gammas[comb[r]] - gammas[comb[s]]
        subsets.append((comb, minor * delta))
    if not subsets:
        raise RankDeficiencyError("every maximal minor vanishes")
    sums = {comb: sum(gammas[i] for i in comb) for comb, _ in subsets}
    smin = min(sums.values())
    pI = {}
    for comb, _ in subsets:
        p = sums[comb] - smin
        step = p / beta.N
        if step.denominator != 1 or p < 0:
            raise UsageError("subset offsets are not multiples of N")
        pI[comb] = int(p)

    var = "x"
    w_terms = {}
    for comb, c in subsets:
        w_terms[pI[comb]] = w_terms.get(pI[comb], Fraction(0)) + c
    wpoly = Poly(var, [w_terms.get(k, Fraction(0))
                       for k in range(max(w_terms) + 1)])
    inv_w = RationalFunction(Poly.const(var, 1), wpoly)

    P = DiffOp.zero(var, DFORM)
    for comb, c in subsets:
        term = ladder_op([gammas[i] for i in comb], var)
        P = P + term.lmul_fn(Poly.monomial(var, pI[comb], c))
    P = P.lmul_fn(inv_w)

    Q = DiffOp.zero(var, DFORM)
    for comb, c in subsets:
        complement = [i for i in range(dN) if i not in comb]
        term = ladder_op([gammas[i] - n for i in complement], var)
        xp = DiffOp.mult(var, Poly.monomial(var, pI[comb], c), DFORM)
        Q = Q + term * xp
    Q = Q * DiffOp.mult(var, inv_w, DFORM)

    lbeta = bessel_op(beta, var)
    P_b = DiffOp.zero(var, DFORM)
    Q_b = DiffOp.zero(var, DFORM)
    for comb, c in subsets:
        power = lbeta ** (pI[comb] // beta.N)
        left = ladder_op([gammas[i] for i in comb], var)
        complement = [i for i in range(dN) if i not in comb]
        right = ladder_op([gammas[i] - n for i in complement], var)
        P_b = P_b + (left * power).scale(c)
        Q_b = Q_b + (power * right).scale(c)

    g = Poly.monomial("z", n)
    f = Poly.monomial("z", dN - n)
    h = Poly.monomial("y", d)
    spectral = Poly("z", [w_terms.get(k, Fraction(0))
                          for k in range(max(w_terms) + 1)])
    g_b = spectral.shift_mul(n)
    f_b = spectral.shift_mul(dN - n)
    P_b, g_b = _peel_right(P_b, g_b, beta)
    P_b, g_b = _monicized(P_b, g_b)
    Q_b, f_b = _peel_left(Q_b, f_b, beta)
    Q_b, f_b = _monicized(Q_b, f_b)
    return {"P": P.convert(DEL), "Q": Q.convert(DEL),
            "P_b": P_b.convert(DEL), "Q_b": Q_b.convert(DEL),
            "f": f, "g": g, "f_b": f_b, "g_b": g_b, "h": h}


def _det(matrix):
    m = [row[:] for row in matrix]
    size = len(m)
    det = Fraction(1)
    for c in range(size):
        pivot = None
        for r in range(c, size):
            if m[r][c]:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, size):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


# ---------------------------------------------------------------------------
# spectral algebra and rank
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralAlgebraReport:
    degrees: tuple          # all eigen-polynomial degrees found up to the bound
    generators: tuple       # minimal additive generators of the found set
    rank: int               # gcd of the found degrees (0 when none found)
    bound: int
    generic_to_bound: bool  # only multiples of N were found

    def to_json(self):
        return {"degrees": list(self.degrees),
                "generators": list(self.generators),
                "rank": self.rank, "bound": self.bound,
                "generic_to_bound": self.generic_to_bound}


def _semigroup_generators(degrees):
    gens = []
    reachable = {0}
    for dgr in sorted(degrees):
        if dgr not in reachable:
            gens.append(dgr)
        limit = max(degrees)
        frontier = set(reachable)
        for g in gens:
            for base in sorted(frontier):
                v = base
                while v <= limit:
                    reachable.add(v)
                    v += g
            frontier = set(reachable)
    return tuple(gens)


def _report(degrees, bound, N):
    degrees = tuple(sorted(degrees))
    if not degrees:
        return SpectralAlgebraReport((), (), 0, bound, True)
    rank = 0
    for dgr in degrees:
        rank = _gcd(rank, dgr)
    return SpectralAlgebraReport(degrees, _semigroup_generators(degrees),
                                 rank, bound,
                                 all(dgr % N == 0 for dgr in degrees))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def spectral_algebra(cert: DarbouxCertificate, degree_bound: int) -> SpectralAlgebraReport:
    """Degrees t <= bound for which some monic u in Q[z^N] of degree t maps
    the kernel of P into itself; exact, by division certificates (or by
    finite lattice algebra for log-free monomial kernels, cross-checked)."""
    beta = cert.beta
    if cert.spec is not None and cert.spec.is_monomial and cert.spec.is_log_free:
        found = _lattice_degrees(cert, degree_bound)
    else:
        found = _division_degrees(cert, degree_bound)
    return _report(found, degree_bound, beta.N)


def _division_degrees(cert: DarbouxCertificate, degree_bound: int):
    """u(L) ker P inside ker P iff P u(L) is left-divisible by P."""
    beta = cert.beta
    lbeta = bessel_op(beta, cert.P.var)
    P = cert.P
    remainders = []
    power = DiffOp.identity(cert.P.var, DEL)
    found = []
    for t in range(0, degree_bound // beta.N + 1):
        if t:
            power = power * lbeta
        remainders.append((P * power).left_divide(P)[1])
        if t == 0:
            continue
        if _remainder_combination_exists(remainders[:t], remainders[t]):
            found.append(t * beta.N)
    return found


def _remainder_combination_exists(lower, top):
    """Is -top a rational combination of the lower remainders?"""
    cols = len(lower)
    entries = {}
    polys = []
    for idx, op in enumerate(lower + [top]):
        a = op.convert(DEL)
        den = Poly.const(a.var, 1)
        for c in a.coeffs:
            g = Poly.gcd(den, c.den)
            den = den * (c.den // g)
        cleared = [(k, (c * RationalFunction(den)).as_poly())
                   for k, c in enumerate(a.coeffs)]
        polys.append((den, cleared))
    # common denominator across all operators, per derivative order
    wall = Poly.const("x", 1)
    for den, _ in polys:
        g = Poly.gcd(wall, den)
        wall = wall * (den // g)
    rows = {}
    for idx, (den, cleared) in enumerate(polys):
        lift = wall // den
        for k, p in cleared:
            q = p * lift
            for deg, c in enumerate(q.coeffs):
                if c:
                    rows.setdefault((k, deg), [Fraction(0)] * (cols + 1))
                    rows[(k, deg)][idx] = c
    if not rows:
        return True
    matrix = []
    rhs = []
    for key in sorted(rows):
        matrix.append(rows[key][:cols])
        rhs.append(-rows[key][cols])
    return linalg.solve(matrix, rhs) is not None


def _lattice_degrees(cert: DarbouxCertificate, degree_bound: int):
    """Finite linear algebra on the exponent lattice of a monomial kernel."""
    beta = cert.beta
    val = validate_spec(cert.spec)
    elements = list(val.elements_at_zero)
    n = len(elements)
    lbeta = bessel_op(beta)
    found = []
    for t in range(1, degree_bound // beta.N + 1):
        # images of each element under L^i, i = 0..t
        images = []
        for q in elements:
            row = [q]
            for _ in range(t):
                row.append(row[-1].apply(lbeta))
            images.append(row)
        keys = sorted({key for row in images for img in row
                       for key, _ in img.items()})
        kidx = {key: i for i, key in enumerate(keys)}
        ncols = (t) + n * n   # unknown v_0..v_{t-1} plus combination coeffs
        matrix = []
        rhs = []
        for e in range(n):
            for key in keys:
                row = [Fraction(0)] * ncols
                for i in range(t):
                    row[i] = images[e][i].terms.get(key, Fraction(0))
                for l in range(n):
                    row[t + e * n + l] = -elements[l].terms.get(key, Fraction(0))
                matrix.append(row)
                rhs.append(-images[e][t].terms.get(key, Fraction(0)))
        if linalg.solve(matrix, rhs) is not None:
            found.append(t * beta.N)
    return found


def bessel_plane_report(beta: BesselIndex, degree_bound: int,
                        depth: int = None) -> SpectralAlgebraReport:
    """Eigen-polynomial degrees of the bare plane, certified by commutators.

    A degree-D candidate is a monic constant-coefficient D-polynomial p with
    x^{-D} p acting by z^D on the wave profile; candidates are solved from
    the truncated profile and accepted only when [x^{-D} p(D), L] = 0 holds
    exactly.
    """
    if depth is None:
        depth = 4 * degree_bound + 16
    profile = exp_wave(beta, depth)
    lbeta = bessel_op(beta)
    found = []
    for deg in range(1, degree_bound + 1):
        sol = _profile_eigen_poly(profile, deg)
        if sol is None:
            continue
        candidate = ladder_op_from_poly(sol, deg)
        commutator = candidate * lbeta - lbeta * candidate
        if commutator.is_zero:
            found.append(deg)
    return _report(found, degree_bound, beta.N)


def ladder_op_from_poly(p: Poly, deg: int, var="x") -> DiffOp:
    """x^{-deg} p(D) as an operator."""
    xl = Poly.monomial(var, deg)
    coeffs = [RationalFunction(Poly.const(var, c), xl) for c in p.coeffs]
    return DiffOp(var, DFORM, coeffs)


def _profile_eigen_poly(profile, deg):
    """Monic p with p(D + w) t(w) = w^deg t(w) on the window, if any.

    The conjugated action on the bare profile is u -> w u + D u per power;
    after j steps the valid window is [lo + j, j].
    """
    lo, _hi = profile.box
    powers = [dict(profile.coeffs)]
    blo = lo
    for _ in range(deg):
        prev = powers[-1]
        nxt = {}
        for d, c in prev.items():
            nxt[d + 1] = nxt.get(d + 1, Fraction(0)) + c
            if d:
                nxt[d] = nxt.get(d, Fraction(0)) + d * c
        blo += 1
        powers.append({d: v for d, v in nxt.items() if d >= blo and v})
    target = {d + deg: c for d, c in profile.coeffs.items()}
    matrix = []
    rhs = []
    for d in range(lo + deg, deg + 1):
        row = [powers[j].get(d, Fraction(0)) for j in range(deg)]
        matrix.append(row)
        rhs.append(target.get(d, Fraction(0)) - powers[deg].get(d, Fraction(0)))
    sol = linalg.solve(matrix, rhs)
    if sol is None:
        return None
    return Poly("y", sol + [Fraction(1)])


# ---------------------------------------------------------------------------
# shifted weight bookkeeping for monomial kernels
# ---------------------------------------------------------------------------


def beta_prime(beta: BesselIndex, gammas, rows):
    """The shifted weight vector attached to a log-free monomial kernel.

    Each kernel row is associated to the unique admissible base weight of
    its residue class (smallest value, then smallest index, when the class
    offers several; the relabeling freedom is reported).  The entry counts
    shift the weights by n_s N - n.
    """
    gammas = tuple(Fraction(g) for g in gammas)
    rows = [list(map(Fraction, r)) for r in rows]
    n = len(rows)
    counts = [0] * beta.N
    ambiguous = False
    for row in rows:
        support = [gammas[i] for i, c in enumerate(row) if c]
        if not support:
            raise AssociationError("empty kernel row")
        candidates = []
        for s, b in enumerate(beta.beta):
            if all(((g - b) / beta.N).denominator == 1 and g >= b
                   for g in support):
                candidates.append((b, s))
        if not candidates:
            raise AssociationError(
                f"row with exponents {support} matches no base weight")
        candidates.sort()
        if len(candidates) > 1:
            ambiguous = True
        counts[candidates[0][1]] += 1
    prime = tuple(b + counts[s] * beta.N - n for s, b in enumerate(beta.beta))
    return prime, {"counts": counts, "ambiguous": ambiguous}

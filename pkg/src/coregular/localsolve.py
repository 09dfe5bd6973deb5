"""Local solubility of genus-one models, local quotients, mod-p^2 classes.

All decisions are exact: insolubility comes out of a complete valuation
descent whose depth is bounded by the discriminant valuation, real
solubility uses Sturm sequences, and Hensel certificates carry explicit
slack.  Exhausted precision raises, it never becomes a verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .covariants import covariant_cubics, covariant_quartics
from .invariants import disc_binary_quartic, discriminant, eval_terms, tables
from .polyring import PolyRing, poly_eval, poly_partial
from .reps import FAMILY_COEFFS
from .rings import QQ, is_prime, valuation
from .sections import EllipticModel
from .tensors import Tensor
from .weier import (Curve, factorize, family_curve, three_division_poly,
                    two_torsion_cubic)


class PrecisionExhausted(RuntimeError):
    """The certified search ran out of its valuation budget."""


@dataclass(frozen=True)
class PAdicContext:
    p: int
    precision: int = 0  # 0 = derive the default v_p(disc) + 6 per model

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.precision < 0:
            raise ValueError("precision must be >= 0")


# ---------------------------------------------------------------------------
# squares in Q_p, polynomial scaffolding

def is_square_qp(x, p: int) -> bool:
    q = Fraction(x)
    if q == 0:
        return True
    v = valuation(q, p)
    if v % 2:
        return False
    u = q / Fraction(p) ** v
    num = u.numerator
    den = u.denominator
    if p == 2:
        return (num * pow(den, -1, 8)) % 8 == 1
    r = (num * pow(den, p - 2, p)) % p
    return pow(r, (p - 1) // 2, p) == 1


def _poly_eval_int(g, x):
    acc = 0
    for c in reversed(g):
        acc = acc * x + c
    return acc


def _content(g):
    c = 0
    for x in g:
        c = math.gcd(c, abs(x))
    return c if c else 1


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _poly_shift_scale(g, r, p):
    """g(r + p t) as an integer polynomial in t."""
    # first shift by r, then scale t -> p t
    n = len(g) - 1
    shifted = list(g)
    # Taylor shift via Horner on coefficients
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            shifted[j] += r * shifted[j + 1]
    return [shifted[i] * p ** i for i in range(n + 1)]


# ---------------------------------------------------------------------------
# z^2 = quartic over Q_p

def _zp_square_value_soluble(g, c, p, depth):
    """Is c*g(x) a square in Q_p for some x in Z_p?  g primitive."""
    if depth < 0:
        raise PrecisionExhausted("quartic descent exceeded its depth budget")
    if p == 2:
        for x in range(8):
            if is_square_qp(c * _poly_eval_int(g, x), 2):
                return True
        residues = [r for r in range(2)
                    if _poly_eval_int(g, r) % 2 == 0]
    else:
        residues = []
        for x in range(p):
            val = c * _poly_eval_int(g, x)
            if is_square_qp(val, p):
                return True
            if _poly_eval_int(g, x) % p == 0:
                residues.append(x)
    for r in residues:
        gp = [x % p for x in g]
        # derivative mod p at r
        dv = sum(i * g[i] * pow(r, i - 1, p) if i else 0
                 for i in range(1, len(g))) % p
        if dv % p != 0:
            return True  # simple Z_p root of g: values near it hit squares
        g1 = _poly_shift_scale(g, r, p)
        m = _vp_int(_content(g1), p)
        g1 = [x // p ** m for x in g1]
        if _zp_square_value_soluble(g1, c * p ** (m % 2), p, depth - 1):
            return True
    return False


def qp_soluble_quartic(coeffs, p: int, ctx: PAdicContext = None) -> bool:
    """Does z^2 = f(w1, w2) have a Q_p point (f the binary quartic)?"""
    qs = [Fraction(x) for x in coeffs]
    den = 1
    for q in qs:
        den = den * q.denominator // math.gcd(den, q.denominator)
    ints = [int(q * den * den) for q in qs]  # z^2 = d^2 f is the same model
    e = _content(ints)
    ints = [x // e for x in ints]
    disc = disc_binary_quartic([Fraction(x) for x in ints], QQ)
    if disc == 0:
        raise ValueError("degenerate quartic model")
    budget = (ctx.precision if ctx and ctx.precision
              else valuation(disc, p) + 6)
    g1 = list(reversed(ints))          # f(x, 1) ascending in x
    if _zp_square_value_soluble(g1, e, p, budget):
        return True
    # the chart w1 = 1, w2 = p t
    g2 = [ints[i] * p ** i for i in range(5)]
    m = _vp_int(_content(g2), p)
    g2 = [x // p ** m for x in g2]
    return _zp_square_value_soluble(g2, e * p ** (m % 2), p, budget)


# ---------------------------------------------------------------------------
# plane cubics over Q_p

def _cubic_int(coeffs):
    qs = [Fraction(x) for x in coeffs]
    den = 1
    for q in qs:
        den = den * q.denominator // math.gcd(den, q.denominator)
    ints = [int(q * den) for q in qs]
    e = _content(ints)
    return [x // e for x in ints]


_TC_MONS = None


def _tc_mons():
    global _TC_MONS
    if _TC_MONS is None:
        from .reps import rep
        _TC_MONS = rep("ternary-cubic").indices
    return _TC_MONS


def _eval_cubic_int(c, pt):
    acc = 0
    for ci, m in zip(c, _tc_mons()):
        t = ci
        for x, e in zip(pt, m):
            t *= x ** e
        acc += t
    return acc


def _cubic_partials_int(c):
    parts = []
    for var in range(3):
        d = {}
        for ci, m in zip(c, _tc_mons()):
            if m[var]:
                mm = list(m)
                mm[var] -= 1
                mm = tuple(mm)
                d[mm] = d.get(mm, 0) + ci * m[var]
        parts.append(d)
    return parts


def _eval_mons_int(d, pt):
    acc = 0
    for m, c in d.items():
        t = c
        for x, e in zip(pt, m):
            t *= x ** e
        acc += t
    return acc


def _affine_from_cubic(c, chart):
    """Dehomogenize: x_chart = 1; dict in the two other variables."""
    others = [v for v in range(3) if v != chart]
    out = {}
    for ci, m in zip(c, _tc_mons()):
        key = (m[others[0]], m[others[1]])
        out[key] = out.get(key, 0) + ci
    return out


def _aff_eval(g, u, v):
    acc = 0
    for (a, b), c in g.items():
        acc += c * u ** a * v ** b
    return acc


def _aff_partial(g, var):
    out = {}
    for (a, b), c in g.items():
        e = (a, b)[var]
        if e:
            key = (a - 1, b) if var == 0 else (a, b - 1)
            out[key] = out.get(key, 0) + c * e
    return out


def _aff_shift_scale(g, a, b, p):
    """g(a + p u, b + p v) expanded exactly."""
    out = {}
    for (i, j), c in g.items():
        # (a + p u)^i (b + p v)^j
        for s in range(i + 1):
            for t in range(j + 1):
                coef = (c * math.comb(i, s) * math.comb(j, t)
                        * a ** (i - s) * b ** (j - t) * p ** (s + t))
                key = (s, t)
                out[key] = out.get(key, 0) + coef
    return {k: v for k, v in out.items() if v}


def _zp2_cubic_soluble(g, p, depth):
    """Does g(u, v) = 0 have a Z_p^2 solution?  g an integer dict poly."""
    if depth < 0:
        raise PrecisionExhausted("cubic descent exceeded its depth budget")
    gu = _aff_partial(g, 0)
    gv = _aff_partial(g, 1)
    for a in range(p):
        for b in range(p):
            if _aff_eval(g, a, b) % p:
                continue
            if _aff_eval(gu, a, b) % p or _aff_eval(gv, a, b) % p:
                return True  # one-variable Hensel lift
            g1 = _aff_shift_scale(g, a, b, p)
            cont = 0
            for c in g1.values():
                cont = math.gcd(cont, abs(c))
            m = _vp_int(cont, p) if cont else 0
            g1 = {k: c // p ** m for k, c in g1.items()}
            if _zp2_cubic_soluble(g1, p, depth - 1):
                return True
    return False


def qp_soluble_cubic(coeffs, p: int, ctx: PAdicContext = None) -> bool:
    """Does the plane cubic f = 0 have a Q_p point?"""
    ints = _cubic_int(coeffs)
    dp = eval_terms(tables()["ternary-cubic"]["disc_prim"],
                    [Fraction(x) for x in ints], QQ)
    if dp == 0:
        raise ValueError("degenerate cubic model")
    budget = (ctx.precision if ctx and ctx.precision
              else valuation(dp, p) + 6)
    parts = _cubic_partials_int(ints)
    singular = []
    for pt in _p2_fp(p):
        if _eval_cubic_int(ints, pt) % p:
            continue
        chart = max(i for i in range(3) if pt[i] % p)
        others = [v for v in range(3) if v != chart]
        if any(_eval_mons_int(parts[v], pt) % p for v in others):
            return True
        singular.append((pt, chart))
    for pt, chart in singular:
        others = [v for v in range(3) if v != chart]
        g = _affine_from_cubic(ints, chart)
        g1 = _aff_shift_scale(g, pt[others[0]], pt[others[1]], p)
        cont = 0
        for c in g1.values():
            cont = math.gcd(cont, abs(c))
        m = _vp_int(cont, p) if cont else 0
        g1 = {k: c // p ** m for k, c in g1.items()}
        if _zp2_cubic_soluble(g1, p, budget):
            return True
    return False


def _p2_fp(p):
    for y in range(p):
        for z in range(p):
            yield (1, y, z)
    for z in range(p):
        yield (0, 1, z)
    yield (0, 0, 1)


# ---------------------------------------------------------------------------
# real solubility

def _sturm_chain(g):
    """Sturm chain of a rational polynomial (ascending coefficients)."""
    def norm(h):
        while h and h[-1] == 0:
            h.pop()
        return h

    def rem(a, b):
        a = list(a)
        while len(a) >= len(b) > 0:
            f = a[-1] / b[-1]
            d = len(a) - len(b)
            for i in range(len(b)):
                a[d + i] -= f * b[i]
            a = norm(a)
            if not a:
                break
        return a

    chain = [norm([Fraction(c) for c in g])]
    d1 = [i * chain[0][i] for i in range(1, len(chain[0]))]
    chain.append(norm(d1))
    while chain[-1]:
        r = rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if c]


def count_real_roots(g) -> int:
    """Distinct real roots of a rational polynomial (Sturm at +-infinity)."""
    chain = _sturm_chain(g)
    if len(chain) == 1:
        return 0

    def signs_at_inf(sgn):
        out = []
        for c in chain:
            lead = c[-1]
            s = lead if (len(c) - 1) % 2 == 0 or sgn > 0 else -lead
            out.append(1 if s > 0 else -1 if s < 0 else 0)
        return out

    def changes(ss):
        ss = [s for s in ss if s]
        return sum(1 for a, b in zip(ss, ss[1:]) if a != b)

    return changes(signs_at_inf(-1)) - changes(signs_at_inf(1))


def r_soluble(model_kind: str, coeffs) -> bool:
    """False only for negative definite binary quartics (d = 3 is always
    R-soluble)."""
    if model_kind == "cubic":
        return True
    c = [Fraction(x) for x in coeffs]
    if disc_binary_quartic(c, QQ) == 0:
        raise ValueError("degenerate quartic model")
    if c[0] == 0:
        return True  # (1:0) is a zero of the form
    if c[0] > 0:
        return True
    g = list(reversed(c))  # f(x, 1)
    return count_real_roots(g) > 0


# ---------------------------------------------------------------------------
# the local solubility report

@dataclass(frozen=True)
class LocalSolubilityReport:
    real_soluble: bool
    per_prime: dict
    globally_locally_soluble: bool

    def to_json(self):
        return {"real_soluble": self.real_soluble,
                "per_prime": {str(p): ("soluble" if s else "insoluble")
                              for p, s in sorted(self.per_prime.items())},
                "globally_locally_soluble": self.globally_locally_soluble}


def bad_primes(n: Fraction):
    n = abs(Fraction(n))
    num = n.numerator * n.denominator * 6
    return sorted(factorize(num))


def qp_soluble(model_kind: str, coeffs, p: int,
               ctx: PAdicContext = None) -> bool:
    if model_kind == "quartic":
        return qp_soluble_quartic(coeffs, p, ctx)
    return qp_soluble_cubic(coeffs, p, ctx)


def locally_soluble(v: Tensor) -> LocalSolubilityReport:
    """Real and p-adic solubility of the covariant genus-one models.

    All covariant models of a tensor cut out the same curve, so the
    verdicts must agree across them; this is asserted, and the report is
    that of the common curve.
    """
    if v.ring.p is not None:
        raise ValueError("local solubility takes a tensor over ZZ or QQ")
    if v.ring.kind == "exact-integer":
        v = v.map_ring(QQ)
    disc = discriminant(v)
    if disc == 0:
        raise ValueError("degenerate tensor")
    if v.info.d == 2:
        kind = "quartic"
        models = covariant_quartics(v)
    else:
        kind = "cubic"
        models = covariant_cubics(v)
    reals = [r_soluble(kind, m) for m in models]
    assert len(set(reals)) == 1, "covariant models disagree over R"
    per_prime = {}
    for p in bad_primes(disc):
        sols = [qp_soluble(kind, m, p) for m in models]
        assert len(set(sols)) == 1, f"covariant models disagree at {p}"
        per_prime[p] = sols[0]
    ok = reals[0] and all(per_prime.values())
    return LocalSolubilityReport(reals[0], per_prime, ok)


# ---------------------------------------------------------------------------
# p-adic roots of univariate polynomials, with certified approximations

def _qp_roots_integral(g, p, N, depth):
    """Approximations mod p^N of the distinct Z_p-roots of a separable g."""
    if depth < 0:
        raise PrecisionExhausted("root isolation exceeded its depth budget")
    roots = []
    for r in range(p):
        if _poly_eval_int(g, r) % p:
            continue
        dv = sum(i * g[i] * pow(r, i - 1, p) if i else 0
                 for i in range(1, len(g))) % p
        if dv % p:
            roots.append(Fraction(_hensel_lift(g, r, p, N)))
        else:
            g1 = _poly_shift_scale(g, r, p)
            m = _vp_int(_content(g1), p)
            g1 = [x // p ** m for x in g1]
            for sub in _qp_roots_integral(g1, p, N, depth - 1):
                roots.append(r + p * sub)
    return roots


def _hensel_lift(g, r, p, N):
    """Newton-lift a simple mod-p root to mod p^N."""
    x = r
    mod = p
    while mod < p ** N:
        mod = min(mod * mod, p ** N)
        fx = _poly_eval_int(g, x) % mod
        dx = sum(i * g[i] * x ** (i - 1) if i else 0
                 for i in range(1, len(g))) % mod
        inv = pow(dx, -1, mod)
        x = (x - fx * inv) % mod
    return x


def qp_roots(g, p, N=None):
    """Distinct Q_p-roots of a separable rational polynomial, as Fractions
    x = a / p^m with a determined mod p^N."""
    qs = [Fraction(x) for x in g]
    while qs and qs[-1] == 0:
        qs.pop()
    den = 1
    for q in qs:
        den = den * q.denominator // math.gcd(den, q.denominator)
    ints = [int(q * den) for q in qs]
    e = _content(ints)
    ints = [x // e for x in ints]
    disc = _poly_disc(ints)
    if disc == 0:
        raise ValueError("polynomial is not separable")
    vdisc = _vp_int(abs(disc), p)
    if N is None:
        N = vdisc + 8
    budget = vdisc + 3
    roots = list(_qp_roots_integral(ints, p, N, budget))
    # roots with negative valuation: x = 1 / (p u) with u a Z_p root of
    # the reversed and p-rescaled polynomial
    rev = list(reversed(ints))
    scaled = [rev[i] * p ** i for i in range(len(rev))]
    m = _vp_int(_content(scaled), p)
    scaled = [x // p ** m for x in scaled]
    for u in _qp_roots_integral(scaled, p, N + 4, budget):
        if u == 0:
            continue
        roots.append(Fraction(1, 1) / (p * u))
    return roots


def _poly_disc(g):
    """Discriminant of an integer polynomial via the Sylvester resultant."""
    n = len(g) - 1
    if n < 1:
        return 0
    dg = [i * g[i] for i in range(1, len(g))]
    res = _resultant_int(g, dg)
    lead = g[-1]
    # disc = (-1)^(n(n-1)/2) res(g, g') / lead
    sgn = -1 if (n * (n - 1) // 2) % 2 else 1
    return sgn * res // lead


def _resultant_int(f, g):
    """Integer resultant by fraction-free elimination of the Sylvester
    matrix."""
    m = len(f) - 1
    n = len(g) - 1
    size = m + n
    if size == 0:
        return 1
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(f)) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(g)) + [0] * (size - n - 1 - i))
    mat = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for c in range(size):
        piv = None
        for r in range(c, size):
            if mat[r][c]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det *= mat[c][c]
        inv = 1 / mat[c][c]
        for r in range(c + 1, size):
            f2 = mat[r][c] * inv
            if f2:
                for cc in range(c, size):
                    mat[r][cc] -= f2 * mat[c][cc]
    assert det.denominator == 1
    return int(det)


# ---------------------------------------------------------------------------
# local quotient sizes #E(Q_p)/dE(Q_p)

def torsion_size_qp(E: Curve, p: int, d: int) -> int:
    """#E[d](Q_p) by certified p-adic root counting of division polys."""
    if d == 2:
        cub = [Fraction(x) for x in reversed(two_torsion_cubic(E))]
        return 1 + len(qp_roots(cub, p))
    psi = [Fraction(x) for x in reversed(three_division_poly(E))]
    g = [Fraction(x) for x in reversed(two_torsion_cubic(E))]
    count = 0
    res = _resultant_int(_int_poly(psi), _int_poly(g))
    margin = (_vp_int(abs(res), p) if res else 0) + _vp_int(
        abs(_poly_disc(_int_poly(psi))), p) + 8
    for x0 in qp_roots(psi, p, N=margin):
        val = sum(c * x0 ** i for i, c in enumerate(g))
        if val == 0:
            ok = True
        else:
            v = valuation(val, p)
            if v >= margin - 4:
                raise PrecisionExhausted("square test too close to cutoff")
            ok = is_square_qp(val, p)
        if ok:
            count += 2
    return 1 + count


def _int_poly(qs):
    den = 1
    for q in qs:
        den = den * q.denominator // math.gcd(den, q.denominator)
    ints = [int(q * den) for q in qs]
    e = _content(ints)
    return [x // e for x in ints] if e else ints


def local_quotient_size(E, p: int, d: int) -> int:
    """#E(Q_p)/dE(Q_p) = #E[d](Q_p), times d when p = d."""
    if d not in (2, 3):
        raise ValueError("d must be 2 or 3")
    curve = E.curve if isinstance(E, EllipticModel) else E
    if curve.discriminant() == 0:
        raise ValueError("singular model")
    n = torsion_size_qp(curve, p, d)
    return n * (d if p == d else 1)


# ---------------------------------------------------------------------------
# squarefree-condition classification (mod p vs mod p^2 reasons)

_FAMILY_VARS = {f: tuple(n for n in FAMILY_COEFFS[f] if n != "a2pp")
                for f in FAMILY_COEFFS}

_DELTA_POLYS = {}


def _family_delta_poly(family: str):
    if family not in _DELTA_POLYS:
        names = _FAMILY_VARS[family]
        R = PolyRing(len(names))
        gens = {n: R.gen(i) for i, n in enumerate(names)}
        if family == "F2":
            gens["a2pp"] = R.neg(R.add(gens["a2"], gens["a2p"]))
        curve = family_curve(family, gens, R)
        _DELTA_POLYS[family] = curve.discriminant()
    return _DELTA_POLYS[family]


@dataclass(frozen=True)
class SquareClassification:
    target: str        # 'delta', 'delta_prime' or 'alpha'
    kind: str          # 'not-divisible' | 'mod-p-reasons' | 'mod-p2-reasons'


def _classify_poly(poly, names, vals, p):
    g = poly_eval(poly, vals)
    assert g.denominator == 1
    if int(g) % (p * p):
        return "not-divisible"
    for i in range(len(names)):
        d = poly_eval(poly_partial(poly, i), vals)
        if int(d) % p:
            return "mod-p2-reasons"
    return "mod-p-reasons"


def classify_p2(x, p: int):
    """Mod-p vs mod-p^2 classification of p^2 | Delta (or Delta', alpha).

    Returns a dict target -> classification; the targets are Delta for
    most families and the alpha / Delta' pair for F1(2) and F1(3).
    """
    from .invariants import InvariantVector, invariants
    iv = x if isinstance(x, InvariantVector) else invariants(x)
    if iv.ring.p is not None:
        raise ValueError("classification needs integral invariants")
    names = _FAMILY_VARS[iv.family]
    vals = [Fraction(iv.a[n]) for n in names]
    assert all(v.denominator == 1 for v in vals), "integral model required"
    out = {}
    if iv.family in ("F1(2)", "F1(3)"):
        R = PolyRing(len(names))
        gens = {n: R.gen(i) for i, n in enumerate(names)}
        if iv.family == "F1(2)":
            alpha = gens["a4"]
            dprime = R.sub(R.mul(gens["a2"], gens["a2"]),
                           R.mul(R.from_int(4), gens["a4"]))
        else:
            alpha = gens["a3"]
            a1c = R.mul(gens["a1"], R.mul(gens["a1"], gens["a1"]))
            dprime = R.sub(a1c, R.mul(R.from_int(27), gens["a3"]))
        out["alpha"] = _classify_poly(alpha, names, vals, p)
        out["delta_prime"] = _classify_poly(dprime, names, vals, p)
    out["delta"] = _classify_poly(_family_delta_poly(iv.family), names,
                                  vals, p)
    return out

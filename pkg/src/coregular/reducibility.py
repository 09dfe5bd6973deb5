"""Reducibility: rational roots of covariant quartics, rational flexes of
covariant cubics, and the cusp vanishing patterns that force reducibility.

A tensor is reducible when some covariant binary quartic has a rational
linear factor (degree-2 cases) or some covariant ternary cubic has a
rational flex (degree-3 cases).  Over Q the flex search is exact, via
elimination; over F_p everything is an exhaustive scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .covariants import _quartics_raw, covariant_cubics
from .invariants import discriminant, eval_terms, tables
from .reps import rep
from .rings import QQ, GF, Ring, RingError
from .tensors import Tensor, collapse, expand, permute


# ---------------------------------------------------------------------------
# binary quartic rational roots

def eval_binary(c, x, y, R: Ring):
    d = len(c) - 1
    acc = R.zero()
    for i, ci in enumerate(c):
        acc = R.add(acc, R.mul(ci, R.mul(R.pow(x, d - i), R.pow(y, i))))
    return acc


def _divisors(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def quartic_rational_root(c, ring: Ring = None):
    """A projective root of a binary quartic, or None.

    Over a prime field this scans all p+1 points; over Q it is the exact
    rational root theorem on the primitive integer model (roots are
    unchanged by scaling).
    """
    R = ring
    if R is None or R.p is None:
        qs = [Fraction(x) for x in c]
        den = 1
        for q in qs:
            den = den * q.denominator // _gcd(den, q.denominator)
        ints = [int(q * den) for q in qs]
        if ints[0] == 0:
            return (1, 0)
        if ints[4] == 0:
            return (0, 1)
        for r in _divisors(ints[4]):
            for s in _divisors(ints[0]):
                if _gcd(r, s) != 1:
                    continue
                for rr in (r, -r):
                    if eval_binary(ints, rr, s, QQ) == 0:
                        return (rr, s)
        return None
    p = R.p
    if R.is_zero(c[0]):
        return (1, 0)
    for x in range(p):
        if R.is_zero(eval_binary(c, x, R.one(), R)):
            return (x, 1)
    return None


def _gcd(a, b):
    a, b = abs(int(a)), abs(int(b))
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# ternary cubics: evaluation, smoothness, flexes

_TC_MONS = rep("ternary-cubic").indices


def eval_cubic(c, pt, R: Ring):
    acc = R.zero()
    for ci, m in zip(c, _TC_MONS):
        t = ci
        for x, e in zip(pt, m):
            if e:
                t = R.mul(t, R.pow(x, e))
        acc = R.add(acc, t)
    return acc


def cubic_partials(c, R: Ring):
    """Formal partials (valid in any characteristic as polynomials)."""
    parts = []
    for var in range(3):
        out = {}
        for ci, m in zip(c, _TC_MONS):
            if m[var] == 0:
                continue
            mm = list(m)
            mm[var] -= 1
            k = R.mul(R.from_int(m[var]), ci)
            mm = tuple(mm)
            out[mm] = R.add(out.get(mm, R.zero()), k)
        parts.append(out)
    return parts


def _eval_mons(d, pt, R: Ring):
    acc = R.zero()
    for m, ci in d.items():
        t = ci
        for x, e in zip(pt, m):
            if e:
                t = R.mul(t, R.pow(x, e))
        acc = R.add(acc, t)
    return acc


def cubic_is_smooth(c, R: Ring) -> bool:
    """Nonvanishing of the universal (characteristic-free) discriminant."""
    dp = tables()["ternary-cubic"]["disc_prim"]
    return not R.is_zero(eval_terms(dp, c, R))


def restrict_cubic_to_line(c, P, Q, R: Ring):
    """Coefficients (of s^3, s^2 t, s t^2, t^3) of f(sP + tQ)."""
    out = [R.zero()] * 4
    for ci, m in zip(c, _TC_MONS):
        if R.is_zero(ci):
            continue
        # expand prod over variables of (s P_i + t Q_i)^(m_i)
        poly = {0: R.one()}  # t-degree -> coeff
        for var in range(3):
            for _ in range(m[var]):
                new = {}
                for td, cf in poly.items():
                    a = R.mul(cf, P[var])
                    new[td] = R.add(new.get(td, R.zero()), a)
                    b = R.mul(cf, Q[var])
                    new[td + 1] = R.add(new.get(td + 1, R.zero()), b)
                poly = new
        for td, cf in poly.items():
            out[td] = R.add(out[td], R.mul(ci, cf))
    return out


def _p2_points(p: int):
    for y in range(p):
        for z in range(p):
            yield (1, y, z)
    for z in range(p):
        yield (0, 1, z)
    yield (0, 0, 1)


def smooth_point_tangent(c, pt, R: Ring):
    """Tangent direction at a point of f=0, or None if singular there.

    Works chart-wise with affine partials, so it is valid in any
    characteristic (the homogeneous gradient criterion fails at p = 3).
    """
    unit = max(i for i in range(3) if not R.is_zero(pt[i]))
    parts = cubic_partials(c, R)
    grads = [_eval_mons(parts[v], pt, R) for v in range(3)]
    # affine chart partials: d/du (f with x_unit fixed); by Euler the
    # chart gradient is just the other two homogeneous partials
    others = [v for v in range(3) if v != unit]
    gu, gv = grads[others[0]], grads[others[1]]
    if R.is_zero(gu) and R.is_zero(gv):
        return None
    direction = [R.zero()] * 3
    direction[others[0]] = R.neg(gv)
    direction[others[1]] = gu
    return tuple(direction)


def is_flex(c, pt, R: Ring):
    """True if pt is a smooth point of f=0 with triple tangent contact."""
    if not R.is_zero(eval_cubic(c, pt, R)):
        return False
    T = smooth_point_tangent(c, pt, R)
    if T is None:
        return False
    b = restrict_cubic_to_line(c, pt, T, R)
    # b0 = f(pt) = 0; tangency makes b1 = 0; flex iff b2 = 0 too
    return R.is_zero(b[1]) and R.is_zero(b[2])


def cubic_rational_flex(c, ring: Ring):
    """('found', pt) / ('none', None) / ('singular-curve', None).

    Exhaustive over prime fields.  Over Q the flex scheme f = Hess = 0 is
    eliminated exactly (resultants), so 'none' is a certificate, not a
    bounded search.
    """
    R = ring
    if all(R.is_zero(x) for x in c):
        return ("singular-curve", None)
    if not cubic_is_smooth(c, R):
        return ("singular-curve", None)
    if R.p is not None:
        for pt in _p2_points(R.p):
            if is_flex(c, pt, R):
                return ("found", pt)
        return ("none", None)
    for pt in _rational_flex_candidates(c):
        if is_flex(c, pt, QQ):
            return ("found", pt)
    return ("none", None)


def _hessian(c):
    """Hessian cubic of a rational ternary cubic (characteristic zero)."""
    parts = cubic_partials(c, QQ)
    second = [[{} for _ in range(3)] for _ in range(3)]
    for v in range(3):
        for m, cf in parts[v].items():
            for w in range(3):
                if m[w] == 0:
                    continue
                mm = list(m)
                mm[w] -= 1
                mm = tuple(mm)
                second[v][w][mm] = second[v][w].get(mm, Fraction(0)) \
                    + cf * m[w]
    # det of the symmetric matrix of linear forms
    def mul(a, b):
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return out

    def add(a, b, sgn=1):
        out = dict(a)
        for m, cv in b.items():
            out[m] = out.get(m, Fraction(0)) + sgn * cv
        return {m: cv for m, cv in out.items() if cv}

    h = {}
    for perm, sgn in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                      ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
        term = mul(mul(second[0][perm[0]], second[1][perm[1]]),
                   second[2][perm[2]])
        h = add(h, term, sgn)
    return tuple(h.get(m, Fraction(0)) for m in _TC_MONS)


def _poly_in_var(c, var):
    """View a 10-coefficient cubic as a polynomial in x_var with binary
    form coefficients in the other two variables: list by x_var-degree."""
    others = [v for v in range(3) if v != var]
    out = [dict() for _ in range(4)]
    for ci, m in zip(c, _TC_MONS):
        if ci == 0:
            continue
        d = m[var]
        out[d][(m[others[0]], m[others[1]])] = \
            out[d].get((m[others[0]], m[others[1]]), Fraction(0)) + ci
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def _bf_mul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = (m1[0] + m2[0], m1[1] + m2[1])
            out[m] = out.get(m, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _sylvester_resultant(f, g):
    """Resultant of two polynomials with binary-form coefficients."""
    m = len(f) - 1
    n = len(g) - 1
    if m < 0 or n < 0:
        return {}
    size = m + n
    if size == 0:
        return {(0, 0): Fraction(1)}
    rows = []
    for i in range(n):
        row = [dict() for _ in range(size)]
        for j, cf in enumerate(reversed(f)):
            row[i + j] = dict(cf)
        rows.append(row)
    for i in range(m):
        row = [dict() for _ in range(size)]
        for j, cg in enumerate(reversed(g)):
            row[i + j] = dict(cg)
        rows.append(row)
    # fraction-free-ish expansion by minors with memo on column subsets
    from functools import lru_cache

    cols = tuple(range(size))

    def minor(rset, cset):
        if not cset:
            return {(0, 0): Fraction(1)}
        r = rset[0]
        acc = {}
        for k, col in enumerate(cset):
            cell = rows[r][col]
            if not cell:
                continue
            sub = minor(rset[1:], cset[:k] + cset[k + 1:])
            term = _bf_mul(cell, sub)
            sgn = 1 if k % 2 == 0 else -1
            for mm, cv in term.items():
                acc[mm] = acc.get(mm, Fraction(0)) + sgn * cv
        return {mm: cv for mm, cv in acc.items() if cv}

    return minor(tuple(range(size)), cols)


def _binary_rational_roots(bf):
    """Rational projective roots of a binary form given as a term dict."""
    if not bf:
        return None  # identically zero
    deg = max(m[0] + m[1] for m in bf)
    coeffs = [Fraction(0)] * (deg + 1)
    for (a, b), cv in bf.items():
        coeffs[b] = cv
    den = 1
    for q in coeffs:
        den = den * q.denominator // _gcd(den, q.denominator)
    ints = [int(q * den) for q in coeffs]
    roots = set()
    if ints[0] == 0:
        roots.add((1, 0))
    if ints[-1] == 0:
        roots.add((0, 1))
    lead = next((x for x in ints if x != 0), 0)
    last = next((x for x in reversed(ints) if x != 0), 0)
    for r in _divisors(last):
        for s in _divisors(lead):
            if _gcd(r, s) != 1:
                continue
            for rr in (r, -r):
                val = sum(ci * rr ** (deg - i) * s ** i
                          for i, ci in enumerate(ints))
                if val == 0:
                    roots.add((rr, s))
    return roots


def _univariate_rational_roots(coeffs):
    """Rational roots of sum coeffs[i] x^i (exact)."""
    qs = [Fraction(x) for x in coeffs]
    while qs and qs[-1] == 0:
        qs.pop()
    if not qs:
        return None
    den = 1
    for q in qs:
        den = den * q.denominator // _gcd(den, q.denominator)
    ints = [int(q * den) for q in qs]
    roots = set()
    if ints[0] == 0:
        roots.add(Fraction(0))
    lo = next(x for x in ints if x != 0)
    hi = ints[-1]
    for r in _divisors(lo):
        for s in _divisors(hi):
            if _gcd(r, s) != 1:
                continue
            for x in (Fraction(r, s), Fraction(-r, s)):
                if sum(c * x ** i for i, c in enumerate(ints)) == 0:
                    roots.add(x)
    return roots


def _rational_flex_candidates(c):
    """Finite superset of the rational flexes of a smooth rational cubic."""
    h = _hessian(c)
    cands = set()
    degenerate = True
    for var in range(3):
        f = _poly_in_var(c, var)
        g = _poly_in_var(h, var)
        res = _sylvester_resultant(f, g)
        roots = _binary_rational_roots(res)
        if roots is None:
            continue
        degenerate = False
        others = [v for v in range(3) if v != var]
        for (r, s) in roots:
            # common x_var values over this projective (r:s)
            fu = [ _eval_bf(cf, r, s) for cf in f ]
            gu = [ _eval_bf(cf, r, s) for cf in g ]
            vals = set()
            fr = _univariate_rational_roots(fu)
            gr = _univariate_rational_roots(gu)
            if fr is None and gr is None:
                continue
            if fr is None:
                vals = gr
            elif gr is None:
                vals = fr
            else:
                vals = fr & gr
            for xv in vals:
                pt = [Fraction(0)] * 3
                pt[others[0]] = Fraction(r)
                pt[others[1]] = Fraction(s)
                pt[var] = xv
                cands.add(tuple(pt))
            # x_var-leading drop: point at infinity of this chart handled
            # by the other variable orders
    if degenerate:
        raise RingError("flex elimination degenerated in all frames")
    return cands


def _eval_bf(bf, r, s):
    acc = Fraction(0)
    for (a, b), cv in bf.items():
        acc += cv * Fraction(r) ** a * Fraction(s) ** b
    return acc


# ---------------------------------------------------------------------------
# cusp vanishing patterns (sufficient conditions for reducibility)

HYPERCUBE_SETS = {
    "hypercube-(i)": ((0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0), (0, 0, 1, 1)),
    "hypercube-(ii)": ((0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0)),
}

SYM3_SETS = {
    "sym3-(i)": ((0, 0, 0, 0), (0, 0, 0, 1)),
    "sym3-(ii)": ((0, 0, 0, 0), (1, 0, 0, 0)),
}

BIDEG22_SETS = {
    "bideg22-(i)": (((2, 0), (2, 0)), ((2, 0), (1, 1))),
}

RUBIKS_SETS = {
    "rubiks-(i)": ((0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 0), (0, 1, 1),
                   (0, 1, 2)),
    "rubiks-(ii)": ((0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 0), (0, 1, 1),
                    (0, 2, 0), (1, 0, 0), (1, 0, 1), (1, 1, 0)),
    "rubiks-(iii)": ((0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 0), (0, 2, 0),
                     (1, 0, 0), (2, 0, 0)),
    "rubiks-(iv)": ((0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0),
                    (1, 0, 1), (1, 1, 0), (1, 1, 1)),
}

SYM2_SETS = {
    "sym2-(i)": ((0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 1), (0, 1, 2)),
    "sym2-(ii)": ((0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 1), (1, 0, 0),
                  (1, 0, 1)),
    "sym2-(iii)": ((0, 0, 0), (0, 0, 1), (0, 0, 2), (1, 0, 0), (1, 0, 1),
                   (1, 0, 2)),
    "sym2-(iv)": ((0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 0, 1),
                  (1, 1, 1)),
    "sym2-(v)": ((0, 0, 0), (1, 0, 0), (2, 0, 0)),
}


def _vanishes(full, idxs, R: Ring):
    return all(R.is_zero(full[i]) for i in idxs)


def cusp_pattern(v: Tensor):
    """First matched cusp vanishing set (with the permutation used), or None.

    The constructive cases (triply symmetric (ii), doubly symmetric (v))
    perform the reducing transformation before certifying the match.
    """
    R = v.ring
    name = v.rep
    if name == "hypercube":
        full = expand(v)
        for sig in itertools.permutations(range(4)):
            w = permute(sig, v)
            wf = expand(w)
            for tag, idxs in HYPERCUBE_SETS.items():
                if _vanishes(wf, idxs, R):
                    return (tag, sig)
        return None
    if name == "rubiks":
        for sig in itertools.permutations(range(3)):
            w = permute(sig, v)
            wf = expand(w)
            for tag, idxs in RUBIKS_SETS.items():
                if _vanishes(wf, idxs, R):
                    return (tag, sig)
        return None
    if name == "bideg22":
        pos = {mm: i for i, mm in enumerate(rep("bideg22").indices)}
        for sig in ((0, 1), (1, 0)):
            w = permute(sig, v)
            if all(R.is_zero(w.coeffs[pos[mm]])
                   for mm in BIDEG22_SETS["bideg22-(i)"]):
                return ("bideg22-(i)", sig)
        return None
    if name == "sym3-hypercube":
        full = expand(v)
        if _vanishes(full, SYM3_SETS["sym3-(i)"], R):
            return ("sym3-(i)", (0,))
        if _vanishes(full, SYM3_SETS["sym3-(ii)"], R):
            if _constructive_sym3(full, R):
                return ("sym3-(ii)", (0,))
        return None
    if name == "sym2-rubiks":
        full = expand(v)
        for tag in ("sym2-(i)", "sym2-(ii)", "sym2-(iii)", "sym2-(iv)"):
            if _vanishes(full, SYM2_SETS[tag], R):
                return (tag, (0,))
        if _vanishes(full, SYM2_SETS["sym2-(v)"], R):
            if _constructive_sym2(full, R):
                return ("sym2-(v)", (0,))
        return None
    raise ValueError(f"{name} has no cusp patterns")


def _nullvector(rows, n, R: Ring):
    """A nonzero solution of the homogeneous system rows . x = 0."""
    m = [list(r) for r in rows]
    piv = {}
    for r in m:
        for c in sorted(piv):
            if not R.is_zero(r[c]):
                f = R.div(r[c], piv[c][c])
                for j in range(n):
                    r[j] = R.sub(r[j], R.mul(f, piv[c][j]))
        lead = next((j for j in range(n) if not R.is_zero(r[j])), None)
        if lead is not None:
            piv[lead] = r
    free = next(j for j in range(n) if j not in piv)
    x = [R.zero()] * n
    x[free] = R.one()
    for c in sorted(piv, reverse=True):
        s = R.zero()
        for j in range(c + 1, n):
            s = R.add(s, R.mul(piv[c][j], x[j]))
        x[c] = R.neg(R.div(s, piv[c][c]))
    return x


def _constructive_sym3(full, R: Ring):
    """Case (ii) -> case (i): recombine the two slot-1 slices.

    Returns the transformed first-slice entries; zero (1111)/(1112)
    entries certify the reduction.
    """
    al = _nullvector([[full[(0, 0, 0, 1)], full[(1, 0, 0, 1)]]], 2, R)
    new = {k: R.add(R.mul(al[0], full[(0,) + k]), R.mul(al[1], full[(1,) + k]))
           for k in itertools.product(range(2), repeat=3)}
    assert R.is_zero(new[(0, 0, 0)]) and R.is_zero(new[(0, 0, 1)])
    return new


def _constructive_sym2(full, R: Ring):
    """Case (v) -> the cube lemma's case (iii): recombine the three slices."""
    rows = [[full[(0, 0, 1)], full[(1, 0, 1)], full[(2, 0, 1)]],
            [full[(0, 0, 2)], full[(1, 0, 2)], full[(2, 0, 2)]]]
    al = _nullvector(rows, 3, R)
    new = {}
    for k in itertools.product(range(3), repeat=2):
        acc = R.zero()
        for i in range(3):
            acc = R.add(acc, R.mul(al[i], full[(i,) + k]))
        new[k] = acc
    assert all(R.is_zero(new[(0, t)]) for t in range(3))
    return new


# ---------------------------------------------------------------------------
# the verdict

@dataclass(frozen=True)
class ReducibilityVerdict:
    status: str          # 'reducible' | 'irreducible' | 'degenerate'
    witness: object = None

    @property
    def reducible(self):
        if self.status == "degenerate":
            return None
        return self.status == "reducible"


def is_reducible(v: Tensor) -> ReducibilityVerdict:
    """Reducibility via covariant roots (d=2) or flexes (d=3)."""
    if v.ring.kind == "exact-integer":
        v = v.map_ring(QQ)
    info = v.info
    R = v.ring
    try:
        degenerate = R.is_zero(discriminant(v)) if R.p is None or R.p > 3 \
            else _degenerate_smallp(v)
    except RingError:
        degenerate = _degenerate_smallp(v)
    if degenerate:
        return ReducibilityVerdict("degenerate")
    if info.d == 2:
        for k, q in enumerate(_quartics_raw(v)):
            root = quartic_rational_root(q, R)
            if root is not None:
                assert R.is_zero(eval_binary(
                    q, R.from_int(root[0]), R.from_int(root[1]), R))
                return ReducibilityVerdict(
                    "reducible", ("quartic-root", k, root))
        return ReducibilityVerdict("irreducible")
    for k, c in enumerate(covariant_cubics(v)):
        kind, pt = cubic_rational_flex(c, R)
        if kind == "singular-curve":
            return ReducibilityVerdict("reducible", ("singular-cubic", k))
        if kind == "found":
            return ReducibilityVerdict("reducible", ("cubic-flex", k, pt))
    return ReducibilityVerdict("irreducible")


def _degenerate_smallp(v: Tensor) -> bool:
    """Discriminant-vanishing test valid in characteristics 2 and 3."""
    from .invariants import disc_binary_quartic
    R = v.ring
    if v.info.d == 2:
        return R.is_zero(disc_binary_quartic(_quartics_raw(v)[0], R))
    dp = tables()["ternary-cubic"]["disc_prim"]
    return R.is_zero(eval_terms(dp, covariant_cubics(v)[0], R))

"""Integral binary quartics: SL2(Z) reduction and bounded-height
enumeration of inequivalent irreducible forms.

The reduction is an exact norm descent: alternately minimize the
coefficient norm over the two integer shear families (the argmin of the
degree-8 norm polynomial is located from its float critical points and
certified by exact comparison), then polish over a small ball of
SL2(Z) words with a lexicographic tie-break.  It is deterministic,
terminating, exact, and idempotent; orbit-constancy is exercised by the
test suite rather than assumed.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .invariants import disc_binary_quartic, quartic_I, quartic_J
from .reducibility import quartic_rational_root
from .rings import QQ


def _shift1(c, k):
    """f(w1 + k w2, w2): integer coefficient transform."""
    c0, c1, c2, c3, c4 = c
    return (
        c0,
        4 * c0 * k + c1,
        6 * c0 * k * k + 3 * c1 * k + c2,
        4 * c0 * k ** 3 + 3 * c1 * k * k + 2 * c2 * k + c3,
        c0 * k ** 4 + c1 * k ** 3 + c2 * k * k + c3 * k + c4,
    )


def _shift2(c, k):
    """f(w1, w2 + k w1)."""
    return tuple(reversed(_shift1(tuple(reversed(c)), k)))


def _swap(c):
    """f(-w2, w1): the action of S = [[0,-1],[1,0]]."""
    c0, c1, c2, c3, c4 = c
    return (c4, -c3, c2, -c1, c0)


def _norm(c):
    return sum(x * x for x in c)


def _best_shift(c, family):
    """The norm-minimizing integer shift, by an expanding exact window.

    Scans k in a window around 0 and doubles the radius while the minimum
    sits on the boundary; all comparisons are exact integer arithmetic.
    """
    shift = _shift1 if family == 1 else _shift2
    radius = 4
    while True:
        best = (None, 0)
        for k in range(-radius, radius + 1):
            val = _norm(shift(c, k))
            if best[0] is None or val < best[0] or \
                    (val == best[0] and abs(k) < abs(best[1])):
                best = (val, k)
        if abs(best[1]) < radius or radius > (1 << 20):
            return best[1]
        radius *= 2


_POLISH_WORDS = None


def _polish_words():
    """SL2(Z) elements of word length <= 2 in {S, T^±1, U^±1}."""
    global _POLISH_WORDS
    if _POLISH_WORDS is not None:
        return _POLISH_WORDS
    gens = {
        "S": lambda c: _swap(c),
        "T+": lambda c: _shift1(c, 1),
        "T-": lambda c: _shift1(c, -1),
        "U+": lambda c: _shift2(c, 1),
        "U-": lambda c: _shift2(c, -1),
    }
    words = [()]
    for ln in range(2):
        words += [w + (g,) for w in words for g in gens if len(w) == ln]
    _POLISH_WORDS = [(w, [gens[g] for g in w]) for w in words]
    return _POLISH_WORDS


_GEN_MATS = {
    "S": ((0, -1), (1, 0)),
    "T+": ((1, 1), (0, 1)),
    "T-": ((1, -1), (0, 1)),
    "U+": ((1, 0), (1, 1)),
    "U-": ((1, 0), (-1, 1)),
}


def _mat_mul2(a, b):
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0],
             a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0],
             a[1][0] * b[0][1] + a[1][1] * b[1][1]))


def apply_sl2(c, g):
    """f(a w1 + b w2, c w1 + d w2) for g = ((a, b), (c, d)).

    Composition multiplies on the right: apply(apply(f, g), h) equals
    apply(f, g @ h).
    """
    (a, b), (cc, d) = g
    out = [0] * 5
    for i, ci in enumerate(c):  # ci * w1^(4-i) * w2^i
        if ci == 0:
            continue
        e1 = 4 - i
        for s in range(e1 + 1):
            for t in range(i + 1):
                coef = (ci * math.comb(e1, s) * math.comb(i, t)
                        * a ** s * b ** (e1 - s) * cc ** t * d ** (i - t))
                out[4 - (s + t)] += coef
    return tuple(out)


_SHIFT1_M = lambda k: ((1, k), (0, 1))
_SHIFT2_M = lambda k: ((1, 0), (k, 1))
_SWAP_M = ((0, -1), (1, 0))


def _descend(cur, g):
    for _ in range(200):
        k1 = _best_shift(cur, 1)
        if k1:
            cur = _shift1(cur, k1)
            g = _mat_mul2(g, _SHIFT1_M(k1))
        k2 = _best_shift(cur, 2)
        if k2:
            cur = _shift2(cur, k2)
            g = _mat_mul2(g, _SHIFT2_M(k2))
        if not k1 and not k2:
            return cur, g
    raise RuntimeError("reduction did not converge")


def reduce_quartic(c):
    """(reduced form, transformation in SL2(Z)) for an integral quartic.

    apply_sl2(input, g) == reduced holds exactly; reduction of a reduced
    form is the identity.
    """
    c = tuple(int(x) for x in c)
    if disc_binary_quartic([Fraction(x) for x in c], QQ) == 0:
        raise ValueError("degenerate quartic")
    cur, g = _descend(c, ((1, 0), (0, 1)))
    # polish: smallest (norm, coefficients) over a ball of short words
    best = ((_norm(cur), cur), cur, g)
    improved = True
    while improved:
        improved = False
        for word, funcs in _polish_words():
            cc = best[1]
            m = best[2]
            for name, fn in zip(word, funcs):
                cc = fn(cc)
                m = _mat_mul2(m, _GEN_MATS[name])
            cc, m = _descend(cc, m)
            key = (_norm(cc), cc)
            if key < best[0]:
                best = (key, cc, m)
                improved = True
    return best[1], best[2]


def quartic_height(c) -> Fraction:
    """max(|I/3|^3, |J/27|^2), the family height of the quartic."""
    I = quartic_I([Fraction(x) for x in c], QQ)
    J = quartic_J([Fraction(x) for x in c], QQ)
    return max(abs(I / 3) ** 3, abs(J / 27) ** 2)


def enumerate_reduced(height_bound, margin=2.0, progress=None):
    """Inequivalent irreducible integral quartics of height < the bound.

    Enumerates a reduced-coefficient box (|c_i| <= margin * X^(1/6))
    constrained by the invariant windows, canonicalizes with
    reduce_quartic and deduplicates.  Returns {reduced form: height}.
    """
    X = Fraction(height_bound)
    B = int(float(X) ** (1 / 6) * margin) + 1
    imax = 3 * float(X) ** (1 / 3)
    jmax = 27 * float(X) ** 0.5
    out = {}
    grid = np.arange(-B, B + 1, dtype=np.int64)
    c3g, c4g = np.meshgrid(grid, grid, indexing="ij")
    for c0 in range(-B, B + 1):
        if c0 == 0:
            continue
        for c1 in range(-2 * abs(c0) + 1, 2 * abs(c0) + 1):
            for c2 in range(-B, B + 1):
                I = 12 * c0 * c4g - 3 * c1 * c3g + c2 * c2
                J = (72 * c0 * c2 * c4g - 27 * c0 * c3g ** 2
                     - 27 * c1 * c1 * c4g + 9 * c1 * c2 * c3g - 2 * c2 ** 3)
                mask = ((np.abs(I) <= imax) & (np.abs(J) <= jmax)
                        & (c4g != 0))
                for c3, c4 in zip(c3g[mask].tolist(), c4g[mask].tolist()):
                    c = (c0, c1, c2, c3, c4)
                    h = quartic_height(c)
                    if not h < X:
                        continue
                    if disc_binary_quartic(
                            [Fraction(x) for x in c], QQ) == 0:
                        continue
                    if quartic_rational_root(c) is not None:
                        continue
                    red, _ = reduce_quartic(c)
                    if red not in out:
                        out[red] = h
        if progress:
            progress(c0)
    return out


def counts_by_height(forms: dict, grid):
    """Cumulative class counts at each height bound of the grid."""
    hs = sorted(forms.values())
    out = []
    for X in grid:
        import bisect
        out.append(bisect.bisect_left(hs, Fraction(X)))
    return out

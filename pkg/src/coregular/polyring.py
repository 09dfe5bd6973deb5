"""Multivariate polynomials as a Ring, for symbolic family discriminants."""

from __future__ import annotations

from fractions import Fraction

from .rings import Ring


class PolyRing(Ring):
    """QQ[x_1..x_n] with dict elements {exponent tuple: Fraction}."""

    kind = "poly"

    def __init__(self, nvars: int):
        self.n = nvars

    def from_int(self, k):
        if k == 0:
            return {}
        return {tuple([0] * self.n): Fraction(k)}

    def from_fraction(self, q):
        if q == 0:
            return {}
        return {tuple([0] * self.n): Fraction(q)}

    def gen(self, i):
        e = [0] * self.n
        e[i] = 1
        return {tuple(e): Fraction(1)}

    def add(self, a, b):
        out = dict(a)
        for m, c in b.items():
            v = out.get(m, Fraction(0)) + c
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return {m: -c for m, c in a.items()}

    def mul(self, a, b):
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = out.get(m, Fraction(0)) + c1 * c2
                if v:
                    out[m] = v
                elif m in out:
                    del out[m]
        return out

    def div(self, a, b):
        const = tuple([0] * self.n)
        if set(b) <= {const}:
            c = b.get(const, Fraction(0))
            return {m: v / c for m, v in a.items()}
        raise NotImplementedError("polynomial division not supported")

    def is_zero(self, a):
        return not a


def poly_eval(p: dict, vals):
    acc = Fraction(0)
    for m, c in p.items():
        t = c
        for x, e in zip(vals, m):
            if e:
                t *= Fraction(x) ** e
        acc += t
    return acc


def poly_partial(p: dict, var: int):
    out = {}
    for m, c in p.items():
        if m[var] == 0:
            continue
        mm = list(m)
        mm[var] -= 1
        out[tuple(mm)] = c * m[var]
    return out

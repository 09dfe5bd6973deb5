"""General Weierstrass models over QQ or a prime field (any characteristic).

Points are ``None`` for the point at infinity or ``(x, y)`` pairs.  All
formulas are the characteristic-free chord-tangent ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rings import QQ, GF, Ring


@dataclass(frozen=True)
class Curve:
    ring: Ring
    a1: object
    a2: object
    a3: object
    a4: object
    a6: object

    @staticmethod
    def from_list(a, ring: Ring = QQ) -> "Curve":
        vals = [ring.from_fraction(Fraction(x)) if ring.is_field and ring.p is None
                else ring.from_int(x) if isinstance(x, int) else x
                for x in a]
        return Curve(ring, *vals)

    def coeffs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    # standard b/c invariants
    def b_invariants(self):
        R = self.ring
        a1, a2, a3, a4, a6 = self.coeffs()
        b2 = R.add(R.mul(a1, a1), R.mul(R.from_int(4), a2))
        b4 = R.add(R.mul(R.from_int(2), a4), R.mul(a1, a3))
        b6 = R.add(R.mul(a3, a3), R.mul(R.from_int(4), a6))
        b8 = R.sub(
            R.add(
                R.add(R.mul(R.mul(a1, a1), a6), R.mul(R.from_int(4), R.mul(a2, a6))),
                R.sub(R.mul(a2, R.mul(a3, a3)), R.mul(a1, R.mul(a3, a4)))),
            R.mul(a4, a4))
        return b2, b4, b6, b8

    def c_invariants(self):
        R = self.ring
        b2, b4, b6, _ = self.b_invariants()
        c4 = R.sub(R.mul(b2, b2), R.mul(R.from_int(24), b4))
        c6 = R.add(
            R.sub(R.mul(R.from_int(36), R.mul(b2, b4)),
                  R.mul(R.mul(b2, b2), b2)),
            R.neg(R.mul(R.from_int(216), b6)))
        return c4, c6

    def discriminant(self):
        R = self.ring
        b2, b4, b6, b8 = self.b_invariants()
        t1 = R.neg(R.mul(R.mul(b2, b2), b8))
        t2 = R.neg(R.mul(R.from_int(8), R.mul(R.mul(b4, b4), b4)))
        t3 = R.neg(R.mul(R.from_int(27), R.mul(b6, b6)))
        t4 = R.mul(R.from_int(9), R.mul(b2, R.mul(b4, b6)))
        return R.add(R.add(t1, t2), R.add(t3, t4))

    def is_nonsingular(self) -> bool:
        return not self.ring.is_zero(self.discriminant())

    # points ---------------------------------------------------------------
    def on_curve(self, P) -> bool:
        if P is None:
            return True
        R = self.ring
        x, y = P
        lhs = R.add(R.mul(y, y),
                    R.add(R.mul(self.a1, R.mul(x, y)), R.mul(self.a3, y)))
        rhs = R.add(R.mul(R.mul(x, x), x),
                    R.add(R.mul(self.a2, R.mul(x, x)),
                          R.add(R.mul(self.a4, x), self.a6)))
        return lhs == rhs

    def neg(self, P):
        if P is None:
            return None
        R = self.ring
        x, y = P
        return (x, R.neg(R.add(y, R.add(R.mul(self.a1, x), self.a3))))

    def add(self, P, Q):
        R = self.ring
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        a1, a2, a3, a4, a6 = self.coeffs()
        if x1 == x2:
            if R.add(R.add(y1, y2), R.add(R.mul(a1, x2), a3)) == R.zero():
                return None  # Q == -P
            # doubling
            num = R.sub(
                R.add(R.mul(R.from_int(3), R.mul(x1, x1)),
                      R.add(R.mul(R.from_int(2), R.mul(a2, x1)), a4)),
                R.mul(a1, y1))
            den = R.add(R.add(R.mul(R.from_int(2), y1), R.mul(a1, x1)), a3)
            lam = R.div(num, den)
            nu_num = R.sub(
                R.add(R.neg(R.mul(R.mul(x1, x1), x1)),
                      R.add(R.mul(a4, x1), R.mul(R.from_int(2), a6))),
                R.mul(a3, y1))
            nu = R.div(nu_num, den)
        else:
            lam = R.div(R.sub(y2, y1), R.sub(x2, x1))
            nu = R.div(R.sub(R.mul(y1, x2), R.mul(y2, x1)), R.sub(x2, x1))
        x3 = R.sub(R.sub(R.add(R.mul(lam, lam), R.mul(a1, lam)), a2),
                   R.add(x1, x2))
        y3 = R.neg(R.add(R.add(R.mul(R.add(lam, a1), x3), nu), a3))
        return (x3, y3)

    def mul(self, n: int, P):
        if n < 0:
            return self.mul(-n, self.neg(P))
        Q = None
        while n > 0:
            if n & 1:
                Q = self.add(Q, P)
            P = self.add(P, P)
            n >>= 1
        return Q

    # finite field enumeration ----------------------------------------------
    def points(self):
        """All affine points plus None; only for prime-field curves."""
        R = self.ring
        if R.p is None:
            raise ValueError("point enumeration needs a finite field")
        pts = [None]
        for x in range(R.p):
            # y^2 + (a1 x + a3) y - rhs = 0
            b = R.add(R.mul(self.a1, x), self.a3)
            rhs = R.add(R.mul(R.mul(x, x), x),
                        R.add(R.mul(self.a2, R.mul(x, x)),
                              R.add(R.mul(self.a4, x), self.a6)))
            for y in range(R.p):
                if R.add(R.mul(y, y), R.mul(b, y)) == rhs:
                    pts.append((x, y))
        return pts

    def point_order(self, P, N: int, fac: dict):
        """Order of P given the group order N with factorization fac."""
        order = N
        for q, e in fac.items():
            order //= q ** e
            Q = self.mul(order, P)
            while Q is not None:
                Q = self.mul(q, Q)
                order *= q
        return order

    def group_structure(self):
        """(m, n) with E(F_p) = Z/m x Z/n, m | n; exact, by exponent scan."""
        pts = self.points()
        N = len(pts)
        fac = factorize(N)
        exponent = 1
        for P in pts:
            if P is None:
                continue
            exponent = lcm(exponent, self.point_order(P, N, fac))
            if exponent == N:
                break
        return (N // exponent, exponent)


def factorize(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def lcm(a: int, b: int) -> int:
    from math import gcd
    return a * b // gcd(a, b)


# --- family models -----------------------------------------------------------

def family_curve(family: str, a: dict, ring: Ring = QQ) -> Curve:
    """The Weierstrass model of the invariant-vector families."""
    def conv(v):
        if isinstance(v, int):
            return ring.from_int(v)
        if isinstance(v, Fraction):
            return ring.from_fraction(v)
        return v
    f = {k: conv(v) for k, v in a.items()}
    R = ring
    if family == "F0":
        return Curve(R, R.zero(), R.zero(), R.zero(), f["a4"], f["a6"])
    if family == "F1":
        return Curve(R, R.zero(), f["a2"], f["a3"], f["a4"], R.zero())
    if family == "F1(2)":
        return Curve(R, R.zero(), f["a2"], R.zero(), f["a4"], R.zero())
    if family == "F1(3)":
        return Curve(R, f["a1"], R.zero(), f["a3"], R.zero(), R.zero())
    if family == "F2":
        # (x - a2)(x - a2')(x - a2'') = x^3 + e2 x - e3 since e1 = 0
        e2 = R.add(R.add(R.mul(f["a2"], f["a2p"]), R.mul(f["a2p"], f["a2pp"])),
                   R.mul(f["a2"], f["a2pp"]))
        e3 = R.mul(R.mul(f["a2"], f["a2p"]), f["a2pp"])
        return Curve(R, f["a1"], R.zero(), f["a3"], e2, R.neg(e3))
    raise ValueError(f"unknown family {family!r}")


def two_torsion_cubic(curve: Curve):
    """4x^3 + b2 x^2 + 2 b4 x + b6, whose roots are the E[2] x-coordinates."""
    R = curve.ring
    b2, b4, b6, _ = curve.b_invariants()
    return [R.from_int(4), b2, R.mul(R.from_int(2), b4), b6]


def three_division_poly(curve: Curve):
    """psi_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8."""
    R = curve.ring
    b2, b4, b6, b8 = curve.b_invariants()
    return [R.from_int(3), b2, R.mul(R.from_int(3), b4),
            R.mul(R.from_int(3), b6), b8]

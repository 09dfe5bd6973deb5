"""Exact coefficient rings: integers, rationals and prime fields.

All arithmetic in the package goes through one of the three ring objects
defined here.  There is deliberately no floating-point mode anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class RingError(ValueError):
    """Unsupported ring operation (inexact division, bad modulus, ...)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Ring:
    """Base class; elements are plain ints (ZZ, GF) or Fractions (QQ)."""

    kind = "?"
    p = None
    is_field = False

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def div(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        return self.div(self.one(), a)

    def is_zero(self, a) -> bool:
        return a == self.from_int(0)

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        raise NotImplementedError

    def parse(self, s: str):
        """Parse a decimal integer or 'a/b' rational string."""
        s = s.strip()
        if "/" in s:
            num, den = s.split("/")
            return self.from_fraction(Fraction(int(num), int(den)))
        return self.from_int(int(s))

    def fmt(self, a) -> str:
        return str(a)

    def pow(self, a, n: int):
        r = self.one()
        while n > 0:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def __eq__(self, other):
        return isinstance(other, Ring) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return self.kind if self.p is None else f"{self.kind}({self.p})"


class IntegerRing(Ring):
    kind = "exact-integer"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in ZZ")
        q, r = divmod(a, b)
        if r:
            raise RingError(f"inexact division {a}/{b} in ZZ")
        return q

    def from_int(self, n):
        return int(n)

    def from_fraction(self, q):
        if q.denominator != 1:
            raise RingError(f"{q} is not an integer")
        return int(q)


class RationalField(Ring):
    kind = "exact-rational"
    is_field = True

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return Fraction(a) / b

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)


class PrimeField(Ring):
    kind = "prime-field"
    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise RingError(f"{p} is not prime")
        self.p = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def div(self, a, b):
        b %= self.p
        if b == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return (a * pow(b, self.p - 2, self.p)) % self.p

    def from_int(self, n):
        return int(n) % self.p

    def from_fraction(self, q):
        den = q.denominator % self.p
        if den == 0:
            raise RingError(f"denominator of {q} vanishes mod {self.p}")
        return (q.numerator * pow(den, self.p - 2, self.p)) % self.p

    def elements(self):
        return range(self.p)


ZZ = IntegerRing()
QQ = RationalField()

_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


def ring_from_json(d: dict) -> Ring:
    kind = d["kind"]
    if kind == "exact-integer":
        return ZZ
    if kind == "exact-rational":
        return QQ
    if kind == "prime-field":
        return GF(int(d["p"]))
    raise RingError(f"unknown ring kind {kind!r}")


def ring_to_json(r: Ring) -> dict:
    d = {"kind": r.kind}
    if r.p is not None:
        d["p"] = r.p
    return d


def as_fraction(x) -> Fraction:
    """Lift a ZZ/QQ element to a Fraction (prime-field elements refuse)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise RingError(f"cannot lift {x!r} to QQ")


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero int or Fraction."""
    q = as_fraction(x)
    if q == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v

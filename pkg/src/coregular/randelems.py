"""Deterministic random tensors, invariant vectors and group elements."""

from __future__ import annotations

from fractions import Fraction

from .reps import FAMILY_COEFFS, rep
from .rings import QQ, Ring
from .tensors import GroupElement, Tensor, mat_mul


def random_tensor(rep_name: str, ring: Ring, rng, lo=-9, hi=9) -> Tensor:
    info = rep(rep_name)
    if ring.p is not None:
        return Tensor(rep_name, ring,
                      tuple(rng.randrange(ring.p) for _ in range(info.n)))
    return Tensor(rep_name, ring,
                  tuple(ring.from_int(rng.randint(lo, hi))
                        for _ in range(info.n)))


def random_invariant_dict(family: str, rng, lo=-20, hi=20) -> dict:
    a = {}
    for name in FAMILY_COEFFS[family]:
        if name == "a2pp":
            continue
        a[name] = rng.randint(lo, hi)
    if family == "F2":
        a["a2pp"] = -a["a2"] - a["a2p"]
    return a


def _shear_product(n: int, ring: Ring, rng, rounds=4):
    """A determinant-1 matrix as a product of random elementary shears."""
    m = [[ring.one() if i == j else ring.zero() for j in range(n)]
         for i in range(n)]
    m = tuple(tuple(r) for r in m)
    for _ in range(rounds):
        a = rng.randrange(n)
        b = rng.randrange(n)
        if a == b:
            continue
        if ring.p is not None:
            c = ring.from_int(rng.randrange(ring.p))
        else:
            c = ring.from_int(rng.randint(-2, 2))
        shear = [[ring.one() if i == j else ring.zero() for j in range(n)]
                 for i in range(n)]
        shear[a][b] = c
        m = mat_mul(m, tuple(tuple(r) for r in shear), ring)
    return m


def _with_det(n: int, target, ring: Ring, rng):
    """A random matrix of prescribed determinant (scale a shear product)."""
    m = [list(r) for r in _shear_product(n, ring, rng)]
    m[0] = [ring.mul(target, x) for x in m[0]]
    return tuple(tuple(r) for r in m)


def _random_unit(ring: Ring, rng):
    if ring.p is not None:
        return ring.from_int(rng.randrange(1, ring.p))
    return ring.from_fraction(Fraction(rng.choice([1, -1, 2, -2, 3]),
                                       rng.choice([1, 1, 1, 2, 3])))


def random_group_element(rep_name: str, ring: Ring, rng) -> GroupElement:
    """A random group element satisfying the case's determinant constraint."""
    info = rep(rep_name)
    if info.det_constraint is None:
        facs = tuple(_with_det(s, _random_unit(ring, rng), ring, rng)
                     for s in info.factor_sizes)
        return GroupElement(rep_name, facs)
    exps = info.det_constraint
    units = [_random_unit(ring, rng) for _ in exps[:-1]]
    prod = ring.one()
    for u, e in zip(units, exps[:-1]):
        prod = ring.mul(prod, ring.pow(u, e))
    # solve last det d with d^e_last = prod^-1; use d = t^k when e_last
    # demands a root, else fall back to det 1 for the free unit
    e_last = exps[-1]
    if e_last == 1:
        last = ring.inv(prod)
    else:
        # choose earlier units as t^e_last to keep the root rational
        t = _random_unit(ring, rng)
        units = [ring.pow(t, e_last) for _ in exps[:-1]]
        prod = ring.one()
        for u, e in zip(units, exps[:-1]):
            prod = ring.mul(prod, ring.pow(u, e))
        k = sum(exps[:-1])
        last = ring.inv(ring.pow(t, k))
    dets = units + [last]
    facs = tuple(_with_det(s, d, ring, rng)
                 for s, d in zip(info.factor_sizes, dets))
    return GroupElement(rep_name, facs)

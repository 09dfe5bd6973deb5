"""The distinguished-hypercube embedding and its mod-p^2 reduction.

``q_embed`` sends a five-coefficient invariant vector to the hypercube in
the subspace V0 = {b1111 = b1112 = b1121 = b1211 = 0} with the same
invariants and Q-invariant (the b2111 coordinate) equal to 1.  When p^2
divides the discriminant for mod-p^2 reasons, ``q_reduce`` follows the
constructive unipotent reduction: move the mod-p double root of the
covariant quartic to the structural end, repeat on the three covariant
quadratics of the non-degenerate slice cube, then rescale; the result is
an integral hypercube in V0 with Q-invariant exactly p and the same
discriminant.
"""

from __future__ import annotations

from fractions import Fraction

from .covariants import covariant_quartics, cube_quadratics
from .invariants import discriminant, invariant_vector, invariants
from .localsolve import classify_p2
from .reps import rep
from .rings import QQ
from .sections import hypercube_from_blocks
from .tensors import GroupElement, Tensor, act, expand, identity_element

V0_COORDS = ((0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0))


class QReduceError(RuntimeError):
    pass


def in_v0(v: Tensor) -> bool:
    full = expand(v)
    return all(v.ring.is_zero(full[c]) for c in V0_COORDS)


def q_invariant(v: Tensor):
    """b2111 of a hypercube in the distinguished subspace V0."""
    if v.rep != "hypercube":
        raise ValueError("Q-invariant is defined for hypercubes")
    if not in_v0(v):
        raise ValueError("Q-invariant needs an element of V0")
    return expand(v)[(1, 0, 0, 0)]


def q_embed(a) -> Tensor:
    """The V0 hypercube with exactly the invariants of a (F2 vector/dict).

    This is the distinguished embedding, normalized by the group element
    [[0,-1],[1,0]] in the first slot so that the invariants round-trip on
    the nose (the raw printed arrangement realizes (-a1, ..., -a3), the
    same curve under y -> -y).
    """
    from .invariants import InvariantVector
    if not isinstance(a, InvariantVector):
        a = invariant_vector("F2", a)
    f = {k: Fraction(v) for k, v in a.a.items()}
    return hypercube_from_blocks(
        [[0, 0], [0, -1]],
        [[0, -1], [-1, -f["a1"]]],
        [[1, 0], [0, -f["a2"]]],
        [[0, -f["a2p"]], [-f["a2pp"], f["a3"]]])


def _unipotent(slot: int, m) -> GroupElement:
    """The V0-preserving shear: index-1 entries feed the index-2 slots."""
    base = list(identity_element("hypercube", QQ).factors)
    base[slot] = ((Fraction(1), Fraction(0)), (Fraction(m), Fraction(1)))
    return GroupElement("hypercube", tuple(base))


def _vp_ge(x, p, k) -> bool:
    q = Fraction(x)
    if q == 0:
        return True
    from .rings import valuation
    return valuation(q, p) >= k


def _quartic_shift_target(f, p):
    """m mod p^2 with f(1, m)-style end vanishing: the covariant quartic of
    a V0 element has zero w2^4-coefficient; the shift must make the w1^4
    coefficient divisible by p^2 and the w1^3 w2 one divisible by p."""
    for m in range(p * p):
        c = _shifted_quartic(f, m)
        if _vp_ge(c[0], p, 2) and _vp_ge(c[1], p, 1):
            return m
    return None


def _shifted_quartic(f, m):
    """f(w1, w2 + m w1) for a 5-coefficient quartic."""
    from math import comb
    out = [Fraction(0)] * 5
    for i, ci in enumerate(f):  # ci * w1^(4-i) * w2^i
        for j in range(i + 1):
            out[i - j] += ci * comb(i, j) * Fraction(m) ** j
    return out


def _quad_shift_target(q, p):
    """m mod p^2 so that q(z1 + m z2, z2) ends with p^2, p divisibility.

    The shear adds index-1 slices into the index-2 slots, so the z2^2
    coefficient of the shifted quadratic is q(m, 1); that is the entry the
    final diagonal rescale needs divisible by p^2 (and the middle one by p).
    """
    for m in range(p * p):
        cp = q[0] * m * m + q[1] * m + q[2]
        bp = 2 * q[0] * m + q[1]
        if _vp_ge(cp, p, 2) and _vp_ge(bp, p, 1):
            return m
    return None


def q_reduce(a, p: int) -> Tensor:
    """The integral V0 hypercube with Q-invariant p (mod-p^2 instances)."""
    from .invariants import InvariantVector
    if not isinstance(a, InvariantVector):
        a = invariant_vector("F2", a)
    cls = classify_p2(a, p)
    if cls["delta"] != "mod-p2-reasons":
        raise QReduceError(
            f"q_reduce needs p^2 | Delta for mod p^2 reasons, got {cls}")
    B = q_embed(a)
    # step 1: the covariant quartic (zero w2^4 coefficient on V0) gets its
    # mod-p double root moved so the w1-end gains the p^2
    f = covariant_quartics(B)[0]
    m = _quartic_shift_target(f, p)
    if m is None:
        raise QReduceError("unipotent shift not found on the quartic")
    B = act(_unipotent(0, m), B)
    # step 2: three quadratic covariants of the index-2 slice cube
    for slot in (1, 2, 3):
        full = expand(B)
        bottom = {idx3: full[(1,) + idx3]
                  for idx3 in _cube_indices()}
        q = cube_quadratics(bottom, QQ)[slot - 1]
        m = _quad_shift_target(q, p)
        if m is None:
            raise QReduceError(f"unipotent shift not found in slot {slot}")
        B = act(_unipotent(slot, m), B)
    # step 3: rescale p^2 * diag(1, 1/p) in all four slots
    full = expand(B)
    out = {}
    for idx, val in full.items():
        twos = sum(idx)
        scaled = val * Fraction(p) ** (2 - twos)
        if scaled.denominator != 1:
            raise QReduceError(
                f"entry {idx} is not integral after the rescale")
        out[idx] = scaled
    info = rep("hypercube")
    result = Tensor("hypercube", QQ, tuple(out[i] for i in info.indices))
    if not in_v0(result):
        raise QReduceError("result left the distinguished subspace")
    if q_invariant(result) != p:
        raise QReduceError(f"Q-invariant is {q_invariant(result)}, not {p}")
    if discriminant(result) != discriminant(a):
        raise QReduceError("discriminant was not preserved")
    return result


def _cube_indices():
    import itertools
    return list(itertools.product(range(2), repeat=3))

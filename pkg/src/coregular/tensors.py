"""Tensors in the seven coregular spaces and their group actions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .reps import REPS, RepInfo, canonical_tensor_index, rep, storage_index
from .rings import QQ, ZZ, GF, Ring, RingError, ring_from_json, ring_to_json


class ConstraintError(ValueError):
    """Group element violates the determinant constraint of its case."""


@dataclass(frozen=True)
class Tensor:
    rep: str
    ring: Ring
    coeffs: tuple

    def __post_init__(self):
        info = rep(self.rep)
        if len(self.coeffs) != info.n:
            raise ValueError(
                f"{self.rep} needs {info.n} coefficients, got {len(self.coeffs)}")

    @property
    def info(self) -> RepInfo:
        return rep(self.rep)

    def __getitem__(self, i):
        return self.coeffs[i]

    def is_zero(self) -> bool:
        R = self.ring
        return all(R.is_zero(c) for c in self.coeffs)

    def to_json(self) -> dict:
        return {
            "rep": self.rep,
            "ring": ring_to_json(self.ring),
            "coeffs": [self.ring.fmt(c) for c in self.coeffs],
        }

    @staticmethod
    def from_json(d: dict) -> "Tensor":
        R = ring_from_json(d["ring"])
        return Tensor(d["rep"], R, tuple(R.parse(s) for s in d["coeffs"]))

    def map_ring(self, new_ring: Ring) -> "Tensor":
        """Push coefficients into another ring (ZZ/QQ -> QQ or GF(p))."""
        vals = []
        for c in self.coeffs:
            q = Fraction(c) if not isinstance(c, Fraction) else c
            vals.append(new_ring.from_fraction(q))
        return Tensor(self.rep, new_ring, tuple(vals))


def tensor(rep_name: str, coeffs, ring: Ring = None) -> Tensor:
    """Build a tensor, defaulting to QQ with Fraction coercion."""
    if ring is None:
        ring = QQ
        coeffs = [Fraction(c) for c in coeffs]
    return Tensor(rep_name, ring, tuple(coeffs))


def zero_tensor(rep_name: str, ring: Ring) -> Tensor:
    info = rep(rep_name)
    return Tensor(rep_name, ring, tuple(ring.zero() for _ in range(info.n)))


# ---------------------------------------------------------------------------
# full-tensor expansion for the tensor-storage reps

def expand(t: Tensor) -> dict:
    """Full tensor {index: value} (symmetric entries replicated)."""
    info = t.info
    if info.storage != "tensor":
        raise ValueError(f"{t.rep} is stored as a form; expand() is for tensors")
    pos = storage_index(t.rep)
    out = {}
    for idx in itertools.product(*[range(s) for s in info.shape]):
        out[idx] = t.coeffs[pos[canonical_tensor_index(info, idx)]]
    return out


def collapse(rep_name: str, full: dict, ring: Ring) -> Tensor:
    info = rep(rep_name)
    return Tensor(rep_name, ring, tuple(full[idx] for idx in info.indices))


# ---------------------------------------------------------------------------
# group elements

@dataclass(frozen=True)
class GroupElement:
    rep: str
    factors: tuple  # tuple of square matrices (tuple of row-tuples)

    def __post_init__(self):
        info = rep(self.rep)
        if len(self.factors) != len(info.factor_sizes):
            raise ConstraintError(
                f"{self.rep} takes {len(info.factor_sizes)} matrix factors")
        for g, s in zip(self.factors, info.factor_sizes):
            if len(g) != s or any(len(row) != s for row in g):
                raise ConstraintError(f"factor must be {s}x{s}")


def mat_det(g, ring: Ring):
    n = len(g)
    if n == 2:
        return ring.sub(ring.mul(g[0][0], g[1][1]), ring.mul(g[0][1], g[1][0]))
    if n == 3:
        tot = ring.zero()
        for (i, j, k), sgn in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                               ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
            term = ring.mul(ring.mul(g[0][i], g[1][j]), g[2][k])
            tot = ring.add(tot, term) if sgn > 0 else ring.sub(tot, term)
        return tot
    raise ValueError("only 2x2 / 3x3 supported")


def mat_mul(a, b, ring: Ring):
    n = len(a)
    return tuple(
        tuple(
            _dot(a[i], [b[k][j] for k in range(n)], ring) for j in range(n)
        )
        for i in range(n)
    )


def _dot(u, v, ring: Ring):
    acc = ring.zero()
    for x, y in zip(u, v):
        acc = ring.add(acc, ring.mul(x, y))
    return acc


def identity_element(rep_name: str, ring: Ring) -> GroupElement:
    info = rep(rep_name)
    facs = []
    for s in info.factor_sizes:
        facs.append(tuple(
            tuple(ring.one() if i == j else ring.zero() for j in range(s))
            for i in range(s)))
    return GroupElement(rep_name, tuple(facs))


def check_constraint(g: GroupElement, ring: Ring):
    """Reject non-invertible factors and violated determinant constraints."""
    info = rep(g.rep)
    dets = [mat_det(f, ring) for f in g.factors]
    for d in dets:
        if ring.is_zero(d):
            raise ConstraintError("singular factor")
    if info.det_constraint is not None:
        prod = ring.one()
        for d, e in zip(dets, info.det_constraint):
            prod = ring.mul(prod, ring.pow(d, e))
        if prod != ring.one():
            raise ConstraintError(
                f"determinant constraint violated for {g.rep}: prod = {prod}")
    return dets


# ---------------------------------------------------------------------------
# the action

def _act_tensor(info: RepInfo, coeffs, g: GroupElement, ring: Ring):
    pos = storage_index(info.name)
    full = {}
    for idx in itertools.product(*[range(s) for s in info.shape]):
        full[idx] = coeffs[pos[canonical_tensor_index(info, idx)]]
    # contract slot by slot: new[i,...] = sum_i' g[i][i'] old[i',...]
    for slot, fac_idx in enumerate(info.slot_factor):
        g_mat = g.factors[fac_idx]
        new = {}
        for idx in full:
            acc = ring.zero()
            for ip in range(info.shape[slot]):
                src = idx[:slot] + (ip,) + idx[slot + 1:]
                acc = ring.add(acc, ring.mul(g_mat[idx[slot]][ip], full[src]))
            new[idx] = acc
        full = new
    return tuple(full[idx] for idx in info.indices)


def _poly_pow_linear(lin, e: int, ring: Ring):
    """(sum_i lin[i] x_i)^e as {exponent tuple: coeff}, exactly."""
    nv = len(lin)
    acc = {tuple([0] * nv): ring.one()}
    for _ in range(e):
        new = {}
        for mon, c in acc.items():
            for i in range(nv):
                if ring.is_zero(lin[i]):
                    continue
                m2 = list(mon)
                m2[i] += 1
                m2 = tuple(m2)
                v = ring.mul(c, lin[i])
                new[m2] = ring.add(new.get(m2, ring.zero()), v)
        acc = new
    return acc


def _act_form_block(mons, coeffs, g_mats, ring: Ring):
    """Substitution action on form coefficients.

    `mons` are exponent tuples (or pairs of tuples for bideg22); `g_mats`
    maps each variable block to its matrix.  The substituted variable is
    x_i -> sum_j g[j][i] x_j (transpose), which matches the slotwise
    tensor action and hence gives a left action.
    """
    out = {m: ring.zero() for m in mons}
    nv = len(mons[0]) if not isinstance(mons[0][0], tuple) else None
    for m, c in zip(mons, coeffs):
        if ring.is_zero(c):
            continue
        blocks = (m,) if nv is not None else m
        prod = {(): ring.one()}
        expanded = []
        for b_i, expo in enumerate(blocks):
            g_mat = g_mats[b_i]
            n = len(expo)
            block_poly = {tuple([0] * n): ring.one()}
            for var, e in enumerate(expo):
                if e == 0:
                    continue
                lin = [g_mat[j][var] for j in range(n)]
                powd = _poly_pow_linear(lin, e, ring)
                merged = {}
                for m1, c1 in block_poly.items():
                    for m2, c2 in powd.items():
                        mm = tuple(a + b for a, b in zip(m1, m2))
                        v = ring.mul(c1, c2)
                        merged[mm] = ring.add(merged.get(mm, ring.zero()), v)
                block_poly = merged
            expanded.append(block_poly)
        # combine blocks
        combo = {(): ring.one()}
        for bp in expanded:
            merged = {}
            for key, c1 in combo.items():
                for m2, c2 in bp.items():
                    merged[key + (m2,)] = ring.mul(c1, c2)
            combo = merged
        for key, c2 in combo.items():
            tgt = key[0] if nv is not None else tuple(key)
            out[tgt] = ring.add(out[tgt], ring.mul(c, c2))
    return tuple(out[m] for m in mons)


def act(g: GroupElement, v: Tensor) -> Tensor:
    """Left action of a group element; PGL cases carry their det twist."""
    if g.rep != v.rep:
        raise ValueError(f"rep mismatch: {g.rep} vs {v.rep}")
    info = v.info
    ring = v.ring
    dets = check_constraint(g, ring)
    if info.storage == "tensor":
        new = _act_tensor(info, v.coeffs, g, ring)
    else:
        if info.name == "bideg22":
            g_mats = [g.factors[0], g.factors[1]]
        else:
            g_mats = [g.factors[0]]
        new = _act_form_block(info.indices, v.coeffs, g_mats, ring)
    if info.det_twist is not None:
        tw = ring.one()
        for d, e in zip(dets, info.det_twist):
            tw = ring.mul(tw, ring.pow(d, e))
        tw = ring.inv(tw) if ring.is_field else ZZ_inv_twist(tw, ring)
        new = tuple(ring.mul(tw, c) for c in new)
    return Tensor(v.rep, ring, new)


def ZZ_inv_twist(tw, ring: Ring):
    if tw == 1:
        return 1
    if tw == -1:
        return -1
    raise RingError("PGL twist over ZZ needs determinant +-1; use QQ")


def compose(g: GroupElement, h: GroupElement, ring: Ring) -> GroupElement:
    if g.rep != h.rep:
        raise ValueError("rep mismatch")
    return GroupElement(g.rep, tuple(
        mat_mul(a, b, ring) for a, b in zip(g.factors, h.factors)))


# ---------------------------------------------------------------------------
# slot permutations

def _perm_spec(info: RepInfo):
    """Movable tensor slots for the natural symmetric-group action."""
    if info.name == "hypercube":
        return [0, 1, 2, 3]
    if info.name == "rubiks":
        return [0, 1, 2]
    if info.name == "bideg22":
        return [0, 1]  # the two (w, z) blocks
    return []


def permute(sigma, v: Tensor) -> Tensor:
    """Permute the tensor factors of v by sigma (a tuple image of 0..m-1)."""
    info = v.info
    movable = _perm_spec(info)
    m = len(movable)
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(m)):
        raise ValueError(
            f"permutation {sigma} incompatible with the symmetry of {v.rep}")
    if m == 0 or sigma == tuple(range(m)):
        return v
    if info.name == "bideg22":
        if sigma == (1, 0):
            mons = info.indices
            pos = {mm: i for i, mm in enumerate(mons)}
            new = [None] * info.n
            for i, (wm, zm) in enumerate(mons):
                new[i] = v.coeffs[pos[(zm, wm)]]
            return Tensor(v.rep, v.ring, tuple(new))
        return v
    pos = storage_index(v.rep)
    full = expand(v)
    out = {}
    for idx in full:
        src = tuple(idx[sigma[s]] for s in range(m))
        out[idx] = full[src]
    return collapse(v.rep, out, v.ring)

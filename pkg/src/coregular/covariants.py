"""Covariant forms: pencil quartics/cubics, cube quadratics, hyperdeterminant.

Conventions are pinned by tests against the printed integral models:
slicing direction i of a tensor assigns pencil variable j to index value j
in slot i, and the remaining slots index rows/columns in increasing slot
order.  Quadratic covariants of a 2x2x2 cube are q_i = -det of the pencil.
"""

from __future__ import annotations

import itertools

from .reps import rep, storage_index
from .rings import Ring
from .tensors import Tensor, expand


# --- tiny polynomial helpers ------------------------------------------------
# binary homogeneous polys: coefficient lists [c0..cd], ci = coeff of
# w1^(d-i) w2^i.  ternary homogeneous: dict {(a,b,c): coeff}.

def bpoly_mul(a, b, ring: Ring):
    out = [ring.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if ring.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = ring.add(out[i + j], ring.mul(x, y))
    return out


def bpoly_add(a, b, ring: Ring):
    return [ring.add(x, y) for x, y in zip(a, b)]


def bpoly_sub(a, b, ring: Ring):
    return [ring.sub(x, y) for x, y in zip(a, b)]


def bpoly_scale(c, a, ring: Ring):
    return [ring.mul(c, x) for x in a]


def det2_bpoly(m, ring: Ring):
    """det of a 2x2 matrix of binary polys (equal degree)."""
    return bpoly_sub(bpoly_mul(m[0][0], m[1][1], ring),
                     bpoly_mul(m[0][1], m[1][0], ring), ring)


def quad_disc(q, ring: Ring):
    """b^2 - 4ac of a binary quadratic [a, b, c]."""
    four = ring.from_int(4)
    return ring.sub(ring.mul(q[1], q[1]),
                    ring.mul(four, ring.mul(q[0], q[2])))


def tpoly_mul(a, b, ring: Ring):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            v = ring.mul(c1, c2)
            out[m] = ring.add(out.get(m, ring.zero()), v)
    return out


def det3_tpoly(m, ring: Ring):
    """det of a 3x3 matrix of ternary linear forms."""
    out = {}
    for perm, sgn in ((((0, 1, 2)), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                      ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
        term = tpoly_mul(tpoly_mul(m[0][perm[0]], m[1][perm[1]], ring),
                         m[2][perm[2]], ring)
        for mon, c in term.items():
            cur = out.get(mon, ring.zero())
            out[mon] = ring.add(cur, c) if sgn > 0 else ring.sub(cur, c)
    return out


# --- 2x2x2 cubes -------------------------------------------------------------

def cube_slices(cube: dict, slot: int):
    """The two 2x2 matrices of a 2x2x2 cube dict along `slot`."""
    others = [s for s in range(3) if s != slot]
    mats = []
    for val in range(2):
        rows = []
        for r in range(2):
            row = []
            for c in range(2):
                idx = [0, 0, 0]
                idx[slot] = val
                idx[others[0]] = r
                idx[others[1]] = c
                row.append(cube[tuple(idx)])
            rows.append(tuple(row))
        mats.append(tuple(rows))
    return mats


def cube_quadratics(cube: dict, ring: Ring):
    """Three covariant binary quadratics q_i = -det(M_i1 z1 + M_i2 z2)."""
    quads = []
    for slot in range(3):
        m1, m2 = cube_slices(cube, slot)
        pencil = [[[m1[r][c], m2[r][c]] for c in range(2)] for r in range(2)]
        d = det2_bpoly(pencil, ring)
        quads.append([ring.neg(c) for c in d])
    return quads


def hyperdet(cube: dict, ring: Ring):
    """Cayley hyperdeterminant of a 2x2x2 cube (= disc of any q_i)."""
    return quad_disc(cube_quadratics(cube, ring)[0], ring)


def cube_from_array(arr, ring: Ring = None) -> dict:
    return {(i, j, k): arr[i][j][k]
            for i in range(2) for j in range(2) for k in range(2)}


# --- covariant binary quartics ----------------------------------------------

def _hypercube_pencil_quartic(full: dict, slot: int, ring: Ring):
    """hyperdet(w1*C1 + w2*C2) where C_a is the slot slice; 5 coeffs."""
    others = [s for s in range(4) if s != slot]
    # pencil cube entries are linear [c_w1, c_w2]
    pencil = {}
    for idx3 in itertools.product(range(2), repeat=3):
        ent = []
        for val in range(2):
            idx = [0, 0, 0, 0]
            idx[slot] = val
            for s, v in zip(others, idx3):
                idx[s] = v
            ent.append(full[tuple(idx)])
        pencil[idx3] = ent
    # q = -det of pencil-in-direction-0 of the cube: entries are linear forms
    m = [[None, None], [None, None]]
    m1 = [[pencil[(0, r, c)] for c in range(2)] for r in range(2)]
    m2 = [[pencil[(1, r, c)] for c in range(2)] for r in range(2)]
    # quadratic covariant in fresh vars (z1,z2) with coefficients that are
    # binary (w1,w2)-linear forms; compute disc symbolically over w.
    # q(z) = -det(z1*M1 + z2*M2): coefficients a=-det M1, c=-det M2,
    # b = -(det(M1+M2)-det M1-det M2); all are (w)-quadratics.
    def det_w(mat):
        return bpoly_sub(bpoly_mul(mat[0][0], mat[1][1], ring),
                         bpoly_mul(mat[0][1], mat[1][0], ring), ring)

    msum = [[bpoly_add(m1[r][c], m2[r][c], ring) for c in range(2)]
            for r in range(2)]
    d1 = det_w(m1)
    d2 = det_w(m2)
    ds = det_w(msum)
    a = [ring.neg(x) for x in d1]
    c = [ring.neg(x) for x in d2]
    b = [ring.neg(ring.sub(ds[i], ring.add(d1[i], d2[i]))) for i in range(3)]
    four = ring.from_int(4)
    disc = bpoly_sub(bpoly_mul(b, b, ring),
                     bpoly_scale(four, bpoly_mul(a, c, ring), ring), ring)
    return tuple(disc)


def _quartics_raw(v: Tensor):
    """Integral covariant quartics (hyperdet pencils, no normalization).

    For hypercube-type reps these equal 4 * f(w2, w1) where f is the
    normalized covariant; roots in P^1 are the same either way, so the
    raw forms serve reducibility work in every characteristic.
    """
    info = v.info
    ring = v.ring
    if info.name == "binary-quartic":
        return [tuple(v.coeffs)]
    if info.name == "bideg22":
        M = [[v.coeffs[3 * r + c] for c in range(3)] for r in range(3)]
        # quartic in w: disc of the form as a quadratic in z, and vice versa
        A = [M[0][0], M[1][0], M[2][0]]
        B = [M[0][1], M[1][1], M[2][1]]
        C = [M[0][2], M[1][2], M[2][2]]
        four = ring.from_int(4)
        f_w = bpoly_sub(bpoly_mul(B, B, ring),
                        bpoly_scale(four, bpoly_mul(A, C, ring), ring), ring)
        A2, B2, C2 = M[0], M[1], M[2]
        f_z = bpoly_sub(bpoly_mul(B2, B2, ring),
                        bpoly_scale(four, bpoly_mul(A2, C2, ring), ring), ring)
        return [tuple(f_w), tuple(f_z)]
    if info.name == "hypercube":
        full = expand(v)
        return [_hypercube_pencil_quartic(full, s, ring) for s in range(4)]
    if info.name == "sym3-hypercube":
        full = expand(v)
        return [_hypercube_pencil_quartic(full, 0, ring),
                _hypercube_pencil_quartic(full, 1, ring)]
    raise ValueError(f"{v.rep} has no binary quartic covariants")


def covariant_quartics(v: Tensor):
    """One binary quartic per GL2 factor, in the integral-model convention.

    For the bidegree (2,2) case the raw discriminants already agree with
    the printed models; for (triply symmetric) hypercubes the convention
    is f(w1, w2) = hyperdet(w2 C1 + w1 C2) / 4, which reproduces the
    printed covariant of the trivial-bundle section exactly.
    """
    info = v.info
    ring = v.ring
    raw = _quartics_raw(v)
    if info.name in ("binary-quartic", "bideg22"):
        return raw
    quarter = ring.div(ring.one(), ring.from_int(4))
    return [tuple(ring.mul(quarter, c) for c in reversed(q)) for q in raw]


# --- covariant ternary cubics -------------------------------------------------

def _cube3_pencil_cubic(full: dict, slot: int, ring: Ring):
    """det of the slot-direction matrix pencil; 10 lex coefficients."""
    others = [s for s in range(3) if s != slot]
    zero = {}
    mat = []
    for r in range(3):
        row = []
        for c in range(3):
            lin = {}
            for val in range(3):
                idx = [0, 0, 0]
                idx[slot] = val
                idx[others[0]] = r
                idx[others[1]] = c
                mon = tuple(1 if t == val else 0 for t in range(3))
                lin[mon] = full[tuple(idx)]
            row.append(lin)
        mat.append(row)
    d = det3_tpoly(mat, ring)
    mons = rep("ternary-cubic").indices
    return tuple(d.get(m, ring.zero()) for m in mons)


def covariant_cubics(v: Tensor):
    """One ternary cubic per GL3 factor (10 lex coefficients each)."""
    info = v.info
    ring = v.ring
    if info.name == "ternary-cubic":
        return [tuple(v.coeffs)]
    if info.name == "rubiks":
        full = expand(v)
        return [_cube3_pencil_cubic(full, s, ring) for s in range(3)]
    if info.name == "sym2-rubiks":
        full = expand(v)
        return [_cube3_pencil_cubic(full, 0, ring),
                _cube3_pencil_cubic(full, 1, ring)]
    raise ValueError(f"{v.rep} has no ternary cubic covariants")


def covariant_models(v: Tensor):
    """(kind, forms) with kind 'quartic' or 'cubic' per the rep's degree."""
    if v.info.d == 2:
        return "quartic", covariant_quartics(v)
    return "cubic", covariant_cubics(v)

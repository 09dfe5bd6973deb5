"""Invariant vectors, discriminants and heights for the seven spaces.

Raw invariants are structural (classical quartic I/J, pencil contractions,
flattening determinants, trace powers of the cyclic bracket operator on
gl3^3 + V + V*); the linear combinations taking them to the family
coefficients a_i are calibrated once against the trivial-bundle sections
and stored in ``_data/invariant_tables.json`` (regenerate with
``python -m coregular.tools.gen_tables``).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .covariants import covariant_cubics, covariant_quartics
from .reps import COEFF_DEGREE, FAMILY_COEFFS, rep
from .rings import QQ, Ring, RingError
from .tensors import Tensor, expand
from .weier import family_curve


# ---------------------------------------------------------------------------
# classical binary form invariants (exact over any ring)

def quartic_I(c, R: Ring):
    c0, c1, c2, c3, c4 = c
    return R.add(R.sub(R.mul(R.from_int(12), R.mul(c0, c4)),
                       R.mul(R.from_int(3), R.mul(c1, c3))),
                 R.mul(c2, c2))


def quartic_J(c, R: Ring):
    c0, c1, c2, c3, c4 = c
    t = R.mul(R.from_int(72), R.mul(c0, R.mul(c2, c4)))
    t = R.sub(t, R.mul(R.from_int(27), R.mul(c0, R.mul(c3, c3))))
    t = R.sub(t, R.mul(R.from_int(27), R.mul(c4, R.mul(c1, c1))))
    t = R.add(t, R.mul(R.from_int(9), R.mul(c1, R.mul(c2, c3))))
    return R.sub(t, R.mul(R.from_int(2), R.mul(c2, R.mul(c2, c2))))


def disc_binary_quartic(c, R: Ring):
    """The integral discriminant of a binary quartic ((4I^3 - J^2)/27)."""
    a, b, cc, d, e = c
    terms = [
        (256, (a, a, a, e, e, e)), (-192, (a, a, b, d, e, e)),
        (-128, (a, a, cc, cc, e, e)), (144, (a, a, cc, d, d, e)),
        (-27, (a, a, d, d, d, d)), (144, (a, b, b, cc, e, e)),
        (-6, (a, b, b, d, d, e)), (-80, (a, b, cc, cc, d, e)),
        (18, (a, b, cc, d, d, d)), (16, (a, cc, cc, cc, cc, e)),
        (-4, (a, cc, cc, cc, d, d)), (-27, (b, b, b, b, e, e)),
        (18, (b, b, b, cc, d, e)), (-4, (b, b, b, d, d, d)),
        (-4, (b, b, cc, cc, cc, e)), (1, (b, b, cc, cc, d, d)),
    ]
    acc = R.zero()
    for k, fs in terms:
        t = R.from_int(k)
        for f in fs:
            t = R.mul(t, f)
        acc = R.add(acc, t)
    return acc


def disc_binary_cubic(c, R: Ring):
    a, b, cc, d = c
    t = R.mul(R.from_int(18), R.mul(R.mul(a, b), R.mul(cc, d)))
    t = R.sub(t, R.mul(R.from_int(4), R.mul(R.mul(b, b), R.mul(b, d))))
    t = R.add(t, R.mul(R.mul(b, b), R.mul(cc, cc)))
    t = R.sub(t, R.mul(R.from_int(4), R.mul(a, R.mul(cc, R.mul(cc, cc)))))
    return R.sub(t, R.mul(R.from_int(27), R.mul(R.mul(a, a), R.mul(d, d))))


# ---------------------------------------------------------------------------
# table access

_TABLES = None


def tables() -> dict:
    global _TABLES
    if _TABLES is None:
        data = resources.files("coregular").joinpath(
            "_data/invariant_tables.json").read_text()
        _TABLES = json.loads(data)
    return _TABLES


def eval_terms(terms, coeffs, R: Ring):
    """Evaluate a stored term list [[coeff, [exps]], ...] exactly."""
    acc = R.zero()
    for cstr, exps in terms:
        t = R.from_fraction(Fraction(cstr))
        for i, e in enumerate(exps):
            if e:
                t = R.mul(t, R.pow(coeffs[i], e))
        acc = R.add(acc, t)
    return acc


# ---------------------------------------------------------------------------
# raw invariants per representation

def _raws_binary_quartic(v: Tensor):
    R = v.ring
    return {"I": quartic_I(v.coeffs, R), "J": quartic_J(v.coeffs, R)}


def _raws_ternary_cubic(v: Tensor):
    R = v.ring
    tb = tables()["ternary-cubic"]["raw_polys"]
    return {name: eval_terms(terms, v.coeffs, R) for name, terms in tb.items()}


def _raws_bideg22(v: Tensor):
    R = v.ring
    tb = tables()["bideg22"]["raw_polys"]
    return {name: eval_terms(terms, v.coeffs, R) for name, terms in tb.items()}


def bideg22_pair_invariants(nine, R: Ring):
    """(degree-2, degree-3) invariants of a bidegree (2,2) coefficient 9-vector."""
    tb = tables()["bideg22"]["raw_polys"]
    return (eval_terms(tb["B2"], nine, R), eval_terms(tb["B3"], nine, R))


_EPS2 = {(0, 1): 1, (1, 0): -1}

_PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def _det_small(m, R: Ring):
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = R.zero()
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        t = R.mul(m[0][j], _det_small(sub, R))
        acc = R.add(acc, t) if j % 2 == 0 else R.sub(acc, t)
    return acc


def _raws_hypercube(v: Tensor):
    R = v.ring
    full = expand(v)
    raws = {}
    # H: full epsilon contraction, one term per complementary index pair
    acc = R.zero()
    for idx in itertools.product(range(2), repeat=4):
        comp = tuple(1 - t for t in idx)
        if idx < comp:
            sgn = 1
            for a, b in zip(idx, comp):
                sgn *= _EPS2[(a, b)]
            term = R.mul(full[idx], full[comp])
            acc = R.add(acc, term) if sgn > 0 else R.sub(acc, term)
    raws["H"] = acc
    for pi, (rows, cols) in enumerate(_PAIRINGS):
        mat = []
        for r in itertools.product(range(2), repeat=2):
            row = []
            for cidx in itertools.product(range(2), repeat=2):
                idx = [0] * 4
                idx[rows[0]], idx[rows[1]] = r
                idx[cols[0]], idx[cols[1]] = cidx
                row.append(full[tuple(idx)])
            mat.append(row)
        raws[f"L{pi}"] = _det_small(mat, R)
        # contraction quadric: x on rows[0], y on rows[1], det over cols
        nine = [R.zero()] * 9
        for a in range(2):
            for b in range(2):
                for ap in range(2):
                    for bp in range(2):
                        def ent(c0, c1, aa, bb):
                            idx = [0] * 4
                            idx[rows[0]], idx[rows[1]] = aa, bb
                            idx[cols[0]], idx[cols[1]] = c0, c1
                            return full[tuple(idx)]
                        pos = 3 * (a + ap) + (b + bp)
                        t = R.sub(R.mul(ent(0, 0, a, b), ent(1, 1, ap, bp)),
                                  R.mul(ent(0, 1, a, b), ent(1, 0, ap, bp)))
                        nine[pos] = R.add(nine[pos], t)
        B2v, B3v = bideg22_pair_invariants(nine, R)
        raws[f"A{pi}"] = B2v
        raws[f"C{pi}"] = B3v
    return raws


_EPS3 = {}
for _p, _s in ((((0, 1, 2)), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
               ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
    _EPS3[_p] = _s

_IDX27 = tuple(itertools.product(range(3), repeat=3))
_POS27 = {t: i for i, t in enumerate(_IDX27)}
_G0 = tuple((s, a, b) for s in range(3) for a in range(3) for b in range(3))
_G0POS = {t: i for i, t in enumerate(_G0)}


def _mat_zero(n, R: Ring):
    z = R.zero()
    return [[z] * n for _ in range(n)]


def _matmul(A, B, R: Ring):
    n = len(A)
    Bt = list(zip(*B))
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(n):
            acc = R.zero()
            for a, b in zip(Ai, Bt[j]):
                if not R.is_zero(a) and not R.is_zero(b):
                    acc = R.add(acc, R.mul(a, b))
            row.append(acc)
        out.append(row)
    return out


def _trace(A, R: Ring):
    acc = R.zero()
    for i in range(len(A)):
        acc = R.add(acc, A[i][i])
    return acc


def _trace_prod(A, B, R: Ring):
    acc = R.zero()
    n = len(A)
    for i in range(n):
        for j in range(n):
            acc = R.add(acc, R.mul(A[i][j], B[j][i]))
    return acc


def _rubiks_cycle(full: dict, R: Ring):
    """S = A o C o B on V, for the cyclic maps gl3^3 -> V -> V* -> gl3^3."""
    # B: V -> V*, (x wedge y)^(ijk) = eps eps eps x y
    B = _mat_zero(27, R)
    for irow, (i, j, k) in enumerate(_IDX27):
        for icol, (i2, j2, k2) in enumerate(_IDX27):
            if i == i2 or j == j2 or k == k2:
                continue
            i1, j1, k1 = 3 - i - i2, 3 - j - j2, 3 - k - k2
            s = _EPS3[(i, i1, i2)] * _EPS3[(j, j1, j2)] * _EPS3[(k, k1, k2)]
            x = full[(i1, j1, k1)]
            B[irow][icol] = R.add(B[irow][icol],
                                  x if s > 0 else R.neg(x))
    # C: V* -> gl3^3, mu(x, xi)^s_{ab} = sum over slot-s contraction
    C = _mat_zero(27, R)
    for irow, (s, a, b) in enumerate(_G0):
        for rest in itertools.product(range(3), repeat=2):
            xi = [0, 0, 0]
            xi[s] = b
            xx = [0, 0, 0]
            xx[s] = a
            o = [t for t in range(3) if t != s]
            xi[o[0]], xi[o[1]] = rest
            xx[o[0]], xx[o[1]] = rest
            icol = _POS27[tuple(xi)]
            C[irow][icol] = R.add(C[irow][icol], full[tuple(xx)])
    # A: gl3^3 -> V, E^s_{ab} . x
    A = _mat_zero(27, R)
    for irow, idx in enumerate(_IDX27):
        for s in range(3):
            a = idx[s]
            for b in range(3):
                src = list(idx)
                src[s] = b
                icol = _G0POS[(s, a, b)]
                A[irow][icol] = R.add(A[irow][icol], full[tuple(src)])
    return _matmul(A, _matmul(C, B, R), R)


_S3_PERMS = tuple(itertools.permutations(range(3)))
_S3_SIGN = {p: _EPS3[p] for p in _S3_PERMS}


def _adj3(m, R: Ring):
    def c(i1, j1, i2, j2):
        return R.sub(R.mul(m[i1][j1], m[i2][j2]), R.mul(m[i1][j2], m[i2][j1]))
    rows = []
    for j in range(3):
        row = []
        for i in range(3):
            i1, i2 = [t for t in range(3) if t != i]
            j1, j2 = [t for t in range(3) if t != j]
            v = c(i1, j1, i2, j2)
            row.append(v if (i + j) % 2 == 0 else R.neg(v))
        rows.append(row)
    return rows


def _mat3mul(a, b, R: Ring):
    return [[R.add(R.add(R.mul(a[i][0], b[0][j]), R.mul(a[i][1], b[1][j])),
                   R.mul(a[i][2], b[2][j])) for j in range(3)]
            for i in range(3)]


def _rubiks_deg9(full: dict, R: Ring):
    """Degree-9 invariant: epsilon-contracted adjugate-trace pattern.

    With A_u the direction-1 slices and adj~ the polarized adjugate, this
    is sum over three permutations of sgn-weighted traces of alternating
    slice/adjugate products.  It is the odd invariant the trace powers of
    the cyclic bracket operator cannot see.
    """
    A = []
    for u in range(3):
        A.append([[full[(u, j, k)] for k in range(3)] for j in range(3)])
    adjs = {}
    for x in range(3):
        for y in range(3):
            if (x, y) not in adjs:
                s = [[R.add(A[x][i][j], A[y][i][j]) for j in range(3)]
                     for i in range(3)]
                val = _adj3(s, R)
                ax = _adj3(A[x], R)
                ay = _adj3(A[y], R)
                pol = [[R.sub(R.sub(val[i][j], ax[i][j]), ay[i][j])
                        for j in range(3)] for i in range(3)]
                adjs[(x, y)] = pol
                adjs[(y, x)] = pol
    acc = R.zero()
    for al in _S3_PERMS:
        for be in _S3_PERMS:
            for ga in _S3_PERMS:
                sgn = _S3_SIGN[al] * _S3_SIGN[be] * _S3_SIGN[ga]
                m = _mat3mul(A[al[0]], adjs[(be[0], ga[0])], R)
                m = _mat3mul(m, A[al[1]], R)
                m = _mat3mul(m, adjs[(be[1], ga[1])], R)
                m = _mat3mul(m, A[al[2]], R)
                m = _mat3mul(m, adjs[(be[2], ga[2])], R)
                t = R.add(R.add(m[0][0], m[1][1]), m[2][2])
                acc = R.add(acc, t) if sgn > 0 else R.sub(acc, t)
    return acc


def _raws_rubiks(v: Tensor):
    R = v.ring
    full = expand(v)
    S = _rubiks_cycle(full, R)
    S2 = _matmul(S, S, R)
    sf1 = eval_terms(tables()["ternary-cubic"]["raw_polys"]["S"],
                     covariant_cubics(v)[0], R)
    return {"t6": _trace(S2, R), "t12": _trace_prod(S2, S2, R),
            "j9": _rubiks_deg9(full, R), "sf1": sf1}


def embed_symmetric(v: Tensor) -> Tensor:
    """sym2-rubiks -> rubiks, sym3-hypercube -> hypercube."""
    if v.rep == "sym2-rubiks":
        parent = "rubiks"
    elif v.rep == "sym3-hypercube":
        parent = "hypercube"
    else:
        raise ValueError(f"{v.rep} is not a symmetrized representation")
    full = expand(v)
    return Tensor(parent, v.ring,
                  tuple(full[idx] for idx in rep(parent).indices))


def _raws_sym2(v: Tensor):
    w = embed_symmetric(v)
    inner = _apply_map("rubiks", _raws_rubiks(w), v.ring)
    return {"a2R": inner["a2"], "a3R": inner["a3"], "a4R": inner["a4"]}


def _raws_sym3(v: Tensor):
    w = embed_symmetric(v)
    inner = _apply_map("hypercube", _raws_hypercube(w), v.ring)
    return {"a1H": inner["a1"], "a2H": inner["a2"], "a2pH": inner["a2p"],
            "a3H": inner["a3"]}


_RAW_FUNCS = {
    "binary-quartic": _raws_binary_quartic,
    "ternary-cubic": _raws_ternary_cubic,
    "bideg22": _raws_bideg22,
    "hypercube": _raws_hypercube,
    "rubiks": _raws_rubiks,
    "sym2-rubiks": _raws_sym2,
    "sym3-hypercube": _raws_sym3,
}


def _apply_map(rep_name: str, raws: dict, R: Ring) -> dict:
    out = {}
    for name, terms in tables()[rep_name]["map"].items():
        acc = R.zero()
        for cstr, mono in terms:
            t = R.from_fraction(Fraction(cstr))
            for raw_name, e in mono.items():
                t = R.mul(t, R.pow(raws[raw_name], e))
            acc = R.add(acc, t)
        out[name] = acc
    return out


# ---------------------------------------------------------------------------
# public API

@dataclass(frozen=True)
class InvariantVector:
    family: str
    a: dict
    ring: Ring

    def __post_init__(self):
        names = FAMILY_COEFFS[self.family]
        if tuple(self.a) != names:
            object.__setattr__(
                self, "a", {k: self.a[k] for k in names})
        if self.family == "F2":
            R = self.ring
            s = R.add(R.add(self.a["a2"], self.a["a2p"]), self.a["a2pp"])
            if not R.is_zero(s):
                raise ValueError("F2 invariants need a2 + a2' + a2'' = 0")

    def values(self):
        return tuple(self.a[k] for k in FAMILY_COEFFS[self.family])

    def to_json(self):
        return {"family": self.family,
                "a": {k: self.ring.fmt(x) for k, x in self.a.items()}}

    @staticmethod
    def from_json(d, ring: Ring = QQ):
        return InvariantVector(
            d["family"], {k: ring.parse(x) for k, x in d["a"].items()}, ring)


def invariant_vector(family: str, a: dict, ring: Ring = QQ) -> InvariantVector:
    conv = {k: ring.from_fraction(Fraction(v)) if not isinstance(v, int)
            else ring.from_int(v) for k, v in a.items()}
    if family == "F2" and "a2pp" not in conv:
        conv["a2pp"] = ring.neg(ring.add(conv["a2"], conv["a2p"]))
    return InvariantVector(family, conv, ring)


def invariants(v: Tensor) -> InvariantVector:
    """The family coefficients a_i of a tensor, exactly.

    Works over QQ (integer tensors are lifted) and over prime fields
    whose characteristic does not divide any calibration denominator
    (2 and 3 are excluded for most representations).
    """
    R = v.ring
    if R.kind == "exact-integer":
        v = v.map_ring(QQ)
        R = QQ
    raws = _RAW_FUNCS[v.rep](v)
    a = _apply_map(v.rep, raws, R)
    return InvariantVector(v.info.family, a, R)


def _as_invariants(x) -> InvariantVector:
    if isinstance(x, Tensor):
        return invariants(x)
    if isinstance(x, InvariantVector):
        return x
    raise TypeError("expected a Tensor or InvariantVector")


def jacobian_ij(x):
    """(I, J) of the short Weierstrass model of the associated curve."""
    iv = _as_invariants(x)
    R = iv.ring
    curve = family_curve(iv.family, iv.a, R)
    c4, c6 = curve.c_invariants()
    return (R.div(c4, R.from_int(16)), R.div(c6, R.from_int(32)))


def discriminant(x):
    """The family discriminant (via the Weierstrass model), exactly."""
    iv = _as_invariants(x)
    return family_curve(iv.family, iv.a, iv.ring).discriminant()


def alpha_delta_prime(x):
    """(alpha, Delta') for the factoring families F1(2) and F1(3)."""
    iv = _as_invariants(x)
    R = iv.ring
    if iv.family == "F1(2)":
        a2, a4 = iv.a["a2"], iv.a["a4"]
        return a4, R.sub(R.mul(a2, a2), R.mul(R.from_int(4), a4))
    if iv.family == "F1(3)":
        a1, a3 = iv.a["a1"], iv.a["a3"]
        return a3, R.sub(R.pow(a1, 3), R.mul(R.from_int(27), a3))
    raise ValueError(f"family {iv.family} has no alpha/Delta' factorization")


def reduced_discriminant(x):
    """alpha * Delta' for F1(2)/F1(3); the discriminant otherwise."""
    iv = _as_invariants(x)
    if iv.family in ("F1(2)", "F1(3)"):
        al, dp = alpha_delta_prime(iv)
        return iv.ring.mul(al, dp)
    return discriminant(iv)


def height(x):
    """(value, (name, |a_i|, exponent)) with value = max |a_i|^(12/deg)."""
    iv = _as_invariants(x)
    if iv.ring.p is not None:
        raise RingError("height needs an archimedean coefficient ring")
    best = None
    for name in FAMILY_COEFFS[iv.family]:
        e = 12 // COEFF_DEGREE[name]
        val = abs(Fraction(iv.a[name])) ** e
        if best is None or val > best[0]:
            best = (val, (name, abs(Fraction(iv.a[name])), e))
    return best


def height_value(x) -> Fraction:
    return height(x)[0]

"""Registry of the seven coregular representations.

Index conventions (fixed once, used everywhere including JSON):

* ``binary-quartic``  -- 5 form coefficients of w1^4, w1^3 w2, ..., w2^4.
* ``ternary-cubic``   -- 10 form coefficients in lex order on exponent
  triples of (X, Y, Z): X^3, X^2 Y, X^2 Z, X Y^2, X Y Z, X Z^2, Y^3,
  Y^2 Z, Y Z^2, Z^3.
* ``bideg22``         -- 9 form coefficients M[(ij),(kl)], row-major with
  rows the w-monomials w1^2, w1 w2, w2^2 and columns the z-monomials.
* ``hypercube``       -- 16 tensor entries b_{ijkl}, lex on (i,j,k,l).
* ``sym3-hypercube``  -- 8 tensor entries b_{i,jkl} with j<=k<=l, lex;
  expands to a hypercube symmetric in the last three slots.
* ``rubiks``          -- 27 tensor entries b_{ijk}, lex.
* ``sym2-rubiks``     -- 18 tensor entries b_{i,jk} with j<=k, lex;
  expands to a cube symmetric in the last two slots.

Tensor entries are stored undivided (the sections of the integral-model
formulas have integer entries in this convention).  Form coefficients are
the coefficients of the monomials themselves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


@dataclass(frozen=True)
class RepInfo:
    name: str
    n: int                     # storage dimension
    d: int                     # degree of the line bundle (2 or 3)
    family: str                # invariant family tag
    storage: str               # 'form' or 'tensor'
    shape: tuple               # full tensor shape, e.g. (2,2,2,2)
    slot_factor: tuple         # tensor slot -> group factor index
    factor_sizes: tuple        # matrix size per group factor
    det_twist: tuple | None    # PGL cases: act multiplies by prod det^-e
    det_constraint: tuple | None  # SL cases: prod det^e == 1 required
    sym_slots: tuple = ()      # blocks of slots tied symmetrically
    perm_slots: int = 0        # number of permutable slots/blocks
    indices: tuple = field(default=(), compare=False)


def _form_monomials(nvars: int, deg: int):
    """Exponent tuples of degree `deg` in `nvars` variables, lex order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), deg):
        e = [0] * nvars
        for c in combo:
            e[c] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


def _tensor_indices(shape, sym_blocks):
    """Canonical (sorted within symmetric blocks) full-index tuples, lex."""
    out = []
    for idx in itertools.product(*[range(s) for s in shape]):
        ok = True
        for block in sym_blocks:
            vals = [idx[s] for s in block]
            if vals != sorted(vals):
                ok = False
                break
        if ok:
            out.append(idx)
    return tuple(out)


_BQ_MONS = _form_monomials(2, 4)                     # (4,0),(3,1),...,(0,4)
_TC_MONS = _form_monomials(3, 3)
_B22_MONS = tuple(
    (wm, zm) for wm in _form_monomials(2, 2) for zm in _form_monomials(2, 2)
)

REPS: dict[str, RepInfo] = {}


def _register(info: RepInfo):
    REPS[info.name] = info


_register(RepInfo(
    name="binary-quartic", n=5, d=2, family="F0", storage="form",
    shape=(2, 2, 2, 2), slot_factor=(0, 0, 0, 0), factor_sizes=(2,),
    det_twist=(2,), det_constraint=None, indices=_BQ_MONS))

_register(RepInfo(
    name="ternary-cubic", n=10, d=3, family="F0", storage="form",
    shape=(3, 3, 3), slot_factor=(0, 0, 0), factor_sizes=(3,),
    det_twist=(1,), det_constraint=None, indices=_TC_MONS))

_register(RepInfo(
    name="bideg22", n=9, d=2, family="F1", storage="form",
    shape=(2, 2, 2, 2), slot_factor=(0, 0, 1, 1), factor_sizes=(2, 2),
    det_twist=(1, 1), det_constraint=None, perm_slots=2, indices=_B22_MONS))

_register(RepInfo(
    name="hypercube", n=16, d=2, family="F2", storage="tensor",
    shape=(2, 2, 2, 2), slot_factor=(0, 1, 2, 3), factor_sizes=(2, 2, 2, 2),
    det_twist=None, det_constraint=(1, 1, 1, 1), perm_slots=4,
    indices=_tensor_indices((2, 2, 2, 2), ())))

_register(RepInfo(
    name="sym3-hypercube", n=8, d=2, family="F1(3)", storage="tensor",
    shape=(2, 2, 2, 2), slot_factor=(0, 1, 1, 1), factor_sizes=(2, 2),
    det_twist=None, det_constraint=(1, 3), sym_slots=((1, 2, 3),),
    indices=_tensor_indices((2, 2, 2, 2), ((1, 2, 3),))))

_register(RepInfo(
    name="rubiks", n=27, d=3, family="F1", storage="tensor",
    shape=(3, 3, 3), slot_factor=(0, 1, 2), factor_sizes=(3, 3, 3),
    det_twist=None, det_constraint=(1, 1, 1), perm_slots=3,
    indices=_tensor_indices((3, 3, 3), ())))

_register(RepInfo(
    name="sym2-rubiks", n=18, d=3, family="F1(2)", storage="tensor",
    shape=(3, 3, 3), slot_factor=(0, 1, 1), factor_sizes=(3, 3),
    det_twist=None, det_constraint=(1, 2), sym_slots=((1, 2),),
    indices=_tensor_indices((3, 3, 3), ((1, 2),))))


REP_NAMES = tuple(REPS)

FAMILY_COEFFS = {
    "F0": ("a4", "a6"),
    "F1": ("a2", "a3", "a4"),
    "F1(2)": ("a2", "a4"),
    "F1(3)": ("a1", "a3"),
    "F2": ("a1", "a2", "a2p", "a2pp", "a3"),
}

# degree used in the height exponent 12/i for each coefficient name
COEFF_DEGREE = {"a1": 1, "a2": 2, "a2p": 2, "a2pp": 2, "a3": 3, "a4": 4, "a6": 6}


def rep(name: str) -> RepInfo:
    try:
        return REPS[name]
    except KeyError:
        raise KeyError(f"unknown representation {name!r}") from None


def storage_index(name: str):
    """Map canonical index -> position in the coefficient vector."""
    info = rep(name)
    return {idx: i for i, idx in enumerate(info.indices)}


def canonical_tensor_index(info: RepInfo, idx):
    """Sort a full tensor index within the symmetric blocks."""
    idx = list(idx)
    for block in info.sym_slots:
        vals = sorted(idx[s] for s in block)
        for s, v in zip(block, vals):
            idx[s] = v
    return tuple(idx)

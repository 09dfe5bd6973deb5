"""Integral-model sections: explicit tensors with prescribed invariants.

Implements the trivial-bundle (Kostant) sections and the pointed-bundle
formulas for all seven representations, the almost-integral coset
representative reduction, marked-point addition, and model minimality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .reps import FAMILY_COEFFS
from .rings import QQ, Ring, is_prime, valuation
from .tensors import Tensor
from .weier import Curve, family_curve


class SectionError(ValueError):
    pass


class MarkedPointPole(SectionError):
    """Addition formula hit its pole (Q = O or Q = -P)."""


@dataclass(frozen=True)
class EllipticModel:
    family: str
    a: dict  # coefficient name -> Fraction

    def __post_init__(self):
        names = FAMILY_COEFFS[self.family]
        if set(self.a) != set(names):
            raise SectionError(
                f"family {self.family} takes coefficients {names}")
        if self.family == "F2":
            if self.a["a2"] + self.a["a2p"] + self.a["a2pp"] != 0:
                raise SectionError("F2 requires a2 + a2' + a2'' = 0")

    @property
    def curve(self) -> Curve:
        return family_curve(self.family, self.a)

    def discriminant(self) -> Fraction:
        return self.curve.discriminant()

    def is_integral(self) -> bool:
        return all(Fraction(v).denominator == 1 for v in self.a.values())


def model(family: str, a: dict) -> EllipticModel:
    return EllipticModel(family, {k: Fraction(v) for k, v in a.items()})


@dataclass(frozen=True)
class BundleCase:
    degree: int                 # 2 or 3
    kind: str                   # 'trivial' or 'pointed'
    point: tuple | None = None  # (x, y) for pointed bundles
    prime: int | None = None    # enables the valuation shifts of 6(a)/7(a)

    def __post_init__(self):
        if self.degree not in (2, 3):
            raise SectionError("bundle degree must be 2 or 3")
        if self.kind not in ("trivial", "pointed"):
            raise SectionError("bundle kind must be 'trivial' or 'pointed'")
        if self.kind == "pointed" and self.point is None:
            raise SectionError("pointed bundle needs a point Q != O")


REP_FOR = {("F0", 2): "binary-quartic", ("F0", 3): "ternary-cubic",
           ("F1", 2): "bideg22", ("F1", 3): "rubiks",
           ("F1(2)", 3): "sym2-rubiks", ("F1(3)", 2): "sym3-hypercube",
           ("F2", 2): "hypercube"}


# ---------------------------------------------------------------------------
# point utilities

def on_model(E: EllipticModel, P) -> bool:
    return E.curve.on_curve(P)


def coset_representative(E: EllipticModel, Q, p: int, d: int):
    """Reduce Q modulo d E(Q_p): O for deep formal-group points, else Q.

    Kernel depth i is 1 for p not dividing d, 3 for p = d = 2 and 2 for
    p = d = 3; membership is v_p(x) <= -2i.  The returned point then obeys
    the denominator bounds (integral; 2^4 x, 2^6 y; 3^2 x, 3^3 y).
    """
    if not is_prime(p):
        raise SectionError(f"{p} is not prime")
    if d not in (2, 3):
        raise SectionError("d must be 2 or 3")
    if Q is None:
        return None
    if not on_model(E, Q):
        raise SectionError(f"point {Q} is not on the model")
    x = Fraction(Q[0])
    i = 1 if p != d else (3 if p == 2 else 2)
    if x != 0 and valuation(x, p) <= -2 * i:
        return None
    return Q


def add_marked_point(E: EllipticModel, Q):
    """Q + P for the marked point P = (0,0) on an F1 or F1(2) model."""
    if E.family not in ("F1", "F1(2)"):
        raise SectionError("marked-point addition needs an F1 or F1(2) model")
    if Q is None:
        raise MarkedPointPole("Q = O")
    x1, y1 = Fraction(Q[0]), Fraction(Q[1])
    if not on_model(E, Q):
        raise SectionError(f"point {Q} is not on the model")
    if x1 == 0:
        raise MarkedPointPole("Q = +-P is a pole of the addition formula")
    a2 = E.a["a2"]
    a3 = E.a.get("a3", Fraction(0))
    x2 = y1 * y1 / (x1 * x1) - a2 - x1
    y2 = -(y1 ** 3) / (x1 ** 3) + a2 * y1 / x1 + y1 - a3
    return (x2, y2)


# ---------------------------------------------------------------------------
# the section formulas

def _bq(coeffs):
    return Tensor("binary-quartic", QQ, tuple(Fraction(c) for c in coeffs))


def _tc(d: dict):
    from .reps import rep
    mons = rep("ternary-cubic").indices
    return Tensor("ternary-cubic", QQ,
                  tuple(Fraction(d.get(m, 0)) for m in mons))


def _b22(M):
    return Tensor("bideg22", QQ,
                  tuple(Fraction(M[r][c]) for r in range(3) for c in range(3)))


def rubiks_from_slices(s1, s2, s3) -> Tensor:
    coeffs = []
    for sl in (s1, s2, s3):
        for j in range(3):
            for k in range(3):
                coeffs.append(Fraction(sl[j][k]))
    return Tensor("rubiks", QQ, tuple(coeffs))


def sym2_from_slices(s1, s2, s3) -> Tensor:
    coeffs = []
    for sl in (s1, s2, s3):
        for j in range(3):
            for k in range(j, 3):
                if sl[j][k] != sl[k][j]:
                    raise SectionError("slices must be symmetric")
                coeffs.append(Fraction(sl[j][k]))
    return Tensor("sym2-rubiks", QQ, tuple(coeffs))


def sym3_from_pair(A, B) -> Tensor:
    """Pair of binary cubics as tensor entries (c111, c112, c122, c222)."""
    return Tensor("sym3-hypercube", QQ,
                  tuple(Fraction(c) for c in tuple(A) + tuple(B)))


def hypercube_from_blocks(m11, m12, m21, m22) -> Tensor:
    blocks = {(0, 0): m11, (0, 1): m12, (1, 0): m21, (1, 1): m22}
    coeffs = []
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    coeffs.append(Fraction(blocks[(i, j)][k][l]))
    return Tensor("hypercube", QQ, tuple(coeffs))


def _require_nondegenerate(E: EllipticModel):
    if E.discriminant() == 0:
        raise SectionError("degenerate model (discriminant 0)")


def _point_on(E: EllipticModel, Q):
    if Q is None:
        raise SectionError("pointed bundle with Q = O")
    if not on_model(E, Q):
        raise SectionError(f"point {Q} is not on the model")
    return Fraction(Q[0]), Fraction(Q[1])


def section(family: str, a: dict, bundle: BundleCase) -> Tensor:
    """The explicit tensor with the invariants of (family, a).

    Trivial bundles give the integral models with exactly the requested
    invariants; pointed bundles give the almost-integral models whose
    invariants differ by the reported bounded factors (see
    `section_scaling`).
    """
    E = model(family, a)
    rep_name = REP_FOR.get((family, bundle.degree))
    if rep_name is None:
        raise SectionError(f"family {family} has no degree-{bundle.degree} case")
    _require_nondegenerate(E)
    f = E.a
    if family == "F0" and bundle.degree == 2:
        if bundle.kind == "trivial":
            return _bq([0, 1, 0, f["a4"], f["a6"]])
        x1, y1 = _point_on(E, bundle.point)
        return _bq([Fraction(1, 4), 0, Fraction(-3, 2) * x1, -2 * y1,
                    Fraction(-3, 4) * x1 * x1 - f["a4"]])
    if family == "F0" and bundle.degree == 3:
        if bundle.kind == "trivial":
            return _tc({(3, 0, 0): 1, (0, 2, 1): -1, (1, 0, 2): f["a4"],
                        (0, 0, 3): f["a6"]})
        x1, y1 = _point_on(E, bundle.point)
        return _tc({(0, 2, 1): 1, (2, 1, 0): -1, (0, 1, 2): 3 * x1,
                    (1, 0, 2): 2 * y1, (0, 0, 3): 3 * x1 * x1 + f["a4"]})
    if family == "F1" and bundle.degree == 2:
        if bundle.kind == "trivial":
            h = Fraction(1, 2)
            return _b22([[0, 0, -h],
                         [h, 0, -f["a2"] / 2],
                         [0, -f["a3"] / 2, -f["a4"] / 2]])
        x1, y1 = _point_on(E, bundle.point)
        x2, y2 = add_marked_point(E, bundle.point)
        s = y1 / x1
        return _b22([[0, Fraction(1, 2), -s / 2],
                     [Fraction(-1, 2), s, -f["a2"] / 2 - x1 - x2 / 2],
                     [-s / 2, f["a2"] / 2 + x1 / 2 + x2, (y2 - y1) / 2]])
    if family == "F1" and bundle.degree == 3:
        if bundle.kind == "trivial":
            return rubiks_from_slices(
                [[1, 0, 0], [0, 0, -1], [0, 0, -f["a3"]]],
                [[0, 1, 0], [-1, 0, 0], [0, f["a2"], f["a4"]]],
                [[0, 0, 1], [0, 0, 0], [0, -1, 0]])
        x1, y1 = _point_on(E, bundle.point)
        x2, y2 = add_marked_point(E, bundle.point)
        s = y1 / x1
        return rubiks_from_slices(
            [[y2 - y1, x2 - x1, 0], [x2 - x1, 0, 1], [0, -1, 0]],
            [[x2 - x1, 0, 1], [0, 0, 0], [-1, 0, 0]],
            [[-f["a2"] - 2 * x1 - x2, s, 0], [-s, 1, 0], [-1, 0, 0]])
    if family == "F1(2)":
        if bundle.degree != 3:
            raise SectionError("F1(2) sections have degree 3")
        if bundle.kind == "trivial":
            # the printed model's top-left entry reads a6; the case has no
            # a6 and its covariant cubic forces a2 there
            return sym2_from_slices(
                [[f["a2"], 0, 1], [0, 1, 0], [1, 0, 0]],
                [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
                [[f["a4"], 0, 0], [0, 0, 0], [0, 0, -1]])
        x1, y1 = _point_on(E, bundle.point)
        s = y1 / x1
        return sym2_from_slices(
            [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
            [[-x1, 0, 0], [0, 1, -1], [0, -1, 1]],
            [[-f["a2"] - x1, s, -s], [s, 0, 0], [-s, 0, -1]])
    if family == "F1(3)":
        if bundle.degree != 2:
            raise SectionError("F1(3) sections have degree 2")
        if bundle.kind == "trivial":
            return sym3_from_pair((1, 0, 0, f["a3"]), (0, 0, 1, f["a1"]))
        x1, y1 = _point_on(E, bundle.point)
        if bundle.prime is None:
            return sym3_from_pair((y1, 0, 0, 1), (0, -y1, -x1, -f["a1"]))
        p = bundle.prime
        v = valuation(y1, p)
        w = valuation(x1, p) if x1 != 0 else None
        if w is None or 3 * w - v < 0:
            raise SectionError("valuation shift needs v_p(y1) <= 3 v_p(x1)")
        pw = Fraction(p)
        return sym3_from_pair(
            (y1 * pw ** (-v), 0, 0, pw ** (3 * w - v)),
            (0, -y1 * pw ** (-2 * w), -x1 * pw ** (-w), -f["a1"]))
    if family == "F2":
        if bundle.kind == "trivial":
            return hypercube_from_blocks(
                [[1, 0], [0, -f["a2"]]],
                [[0, -f["a2p"]], [-f["a2pp"], f["a3"]]],
                [[0, 0], [0, 1]],
                [[0, 1], [1, f["a1"]]])
        x1, y1 = _point_on(E, bundle.point)
        d2, d2p, d2pp = (f["a2"] - x1, f["a2p"] - x1, f["a2pp"] - x1)
        if bundle.prime is None:
            return hypercube_from_blocks(
                [[y1, 0], [0, 0]], [[0, 0], [0, 1]],
                [[0, -y1], [-y1, d2]], [[-y1, d2p], [d2pp, -f["a1"]]])
        p = bundle.prime
        v = valuation(y1, p)
        ws = [valuation(d, p) if d != 0 else None for d in (d2, d2p, d2pp)]
        if any(w is None for w in ws) or v > sum(ws):
            raise SectionError(
                "valuation shift needs v_p(y1) <= sum of v_p(a2^(i) - x1)")
        w, wp, wpp = ws
        pf = Fraction(p)
        return hypercube_from_blocks(
            [[y1 * pf ** (-v), 0], [0, 0]],
            [[0, 0], [0, pf ** (w + wp + wpp - v)]],
            [[0, -y1 * pf ** (-w - wp)],
             [-y1 * pf ** (-w - wpp), d2 * pf ** (-w)]],
            [[-y1 * pf ** (-wp - wpp), d2p * pf ** (-wp)],
             [d2pp * pf ** (-wpp), -f["a1"]]])
    raise SectionError(f"unhandled case {family}, degree {bundle.degree}")


def section_scaling(family: str, a: dict, bundle: BundleCase):
    """(tensor, per-invariant exact scaling) for a section.

    Trivial bundles scale by 1; pointed bundles report the exact rational
    factor realized/target per coefficient (None where the target is 0).
    """
    from .invariants import invariants
    t = section(family, a, bundle)
    realized = invariants(t)
    scaling = {}
    for name in FAMILY_COEFFS[family]:
        tgt = Fraction(a[name])
        got = realized.a[name]
        scaling[name] = None if tgt == 0 else got / tgt
    return t, realized, scaling


# ---------------------------------------------------------------------------
# minimality

def _primes_upto(n: int):
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i:: i] = b"\x00" * len(sieve[i * i:: i])
    return [i for i in range(2, n + 1) if sieve[i]]


def is_minimal(E: EllipticModel) -> bool:
    """True iff no prime p has p^i | a_i for every coefficient."""
    if not E.is_integral():
        raise SectionError("minimality is defined for integral models")
    from .reps import COEFF_DEGREE
    pairs = [(COEFF_DEGREE[k], int(v)) for k, v in E.a.items()]
    nonzero = [(i, abs(v)) for i, v in pairs if v != 0]
    if not nonzero:
        return False
    bound = min(int(round(v ** (1.0 / i))) + 1 for i, v in nonzero)
    for p in _primes_upto(bound):
        if all(v % p ** i == 0 for i, v in pairs):
            return False
    return True

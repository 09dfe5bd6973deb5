"""Tensor core: actions, permutations, covariants, invariants, heights."""

import random
from fractions import Fraction

import pytest

from coregular.covariants import (covariant_cubics, covariant_quartics,
                                  cube_quadratics, hyperdet)
from coregular.invariants import (alpha_delta_prime, discriminant, height,
                                  invariant_vector, invariants, jacobian_ij,
                                  quartic_I, quartic_J)
from coregular.randelems import (random_group_element, random_invariant_dict,
                                 random_tensor)
from coregular.reps import REP_NAMES, rep
from coregular.rings import GF, QQ
from coregular.sections import BundleCase, section
from coregular.tensors import (ConstraintError, GroupElement, Tensor, act,
                               compose, identity_element, permute, tensor,
                               zero_tensor)


def IJ(c, R=QQ):
    return quartic_I(c, R), quartic_J(c, R)


def test_act_identity():
    rng = random.Random(0)
    for name in REP_NAMES:
        v = random_tensor(name, QQ, rng)
        g = identity_element(name, QQ)
        assert act(g, v) == v


def test_act_involution_squared():
    rng = random.Random(1)
    v = random_tensor("hypercube", QQ, rng)
    g = GroupElement("hypercube", (
        ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1))),) +
        tuple(identity_element("hypercube", QQ).factors[1:]))
    gg = compose(g, g, QQ)
    assert act(gg, v) == v


def test_det_constraint_rejected():
    g = GroupElement("hypercube", (
        ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1))),) +
        tuple(identity_element("hypercube", QQ).factors[1:]))
    v = zero_tensor("hypercube", QQ)
    with pytest.raises(ConstraintError):
        act(g, v)


@pytest.mark.parametrize("name", REP_NAMES)
def test_act_is_left_action(name):
    rng = random.Random(2)
    for _ in range(5):
        R = GF(5)
        v = random_tensor(name, R, rng)
        g = random_group_element(name, R, rng)
        h = random_group_element(name, R, rng)
        assert act(g, act(h, v)) == act(compose(g, h, R), v)


@pytest.mark.parametrize("name", REP_NAMES)
def test_invariance_under_group(name):
    rng = random.Random(3)
    for R in (GF(5), GF(7)):
        for _ in range(20):
            v = random_tensor(name, R, rng)
            g = random_group_element(name, R, rng)
            assert invariants(act(g, v)).a == invariants(v).a


def test_permute_identity_and_transposition():
    rng = random.Random(4)
    v = random_tensor("hypercube", QQ, rng)
    assert permute((0, 1, 2, 3), v) == v
    coeffs = [Fraction(0)] * 16
    coeffs[rep("hypercube").indices.index((0, 1, 0, 0))] = Fraction(7)
    v = Tensor("hypercube", QQ, tuple(coeffs))
    w = permute((1, 0, 2, 3), v)
    assert w.coeffs[rep("hypercube").indices.index((1, 0, 0, 0))] == 7


def test_permute_composition_and_disc():
    rng = random.Random(5)
    R = GF(7)
    for _ in range(10):
        v = random_tensor("hypercube", R, rng)
        sig = tuple(rng.sample(range(4), 4))
        tau = tuple(rng.sample(range(4), 4))
        st = tuple(sig[tau[i]] for i in range(4))
        assert permute(st, v) == permute(sig, permute(tau, v))
    for _ in range(10):
        v = random_tensor("hypercube", R, rng)
        sig = tuple(rng.sample(range(4), 4))
        w = permute(sig, v)
        assert discriminant(w) == discriminant(v)


def test_permute_marked_point_symmetry():
    # swapping hypercube slots permutes a2, a2', a2'' and fixes heights
    rng = random.Random(6)
    for _ in range(10):
        a = random_invariant_dict("F2", rng, -6, 6)
        try:
            v = section("F2", a, BundleCase(2, "trivial"))
        except Exception:
            continue
        for sig in ((1, 0, 2, 3), (0, 2, 1, 3), (2, 3, 0, 1)):
            w = permute(sig, v)
            ia = invariants(w)
            twos = sorted(map(abs, (ia.a["a2"], ia.a["a2p"], ia.a["a2pp"])))
            assert twos == sorted(map(abs, map(Fraction,
                                               (a["a2"], a["a2p"], a["a2pp"]))))
            assert height(ia)[0] == height(invariants(v))[0]


def test_permute_rejects_symmetric_reps():
    rng = random.Random(7)
    v = random_tensor("sym3-hypercube", QQ, rng)
    with pytest.raises(ValueError):
        permute((1, 0), v)


# --- covariants ---------------------------------------------------------

def test_hypercube_covariant_quartic_printed_example():
    v = section("F2", {"a1": 0, "a2": 1, "a2p": -1, "a2pp": 0, "a3": 2},
                BundleCase(2, "trivial"))
    q = covariant_quartics(v)[0]
    assert q == (0, 1, 0, -1, 1)


def test_zero_tensor_zero_covariants():
    v = zero_tensor("hypercube", QQ)
    assert all(all(c == 0 for c in q) for q in covariant_quartics(v))
    v = zero_tensor("rubiks", QQ)
    assert all(all(c == 0 for c in q) for q in covariant_cubics(v))


def test_hypercube_quartics_share_IJ():
    rng = random.Random(8)
    for R in (QQ, GF(5)):
        for _ in range(12):
            v = random_tensor("hypercube", R, rng)
            ijs = {(quartic_I(q, R), quartic_J(q, R))
                   for q in covariant_quartics(v)}
            assert len(ijs) == 1


def test_rubiks_covariant_cubic_printed_example():
    # the integral model at a2 = a3 = a4 = 0 (degenerate, built raw): one
    # of its pencil determinants is exactly X^3 - Y^2 Z
    from coregular.sections import rubiks_from_slices
    v0 = rubiks_from_slices([[1, 0, 0], [0, 0, -1], [0, 0, 0]],
                            [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
                            [[0, 0, 1], [0, 0, 0], [0, -1, 0]])
    mons = rep("ternary-cubic").indices
    cub = covariant_cubics(v0)[1]
    nonzero = {m: c for m, c in zip(mons, cub) if c != 0}
    assert nonzero == {(3, 0, 0): 1, (0, 2, 1): -1}


def test_cubics_share_jacobian_ij():
    rng = random.Random(9)
    for _ in range(8):
        v = random_tensor("rubiks", QQ, rng, -4, 4)
        ijs = set()
        for c in covariant_cubics(v):
            ct = Tensor("ternary-cubic", QQ, tuple(c))
            ijs.add(jacobian_ij(ct))
        assert len(ijs) == 1
        assert ijs.pop() == jacobian_ij(v)


def test_cube_quadratics():
    # degenerate pencil: slices (identity, 0)
    cube = {}
    for j in range(2):
        for k in range(2):
            cube[(0, j, k)] = Fraction(1 if j == k else 0)
            cube[(1, j, k)] = Fraction(0)
    quads = cube_quadratics(cube, QQ)
    from coregular.covariants import quad_disc
    assert all(quad_disc(q, QQ) == 0 for q in quads)
    # top cube of a distinguished hypercube: all quadratics are c * z2^2
    cube = {(0, 0, 0): Fraction(0), (0, 0, 1): Fraction(0),
            (0, 1, 0): Fraction(0), (0, 1, 1): Fraction(3),
            (1, 0, 0): Fraction(0), (1, 0, 1): Fraction(5),
            (1, 1, 0): Fraction(7), (1, 1, 1): Fraction(11)}
    for q in cube_quadratics(cube, QQ):
        assert q[0] == 0 and q[1] == 0
    # random cubes: all three discriminants agree (= hyperdet)
    rng = random.Random(10)
    R = GF(5)
    for _ in range(20):
        cube = {idx: rng.randrange(5) for idx in
                [(i, j, k) for i in range(2) for j in range(2)
                 for k in range(2)]}
        discs = {quad_disc(q, R) for q in cube_quadratics(cube, R)}
        assert len(discs) == 1
        assert discs.pop() == hyperdet(cube, R)


# --- invariants, discriminants, heights ---------------------------------

def test_invariants_paper_examples():
    bq = tensor("binary-quartic", [0, 1, 0, 5, 7])
    assert invariants(bq).a == {"a4": 5, "a6": 7}
    assert jacobian_ij(bq) == (-15, -189)
    tc = section("F0", {"a4": 2, "a6": 3}, BundleCase(3, "trivial"))
    assert invariants(tc).a == {"a4": 2, "a6": 3}
    rb = section("F1", {"a2": 1, "a3": 2, "a4": 3}, BundleCase(3, "trivial"))
    assert invariants(rb).a == {"a2": 1, "a3": 2, "a4": 3}


def test_jacobian_ij_matches_classical_on_quartics():
    rng = random.Random(11)
    for _ in range(15):
        v = random_tensor("binary-quartic", QQ, rng)
        I, J = IJ(v.coeffs)
        assert jacobian_ij(v) == (Fraction(I), Fraction(J))


def test_discriminant_values():
    assert discriminant(invariant_vector("F0", {"a4": 0, "a6": 1})) == -432
    assert discriminant(invariant_vector("F0", {"a4": -1, "a6": 0})) == 64
    assert discriminant(invariant_vector("F1(2)", {"a2": 0, "a4": 1})) == -64


def test_reduced_discriminant_and_alpha():
    from coregular.invariants import reduced_discriminant
    iv = invariant_vector("F1(3)", {"a1": 3, "a3": 1})
    assert alpha_delta_prime(iv)[1] == 0
    iv = invariant_vector("F1(2)", {"a2": 5, "a4": 4})
    assert alpha_delta_prime(iv) == (4, 9)
    iv = invariant_vector("F0", {"a4": 1, "a6": 1})
    assert reduced_discriminant(iv) == -496
    with pytest.raises(ValueError):
        alpha_delta_prime(invariant_vector("F0", {"a4": 1, "a6": 1}))


def test_heights():
    assert height(invariant_vector("F0", {"a4": 2, "a6": 3}))[0] == 9
    assert height(invariant_vector("F0", {"a4": 0, "a6": 0}))[0] == 0
    iv = invariant_vector(
        "F2", {"a1": 1, "a2": 1, "a2p": -1, "a2pp": 0, "a3": 1})
    assert height(iv)[0] == 1


def test_discriminant_matches_covariant_route():
    import json
    from importlib import resources
    from coregular.invariants import (disc_binary_quartic, eval_terms,
                                      tables)
    rng = random.Random(12)
    for name in REP_NAMES:
        info = rep(name)
        scale = Fraction(tables()[name]["disc_scale"])
        for _ in range(6):
            v = random_tensor(name, QQ, rng, -4, 4)
            dfam = discriminant(v)
            if info.d == 2:
                droute = disc_binary_quartic(covariant_quartics(v)[0], QQ)
            else:
                droute = eval_terms(tables()["ternary-cubic"]["disc_prim"],
                                    covariant_cubics(v)[0], QQ)
            assert dfam == scale * droute


def test_tensor_json_roundtrip():
    rng = random.Random(13)
    for name in REP_NAMES:
        for R in (QQ, GF(7)):
            v = random_tensor(name, R, rng)
            assert Tensor.from_json(v.to_json()) == v


def test_section_round_trip_sample():
    rng = random.Random(14)
    for name in REP_NAMES:
        info = rep(name)
        done = 0
        while done < 10:
            a = random_invariant_dict(info.family, rng)
            try:
                t = section(info.family, a, BundleCase(info.d, "trivial"))
            except Exception:
                continue
            got = invariants(t)
            assert got.a == {k: Fraction(x) for k, x in a.items()}
            done += 1

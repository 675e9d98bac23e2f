import random
from fractions import Fraction

import pytest

from gdtwist.checks import random_automorphism, random_gamma, random_deep
from gdtwist.core import CyclicSeries, TensorSeries, cyclic_project
from gdtwist.expansion import expand, neg_omega_series, symplectic_expansion
from gdtwist.free_group import ClassTooLow, GroupWord, decompose, parse_word, word_comm
from gdtwist.pairing import kappa_tilde
from gdtwist.twist import (
    Derivation,
    TruncatedAutomorphism,
    exp_derivation,
    gdt,
    gdt_group_formula,
    gdt_group_word,
    l_gamma,
    s_derivation,
    zeta_preserved,
)

a1, b1, a2, b2 = (GroupWord.gen(l) for l in range(4))


@pytest.fixture(scope="module")
def theta():
    return symplectic_expansion(2, 5)


def S(text, genus=2, N=4):
    return TensorSeries.parse(text, genus, N)


# ---------------------------------------------------------------- derivations

def test_l_gamma(theta):
    assert l_gamma(theta, GroupWord()).is_zero()
    c = l_gamma(theta, word_comm(a1, b1))
    ab = S("a1b1 - b1a1", N=5)
    assert c.degree_part(4) == cyclic_project((ab * ab).scale(Fraction(1, 2))).degree_part(4)
    assert c.valuation() >= 4


def test_s_derivation_examples():
    D = s_derivation(cyclic_project(S("a1b1", N=2)), 1)
    assert D.images[0] == -TensorSeries.letter(0, 2, 1)
    assert D.images[2].is_zero()


def test_s_derivation_kills_omega():
    rng = random.Random(0)
    for _ in range(10):
        terms = {tuple(rng.randrange(4) for _ in range(rng.randint(2, 4))): rng.randint(-2, 2) for _ in range(3)}
        D = s_derivation(CyclicSeries(terms, 2, 5), 4)
        assert D.apply(neg_omega_series(2, 4)).is_zero()


def test_exp_zero_and_inverse_pair(theta):
    zero = Derivation({l: TensorSeries.zero(2, 5) for l in range(4)}, 2, 5)
    assert exp_derivation(zero) == TruncatedAutomorphism.identity(2, 5)
    gamma = parse_word("[a1,b1][a2,[a1,b2]]")
    f, g = gdt(theta, gamma, 2, 1), gdt(theta, gamma, 2, -1)
    assert f.compose(g) == TruncatedAutomorphism.identity(2, 5)
    assert f.inverse() == g


def test_inverse_of_composition():
    rng = random.Random(3)
    f, g = random_automorphism(rng, 2, 1, 4), random_automorphism(rng, 2, 1, 4)
    assert f.compose(g).inverse() == g.inverse().compose(f.inverse())
    assert TruncatedAutomorphism.identity(2, 4).inverse() == TruncatedAutomorphism.identity(2, 4)


def test_automorphism_roundtrip():
    rng = random.Random(4)
    f = random_automorphism(rng, 2, 1, 4)
    assert TruncatedAutomorphism.loads(f.dumps()) == f


# ---------------------------------------------------------------- gdt

def test_gdt_basic_properties(theta):
    rng = random.Random(5)
    for _ in range(4):
        gamma = random_gamma(rng, 2, 2)
        f = gdt(theta, gamma, 2, rng.choice((1, -1)))
        assert f.linear_part() == {l: {l: 1} for l in range(4)}
        assert f.johnson_depth() >= 2
        assert zeta_preserved(f, 2)


def test_gdt_preconditions(theta):
    with pytest.raises(ClassTooLow):
        gdt(theta, a1, 2)
    with pytest.raises(ValueError):
        gdt(theta, word_comm(a1, b1), 2, eps=2)
    with pytest.raises(ValueError):
        gdt(symplectic_expansion(2, 3), word_comm(a1, b1), 2)


def test_depth_of_pairs(theta):
    gm = parse_word("[a1,b1]")
    gp = parse_word("[[a1,a2],b2]") * gm
    f = gdt(theta, gm, 2, -1).compose(gdt(theta, gp, 2, 1))
    assert f.johnson_depth() >= 3
    assert TruncatedAutomorphism.identity(2, 5).johnson_depth() == 4


def test_class_k_plus_2_invariance(theta):
    rng = random.Random(6)
    for _ in range(4):
        gamma, c = random_gamma(rng, 2, 2), random_deep(rng, 2, 4)
        assert gdt(theta, gamma, 2).equal_mod(gdt(theta, gamma * c, 2), 4)


def test_commutation_of_deep_automorphisms(theta):
    rng = random.Random(7)
    f = gdt(theta.truncate(4), random_gamma(rng, 2, 2), 2, 1, 4)
    h = random_automorphism(rng, 2, 2, 4)
    assert f.compose(h) == h.compose(f)


# ---------------------------------------------------------------- group formula

def test_group_formula_trivial_pairing(theta):
    # kappa vanishes from a lower handle to a higher one, so gamma in handle 1 leaves a2 alone
    gamma = parse_word("[a1,b1]")
    dec = decompose(gamma, 2, 2, 2)
    assert all(kappa_tilde(w, a2).is_zero() for _, leaves in dec.factors for w in leaves)
    assert gdt_group_formula(dec, a2, 2, 1, theta, gamma) == expand(theta.truncate(4), a2)


def test_cross_route_small(theta):
    rng = random.Random(8)
    for i in range(3):
        gamma = random_gamma(rng, 2, 2, composite=i > 0)
        eps = rng.choice((1, -1))
        F = gdt(theta, gamma, 2, eps)
        dec = decompose(gamma, 2, 2, 2)
        for l in range(4):
            x = GroupWord.gen(l)
            tensor_route = F.apply_word(theta, x).truncate(4)
            assert gdt_group_formula(dec, x, 2, eps, theta, gamma) == tensor_route
            assert gdt_group_formula(dec, x, 2, eps, theta, gamma, refined=False) == tensor_route


def test_genuine_word(theta):
    gamma = parse_word("[a1,b1]")
    dec = decompose(gamma, 2, 2, 2)
    F = gdt(theta, gamma, 2, 1)
    for l in range(4):
        x = GroupWord.gen(l)
        W = gdt_group_word(dec, x, 2, 1, gamma)
        assert expand(theta.truncate(4), W) == F.apply_word(theta, x).truncate(4)

import random
from fractions import Fraction

import pytest

from gdtwist.checks import check_ranks, check_leading_values, check_trees, random_gamma, random_lie, SuiteConfig
from gdtwist.core import parse_lie
from gdtwist.diagrams import (
    HElement,
    glue,
    glue_trees,
    glue_via_s,
    h_dimension,
    h_rank,
    integrality_check,
    tree_generators,
    r_theta,
    tau,
    thmB_value,
    thmC_value,
)
from gdtwist.expansion import symplectic_expansion
from gdtwist.free_group import ClassTooLow, parse_word
from gdtwist.twist import TruncatedAutomorphism, gdt

A1, B1, A2, B2 = 0, 1, 2, 3


def lie(text, genus=2):
    return parse_lie(text, genus)


@pytest.fixture(scope="module")
def theta():
    return symplectic_expansion(2, 5)


# ---------------------------------------------------------------- glue

def test_glue_h_tree_by_hand():
    # Re-rooting the H-shaped tree at each of its four leaves:
    # a1 sees [b1, [a1,b1]] and b1 sees [[a1,b1], a1], once from each side.
    h = glue(lie("[a1,b1]", 1), lie("[a1,b1]", 1))
    expected = HElement({A1: lie("[b1,[a1,b1]]", 1).scale(2), B1: lie("-[a1,[a1,b1]]", 1).scale(2)}, 1, 2)
    assert h == expected
    assert str(h) == "a1 ⊗ (-2 [[a1,b1],b1])\nb1 ⊗ (-2 [a1,[a1,b1]])"


def test_glue_symmetric_and_symplectic():
    rng = random.Random(0)
    for _ in range(15):
        dx, dy = rng.randint(1, 3), rng.randint(2, 3)
        x, y = random_lie(rng, 2, dx), random_lie(rng, 2, dy)
        if x.is_zero() or y.is_zero():
            continue
        h = glue(x, y)
        assert h == glue(y, x)
        assert h.is_symplectic()
        assert h == glue_via_s(x, y)


def test_glue_respects_as_and_ihx():
    x = (A1, B2)
    # AS at the root of the second tree
    assert glue_trees(x, ((A1, B1), A2), 2) == glue_trees(x, (A2, (A1, B1)), 2).scale(-1)
    # IHX: [a1,[b1,a2]] = [[a1,b1],a2] + [b1,[a1,a2]]
    lhs = glue_trees(x, (A1, (B1, A2)), 2)
    rhs = glue_trees(x, ((A1, B1), A2), 2) + glue_trees(x, (B1, (A1, A2)), 2)
    assert lhs == rhs


def test_glue_degree_checks():
    with pytest.raises(ValueError):
        glue(lie("a1"), lie("b1"))
    with pytest.raises(ValueError):
        glue(lie("a1 + [a1,b1]"), lie("[a1,b1]"))


# ---------------------------------------------------------------- tau and r_theta

def test_tau_identity():
    assert tau(TruncatedAutomorphism.identity(2, 5), 2).is_zero()
    assert r_theta(TruncatedAutomorphism.identity(2, 5), [1, 2, 3])[2].is_zero()


def test_single_twist_value(theta):
    gamma = parse_word("[a1,b1]")
    value = thmB_value(gamma, 2, 1, 2)
    assert tau(gdt(theta, gamma, 2, 1), 2) == value
    assert value == glue(lie("[a1,b1]"), lie("[a1,b1]")).scale(Fraction(1, 2))
    assert thmB_value(gamma, 2, -1, 2) == value.scale(-1)
    assert integrality_check(value)
    assert tau(gdt(theta, gamma, 2, 1), 2, theta) == value


def test_twist_pair_values(theta):
    # genus-1 example: the glued tree has an automorphism reversing a vertex, so it is 0
    gp, gm = parse_word("[a1,b1][[a1,b1],a1]"), parse_word("[a1,b1]")
    f = gdt(theta, gm, 2, -1).compose(gdt(theta, gp, 2, 1))
    assert f.johnson_depth() >= 3
    assert tau(f, 3) == thmC_value(gp, gm, 2, 2) == glue(lie("[a1,b1]"), lie("[[a1,b1],a1]"))
    # a genus-2 pair with a nonzero value
    gp = parse_word("[[a1,a2],b2][a1,b1]")
    f = gdt(theta, gm, 2, -1).compose(gdt(theta, gp, 2, 1))
    value = thmC_value(gp, gm, 2, 2)
    assert not value.is_zero() and integrality_check(value)
    assert tau(f, 3) == value
    with pytest.raises(ClassTooLow):
        thmC_value(parse_word("[a2,b2]"), gm, 2, 2)


def test_tau_is_additive(theta):
    rng = random.Random(1)
    f, g = (gdt(theta, random_gamma(rng, 2, 2), 2, 1) for _ in range(2))
    assert tau(f.compose(g), 2) == tau(f, 2) + tau(g, 2)


def test_r_theta_lowest_component_is_tau(theta):
    rng = random.Random(2)
    f = gdt(theta, random_gamma(rng, 2, 2, composite=True), 2, -1)
    R = r_theta(f, [1, 2, 3])
    assert R[1].is_zero()
    assert R[2] == tau(f, 2)
    assert R.is_symplectic()


def test_non_integral_element():
    h = HElement({A1: lie("[a1,[a1,b1]]").scale(Fraction(1, 2))}, 2, 2)
    assert not integrality_check(h)
    assert not h.is_symplectic()


def test_suites(theta):
    assert all(r.passed for r in check_trees(SuiteConfig(count=4)))
    assert all(r.passed for r in check_leading_values(SuiteConfig(count=4)))


# ---------------------------------------------------------------- ranks

def test_h_rank_examples():
    assert h_dimension(2, 1) == 1
    assert h_dimension(1, 2) == 4
    for j, g in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)]:
        assert h_rank(j, g) == h_dimension(j, g)


def test_tree_generators_symplectic():
    gens = tree_generators(2, 2)
    assert gens and all(h.is_symplectic() and integrality_check(h) for h in gens)


def test_rank_suite():
    results = check_ranks(SuiteConfig(extra={"max_degree": 6, "max_j": 3}))
    assert all(r.passed for r in results)

import random

import pytest

from gdtwist.checks import random_gamma, random_word
from gdtwist.core import TensorSeries, parse_lie, tensor_exp, tensor_log, to_lyndon
from gdtwist.expansion import (
    Expansion,
    expand,
    make_expansion,
    neg_omega_series,
    standard_expansion,
    symplectic_defect,
    symplectic_expansion,
)
from gdtwist.free_group import GroupWord, leading_class, zeta


@pytest.fixture(scope="module")
def theta2():
    return symplectic_expansion(2, 6)


def test_standard_expansion():
    th = standard_expansion(1, 4)
    assert tensor_log(expand(th, GroupWord.gen(0))) == TensorSeries.letter(0, 1, 4)
    assert expand(th, GroupWord()) == TensorSeries.one(1, 4)
    log_zeta = tensor_log(expand(th, zeta(1)))
    assert log_zeta.degree_part(2) == parse_lie("[a1,b1]", 1).to_series(4)
    assert th.is_group_like()


def test_standard_is_symplectic_to_degree_two():
    assert symplectic_defect(standard_expansion(2, 2)).is_zero()
    assert not symplectic_defect(standard_expansion(1, 3)).is_zero()


@pytest.mark.parametrize("g", [1, 2])
def test_symplectic_expansion(g):
    th = symplectic_expansion(g, 6)
    assert tensor_log(expand(th, zeta(g))) == neg_omega_series(g, 6)
    assert expand(th, zeta(g)) == tensor_exp(neg_omega_series(g, 6))
    assert th.is_group_like()


def test_variants_are_distinct_and_symplectic():
    th0, th1 = symplectic_expansion(2, 5), symplectic_expansion(2, 5, variant=1)
    assert th0 != th1
    assert symplectic_defect(th1).is_zero() and th1.is_group_like()
    with pytest.raises(ValueError):
        symplectic_expansion(1, 3, variant=1)


def test_multiplicative_and_group_like(theta2):
    rng = random.Random(1)
    for _ in range(20):
        u, v = random_word(rng, 2, 0, 5), random_word(rng, 2, 0, 5)
        assert expand(theta2, u * v) == expand(theta2, u) * expand(theta2, v)
        to_lyndon(tensor_log(expand(theta2, u)))


def test_leading_term_independent_of_theta(theta2):
    rng = random.Random(2)
    std = standard_expansion(2, 6)
    for k in (2, 3):
        for _ in range(5):
            w = random_gamma(rng, 2, k, composite=True)
            lead = leading_class(w, k, 2).to_series(6)
            for th in (theta2, std):
                s = expand(th, w) - TensorSeries.one(2, 6)
                assert s.truncate(k - 1).is_zero()
                assert s.degree_part(k) == lead


def test_roundtrip_file(theta2, tmp_path):
    text = theta2.dumps()
    assert text.startswith("gdtwist-expansion 1\n")
    assert Expansion.loads(text) == theta2
    p = tmp_path / "theta.txt"
    p.write_text(text)
    assert make_expansion(str(p), 2, 4) == theta2.truncate(4)
    with pytest.raises(ValueError):
        make_expansion(str(p), 2, 7)


def test_make_expansion_kinds():
    assert make_expansion("standard", 1, 3) == standard_expansion(1, 3)
    assert make_expansion("symplectic:1", 1, 4) == symplectic_expansion(1, 4, 1)


def test_bad_generator_log():
    with pytest.raises(ValueError):
        Expansion(1, 3, {0: TensorSeries.letter(1, 1, 3), 1: TensorSeries.letter(1, 1, 3)})

import importlib.util
import random
from pathlib import Path

import pytest

from gdtwist.checks import check_kappa_rules, check_pairing, check_zeta, kappa_tilde_rules, random_word, SuiteConfig
from gdtwist.expansion import expand_alg, standard_expansion
from gdtwist.free_group import GroupWord, parse_word, zeta
from gdtwist.pairing import (
    AlgElement,
    BiElement,
    GeneratorPairingTable,
    TableFormatError,
    conjugation_terms,
    diamond,
    diamond_app,
    kappa,
    kappa_tilde,
    sigma_app,
)

ONE = GroupWord()
a1, b1, a2, b2 = (GroupWord.gen(l) for l in range(4))
ROOT = Path(__file__).resolve().parents[1]


def W(text):
    return parse_word(text)


# ---------------------------------------------------------------- diamond

def test_diamond_unit_and_substitution():
    c = BiElement.pure(a1, b1 * a2, 3)
    assert diamond(BiElement.unit(), c) == c
    u = W("a1 b1 b1")
    assert diamond_app(BiElement.pure(a2, a2.inv()), AlgElement.minus_one(u)) == \
        AlgElement.minus_one(a2 * u * a2.inv())


def test_diamond_associative():
    rng = random.Random(2)
    for _ in range(30):
        x, y, z = (BiElement({(random_word(rng, 2), random_word(rng, 2)): rng.randint(-2, 2) or 1
                              for _ in range(2)}) for _ in range(3))
        assert diamond(diamond(x, y), z) == diamond(x, diamond(y, z))
        u = AlgElement({random_word(rng, 2): 1, random_word(rng, 2): -2})
        assert diamond_app(diamond(x, y), u) == diamond_app(x, diamond_app(y, u))


# ---------------------------------------------------------------- kappa

def test_kappa_unit_and_product_rule():
    w = W("b1 A2 a1")
    assert kappa(ONE, w).is_zero()
    assert kappa_tilde(ONE, w).is_zero()
    lhs = kappa(a1 * b1, w)
    rhs = BiElement.pure(ONE, a1) * kappa(b1, w) + kappa(a1, w) * BiElement.pure(b1, ONE)
    assert lhs == rhs


def test_generator_table_entries():
    # chord-model values, frozen
    assert kappa(a1, a1) == BiElement.pure(a1, a1) - BiElement.pure(ONE, a1 * a1)
    assert kappa(a1, b1) == BiElement.pure(b1, a1)
    assert kappa(b1, b1) == BiElement.pure(b1, b1) - BiElement.pure(b1 * b1, ONE)
    assert kappa(a1, a2).is_zero()
    assert kappa(a2, b1) == (BiElement.pure(a2, b1) - BiElement.pure(b1 * a2, ONE)
                             - BiElement.pure(ONE, a2 * b1) + BiElement.pure(b1, a2))


def test_table_matches_chord_model():
    spec = importlib.util.spec_from_file_location("derive", ROOT / "tools" / "derive_pairing_table.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    assert mod.main(["--genus", "3"]) == 0


def test_kappa_tilde_identities_small():
    x, y = W("a1 B2"), W("b1 a2")
    assert kappa_tilde(x, y) == kappa(x, y) * BiElement.pure(x.inv(), y.inv())
    assert all(kappa_tilde_rules(W("a1 b1"), W("A2 b1"), W("b2"), [W("a1"), W("b1 b1"), W("A2")]))


def test_kappa_rules_suite():
    assert all(r.passed for r in check_kappa_rules(SuiteConfig(genus=2, count=40)))


def test_conjugation_terms():
    terms = conjugation_terms(BiElement.pure(a1, a1.inv(), 2) - BiElement.pure(ONE, ONE))
    assert terms == [(-1, ONE), (2, a1)]
    with pytest.raises(ValueError):
        conjugation_terms(BiElement.pure(a1, b1))


# ---------------------------------------------------------------- sigma and filtrations

def test_sigma_examples():
    assert sigma_app(AlgElement.word(ONE), W("a1 b1")).is_zero()
    rng = random.Random(4)
    theta = standard_expansion(2, 5)
    for _ in range(20):
        u, v, w = (random_word(rng, 2, 1, 3) for _ in range(3))
        left = expand_alg(theta, sigma_app(u * v, w))
        right = expand_alg(theta, sigma_app(v * u, w))
        assert left == right


def test_zeta_annihilated_exactly():
    rng = random.Random(9)
    for g in (1, 2):
        for _ in range(20):
            assert sigma_app(random_word(rng, g, 1, 5), zeta(g)).is_zero()


def test_zeta_and_filtration_suites():
    assert all(r.passed for r in check_zeta(SuiteConfig(count=20)))
    assert all(r.passed for r in check_pairing(SuiteConfig(genus=2, k=2, count=6)))


# ---------------------------------------------------------------- table file

def test_table_env_override(tmp_path, monkeypatch):
    p = tmp_path / "t.txt"
    p.write_text("gdtwist-pairing-table 1\nsame a b +1 y x\n")
    monkeypatch.setenv("GDTWIST_PAIRING_TABLE", str(p))
    t = GeneratorPairingTable.load()
    assert t.as_bielement(0, 1) == BiElement.pure(b1, a1)
    assert t.as_bielement(0, 0) == BiElement()


@pytest.mark.parametrize("text", ["", "gdtwist-pairing-table 2\n", "gdtwist-pairing-table 1\nsame a a +1 x\n",
                                  "gdtwist-pairing-table 1\nsame a a +1 xz y\n"])
def test_table_format_errors(text):
    with pytest.raises(TableFormatError):
        GeneratorPairingTable.parse(text)

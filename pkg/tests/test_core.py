from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gdtwist.core import (
    CyclicSeries,
    LieElement,
    NotLieError,
    SymplecticBasis,
    TensorSeries,
    bch,
    bracket,
    cyclic_project,
    from_lyndon,
    is_lie,
    lie_projection,
    lyndon_basis,
    lyndon_words,
    omega_pair,
    parse_lie,
    tensor_exp,
    tensor_log,
    to_lyndon,
    witt_number,
)

A1, B1, A2, B2 = 0, 1, 2, 3


def T(text, genus=1, N=4):
    return TensorSeries.parse(text, genus, N)


def L(l, genus=1, N=4):
    return TensorSeries.letter(l, genus, N)


# ---------------------------------------------------------------- products

def test_two_term_product():
    one = TensorSeries.one(1, 3)
    assert (one + L(A1, N=3)) * (one + L(B1, N=3)) == T("1 + a1 + b1 + a1b1", N=3)


def test_unit_law():
    u = T("a1 - 2 b1a1 + 1/3 a1a1b1")
    assert u * TensorSeries.one(1, 4) == u


def test_commutator_square():
    c = T("a1b1 - b1a1")
    assert c * c == T("a1b1a1b1 - a1b1b1a1 - b1a1a1b1 + b1a1b1a1")


def test_product_truncates():
    assert (T("a1a1", N=3) * T("b1b1", N=3)).is_zero()


# ---------------------------------------------------------------- exp / log / bch

def test_log_one():
    assert tensor_log(TensorSeries.one(1, 5)).is_zero()


def test_exp_letter():
    assert tensor_exp(L(A1, N=3)) == T("1 + a1 + 1/2 a1a1 + 1/6 a1a1a1", N=3)


def test_log_of_product_degree_two():
    x = tensor_log(tensor_exp(L(A1, N=2)) * tensor_exp(L(B1, N=2)))
    assert x == T("a1 + b1 + 1/2 a1b1 - 1/2 b1a1", N=2)


def test_bch_degree_two_part():
    assert bch(L(A1), L(B1)).degree_part(2) == T("1/2 a1b1 - 1/2 b1a1")


def test_bch_identities():
    x = T("a1 + 2 a1b1 - 2 b1a1")
    assert bch(x, TensorSeries.zero(1, 4)) == x
    assert bch(x, -x).is_zero()


def test_bch_against_closed_form():
    # x + y + [x,y]/2 + ([x,[x,y]] + [y,[y,x]])/12 - [y,[x,[x,y]]]/24, written out by hand
    x, y = L(A1), L(B1)
    xy = bracket(x, y)
    expected = (x + y + xy.scale(Fraction(1, 2))
                + (bracket(x, xy) + bracket(y, bracket(y, x))).scale(Fraction(1, 12))
                - bracket(y, bracket(x, xy)).scale(Fraction(1, 24)))
    assert bch(x, y) == expected


series = st.dictionaries(
    st.lists(st.integers(0, 3), min_size=1, max_size=4).map(tuple),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
    max_size=5,
)


@settings(max_examples=40, deadline=None)
@given(series)
def test_exp_log_roundtrip(terms):
    u = TensorSeries(terms, 2, 5)
    assert tensor_log(tensor_exp(u)) == u
    one_plus = TensorSeries.one(2, 5) + u
    assert tensor_exp(tensor_log(one_plus)) == one_plus


@settings(max_examples=25, deadline=None)
@given(series, series)
def test_bch_is_primitive(s, t):
    x = to_lyndon(lie_projection(TensorSeries(s, 2, 5))).to_series(5)
    y = to_lyndon(lie_projection(TensorSeries(t, 2, 5))).to_series(5)
    assert is_lie(bch(x, y))


# ---------------------------------------------------------------- Lyndon basis

def test_lyndon_basis_examples():
    assert lyndon_basis(1, 1) == ["a1", "b1"]
    assert lyndon_basis(2, 1) == ["[a1,b1]"]
    assert len(lyndon_basis(3, 2)) == 20


@pytest.mark.parametrize("g", [1, 2, 3])
def test_witt_numbers(g):
    for d in range(1, 7 if g == 3 else 9):
        assert len(lyndon_words(d, 2 * g)) == witt_number(d, 2 * g)


def test_witt_values():
    # (1/d) sum mu(d/e) n^e, written out for n = 4
    assert [witt_number(d, 4) for d in range(1, 6)] == [4, 6, 20, 60, 204]


def test_lie_roundtrip_examples():
    assert to_lyndon(T("a1b1 - b1a1")) == LieElement({(A1, B1): 1}, 1, 2)
    x = parse_lie("[a1,[a1,b1]]", 1)
    assert from_lyndon(x) == T("a1a1b1 - 2 a1b1a1 + b1a1a1", N=3)


def test_non_lie_residue():
    with pytest.raises(NotLieError) as err:
        to_lyndon(T("a1b1", N=2))
    assert err.value.residue == T("1/2 a1b1 + 1/2 b1a1", N=2)


def test_lie_printing():
    x = parse_lie("3/2 [a1,[a1,b1]] - [a2,b1]", 2)
    assert str(x) == "[b1,a2] + 3/2 [a1,[a1,b1]]"  # -[a2,b1] = [b1,a2]


lie_terms = st.lists(
    st.tuples(st.sampled_from(lyndon_words(2, 4) + lyndon_words(3, 4)), st.integers(-3, 3)),
    min_size=1, max_size=3,
)


def lie_from(terms, N=8):
    return LieElement({w: c for w, c in terms}, 2, N)


@settings(max_examples=30, deadline=None)
@given(lie_terms, lie_terms, lie_terms)
def test_bracket_antisymmetry_and_jacobi(s, t, r):
    x, y, z = lie_from(s), lie_from(t), lie_from(r)
    assert x.bracket(y) == -y.bracket(x)
    jac = x.bracket(y.bracket(z)) + y.bracket(z.bracket(x)) + z.bracket(x.bracket(y))
    assert jac.is_zero()


@settings(max_examples=30, deadline=None)
@given(lie_terms)
def test_lyndon_roundtrip(t):
    x = lie_from(t, 3)
    assert to_lyndon(x.to_series()) == x


# ---------------------------------------------------------------- cyclic words, omega

def test_cyclic_examples():
    assert cyclic_project(T("a1b1", N=2)) == cyclic_project(T("b1a1", N=2))
    assert cyclic_project(T("a1b1 - b1a1", N=2)).is_zero()
    assert cyclic_project(T("a1b1a1b1 + b1a1b1a1")) == CyclicSeries({(A1, B1, A1, B1): 2}, 1, 4)


@settings(max_examples=30, deadline=None)
@given(series, series)
def test_cyclic_invariance(s, t):
    u, v = TensorSeries(s, 2, 8), TensorSeries(t, 2, 8)
    assert cyclic_project(u * v) == cyclic_project(v * u)


def test_omega_ledger():
    assert omega_pair(A1, B1) == 1
    assert omega_pair(A1, A2) == 0
    assert omega_pair(B1, A1) == -1
    omega = SymplecticBasis(2).omega_bivector()
    assert omega == -(parse_lie("[a1,b1] + [a2,b2]", 2))

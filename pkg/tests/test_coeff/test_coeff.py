from fractions import Fraction

import pytest
from hypothesis import given

from qtree_hopf.coeff import Laurent, ONE, Q, ZERO
from strategies import laurents, nonzero_rationals

def L(terms):
    return Laurent(terms)

arith_data = [
    (L({2: 1}) + L({2: -1}), ZERO),
    (L({-1: 1}) * L({3: Fraction(3, 2)}), L({2: Fraction(3, 2)})),
    (-L({1: 2, 0: -1}), L({1: -2, 0: 1})),
    (L({1: 1}) - 1, L({1: 1, 0: -1})),
    (2 * Q, L({1: 2})),
    (Q * Q.q_invert(), ONE),
]

invert_data = [
    (L({2: 1, -1: -3}), L({-2: 1, 1: -3})),
    (ONE, ONE),
    (ZERO, ZERO),
]

evaluate_data = [
    (L({1: 1, -1: -1}), 1, Fraction(0)),
    (L({1: 1, -1: 1}), -1, Fraction(-2)),
    (L({3: 1}), Fraction(1, 2), Fraction(1, 8)),
    (L({-2: 3}), Fraction(1, 3), Fraction(27)),
]

str_data = [
    (ZERO, '0'),
    (ONE, '1'),
    (Q, 'q'),
    (L({2: 1, -1: -3}), 'q^2-3*q^-1'),
    (L({2: Fraction(3, 2)}), '3/2*q^2'),
    (L({1: -1, 0: 2}), '-q+2'),
    (L({0: Fraction(-1, 2), -1: 1}), '-1/2+q^-1'),
]

@pytest.mark.parametrize("result,expected", arith_data)
def test_arith(result, expected):
    assert result == expected

@pytest.mark.parametrize("value,expected", invert_data)
def test_q_invert(value, expected):
    assert value.q_invert() == expected

@pytest.mark.parametrize("value,at,expected", evaluate_data)
def test_evaluate(value, at, expected):
    result = value.evaluate(at)
    assert isinstance(result, Fraction)
    assert result == expected

@pytest.mark.parametrize("value,expected", str_data)
def test_str(value, expected):
    assert str(value) == expected

def test_zero_coefficients_are_dropped():
    assert L({3: 0, 1: 0}) == ZERO
    assert not L({3: 0})
    assert (Q - Q).terms == []

def test_evaluate_float():
    assert L({1: 1, -1: 1}).evaluate(0.5) == pytest.approx(2.5)

def test_evaluate_at_zero():
    with pytest.raises(ValueError):
        Q.evaluate(0)

def test_promote():
    assert Laurent.promote(3) == L({0: 3})
    assert Laurent.promote(Fraction(1, 2)) == L({0: Fraction(1, 2)})
    with pytest.raises(TypeError):
        Laurent.promote(True)
    with pytest.raises(TypeError):
        Laurent.promote(0.5)

def test_shifted():
    assert L({1: 2, -1: 1}).shifted(2) == L({3: 2, 1: 1})
    assert L({1: 2}).shifted(0) == L({1: 2})

def test_equality_with_rationals():
    assert ONE == 1
    assert L({0: Fraction(1, 2)}) == Fraction(1, 2)
    assert hash(L({2: 1})) == hash(L({2: 1}))

constant_hash_data = [
    (ONE, 1),
    (ZERO, 0),
    (L({0: Fraction(1, 2)}), Fraction(1, 2)),
    (L({0: -3}), -3),
]

@pytest.mark.parametrize("value,rational", constant_hash_data)
def test_constants_hash_like_rationals(value, rational):
    assert value == rational
    assert hash(value) == hash(rational)
    assert {value: 'x'}[rational] == 'x'

@given(laurents)
def test_hash_agrees_with_equality(a):
    assert hash(a) == hash(Laurent(dict(a.terms)))
    if not a.terms or [e for e, _ in a.terms] == [0]:
        assert hash(a) == hash(a.coefficient(0))

@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a * ONE == a
    assert a + ZERO == a
    assert a - a == ZERO

@given(laurents, laurents)
def test_q_invert_is_involutive_homomorphism(a, b):
    assert a.q_invert().q_invert() == a
    assert (a * b).q_invert() == a.q_invert() * b.q_invert()
    assert (a + b).q_invert() == a.q_invert() + b.q_invert()

@given(laurents, laurents, nonzero_rationals)
def test_evaluate_is_homomorphism(a, b, at):
    assert (a * b).evaluate(at) == a.evaluate(at) * b.evaluate(at)
    assert (a + b).evaluate(at) == a.evaluate(at) + b.evaluate(at)

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from noether.errors import HypothesisError
from noether.scalars import (cyclotomic_polynomial, euler_phi, field_with_root_of_unity, parse_field,
                             primitive_root)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert [euler_phi(m) for m in (1, 5, 8, 12)] == [1, 4, 4, 4]


@pytest.mark.parametrize("text,char,order", [("Q", 0, 1), ("Q(zeta:4)", 0, 4), ("Fp:2", 2, 1),
                                             ("Fp:7(zeta:3)", 7, 3)])
def test_parse_field(text, char, order):
    K = parse_field(text)
    assert (K.characteristic, K.zeta_order) == (char, order)
    assert K.label() == text


@pytest.mark.parametrize("text", ["R", "Fp:4", "Q(zeta:0)", ""])
def test_parse_field_rejects(text):
    with pytest.raises(ValueError):
        parse_field(text)


@pytest.mark.parametrize("char,m", [(0, 3), (0, 5), (0, 8), (7, 3), (2, 3), (3, 8), (7, 16)])
def test_zeta_has_exact_order(char, m):
    K = field_with_root_of_unity(char, m)
    assert K.zeta().multiplicative_order() == m


def test_primitive_roots_and_missing_roots():
    K = parse_field("Fp:7")
    assert primitive_root(K, 3) ** 3 == 1
    assert primitive_root(parse_field("Fp:3"), 2) == 2
    with pytest.raises(HypothesisError):
        primitive_root(parse_field("Q"), 3)
    with pytest.raises(HypothesisError):
        primitive_root(parse_field("Fp:2"), 2)


def test_rational_coercion():
    Q = parse_field("Q")
    assert Q(Fraction(1, 3)) * 3 == 1
    F5 = parse_field("Fp:5")
    assert F5(Fraction(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        F5(Fraction(1, 5))


def test_json_round_trip():
    K = parse_field("Q(zeta:5)")
    from noether.scalars import FieldSpec, scalar_from_json
    assert FieldSpec.from_json(K.to_json()) == K
    x = K.zeta() * Fraction(2, 7) - 3
    assert scalar_from_json(x.to_json(), K) == x


_fields = [parse_field(t) for t in ("Q", "Q(zeta:3)", "Q(zeta:8)", "Fp:7(zeta:3)", "Fp:2(zeta:5)")]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(_fields), st.lists(st.integers(-20, 20), min_size=8, max_size=8))
def test_field_axioms(K, ints):
    d = K.degree
    a, b, c = (K.scalar(ints[i:i + d] + [0] * (d - len(ints[i:i + d]))) for i in (0, 3, 5))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b

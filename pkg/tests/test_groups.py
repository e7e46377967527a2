import pytest

from noether.errors import HypothesisError, ResourceLimitError
from noether.groups import (FiniteGroup, abelian, central_extension_data, cyclic, d2n_split, describe, dihedral,
                            direct_product, group_from_spec, invariant_factors, is_isomorphic, phi_wreath_dihedral,
                            quotient, wreath_product)


def test_basic_orders_and_exponents():
    assert cyclic(6).exponent == 6
    assert dihedral(4).order == 8 and dihedral(4).exponent == 4
    assert not dihedral(3).is_abelian()
    assert len(dihedral(4).center) == 2
    assert abelian([2, 4]).exponent == 4


def test_invariant_factors():
    assert invariant_factors(direct_product(cyclic(2), cyclic(3))) == [6]
    assert invariant_factors(direct_product(cyclic(4), cyclic(6))) == [2, 12]
    assert invariant_factors(cyclic(1)) == []
    with pytest.raises(Exception):
        invariant_factors(dihedral(3))


def test_bad_tables_rejected():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1, 2], [1, 2, 0], [2, 1, 0]])


def test_wreath_structure():
    ws = wreath_product(cyclic(2), cyclic(2))
    assert ws.total.order == 8
    assert is_isomorphic(ws.total, dihedral(4)) is not None
    assert len(ws.N) == 4 and len(ws.M) == 2
    for idx in range(ws.total.order):
        xs, s = ws.decompose(idx)
        assert ws.element(xs, s) == idx
    assert wreath_product(cyclic(3), cyclic(2)).total.order == 18
    with pytest.raises(ResourceLimitError):
        wreath_product(cyclic(5), cyclic(5), size_cap=1000)


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_phi_is_isomorphism(n):
    phi, ws = phi_wreath_dihedral(n)
    assert phi.is_isomorphism() and phi.is_homomorphism()


def test_phi_worked_value():
    # (a, b, e) = (1, 0, 0): the base element (2, 0) goes to (1, sigma)
    n = 3
    phi, ws = phi_wreath_dihedral(n)
    idx = ws.element((2, 0), 0)
    Dn = dihedral(n)
    assert phi(idx) == 1 * Dn.order + 1


def test_phi_needs_odd_n():
    with pytest.raises(HypothesisError):
        phi_wreath_dihedral(4)


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9])
def test_d2n_split(n):
    s = d2n_split(n)
    assert s.is_isomorphism()
    assert s.target.order == 4 * n


def test_quotient_and_extension():
    D4 = dihedral(4)
    Q, pi = quotient(D4, D4.subgroup_generated([2]))
    assert Q.order == 4 and Q.is_abelian() and pi.is_homomorphism()
    ext = central_extension_data(D4, 2, (Q, pi))
    assert ext.p == 2 and ext.verify()
    D3 = dihedral(3)
    rotation = next(x for x in range(6) if D3.element_order(x) == 3)
    reflection = next(x for x in range(6) if D3.element_order(x) == 2)
    normal = central_extension_data(D3, rotation)
    assert normal.p == 3 and any(e != 1 for e in normal.conj_exp)
    with pytest.raises(HypothesisError):
        central_extension_data(D3, reflection)
    with pytest.raises(HypothesisError):
        central_extension_data(cyclic(4), 1)


def test_group_from_spec_and_describe():
    G = group_from_spec({"kind": "wreath", "H": {"kind": "cyclic", "n": 2}, "G": {"kind": "cyclic", "n": 2}})
    assert describe(G)["order"] == 8
    assert group_from_spec(G.to_json()) == G
    D = group_from_spec({"kind": "direct", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "dihedral", "n": 3}]})
    assert D.order == 12 and not describe(D)["abelian"]
    assert describe(cyclic(12))["invariant_factors"] == [12]
    with pytest.raises(ValueError):
        group_from_spec({"kind": "free"})

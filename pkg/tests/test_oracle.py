import pytest

from noether.funcfield import Presented, RatFunc, VarSet, regular_action, variables
from noether.groups import cyclic
from noether.oracle import (MonomialActionSpec, action_kernel, check_generates_affine, check_invariant, hnf, int_det,
                            kernel_lattice, monomial_invariant_generators)
from noether.scalars import parse_field


def test_hnf_examples():
    H, U = hnf([[2, 4], [1, 3]])
    assert H == [[1, 1], [0, 2]]
    assert abs(int_det(U)) == 1
    assert hnf([[1, 0], [0, 1]])[0] == [[1, 0], [0, 1]]


def test_kernel_lattice():
    basis, index = kernel_lattice([[0, 1]], [2])
    assert index == 2
    basis, index = kernel_lattice([[0, 1, 2]], [3])
    assert index == 3
    with pytest.raises(ValueError):
        kernel_lattice([[1]], [0])


def test_int_det():
    assert int_det([[2, 1], [1, 1]]) == 1
    assert int_det([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0
    assert int_det([]) == 1


def test_invariance_checks():
    Q = parse_field("Q")
    vs, act = regular_action(cyclic(2), Q)
    a, b = variables(vs, Q)
    assert check_invariant(a + b, act)
    assert not check_invariant(a, act)
    assert check_invariant((a - b) ** 2, act)
    aux = VarSet(["u", "w"])
    u, w = variables(aux, Q)
    assert check_invariant(Presented(u * w * w, [a + b, a - b]), act)
    assert not check_invariant(Presented(w, [a + b, a - b]), act)
    assert action_kernel(act) == (0,)


def test_generates_affine():
    Q = parse_field("Q")
    vs, _ = regular_action(cyclic(2), Q)
    a, b = variables(vs, Q)
    labels = list(vs.names)
    assert not check_generates_affine([a + b, 2 * a + 2 * b], labels)
    assert check_generates_affine([a + 1, b], labels)


def test_monomial_invariants_c3():
    K = parse_field("Q(zeta:3)")
    z = K.zeta().raw
    vs = VarSet(["y0", "y1", "y2"])
    mults = [[K.ops.one, K.ops.pow(z, g), K.ops.pow(z, 2 * g)] for g in range(3)]
    spec = MonomialActionSpec(cyclic(3), vs, K, [[0, 1, 2]] * 3, mults)
    gens, index = monomial_invariant_generators(spec)
    y0, y1, y2 = variables(vs, K)
    assert index == 3
    assert gens == [y0, y1 * y2, y2 ** 3]

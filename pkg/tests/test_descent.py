import pytest

from noether.descent import SemiAffineSetup, minimal_invariant, trace_one_element, trivialize_action
from noether.errors import HypothesisError
from noether.funcfield import GroupAction, RatFunc, VarSet, variables
from noether.groups import cyclic, direct_product
from noether.oracle import check_generates_affine, check_invariant
from noether.scalars import parse_field

Q, F2 = parse_field("Q"), parse_field("Fp:2")


def _sign_setup():
    vs = VarSet(["t", "x"])
    t, x = variables(vs, Q)
    return GroupAction(cyclic(2), vs, Q, [[t, x], [-t, -x]])


def _translation_setup():
    vs = VarSet(["t", "x"])
    t, x = variables(vs, F2)
    return GroupAction(cyclic(2), vs, F2, [[t, x], [t + 1, x + 1]])


def test_identity_setup_returns_affine_image_of_x():
    vs = VarSet(["x1", "x2"])
    act = GroupAction(cyclic(1), vs, Q, [variables(vs, Q)])
    T = trivialize_action(SemiAffineSetup(act, [], ["x1", "x2"]))
    assert check_generates_affine(T.z_exprs, ["x1", "x2"])


@pytest.mark.parametrize("build", [_sign_setup, _translation_setup])
def test_worked_examples(build):
    act = build()
    T = trivialize_action(SemiAffineSetup(act, ["t"], ["x"]), seed=0)
    assert all(check_invariant(z, act) for z in T.z_exprs)
    assert check_generates_affine(T.z_exprs, ["x"])
    t, x = variables(act.varset, act.field)
    # the hand-checked answers are also invariant
    candidate = x / t if act.field.characteristic == 0 else x + t
    assert check_invariant(candidate, act)


def test_trace_one_in_char_two():
    act = _translation_setup()
    theta = trace_one_element(SemiAffineSetup(act, ["t"], ["x"]))
    assert theta + act.act(1, theta) == 1


def test_trace_one_in_char_zero_is_one_over_order():
    theta = trace_one_element(SemiAffineSetup(_sign_setup(), ["t"], ["x"]))
    act = _sign_setup()
    assert theta + act.act(1, theta) == 1


def test_deterministic_given_seed():
    a = trivialize_action(SemiAffineSetup(_sign_setup(), ["t"], ["x"]), seed=3)
    b = trivialize_action(SemiAffineSetup(_sign_setup(), ["t"], ["x"]), seed=3)
    assert a.z_exprs == b.z_exprs


def test_non_affine_rejected():
    vs = VarSet(["t", "x"])
    t, x = variables(vs, Q)
    act = GroupAction(cyclic(2), vs, Q, [[t, x], [-t, 1 / x]])
    with pytest.raises(HypothesisError):
        SemiAffineSetup(act, ["t"], ["x"])


def test_minimal_invariant_kernel_character():
    # H = G = C2: c negates z, g sends t to 1/t and z to t z
    Gt = direct_product(cyclic(2), cyclic(2))
    vs = VarSet(["t", "z"])
    t, z = variables(vs, Q)
    imgs = []
    for el in range(4):
        i, g = divmod(el, 2)
        s = (-1) ** i
        imgs.append([t if g == 0 else 1 / t, s * z if g == 0 else s * t * z])
    act = GroupAction(Gt, vs, Q, imgs)
    M = minimal_invariant(SemiAffineSetup(act, ["t"], ["z"]))
    assert M.degree == 2 and M.minimality_certified
    assert check_invariant(M.f, act)


@pytest.mark.parametrize("seed", range(5))
def test_minimal_invariant_degree_one_when_faithful(seed):
    act = _sign_setup()
    M = minimal_invariant(SemiAffineSetup(act, ["t"], ["x"]), seed=seed)
    assert M.degree == 1 and check_invariant(M.f, act)

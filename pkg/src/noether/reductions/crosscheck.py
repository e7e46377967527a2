"""Agreement between the direct lattice construction and the iterated cyclic layers for abelian groups."""

from __future__ import annotations

from ..errors import HypothesisError
from ..funcfield import GroupAction, RatFunc, substitute
from ..groups import FiniteGroup, cyclic
from ..scalars import FieldSpec
from .certificate import Certificate
from .common import register_regular
from .fischer import fischer_construct
from .theorem11 import iterated_generators, theorem11_embed


def _moved(action: GroupAction, group: FiniteGroup, vs, K) -> GroupAction:
    # same group indices, variables renamed into vs
    rename = [RatFunc.var(vs, K, j) for j in range(len(vs))]
    rows = [[substitute(img, rename) for img in action.images[g]] for g in range(group.order)]
    return GroupAction(group, vs, K, rows, verify=False)


def crosscheck_abelian(A: FiniteGroup, K: FieldSpec, seed: int = 0) -> Certificate:
    """Each generator set is checked against the action carried by the other construction.

    The lattice generators live over the regular variables of ``A``, the layered
    ones over those of ``A x 1``; variables are matched by group index.
    """
    if not A.is_abelian():
        raise HypothesisError("requires an abelian group")
    fcert, witness = fischer_construct(A, K, seed)
    lcert = theorem11_embed(A, cyclic(1), K, seed)
    layered = iterated_generators(lcert)
    if len(layered) != A.order:
        raise HypothesisError("layered construction produced no generators (descent gate exceeded)")
    cert = Certificate("crosscheck", K, {"group": A.to_json()}, seed)
    V, _ = register_regular(cert, "V", A, K)
    rename = [RatFunc.var(V, K, j) for j in range(len(V))]
    cert.add_action("lattice.V", _moved(fcert.ctx.action("V"), A, V, K))
    cert.add_action("layered.V", _moved(lcert.ctx.action("V"), A, V, K))
    cert.add_system("Fischer", witness.aux, [substitute(d, rename) for d in witness.defs])
    cert.add_system("Layered", layered[0].expr.varset, [substitute(d, rename) for d in layered[0].defs])
    fn, ln = [], []
    for i, e in enumerate(witness.exprs):
        fn.append(f"fischer[{i}]")
        cert.add_element(fn[-1], e, system="Fischer")
    for i, P in enumerate(layered):
        ln.append(f"layered[{i}]")
        cert.add_element(ln[-1], P.expr, system="Layered")
    for n in fn:
        cert.claim(f"{n} invariant under the layered action", {"type": "invariant", "action": "layered.V", "element": n})
    for n in ln:
        cert.claim(f"{n} invariant under the lattice action", {"type": "invariant", "action": "lattice.V", "element": n})
    cert.claim("|A| generators on each side", {"type": "count", "elements": fn + ln, "expected": 2 * A.order})
    cert.add_sub(fcert)
    cert.add_sub(lcert)
    return cert

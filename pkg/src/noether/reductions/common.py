"""Shared steps: registering regular representations and descending along a linear complement."""

from __future__ import annotations

from ..descent import DEFAULT_RETRIES, SemiAffineSetup, trivialize_action
from ..funcfield import GroupAction, MultiPoly, RatFunc, VarSet, regular_action
from ..linalg import rref
from ..oracle import induced_action, linear_coeffs
from .certificate import Certificate

DESCENT_GATE = 8


def register_regular(cert: Certificate, name: str, G, K, prefix: str = "x") -> tuple[VarSet, GroupAction]:
    vs, act = regular_action(G, K, prefix)
    cert.add_varset(name, vs)
    cert.add_action(name, act, regular=True)
    return vs, act


def linear_form(vs: VarSet, K, coeffs: dict) -> RatFunc:
    """``sum c * var`` for a mapping ``label -> coefficient``."""
    return RatFunc(MultiPoly.linear(vs, K, coeffs))


def complement_labels(vs: VarSet, forms) -> list[str]:
    """Variables completing ``forms`` to a basis of the linear forms on ``vs``."""
    if not forms:
        return list(vs.names)
    ops = forms[0].field.ops
    rows = [linear_coeffs(f) for f in forms]
    r = len(rref(rows, ops)[1])
    out = []
    for i, name in enumerate(vs.names):
        unit = [ops.one if j == i else ops.zero for j in range(len(vs))]
        if len(rref(rows + [unit], ops)[1]) > r:
            rows.append(unit)
            r += 1
            out.append(name)
    return out


def descend_complement(cert: Certificate, tag: str, action_name: str, L_system: str, seed: int = 0,
                       max_retries: int = DEFAULT_RETRIES, gate: int = DESCENT_GATE) -> list[str] | None:
    """Invariants ``d_i`` with ``K(V) = K(L)(d_1..d_k)`` over the fixed field.

    The complement of ``L`` in ``V`` is spanned by coordinate variables; the
    action on ``L + complement`` is semi-affine over ``K(L)``.  Returns the
    element names, or ``None`` when the complement exceeds ``gate``.
    """
    action = cert.ctx.action(action_name)
    vs, K = action.varset, action.field
    L_aux, L_defs, _ = cert.ctx.systems[L_system]
    comp = complement_labels(vs, L_defs)
    w_names = [f"{tag}.w[{c}]" for c in comp]
    aux = VarSet(list(L_aux.names) + w_names)
    defs = list(L_defs) + [RatFunc.var(vs, K, c) for c in comp]
    cert.add_system(tag, aux, defs)
    cert.claim(f"{tag}: coordinates form a basis", {"type": "rank", "system": tag, "expected": len(vs)})
    if len(comp) > gate:
        cert.claim(f"{tag}: descent over the complement ({len(comp)} variables, gate {gate})",
                   {"type": "skipped", "reason": f"complement dimension {len(comp)} exceeds gate {gate}"})
        return None
    if not comp:
        return []
    setup = SemiAffineSetup(induced_action(action, defs, aux), L_aux.names, w_names, check_cocycle=False)
    triv = trivialize_action(setup, seed, max_retries)
    names = []
    for i, z in enumerate(triv.z_exprs):
        name = f"{tag}.d[{i}]"
        cert.add_element(name, z, system=tag)
        cert.claim(f"{name} invariant", {"type": "invariant", "action": action_name, "element": name})
        names.append(name)
    cert.claim(f"{tag}: invariants generate over K(L)",
               {"type": "generates_affine", "elements": names, "x_labels": w_names})
    cert.notes[f"{tag}.descent"] = {"seed": seed, "retries": triv.retries, "complement": len(comp)}
    return names

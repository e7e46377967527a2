"""``K(H x G)`` over ``K(H)`` and ``K(G)`` through the tensor decomposition of the regular representation."""

from __future__ import annotations

from ..descent import DEFAULT_RETRIES
from ..errors import HypothesisError
from ..funcfield import RatFunc, VarSet, monomial_action, substitute
from ..groups import FiniteGroup, direct_product
from ..scalars import FieldSpec
from .certificate import Certificate
from .common import DESCENT_GATE, descend_complement, linear_form, register_regular
from .witness import RationalityWitness


def register_witness(cert: Certificate, tag: str, witness: RationalityWitness, images) -> list[str]:
    """Relocate the witness through ``images`` (one linear form per base variable) and register its generators."""
    defs = witness.relocated_defs(images)
    aux = VarSet(f"{tag}.{a}" for a in witness.aux.names)
    rename = [RatFunc.var(aux, witness.field, i) for i in range(len(aux))]
    cert.add_system(tag, aux, defs)
    names = []
    for i, e in enumerate(witness.exprs):
        name = f"{tag}.f[{i}]"
        cert.add_element(name, substitute(e, rename), system=tag)
        names.append(name)
    return names


def theorem19_construct(H: FiniteGroup, G: FiniteGroup, K: FieldSpec, witness: RationalityWitness | None = None,
                        seed: int = 0, max_retries: int = DEFAULT_RETRIES, gate: int = DESCENT_GATE) -> Certificate:
    Gt = direct_product(H, G)
    nh, ng = H.order, G.order
    cert = Certificate("1.9", K, {"H": H.to_json(), "G": G.to_json()}, seed)
    V, _ = register_regular(cert, "V", Gt, K)

    # the tensor action u_h (x) v_g built from the two factors, compared with the regular one
    T = VarSet(f"u[g{h}]v[g{g}]" for h in range(nh) for g in range(ng))
    cert.add_varset("T", T)
    perms = [[H.table[a // ng][h] * ng + G.table[a % ng][g] for h in range(nh) for g in range(ng)]
             for a in range(Gt.order)]
    cert.add_action("Tensor", monomial_action(Gt, T, K, perms, verify=False))
    cert.claim("U (x) V is the regular representation of H x G", {
        "type": "intertwine", "action1": "V", "labels1": list(V.names), "action2": "Tensor",
        "labels2": list(T.names), "via": list(range(Gt.order))})

    # U~ = U (x) v0, V~ = u0 (x) V
    udefs = [linear_form(V, K, {V.names[h * ng + g]: 1 for g in range(ng)}) for h in range(nh)]
    vdefs = [linear_form(V, K, {V.names[h * ng + g]: 1 for h in range(nh)}) for g in range(ng)]
    un = [f"U[g{h}]" for h in range(nh)]
    vn = [f"Vt[g{g}]" for g in range(ng)]
    Uaux, Vaux = VarSet(un), VarSet(vn)
    cert.add_system("U", Uaux, udefs)
    cert.add_system("Vt", Vaux, vdefs)
    cert.add_system("UV", VarSet(un + vn), udefs + vdefs)
    cert.add_action("Uact", monomial_action(Gt, Uaux, K, [[H.table[a // ng][h] for h in range(nh)]
                                                         for a in range(Gt.order)], verify=False))
    cert.add_action("Vact", monomial_action(Gt, Vaux, K, [[G.table[a % ng][g] for g in range(ng)]
                                                         for a in range(Gt.order)], verify=False))
    cert.claim("(h, g) . U~_h' = U~_hh'", {"type": "homomorphism", "action": "V", "system": "U",
                                          "aux_action": "Uact"})
    cert.claim("(h, g) . V~_g' = V~_gg'", {"type": "homomorphism", "action": "V", "system": "Vt",
                                          "aux_action": "Vact"})
    HU = VarSet(f"xh[g{h}]" for h in range(nh))
    GV = VarSet(f"xg[g{g}]" for g in range(ng))
    cert.add_varset("H.V", HU)
    cert.add_varset("G.V", GV)
    cert.add_action("H.V", monomial_action(H, HU, K, [list(r) for r in H.table], verify=False), regular=True)
    cert.add_action("G.V", monomial_action(G, GV, K, [list(r) for r in G.table], verify=False), regular=True)
    cert.claim("H acts on U~ as on its regular representation", {
        "type": "intertwine", "action1": "Uact", "labels1": un, "action2": "H.V", "labels2": list(HU.names),
        "via": [a // ng for a in range(Gt.order)]})
    cert.claim("G acts on V~ as on its regular representation", {
        "type": "intertwine", "action1": "Vact", "labels1": vn, "action2": "G.V", "labels2": list(GV.names),
        "via": [a % ng for a in range(Gt.order)]})
    cert.claim("U~ + V~ is faithful", {"type": "kernel", "action": "V", "system": "UV", "expected": [Gt.identity]})
    cert.claim("dim(U~ + V~) = |H| + |G| - 1 (u0 (x) v0 is shared)",
               {"type": "rank", "system": "UV", "expected": nh + ng - 1})
    cert.notes["shared_vector"] = "sum of all x: lies in both U~ and V~"

    # K(V) over K(U~ + V~): descent on a basis of the sum
    basis_defs = udefs + [d for g, d in enumerate(vdefs) if g != G.identity]
    cert.add_system("L", VarSet(un + [n for g, n in enumerate(vn) if g != G.identity]), basis_defs)
    cert.claim("basis of U~ + V~", {"type": "rank", "system": "L", "expected": nh + ng - 1})
    descend_complement(cert, "F", "V", "L", seed, max_retries, gate)

    if witness is not None:
        if witness.group != H:
            raise HypothesisError("witness is for a different group")
        if witness.kind != "rational" or not witness.check():
            raise HypothesisError("witness invariance check fails")
        names = register_witness(cert, "Wit", witness, udefs)
        for name in names:
            cert.claim(f"{name} invariant under H x G", {"type": "invariant", "action": "V", "element": name})
        cert.claim("witness generator count equals |H|", {"type": "count", "elements": names, "expected": nh})
        cert.claim("K(U~)^(H x G) is generated by the relocated witness",
                   {"type": "derived", "from": "U~ is the regular representation of H, G acts trivially on it"})
    cert.claim("K(H x G) is rational over K(H) K(G)", {"type": "derived", "from": "faithful U~ + V~ and descent"})
    return cert

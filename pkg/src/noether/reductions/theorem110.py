"""Wreath products ``H wr G``: blocks ``U_g`` of the regular representation and transported witnesses.

With ``u0 = sum of x[y]`` over base elements ``y`` whose identity coordinate is
trivial, ``u(g; h) = (g phi_1(h)) . u0``.  The element ``x s`` (base part ``x``,
top part ``s``) sends ``u(g; h)`` to ``u(sg; x_{sg} h)``.
"""

from __future__ import annotations

from ..descent import DEFAULT_RETRIES
from ..errors import HypothesisError, ResourceLimitError
from ..funcfield import GroupAction, RatFunc, VarSet, monomial_action, substitute
from ..groups import FiniteGroup, wreath_product
from ..scalars import FieldSpec
from .certificate import Certificate
from .common import DESCENT_GATE, descend_complement, linear_form, register_regular
from .theorem19 import register_witness
from .witness import RationalityWitness

REGULAR_CAP = 512


def _u_label(g: int, h: int) -> str:
    return f"u[g{g};h{h}]"


def theorem110_construct(H: FiniteGroup, G: FiniteGroup, K: FieldSpec, witness: RationalityWitness,
                         seed: int = 0, max_retries: int = DEFAULT_RETRIES, gate: int = DESCENT_GATE,
                         size_cap: int = REGULAR_CAP) -> Certificate:
    if witness.group != H:
        raise HypothesisError("witness is for a different group")
    if witness.kind not in ("rational", "stably_rational") or not witness.check():
        raise HypothesisError("witness invariance check fails")
    order = H.order ** G.order * G.order
    if order > size_cap:
        raise ResourceLimitError(f"regular representation of order {order} exceeds cap {size_cap}")
    ws = wreath_product(H, G, size_cap)
    T = ws.total
    nh, ng = H.order, G.order
    e_g = G.identity
    cert = Certificate("1.10", K, {"H": H.to_json(), "G": G.to_json(), "witness": witness.kind,
                                   "extra": witness.extra}, seed)
    V, _ = register_regular(cert, "V", T, K)

    # u(g; h) as sums over base elements
    blocks = {}
    for y in ws.N:
        xs, _ = ws.decompose(y)
        blocks.setdefault(xs[e_g], []).append(y)
    udefs, un = [], []
    for g in range(ng):
        sg = ws.embed_G(g)
        for h in range(nh):
            udefs.append(linear_form(V, K, {V.names[T.table[sg][y]]: 1 for y in blocks[h]}))
            un.append(_u_label(g, h))
    Uaux = VarSet(un)
    cert.add_system("U", Uaux, udefs)
    perms = []
    for t in range(T.order):
        xs, s = ws.decompose(t)
        row = []
        for g in range(ng):
            sg = G.table[s][g]
            for h in range(nh):
                row.append(sg * nh + H.table[xs[sg]][h])
        perms.append(row)
    cert.add_action("Uact", monomial_action(T, Uaux, K, perms, verify=False))
    cert.claim("x s . u(g; h) = u(sg; x_sg h): g.u(g';h) = u(gg';h), phi_g(h).u(g;h') = u(g;hh'), "
               "phi_g'(h).u(g;h') = u(g;h') for g' != g",
               {"type": "homomorphism", "action": "V", "system": "U", "aux_action": "Uact"})
    cert.claim("action law on U~", {"type": "action_law", "action": "Uact"})
    cert.claim("U~ has dimension |G| |H|", {"type": "rank", "system": "U", "expected": ng * nh})
    cert.claim("U~ is faithful", {"type": "kernel", "action": "Uact", "expected": [T.identity]})
    cert.add_element("u0", RatFunc.var(Uaux, K, _u_label(e_g, H.identity)), system="U")
    cert.claim("x.u0 = u0 for x in M", {"type": "act_eq", "action": "V",
                                        "cases": [[x, "u0", "u0"] for x in sorted(ws.M)]})
    cert.notes["M_order"] = len(ws.M)

    dn = descend_complement(cert, "F", "V", "U", seed, max_retries, gate)
    cert.claim("K(H wr G) is rational over K(U~)^(H wr G)",
               {"type": "derived" if dn is not None else "skipped", "reason": "descent over a faithful U~"})

    # witness generators relocated into each block: v(g; i)
    base_forms = {}
    for g in range(ng):
        base_forms[g] = [udefs[g * nh + h] for h in range(nh)]
    if witness.kind == "rational":
        _transport(cert, "v", witness, base_forms, ws, "V")
    else:
        _stable(cert, witness, ws, udefs, base_forms)
    return cert


def _transport(cert, prefix, witness, base_forms, ws, action_name):
    T, G = ws.total, ws.G
    names = {}
    for g in range(G.order):
        names[g] = register_witness(cert, f"{prefix}{g}", witness, base_forms[g])
    k = len(witness.exprs)
    cases = []
    for s in range(G.order):
        sg_el = ws.embed_G(s)
        for g in range(G.order):
            for i in range(k):
                cases.append([sg_el, names[g][i], names[G.table[s][g]][i]])
    cert.claim("G permutes v(g; i) regularly", {"type": "act_eq_cross", "action": action_name, "cases": cases})
    n_cases = [[y, names[g][i], names[g][i]] for y in sorted(ws.N) for g in range(G.order) for i in range(k)]
    cert.claim("the base group fixes every v(g; i)", {"type": "act_eq_cross", "action": action_name,
                                                      "cases": n_cases})
    cert.claim("v(g; i) are |G| copies of the witness", {
        "type": "count", "elements": [n for g in range(G.order) for n in names[g]],
        "expected": G.order * k})
    cert.claim("K(U~)^(H wr G) = K(v(g; i))^G", {"type": "derived", "from": "regular permutation of the copies"})


def _stable(cert: Certificate, witness: RationalityWitness, ws, udefs, base_forms):
    """Extra variables ``w(g; j)`` permuted like the blocks, fixed by the base group."""
    T, G, K = ws.total, ws.G, witness.field
    m = witness.extra
    V = cert.ctx.varsets["V"]
    wn = [f"w[g{g};j{j}]" for g in range(G.order) for j in range(m)]
    Vst = VarSet(list(V.names) + wn)
    cert.add_varset("Vst", Vst)
    reg = cert.ctx.action("V")
    emb = [RatFunc.var(Vst, K, n) for n in V.names]
    rows = []
    for t in range(T.order):
        _, s = ws.decompose(t)
        row = [substitute(img, emb) for img in reg.images[t]]
        row += [RatFunc.var(Vst, K, f"w[g{G.table[s][g]};j{j}]") for g in range(G.order) for j in range(m)]
        rows.append(row)
    cert.add_action("Vst", GroupAction(T, Vst, K, rows, verify=False))
    cert.claim("action law with the extra variables", {"type": "action_law", "action": "Vst"})
    sdefs = [substitute(d, emb) for d in udefs] + [RatFunc.var(Vst, K, n) for n in wn]
    cert.add_system("UW", VarSet([f"U.{i}" for i in range(len(udefs))] + [f"W.{n}" for n in wn]), sdefs)
    cert.claim("U~ + V~ is faithful", {"type": "kernel", "action": "Vst", "system": "UW", "expected": [T.identity]})
    cert.claim("dim(U~ + V~) = |G| (|H| + m)", {"type": "rank", "system": "UW",
                                               "expected": G.order * (ws.H.order + m)})
    cases = []
    for g in range(G.order):
        for j in range(m):
            name = f"w({g};{j})"
            cert.add_element(name, RatFunc.var(Vst, K, f"w[g{g};j{j}]"))
    for t in range(T.order):
        _, s = ws.decompose(t)
        for g in range(G.order):
            for j in range(m):
                cases.append([t, f"w({g};{j})", f"w({G.table[s][g]};{j})"])
    cert.claim("x s . w(g; j) = w(sg; j)", {"type": "act_eq", "action": "Vst", "cases": cases})
    forms = {g: [substitute(f, emb) for f in base_forms[g]] +
             [RatFunc.var(Vst, K, f"w[g{g};j{j}]") for j in range(m)] for g in range(G.order)}
    _transport(cert, "v", witness, forms, ws, "Vst")

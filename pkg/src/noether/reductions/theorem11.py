"""Embedding ``K(G)`` into ``K(H x G)`` for abelian ``H`` with enough roots of unity.

``H`` is peeled into cyclic factors, largest first, giving nested groups
``C_d x (C_d' x (... x G))``.  Each layer ``C_n x G_l`` gets its own
certificate; the top certificate records the isomorphism from ``H x G``.
"""

from __future__ import annotations

import itertools

from ..descent import DEFAULT_RETRIES, SemiAffineSetup, minimal_invariant
from ..errors import HypothesisError
from ..funcfield import GroupAction, Presented, RatFunc, VarSet, monomial_action, substitute
from ..groups import FiniteGroup, cyclic, cyclic_decomposition, direct_product
from ..scalars import FieldSpec, primitive_root
from .certificate import Certificate
from .common import DESCENT_GATE, descend_complement, linear_form, register_regular


def nested_group(ds, G: FiniteGroup) -> FiniteGroup:
    """``C_{ds[-1]} x (C_{ds[-2]} x (... x G))``."""
    out = G
    for d in ds:
        out = direct_product(cyclic(d), out)
    return out


def nesting_isomorphism(H: FiniteGroup, G: FiniteGroup):
    """``(ds, nested, map)`` with ``map[h*|G| + g]`` the nested index of ``(h, g)``."""
    if not H.is_abelian():
        raise HypothesisError("H must be abelian")
    ds, coords = _coords(H)
    nested = nested_group(ds, G)
    mapping = []
    for h in range(H.order):
        for g in range(G.order):
            idx, size = g, G.order
            for a, d in zip(coords[h], ds):
                idx = a * size + idx
                size *= d
            mapping.append(idx)
    return ds, nested, mapping


def _coords(H: FiniteGroup):
    """Invariant factors and each element's exponents along a cyclic decomposition."""
    if H.order == 1:
        return [], {H.identity: ()}
    ds, gens = cyclic_decomposition(H)
    coords = {}
    for a in itertools.product(*(range(d) for d in ds)):
        g = H.identity
        for gi, ai in zip(gens, a):
            g = H.table[g][H.pow(gi, ai)]
        coords[g] = a
    return ds, coords


def _label(g: int) -> str:
    return f"g{g}"


def theorem11_layer(n: int, Gl: FiniteGroup, K: FieldSpec, seed: int = 0, max_retries: int = DEFAULT_RETRIES,
                    gate: int = DESCENT_GATE, sub_generators=None):
    """Certificate for ``C_n x G_l``; returns ``(cert, generators)``.

    ``generators`` is a list of :class:`Presented` invariants generating
    ``K(C_n x G_l)`` when ``sub_generators`` generate ``K(G_l)`` and descent ran,
    otherwise ``None``.
    """
    zeta = primitive_root(K, n)
    Gt = direct_product(cyclic(n), Gl)
    m = Gl.order
    e = Gl.identity
    cert = Certificate("1.1-layer", K, {"n": n, "G": Gl.to_json(), "total": Gt.to_json()}, seed)
    V, _ = register_regular(cert, "V", Gt, K)
    zpow = [zeta ** i for i in range(n)]

    # z(g) = sum_i zeta^i x[c^i g]
    zn = [f"z[{_label(g)}]" for g in range(m)]
    Zaux = VarSet(zn)
    zdefs = [linear_form(V, K, {V.names[i * m + g]: zpow[i] for i in range(n)}) for g in range(m)]
    cert.add_system("Z", Zaux, zdefs)
    perms = [[Gl.table[gt % m][g] for g in range(m)] for gt in range(Gt.order)]
    mults = [[zpow[(-(gt // m)) % n]] * m for gt in range(Gt.order)]
    Zact = cert.add_action("Zact", monomial_action(Gt, Zaux, K, perms, mults, verify=False))
    cert.claim("action law on the z-span", {"type": "action_law", "action": "Zact"})
    cert.claim("c^k g . z(h) = zeta^-k z(gh)",
               {"type": "homomorphism", "action": "V", "system": "Z", "aux_action": "Zact"})
    cert.claim("z(g) are independent", {"type": "rank", "system": "Z", "expected": m})
    cert.claim("faithful on the z-span", {"type": "kernel", "action": "Zact", "expected": [Gt.identity]})

    # t(h) = z(h)/z(1), z1 = z(1)
    others = [g for g in range(m) if g != e]
    tn = [f"t[{_label(h)}]" for h in others] + ["z1"]
    Taux = VarSet(tn)
    zv = [RatFunc.var(Zaux, K, i) for i in range(m)]
    tdefs = [zv[h] / zv[e] for h in others] + [zv[e]]
    cert.add_system("T", Taux, tdefs)
    tv = {h: RatFunc.var(Taux, K, f"t[{_label(h)}]") for h in others}
    one_T = RatFunc.const(Taux, K, 1)
    tv[e] = one_T
    z1 = RatFunc.var(Taux, K, "z1")
    rows = []
    for gt in range(Gt.order):
        k, g = gt // m, gt % m
        row = [tv[Gl.table[g][h]] / tv[g] for h in others]
        row.append(tv[g] * z1 * zpow[(-k) % n])
        rows.append(row)
    Tact = cert.add_action("Tact", GroupAction(Gt, Taux, K, rows, verify=False))
    cert.claim("g.t(h) = t(gh)/t(g), c.t(h) = t(h), g.z(1) = t(g) z(1), c.z(1) = zeta^-1 z(1)",
               {"type": "homomorphism", "action": "Zact", "system": "T", "aux_action": "Tact"})
    cert.claim("action law on K(t, z1)", {"type": "action_law", "action": "Tact"})
    c_powers = [k * m + e for k in range(n)]
    cert.claim("kernel on the t-variables is <c>",
               {"type": "kernel", "action": "Tact", "labels": tn[:-1], "expected": c_powers})
    cert.claim("fixed field of K(t) under the total group equals that under G",
               {"type": "derived", "from": "kernel on the t-variables is <c>"})

    # s(h) = x[h]/x[1] on the K(G_l) side
    Vl = VarSet(f"x[g{g}]" for g in range(m))
    cert.add_varset("Vl", Vl)
    regl = monomial_action(Gl, Vl, K, [list(r) for r in Gl.table], verify=False)
    cert.add_action("Vl", regl, regular=True)
    sn = [f"s[{_label(h)}]" for h in others] + ["x1"]
    Saux = VarSet(sn)
    xl = [RatFunc.var(Vl, K, i) for i in range(m)]
    cert.add_system("S", Saux, [xl[h] / xl[e] for h in others] + [xl[e]])
    sv = {h: RatFunc.var(Saux, K, f"s[{_label(h)}]") for h in others}
    sv[e] = RatFunc.const(Saux, K, 1)
    x1 = RatFunc.var(Saux, K, "x1")
    srows = [[sv[Gl.table[g][h]] / sv[g] for h in others] + [sv[g] * x1] for g in range(m)]
    Sact = cert.add_action("Sact", GroupAction(Gl, Saux, K, srows, verify=False))
    cert.claim("g.s(h) = s(gh)/s(g), g.x(1) = s(g) x(1)",
               {"type": "homomorphism", "action": "Vl", "system": "S", "aux_action": "Sact"})
    cert.claim("action law on K(s, x1)", {"type": "action_law", "action": "Sact"})
    cert.claim("t(h) -> s(h) intertwines the actions through the projection",
               {"type": "intertwine", "action1": "Tact", "labels1": tn[:-1], "action2": "Sact",
                "labels2": sn[:-1], "via": [gt % m for gt in range(Gt.order)]})

    # t0 and s0
    tsetup = SemiAffineSetup(Tact, tn[:-1], ["z1"], check_cocycle=False)
    t0 = minimal_invariant(tsetup, seed, max_retries)
    cert.add_element("t0", t0.f)
    cert.claim("t0 invariant", {"type": "invariant", "action": "Tact", "element": "t0"})
    cert.claim("t0 has the least possible degree n in z(1)",
               {"type": "orbit_degree", "aux_action": "Tact", "L": tn[:-1], "x": "z1", "element": "t0",
                "expected": n})
    for h in others:
        cert.add_element(f"Z.t[{_label(h)}]", zv[h] / zv[e], system="Z")
    cert.add_element("Z.z1", zv[e], system="Z")
    cert.add_element("t0.Z", substitute(t0.f, [zv[h] / zv[e] for h in others] + [zv[e]]), system="Z")
    cert.claim("t0 in z-coordinates", {"type": "substitute", "element": "t0",
                                       "images": [f"Z.t[{_label(h)}]" for h in others] + ["Z.z1"],
                                       "result": "t0.Z"})
    power_sum = sum((z ** n for z in zv), RatFunc.const(Zaux, K, 0))
    cert.add_element("sum z^n", power_sum, system="Z")
    cert.claim("t0 = sum_g z(g)^n", {"type": "equal", "lhs": "t0.Z", "rhs": "sum z^n"})
    cert.claim("t0 invariant on K(V)", {"type": "invariant", "action": "V", "element": "t0.Z"})

    ssetup = SemiAffineSetup(Sact, sn[:-1], ["x1"], check_cocycle=False)
    s0 = minimal_invariant(ssetup, seed, max_retries)
    cert.add_element("s0", s0.f)
    cert.claim("s0 invariant", {"type": "invariant", "action": "Sact", "element": "s0"})
    cert.claim("s0 has degree 1 in x(1)", {"type": "orbit_degree", "aux_action": "Sact", "L": sn[:-1],
                                           "x": "x1", "element": "s0", "expected": 1})
    cert.notes["t0"] = {"seed": seed, "retries": t0.retries, "degree": t0.degree}
    cert.notes["s0"] = {"seed": seed, "retries": s0.retries, "degree": s0.degree}

    # K(V) over K(Z): descent on the complement
    dnames = descend_complement(cert, "F", "V", "Z", seed, max_retries, gate)
    if dnames is None or sub_generators is None:
        cert.claim("rationality of K(V)^G over K(Z)^G", {"type": "derived" if dnames is not None else "skipped",
                                                       "reason": "linear action, faithful on Z"})
        return cert, None

    # phi(x[g]) = z(g) * (sum_h z(h))^(n-1): equivariant, lands in the <c>-fixed part of K(Z)
    Faux, Fdefs, _ = cert.ctx.systems["F"]
    fz = [RatFunc.var(Faux, K, name) for name in zn]
    S = sum(fz, RatFunc.const(Faux, K, 0))
    phi = [z * S ** (n - 1) for z in fz]
    gens = [cert.ctx.element(d) for d in dnames]
    names = list(dnames)
    for j, P in enumerate(sub_generators):
        if P.base != Vl:
            raise ValueError("sub-generators must live on the regular variables of G_l")
        expr = substitute(P.expr, [substitute(d, phi) for d in P.defs])
        name = f"gen[{j}]"
        cert.add_element(name, expr, system="F")
        cert.claim(f"{name} invariant", {"type": "invariant", "action": "V", "element": name})
        gens.append(cert.ctx.element(name))
        names.append(name)
    cert.claim("generator count equals the group order", {"type": "count", "elements": names,
                                                          "expected": Gt.order})
    cert.claim("generators generate K(V)^G", {"type": "derived",
                                               "from": "descent over K(Z) and the equivariant identification"})
    return cert, gens


def theorem11_embed(H: FiniteGroup, G: FiniteGroup, K: FieldSpec, seed: int = 0,
                    max_retries: int = DEFAULT_RETRIES, gate: int = DESCENT_GATE,
                    generators: bool | None = None):
    """Top certificate with one sub-certificate per cyclic layer.

    With ``G`` trivial and every layer's descent inside the gate, the final
    layer's generators are transported to the variables of ``H`` and
    registered as elements ``gen[j]``.
    """
    ds, nested, mapping = nesting_isomorphism(H, G)
    e = ds[-1] if ds else 1
    primitive_root(K, e)
    HG = direct_product(H, G)
    cert = Certificate("1.1", K, {"H": H.to_json(), "G": G.to_json()}, seed)
    cert.notes["layers"] = list(reversed(ds))
    cert.claim("H x G is isomorphic to the nested product", {
        "type": "group_hom", "source": HG.to_json(), "target": nested.to_json(), "map": mapping,
        "bijective": True})
    if generators is None:
        generators = G.order == 1
    gens = None
    if generators and G.order == 1:
        from .witness import trivial_witness
        gens = trivial_witness(G, K).generators()
    layers = []
    base = G
    for d in ds:
        sub, gens = theorem11_layer(d, base, K, seed, max_retries, gate, gens)
        layers.append(sub)
        base = direct_product(cyclic(d), base)
    for sub in reversed(layers):
        cert.add_sub(sub)
    if not ds:
        cert.claim("H is trivial: the embedding is the identity", {"type": "derived", "from": "|H| = 1"})
    if generators and gens is not None:
        _register_transported(cert, HG, nested, mapping, gens, K)
    return cert


def _register_transported(cert: Certificate, HG, nested, mapping, gens, K):
    V, _ = register_regular(cert, "V", HG, K)
    inv = [0] * len(mapping)
    for a, b in enumerate(mapping):
        inv[b] = a
    rename = [RatFunc.var(V, K, inv[j]) for j in range(nested.order)]
    defs = [substitute(d, rename) for d in gens[0].defs]
    cert.add_system("Gen", gens[0].aux, defs)
    names = []
    for j, P in enumerate(gens):
        name = f"gen[{j}]"
        cert.add_element(name, P.expr, system="Gen")
        cert.claim(f"{name} invariant under H x G", {"type": "invariant", "action": "V", "element": name})
        names.append(name)
    cert.claim("generator count equals |H x G|", {"type": "count", "elements": names, "expected": HG.order})


def iterated_generators(cert: Certificate) -> list[Presented]:
    """Transported generators registered by :func:`theorem11_embed`."""
    names = [k for k in cert.ctx.elements if k.startswith("gen[")]
    return [cert.ctx.element(n) for n in sorted(names, key=lambda k: int(k[4:-1]))]

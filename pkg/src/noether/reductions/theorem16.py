"""Extensions by a normal subgroup of order ``p = char K``, and the chains built from them.

For ``1 -> <c> -> Gt -> G -> 1`` with section ``u`` the coordinates are
``y(g) = sum_i x[c^i u(g)]`` and ``z(g) = sum_i i x[c^i u(g)]``; the element
``c^k u(h)`` sends ``y(g)`` to ``y(hg)`` and ``z(g)`` to
``(z(hg) - (k + m(h, g)) y(hg)) / n(h)``.
"""

from __future__ import annotations

from ..descent import DEFAULT_RETRIES, SemiAffineSetup, minimal_invariant
from ..errors import HypothesisError
from ..funcfield import GroupAction, MultiPoly, RatFunc, VarSet, monomial_action
from ..groups import (CentralExtensionData, FiniteGroup, Homomorphism, central_extension_data, cyclic,
                      d2n_split, dihedral, direct_product, find_central_order_p, pair_index, quotient)
from ..scalars import FieldSpec
from .certificate import Certificate
from .common import DESCENT_GATE, descend_complement, linear_form, register_regular
from .theorem11 import theorem11_embed


def _ext_check(ext: CentralExtensionData) -> dict:
    return {"type": "extension", "group": ext.total.to_json(), "c": ext.c, "quotient": ext.quotient.to_json(),
            "pi": list(ext.pi.map), "p": ext.p, "section": list(ext.section),
            "factor_set": [list(r) for r in ext.factor_set], "conj_exp": list(ext.conj_exp)}


def theorem16_reduce(ext: CentralExtensionData, K: FieldSpec, seed: int = 0, max_retries: int = DEFAULT_RETRIES,
                     gate: int = DESCENT_GATE) -> Certificate:
    p = ext.p
    if K.characteristic != p:
        raise HypothesisError(f"requires char K = p = {p} (got characteristic {K.characteristic})")
    if not ext.verify():
        raise HypothesisError("extension data do not reproduce the group table")
    Gt, G = ext.total, ext.quotient
    u, mfs, nconj = ext.section, ext.factor_set, ext.conj_exp
    cp = ext.c_powers
    dlog = {x: i for i, x in enumerate(cp)}
    decomp = []
    for gt in range(Gt.order):
        h = ext.pi(gt)
        decomp.append((dlog[Gt.table[gt][Gt.inv(u[h])]], h))
    cert = Certificate("1.6", K, {"extension": _ext_check(ext)}, seed)
    cert.claim("extension data reproduce the group", _ext_check(ext))
    V, _ = register_regular(cert, "V", Gt, K)
    r = G.order

    def coef(a):
        return K.scalar(a % p)

    ydefs = [linear_form(V, K, {V.names[Gt.table[cp[i]][u[g]]]: 1 for i in range(p)}) for g in range(r)]
    zdefs = [linear_form(V, K, {V.names[Gt.table[cp[i]][u[g]]]: i for i in range(1, p)}) for g in range(r)]
    yn = [f"y[g{g}]" for g in range(r)]
    zn = [f"z[g{g}]" for g in range(r)]
    YZ = VarSet(yn + zn)
    cert.add_system("YZ", YZ, ydefs + zdefs)
    cert.claim("y(g), z(g) are independent", {"type": "rank", "system": "YZ", "expected": 2 * r})
    yv = [RatFunc.var(YZ, K, n) for n in yn]
    zv = [RatFunc.var(YZ, K, n) for n in zn]
    rows = []
    for gt in range(Gt.order):
        k, h = decomp[gt]
        ninv = pow(nconj[h], -1, p)
        row = [yv[G.table[h][g]] for g in range(r)]
        row += [zv[G.table[h][g]] * coef(ninv) - yv[G.table[h][g]] * coef((k + mfs[h][g]) * ninv)
                for g in range(r)]
        rows.append(row)
    cert.add_action("YZact", GroupAction(Gt, YZ, K, rows, verify=False))
    cert.claim("c^k u(h): y(g) -> y(hg), z(g) -> (z(hg) - (k + m(h,g)) y(hg)) / n(h)",
               {"type": "homomorphism", "action": "V", "system": "YZ", "aux_action": "YZact"})
    cert.claim("action law on the y, z coordinates", {"type": "action_law", "action": "YZact"})
    c = ext.c
    cases = []
    for g in range(r):
        cert.add_element(f"y({g})", yv[g], system="YZ")
        cert.add_element(f"z({g})", zv[g], system="YZ")
        cert.add_element(f"z({g})-y({g})", zv[g] - yv[g], system="YZ")
        cases += [[c, f"y({g})", f"y({g})"], [c, f"z({g})", f"z({g})-y({g})"]]
    cert.claim("c.y(g) = y(g) and c.z(g) = z(g) - y(g)", {"type": "act_eq", "action": "YZact", "cases": cases})

    # W~ = span{y(g)} + K z with z = sum_g z(g)
    wn = yn + ["Z"]
    W = VarSet(wn)
    ztot = zdefs[0]
    for d in zdefs[1:]:
        ztot = ztot + d
    cert.add_system("W", W, ydefs + [ztot])
    cert.claim("W~ has dimension |G| + 1", {"type": "rank", "system": "W", "expected": r + 1})
    wy = [RatFunc.var(W, K, n) for n in yn]
    Zw = RatFunc.var(W, K, "Z")
    ysum = sum(wy, RatFunc.const(W, K, 0))
    wrows = []
    for gt in range(Gt.order):
        k, h = decomp[gt]
        ninv = pow(nconj[h], -1, p)
        img = Zw * coef(ninv) - ysum * coef(k * ninv)
        for g in range(r):
            if mfs[h][g] % p:
                img = img - wy[G.table[h][g]] * coef(mfs[h][g] * ninv)
        wrows.append([wy[G.table[h][g]] for g in range(r)] + [img])
    cert.add_action("Wact", GroupAction(Gt, W, K, wrows, verify=False))
    cert.claim("u(h).z = z/n - sum_g (m(h,g)/n) y(hg), c.z = z - sum_g y(g)",
               {"type": "homomorphism", "action": "V", "system": "W", "aux_action": "Wact"})
    cert.claim("action law on W~", {"type": "action_law", "action": "Wact"})
    cert.claim("faithful on W~", {"type": "kernel", "action": "Wact", "expected": [Gt.identity]})
    cert.claim("kernel on W is <c>", {"type": "kernel", "action": "Wact", "labels": yn, "expected": sorted(cp)})
    vsG = VarSet(f"v[g{g}]" for g in range(r))
    cert.add_varset("VG", vsG)
    cert.add_action("VG", monomial_action(G, vsG, K, [list(row) for row in G.table], verify=False), regular=True)
    cert.claim("W is the regular representation of G", {
        "type": "intertwine", "action1": "Wact", "labels1": yn, "action2": "VG", "labels2": list(vsG.names),
        "via": list(ext.pi.map)})

    setup = SemiAffineSetup(cert.ctx.action("Wact"), yn, ["Z"], check_cocycle=False)
    t0 = minimal_invariant(setup, seed, max_retries)
    cert.add_element("t0", t0.f)
    cert.claim("t0 invariant", {"type": "invariant", "action": "Wact", "element": "t0"})
    cert.claim("t0 has the least possible degree in z", {"type": "orbit_degree", "aux_action": "Wact", "L": yn,
                                                         "x": "Z", "element": "t0", "expected": p})
    cert.notes["t0"] = {"seed": seed, "retries": t0.retries, "degree": t0.degree}
    descend_complement(cert, "F", "V", "W", seed, max_retries, gate)
    cert.claim("K(Gt) is rational over K(W~)^Gt", {"type": "derived", "from": "descent over W~"})
    cert.claim("K(W~)^Gt = K(W)^Gt(t0)", {"type": "derived", "from": "t0 minimal over the kernel orbit"})
    cert.claim("K(W)^Gt = K(W)^G = K(G)", {"type": "derived", "from": "kernel on W is <c>; W regular for G"})
    return cert


# chains -----------------------------------------------------------------------

def _link_claims(cert: Certificate, links: list[Certificate], bottom: FiniteGroup) -> None:
    for i, link in enumerate(links):
        q = link.inputs["extension"]["quotient"]
        nxt = links[i + 1].inputs["extension"]["group"] if i + 1 < len(links) else bottom.to_json()
        cert.claim(f"link {i} lands on the next group", {"type": "group_equal", "a": q, "b": nxt})


def theorem17_chain(H: FiniteGroup, G: FiniteGroup, K: FieldSpec, seed: int = 0,
                    max_retries: int = DEFAULT_RETRIES, gate: int = DESCENT_GATE) -> Certificate:
    """``K(H x G)`` down to ``K(G)`` through central subgroups of order ``p``."""
    p = K.characteristic
    if p == 0:
        raise HypothesisError("requires char K = p > 0")
    if not H.is_p_group(p):
        raise HypothesisError(f"H (order {H.order}) is not a {p}-group")
    cert = Certificate("1.7", K, {"H": H.to_json(), "G": G.to_json()}, seed)
    k = 0
    size = H.order
    while size > 1:
        size //= p
        k += 1
    cert.claim("|H| = p^k", {"type": "p_group", "group": H.to_json(), "p": p, "exponent": k})
    links = []
    cur = H
    while cur.order > 1:
        sigma = find_central_order_p(cur, p)
        Gt = direct_product(cur, G)
        c = pair_index(Gt, sigma, 0)
        Hq, piH = quotient(cur, cur.subgroup_generated([sigma]))
        Gq = direct_product(Hq, G)
        pi = Homomorphism(Gt, Gq, tuple(piH(x // G.order) * G.order + x % G.order for x in range(Gt.order)))
        ext = central_extension_data(Gt, c, (Gq, pi))
        links.append(theorem16_reduce(ext, K, seed, max_retries, gate))
        cur = Hq
    for link in links:
        cert.add_sub(link)
    _link_claims(cert, links, G)
    cert.notes["chain_length"] = len(links)
    return cert


def _order_p_subgroup(Gt: FiniteGroup, Hset: frozenset, p: int) -> int:
    """Least-index element of order ``p`` in ``H``; for cyclic ``H`` it spans the unique such subgroup."""
    return min(h for h in Hset if Gt.element_order(h) == p)


def theorem18_chain(Gt: FiniteGroup, H, K: FieldSpec, seed: int = 0, max_retries: int = DEFAULT_RETRIES,
                    gate: int = DESCENT_GATE) -> Certificate:
    """``K(Gt)`` down to ``K(Gt/H)`` for ``H`` cyclic normal or central abelian of ``p``-power order."""
    p = K.characteristic
    Hset = frozenset(H)
    if p == 0:
        raise HypothesisError("requires char K = p > 0")
    if not Gt.is_subgroup(Hset) or not Gt.is_normal(Hset):
        raise HypothesisError("H is not a normal subgroup")
    n = len(Hset)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise HypothesisError(f"H is not a {p}-group")
    cyclic_case = any(Gt.element_order(h) == len(Hset) for h in Hset)
    central = Hset <= frozenset(Gt.center)
    abelian = all(Gt.table[a][b] == Gt.table[b][a] for a in Hset for b in Hset)
    if not cyclic_case and not (central and abelian):
        raise HypothesisError("H must be cyclic or an abelian subgroup of the center")
    cert = Certificate("1.8", K, {"group": Gt.to_json(), "H": sorted(Hset)}, seed)
    cert.claim("|H| = p^k", {"type": "derived", "from": f"|H| = {p}^{k}"})
    links = []
    cur, curH = Gt, Hset
    while len(curH) > 1:
        c = _order_p_subgroup(cur, curH, p)
        Q, pi = quotient(cur, cur.subgroup_generated([c]))
        ext = central_extension_data(cur, c, (Q, pi))
        links.append(theorem16_reduce(ext, K, seed, max_retries, gate))
        cur, curH = Q, frozenset(pi(h) for h in curH)
    for link in links:
        cert.add_sub(link)
    _link_claims(cert, links, cur)
    cert.notes["chain_length"] = len(links)
    return cert


def split_extension(G: FiniteGroup) -> CentralExtensionData:
    """``Z/2 x G`` over ``G``."""
    Gt = direct_product(cyclic(2), G)
    pi = Homomorphism(Gt, G, tuple(x % G.order for x in range(Gt.order)))
    return central_extension_data(Gt, pair_index(Gt, 1, 0), (G, pi))


def theorem14_reduce(G: FiniteGroup, K: FieldSpec, seed: int = 0, max_retries: int = DEFAULT_RETRIES,
                     gate: int = DESCENT_GATE) -> Certificate:
    """``K(Z/2 x G)`` over ``K(G)``: char 2 uses the order-p extension, otherwise the abelian embedding."""
    cert = Certificate("1.4", K, {"G": G.to_json()}, seed)
    if K.characteristic == 2:
        cert.notes["path"] = "1.6"
        cert.add_sub(theorem16_reduce(split_extension(G), K, seed, max_retries, gate))
    else:
        cert.notes["path"] = "1.1"
        cert.add_sub(theorem11_embed(cyclic(2), G, K, seed, max_retries, gate, generators=False))
    cert.claim("K(Z/2 x G) is rational over K(G)", {"type": "derived", "from": cert.notes["path"]})
    return cert


def theorem15_pipeline(n: int, K: FieldSpec, seed: int = 0, max_retries: int = DEFAULT_RETRIES,
                       gate: int = DESCENT_GATE) -> Certificate:
    """``K(D_2n)`` over ``K(D_n)`` for odd ``n`` via ``D_2n = Z/2 x D_n``."""
    if n < 1 or n % 2 == 0:
        raise HypothesisError("requires n odd")
    split = d2n_split(n)
    Dn = dihedral(n)
    target = direct_product(cyclic(2), Dn)
    swap = tuple((x % 2) * Dn.order + x // 2 for x in range(split.target.order))
    mapping = [swap[split(x)] for x in range(split.source.order)]
    cert = Certificate("1.5", K, {"n": n}, seed)
    cert.claim("D_2n is isomorphic to Z/2 x D_n", {"type": "group_hom", "source": dihedral(2 * n).to_json(),
                                                  "target": target.to_json(), "map": mapping, "bijective": True})
    cert.add_sub(theorem14_reduce(Dn, K, seed, max_retries, gate))
    cert.claim("K(D_2n) is rational over K(D_n)", {"type": "derived", "from": "1.4"})
    return cert

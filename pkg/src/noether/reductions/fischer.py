"""Abelian groups: character coordinates and invariant monomials from a kernel lattice."""

from __future__ import annotations

import itertools

from ..errors import HypothesisError
from ..funcfield import MultiPoly, RatFunc, VarSet, monomial_action
from ..groups import FiniteGroup, cyclic_decomposition
from ..oracle import kernel_lattice
from ..scalars import FieldSpec, primitive_root
from .certificate import Certificate
from .common import linear_form, register_regular
from .witness import RationalityWitness


def character_data(A: FiniteGroup, K: FieldSpec):
    """Coordinates of each element along a cyclic decomposition, and the character table.

    Returns ``(ds, coords, chars, table)`` where ``chars`` lists exponent
    vectors ``v`` and ``table[v_index][a]`` is ``chi_v(a)`` as a Scalar.
    """
    if not A.is_abelian():
        raise HypothesisError("Fischer's construction needs an abelian group")
    ds, gens = cyclic_decomposition(A) if A.order > 1 else ([], [])
    e = ds[-1] if ds else 1
    zeta = primitive_root(K, e)
    coords = {}
    for a in itertools.product(*(range(d) for d in ds)):
        g = A.identity
        for gi, ai in zip(gens, a):
            g = A.table[g][A.pow(gi, ai)]
        coords[g] = a
    if len(coords) != A.order:
        raise AssertionError("cyclic decomposition does not cover the group")
    chars = list(itertools.product(*(range(d) for d in ds)))
    powers = [zeta ** k for k in range(e)]
    table = []
    for v in chars:
        table.append([powers[sum(vi * ai * (e // d) for vi, ai, d in zip(v, coords[g], ds)) % e]
                      for g in range(A.order)])
    return ds, coords, chars, table


def fischer_construct(A: FiniteGroup, K: FieldSpec, seed: int = 0):
    """Certificate plus the generating set as a reusable witness."""
    ds, coords, chars, table = character_data(A, K)
    cert = Certificate("fischer", K, {"group": A.to_json()}, seed)
    vs, _ = register_regular(cert, "V", A, K)
    names = ["y[" + ",".join(map(str, v)) + "]" for v in chars]
    aux = VarSet(names)
    defs = [linear_form(vs, K, {vs.names[g]: table[k][g] for g in range(A.order)}) for k in range(len(chars))]
    cert.add_system("Y", aux, defs)
    cert.claim("characters are linearly independent", {"type": "rank", "system": "Y", "expected": A.order})
    ident = list(range(len(chars)))
    diag = monomial_action(A, aux, K, [ident] * A.order,
                           [[table[k][b].inverse() for k in range(len(chars))] for b in range(A.order)])
    cert.add_action("Yact", diag)
    cert.claim("b.y_chi = chi(b)^-1 y_chi", {"type": "homomorphism", "action": "V", "system": "Y",
                                             "aux_action": "Yact"})
    M = [[v[i] for v in chars] for i in range(len(ds))]
    basis, index = kernel_lattice(M, ds, len(chars))
    one = K.one().raw
    gen_names, exprs = [], []
    for j, w in enumerate(basis):
        f = RatFunc(MultiPoly(aux, K, {tuple(w): one}))
        name = f"f[{j}]"
        cert.add_element(name, f, system="Y")
        cert.claim(f"{name} invariant", {"type": "invariant", "action": "Yact", "element": name})
        gen_names.append(name)
        exprs.append(f)
    cert.claim("generators are the lattice monomials",
               {"type": "monomials", "elements": gen_names, "exponents": [list(w) for w in basis]})
    cert.claim("exponent lattice has index |A|",
               {"type": "lattice_index", "matrix": M, "moduli": list(ds), "basis": [list(w) for w in basis],
                "expected": A.order})
    cert.claim("generator count equals |A|", {"type": "count", "elements": gen_names, "expected": A.order})
    cert.notes["invariant_factors"] = list(ds)
    cert.notes["index"] = index
    witness = RationalityWitness(A, K, aux, defs, exprs, note="character monomials")
    return cert, witness


def fischer(A: FiniteGroup, K: FieldSpec, seed: int = 0) -> Certificate:
    return fischer_construct(A, K, seed)[0]

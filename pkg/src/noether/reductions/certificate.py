"""Certificates: serialized constructions plus claims re-checkable from the JSON alone.

Every claim carries a ``check`` record naming a verifier and the serialized
objects it consumes.  The same verifier runs at construction time and in
``reverify``, so a certificate read back from disk is judged only by its data.
"""

from __future__ import annotations

import json
from typing import Callable, Sequence

from ..errors import NoetherError, ResourceLimitError
from ..funcfield import GroupAction, MultiPoly, Presented, RatFunc, VarSet, monomial_action, substitute
from ..groups import CentralExtensionData, FiniteGroup, Homomorphism, central_extension_data, group_from_spec
from ..oracle import (SpanSolver, action_kernel, check_generates_affine, check_homomorphism, check_invariant,
                      cross_images, forms_rank, image_size, induced_action, int_det, kernel_lattice, linear_coeffs,
                      orbit_degree_bound, x_degree)
from ..scalars import FieldSpec, raw_from_json

SCHEMA = "noether-certificate/1"


class SchemaError(NoetherError):
    """A certificate file does not follow the expected layout."""


class Context:
    """Named objects a certificate's claims refer to."""

    def __init__(self, field: FieldSpec, size_cap: int = 4096):
        self.field = field
        self.size_cap = size_cap
        self.varsets: dict[str, VarSet] = {}
        self.actions: dict[str, GroupAction] = {}
        self.systems: dict[str, tuple[VarSet, list[RatFunc], str]] = {}
        self.elements: dict[str, object] = {}
        self._groups: dict[str, FiniteGroup] = {}
        self._induced: dict[tuple[str, str], GroupAction] = {}

    def group(self, spec: dict) -> FiniteGroup:
        key = json.dumps(spec, sort_keys=True)
        G = self._groups.get(key)
        if G is None:
            G = group_from_spec(spec, self.size_cap)
            self._groups[key] = G
        return G

    def action(self, name: str) -> GroupAction:
        return self.actions[name]

    def element(self, name: str):
        return self.elements[name]

    def system_of(self, name: str) -> str | None:
        return self._element_system.get(name)

    def induced(self, action_name: str, system_name: str) -> GroupAction:
        key = (action_name, system_name)
        if key not in self._induced:
            aux, defs, _ = self.systems[system_name]
            self._induced[key] = induced_action(self.actions[action_name], defs, aux)
        return self._induced[key]

    _element_system: dict


# verifiers --------------------------------------------------------------------

def _act_on(ctx: Context, action_name: str, elem_name: str, g: int):
    el = ctx.element(elem_name)
    action = ctx.action(action_name)
    if isinstance(el, Presented) and el.expr.varset != action.varset:
        return ctx.induced(action_name, ctx.system_of(elem_name)).act(g, el.expr)
    return action.act(g, _value(ctx, elem_name))


def _value(ctx: Context, elem_name: str) -> RatFunc:
    el = ctx.element(elem_name)
    return el.expr if isinstance(el, Presented) else el


def _same_frame(ctx: Context, a: str, b: str) -> bool:
    return ctx.system_of(a) == ctx.system_of(b)


def v_action_law(ctx, c):
    return ctx.action(c["action"]).verify_law()


def v_homomorphism(ctx, c):
    aux, defs, _ = ctx.systems[c["system"]]
    return check_homomorphism(ctx.action(c["action"]), ctx.action(c["aux_action"]), defs)


def v_invariant(ctx, c):
    el = ctx.element(c["element"])
    action = ctx.action(c["action"])
    if isinstance(el, Presented) and el.expr.varset == action.varset:
        return all(action.act(g, el.expr) == el.expr for g in range(action.group.order))
    if isinstance(el, Presented):
        aux_action = ctx.induced(c["action"], ctx.system_of(c["element"]))
        return all(aux_action.act(g, el.expr) == el.expr for g in range(action.group.order))
    return check_invariant(el, action)


def v_kernel(ctx, c):
    action = ctx.action(c["action"])
    if c.get("system"):
        forms = ctx.systems[c["system"]][1]
    elif c.get("labels") is not None:
        forms = [RatFunc.var(action.varset, action.field, l) for l in c["labels"]]
    else:
        forms = None
    return sorted(action_kernel(action, forms)) == sorted(c["expected"])


def v_rank(ctx, c):
    return forms_rank(ctx.systems[c["system"]][1]) == c["expected"]


def v_generates_affine(ctx, c):
    zs = [_value(ctx, n) for n in c["elements"]]
    return check_generates_affine(zs, c["x_labels"])


def v_orbit_degree(ctx, c):
    aux_action = ctx.action(c["aux_action"])
    bound, _ = orbit_degree_bound(aux_action, c["L"], c["x"])
    f = _value(ctx, c["element"])
    if f.varset != aux_action.varset:
        return False
    return bound == x_degree(f, c["x"]) == c["expected"]


def v_act_eq(ctx, c):
    for g, a, b in c["cases"]:
        if not _same_frame(ctx, a, b):
            return False
        if _act_on(ctx, c["action"], a, g) != _value(ctx, b):
            return False
    return True


def _expanded(ctx: Context, elem_name: str) -> RatFunc:
    el = ctx.element(elem_name)
    if isinstance(el, Presented):
        return substitute(el.expr, ctx.systems[ctx.system_of(elem_name)][1])
    return el


def v_act_eq_cross(ctx, c):
    """Like ``act_eq`` for elements presented over different systems."""
    action = ctx.action(c["action"])
    solvers, expanded = {}, {}
    for g, a, b in c["cases"]:
        ea, eb = ctx.element(a), ctx.element(b)
        if isinstance(ea, Presented) and isinstance(eb, Presented):
            sa, sb = ctx.system_of(a), ctx.system_of(b)
            aux_b, defs_b, _ = ctx.systems[sb]
            if sb not in solvers:
                solvers[sb] = SpanSolver([linear_coeffs(d) for d in defs_b], action.field.ops)
            imgs = None
            if solvers[sb].rank == len(defs_b):
                imgs = cross_images(action, g, ctx.systems[sa][1], defs_b, aux_b, solvers[sb])
            if imgs is not None:
                if substitute(ea.expr, imgs) != eb.expr:
                    return False
                continue
        for n in (a, b):
            if n not in expanded:
                expanded[n] = _expanded(ctx, n)
        if expanded[a].varset != action.varset or action.act(g, expanded[a]) != expanded[b]:
            return False
    return True


def v_equal(ctx, c):
    return _same_frame(ctx, c["lhs"], c["rhs"]) and _value(ctx, c["lhs"]) == _value(ctx, c["rhs"])


def v_substitute(ctx, c):
    frames = {ctx.system_of(n) for n in c["images"]} | {ctx.system_of(c["result"])}
    if len(frames) != 1:
        return False
    f = ctx.element(c["element"])
    if isinstance(f, Presented) or len(c["images"]) != len(f.varset):
        return False
    return substitute(f, [_value(ctx, n) for n in c["images"]]) == _value(ctx, c["result"])


def v_intertwine(ctx, c):
    a1, a2 = ctx.action(c["action1"]), ctx.action(c["action2"])
    l1, l2 = c["labels1"], c["labels2"]
    via = c["via"]
    vs1, vs2 = a1.varset, a2.varset
    idx1 = {vs1.index[l] for l in l1}
    zero = RatFunc.const(vs2, a2.field, 0)
    images = [zero] * len(vs1)
    for a, b in zip(l1, l2):
        images[vs1.index[a]] = RatFunc.var(vs2, a2.field, b)
    for g in range(a1.group.order):
        for a, b in zip(l1, l2):
            img = a1.images[g][vs1.index[a]]
            if (img.num.variables() | img.den.variables()) - idx1:
                return False
            if substitute(img, images) != a2.images[via[g]][vs2.index[b]]:
                return False
    return True


def v_group_hom(ctx, c):
    src, tgt = ctx.group(c["source"]), ctx.group(c["target"])
    hom = Homomorphism(src, tgt, tuple(c["map"]))
    if len(hom.map) != src.order or any(not 0 <= x < tgt.order for x in hom.map):
        return False
    if not hom.is_homomorphism():
        return False
    return hom.is_isomorphism() if c.get("bijective") else True


def v_extension(ctx, c):
    G, Q = ctx.group(c["group"]), ctx.group(c["quotient"])
    pi = Homomorphism(G, Q, tuple(c["pi"]))
    ext = CentralExtensionData(G, c["p"], c["c"], Q, pi, tuple(c["section"]),
                               tuple(tuple(r) for r in c["factor_set"]), tuple(c["conj_exp"]))
    if not ext.verify():
        return False
    again = central_extension_data(G, c["c"], (Q, pi))
    return again.section == ext.section and again.factor_set == ext.factor_set and again.conj_exp == ext.conj_exp


def v_lattice_index(ctx, c):
    M, d, basis = c["matrix"], c["moduli"], c["basis"]
    n = len(basis)
    for v in basis:
        for row, mod in zip(M, d):
            if sum(a * b for a, b in zip(row, v)) % mod:
                return False
    if abs(int_det(basis)) != c["expected"]:
        return False
    _, idx = kernel_lattice(M, d, n)
    return idx == c["expected"] == image_size(M, d, n)


def v_monomials(ctx, c):
    for name, exps in zip(c["elements"], c["exponents"]):
        f = _value(ctx, name)
        mono = RatFunc(MultiPoly(f.varset, f.field, {tuple(exps): f.field.ops.one}))
        if f != mono:
            return False
    return len(c["elements"]) == len(c["exponents"])


def v_count(ctx, c):
    return len(c["elements"]) == c["expected"] and all(n in ctx.elements for n in c["elements"])


def v_group_equal(ctx, c):
    return ctx.group(c["a"]) == ctx.group(c["b"])


def v_p_group(ctx, c):
    G = ctx.group(c["group"])
    if "exponent" in c:
        return G.order == c["p"] ** c["exponent"]
    return G.is_p_group(c["p"])


def v_trivially_true(ctx, c):
    return True


CHECKS: dict[str, Callable] = {
    "action_law": v_action_law,
    "homomorphism": v_homomorphism,
    "invariant": v_invariant,
    "kernel": v_kernel,
    "rank": v_rank,
    "generates_affine": v_generates_affine,
    "orbit_degree": v_orbit_degree,
    "act_eq": v_act_eq,
    "act_eq_cross": v_act_eq_cross,
    "equal": v_equal,
    "substitute": v_substitute,
    "intertwine": v_intertwine,
    "group_hom": v_group_hom,
    "extension": v_extension,
    "lattice_index": v_lattice_index,
    "monomials": v_monomials,
    "count": v_count,
    "group_equal": v_group_equal,
    "p_group": v_p_group,
    "derived": v_trivially_true,
    "skipped": v_trivially_true,
}

STATUS = {"derived": "derived", "skipped": "skipped"}


def run_check(ctx: Context, check: dict) -> tuple[bool, str | None]:
    fn = CHECKS.get(check.get("type"))
    if fn is None:
        raise SchemaError(f"unknown check type {check.get('type')!r}")
    try:
        return bool(fn(ctx, check)), None
    except (KeyError, IndexError) as exc:
        raise SchemaError(f"check refers to missing data: {exc}") from exc
    except ResourceLimitError:
        raise
    except (ValueError, ArithmeticError, ZeroDivisionError, NoetherError) as exc:
        return False, f"{type(exc).__name__}: {exc}"


# certificate -----------------------------------------------------------------

class Certificate:
    def __init__(self, theorem: str, field: FieldSpec, inputs: dict, seed: int = 0, size_cap: int = 4096):
        self.theorem = theorem
        self.field = field
        self.inputs = inputs
        self.seed = seed
        self.ctx = Context(field, size_cap)
        self.ctx._element_system = {}
        self._varset_json: dict[str, list] = {}
        self._action_json: dict[str, dict] = {}
        self._system_json: dict[str, dict] = {}
        self._element_json: dict[str, dict] = {}
        self.claims: list[dict] = []
        self.sub: list[Certificate] = []
        self.notes: dict = {}

    # registration ---------------------------------------------------------
    def add_varset(self, name: str, vs: VarSet) -> VarSet:
        if name in self.ctx.varsets and self.ctx.varsets[name] != vs:
            raise ValueError(f"varset {name} already registered")
        self.ctx.varsets[name] = vs
        self._varset_json[name] = list(vs.names)
        return vs

    def _varset_name(self, vs: VarSet) -> str:
        for name, v in self.ctx.varsets.items():
            if v == vs:
                return name
        raise ValueError("varset not registered")

    def add_action(self, name: str, action: GroupAction, regular: bool = False) -> GroupAction:
        vname = self._varset_name(action.varset)
        if regular:
            data = {"kind": "regular", "group": action.group.to_json(), "varset": vname}
        else:
            data = action.to_json()
            data["varset"] = vname
        self.ctx.actions[name] = action
        self._action_json[name] = data
        return action

    def add_system(self, name: str, aux: VarSet, defs: Sequence[RatFunc]) -> None:
        auxname = name + ".aux"
        self.add_varset(auxname, aux)
        base = self._varset_name(defs[0].varset) if defs else auxname
        self.ctx.systems[name] = (aux, list(defs), base)
        self._system_json[name] = {"aux": auxname, "base": base, "defs": [d.to_json() for d in defs]}

    def add_element(self, name: str, value, system: str | None = None) -> None:
        if name in self.ctx.elements:
            raise ValueError(f"element {name} already registered")
        if system is not None:
            aux, defs, _ = self.ctx.systems[system]
            expr = value.expr if isinstance(value, Presented) else value
            if expr.varset != aux:
                raise ValueError("element expression is not over the system's coordinates")
            value = Presented(expr, defs)
            self._element_json[name] = {"system": system, "expr": expr.to_json()}
        else:
            self._element_json[name] = {"varset": self._varset_name(value.varset), "value": value.to_json()}
        self.ctx.elements[name] = value
        self.ctx._element_system[name] = system

    def claim(self, name: str, check: dict) -> bool:
        ok, err = run_check(self.ctx, check)
        rec = {"name": name, "ok": ok, "status": STATUS.get(check["type"], "verified"), "check": check}
        if err:
            rec["error"] = err
        self.claims.append(rec)
        return ok

    def add_sub(self, cert: "Certificate") -> None:
        self.sub.append(cert)

    # status ---------------------------------------------------------------
    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.claims) and all(s.ok for s in self.sub)

    def first_failure(self) -> str | None:
        for c in self.claims:
            if not c["ok"]:
                return f"{self.theorem}: {c['name']}"
        for s in self.sub:
            f = s.first_failure()
            if f:
                return f
        return None

    def claim_count(self) -> tuple[int, int]:
        total = len(self.claims)
        bad = sum(1 for c in self.claims if not c["ok"])
        for s in self.sub:
            t, b = s.claim_count()
            total += t
            bad += b
        return total, bad

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "theorem": self.theorem,
            "field": self.field.to_json(),
            "inputs": self.inputs,
            "seed": self.seed,
            "status": "OK" if self.ok else "FAILED",
            "first_failure": self.first_failure(),
            "varsets": self._varset_json,
            "actions": self._action_json,
            "systems": self._system_json,
            "elements": self._element_json,
            "claims": self.claims,
            "notes": self.notes,
            "sub": [s.to_json() for s in self.sub],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"


# reading back -------------------------------------------------------------

def _load_action(ctx: Context, data: dict) -> GroupAction:
    vs = ctx.varsets[data["varset"]]
    G = ctx.group(data["group"])
    kind = data["kind"]
    K = ctx.field
    if kind == "regular":
        if len(vs) != G.order:
            raise SchemaError("regular action varset has the wrong size")
        return monomial_action(G, vs, K, [list(row) for row in G.table], verify=False)
    if kind == "monomial":
        rows = []
        for perm, mult in zip(data["perm"], data["mult"]):
            rows.append([RatFunc(MultiPoly(vs, K, {vs.unit(j): raw_from_json(c, K)}))
                         for j, c in zip(perm, mult)])
        return GroupAction(G, vs, K, rows, verify=False)
    if kind == "images":
        rows = [[RatFunc.from_json(r, vs, K) for r in row] for row in data["images"]]
        return GroupAction(G, vs, K, rows, verify=False)
    raise SchemaError(f"unknown action kind {kind!r}")


def load_context(data: dict, size_cap: int = 4096) -> Context:
    K = FieldSpec.from_json(data["field"])
    ctx = Context(K, size_cap)
    ctx._element_system = {}
    for name, labels in data["varsets"].items():
        ctx.varsets[name] = VarSet(labels)
    for name, a in data["actions"].items():
        ctx.actions[name] = _load_action(ctx, a)
    for name, s in data["systems"].items():
        aux = ctx.varsets[s["aux"]]
        base = ctx.varsets[s["base"]]
        defs = [RatFunc.from_json(d, base, K) for d in s["defs"]]
        ctx.systems[name] = (aux, defs, s["base"])
    for name, e in data["elements"].items():
        if "system" in e:
            aux, defs, _ = ctx.systems[e["system"]]
            ctx.elements[name] = Presented(RatFunc.from_json(e["expr"], aux, K), defs)
            ctx._element_system[name] = e["system"]
        else:
            ctx.elements[name] = RatFunc.from_json(e["value"], ctx.varsets[e["varset"]], K)
            ctx._element_system[name] = None
    return ctx


def reverify(data: dict, size_cap: int = 4096) -> list[tuple[str, bool, bool, str | None]]:
    """Recompute every claim (recursively); rows are ``(name, stored_ok, recomputed_ok, error)``."""
    if not isinstance(data, dict) or data.get("schema") != SCHEMA:
        raise SchemaError("not a certificate (schema field missing or unknown)")
    try:
        ctx = load_context(data, size_cap)
    except (KeyError, TypeError, IndexError) as exc:
        raise SchemaError(f"malformed certificate: {exc!r}") from exc
    rows = []
    for c in data["claims"]:
        ok, err = run_check(ctx, c["check"])
        rows.append((f"{data['theorem']}: {c['name']}", bool(c["ok"]), ok, err))
    for s in data.get("sub", []):
        rows.extend(reverify(s, size_cap))
    return rows

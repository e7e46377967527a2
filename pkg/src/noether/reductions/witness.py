"""Generating sets for ``K(H)`` that other constructions can relocate."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..funcfield import GroupAction, Presented, RatFunc, VarSet, regular_action, substitute
from ..groups import FiniteGroup
from ..oracle import forms_rank, induced_action
from ..scalars import FieldSpec


@dataclass
class RationalityWitness:
    """Generators ``exprs[i](aux)`` of ``K(H)``, each aux variable standing for a linear form in ``x[h]``.

    For ``kind == "stably_rational"`` the base variables are the regular ones
    followed by ``extra`` fixed indeterminates ``e[j]``.
    """

    group: FiniteGroup
    field: FieldSpec
    aux: VarSet
    defs: list
    exprs: list
    kind: str = "rational"
    extra: int = 0
    note: str = ""
    checked: bool = dc_field(default=False, repr=False)

    @property
    def base(self) -> VarSet:
        return self.defs[0].varset

    def generators(self) -> list[Presented]:
        return [Presented(e, self.defs) for e in self.exprs]

    def base_action(self):
        """Regular action, extended by the identity on any extra variables."""
        vs, act = regular_action(self.group, self.field)
        if not self.extra:
            return act
        base = self.base
        rows = []
        for g in range(self.group.order):
            row = [substitute(img, [RatFunc.var(base, self.field, n) for n in vs.names]) for img in act.images[g]]
            row += [RatFunc.var(base, self.field, f"e[{j}]") for j in range(self.extra)]
            rows.append(row)
        return GroupAction(self.group, base, self.field, rows, verify=False)

    def check(self) -> bool:
        expected = self.group.order + (self.extra if self.kind == "stably_rational" else 0)
        if len(self.exprs) != expected or forms_rank(self.defs) != len(self.defs):
            return False
        aux_act = induced_action(self.base_action(), self.defs, self.aux)
        ok = all(aux_act.act(g, e) == e for e in self.exprs for g in range(self.group.order))
        self.checked = ok
        return ok

    def relocated_defs(self, images) -> list[RatFunc]:
        """Defining forms after sending each base variable to ``images[i]``."""
        return [substitute(d, list(images)) for d in self.defs]

    def stabilized(self, m: int) -> "RationalityWitness":
        """Same generators plus ``m`` fixed indeterminates."""
        if self.extra:
            raise ValueError("witness already carries extra variables")
        base = VarSet(list(self.base.names) + [f"e[{j}]" for j in range(m)])
        aux = VarSet(list(self.aux.names) + [f"ae[{j}]" for j in range(m)])
        K = self.field
        emb = [RatFunc.var(base, K, n) for n in self.base.names]
        defs = [substitute(d, emb) for d in self.defs] + [RatFunc.var(base, K, f"e[{j}]") for j in range(m)]
        aux_emb = [RatFunc.var(aux, K, n) for n in self.aux.names]
        exprs = [substitute(e, aux_emb) for e in self.exprs] + [RatFunc.var(aux, K, f"ae[{j}]") for j in range(m)]
        return RationalityWitness(self.group, K, aux, defs, exprs, "stably_rational", m,
                                  (self.note + f"; plus {m} fixed indeterminates").lstrip("; "))


def trivial_witness(G: FiniteGroup, K: FieldSpec) -> RationalityWitness:
    """``K(1) = K(x[1])``."""
    if G.order != 1:
        raise ValueError("trivial witness needs the trivial group")
    vs, _ = regular_action(G, K)
    aux = VarSet(["a[0]"])
    return RationalityWitness(G, K, aux, [RatFunc.var(vs, K, 0)], [RatFunc.var(aux, K, 0)], note="trivial group")

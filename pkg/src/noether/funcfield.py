"""Sparse multivariate polynomials and rational functions over a FieldSpec.

Exponent vectors are dense tuples indexed by a :class:`VarSet`.  Rational
functions are kept as normalized fractions without multivariate gcd; equality
is decided by cross-multiplication.

Actions are left actions, ``(s t).f = s.(t.f)``, realized as substitution:
``s.f = f(s.x_1, ..., s.x_n)`` where ``images[s][i] = s.x_i``.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from . import kernels
from .errors import ResourceLimitError
from .groups import FiniteGroup
from .scalars import FieldSpec, Scalar, format_raw, raw_from_json, raw_to_json

TERM_CAP = 200_000


def set_term_cap(cap: int) -> None:
    global TERM_CAP
    if cap < 1:
        raise ValueError("term cap must be positive")
    TERM_CAP = cap


def _check_cap(terms: dict) -> dict:
    if len(terms) > TERM_CAP:
        raise ResourceLimitError(f"polynomial with {len(terms)} terms exceeds term cap {TERM_CAP}")
    return terms


class VarSet:
    """Ordered, immutable list of variable labels."""

    __slots__ = ("names", "index", "_hash")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise ValueError("variable labels must be unique")
        self._hash = hash(self.names)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        return self is other or (isinstance(other, VarSet) and self.names == other.names)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VarSet({list(self.names)})"

    def __add__(self, other: "VarSet") -> "VarSet":
        return VarSet(self.names + tuple(n for n in other.names if n not in self.index))

    def unit(self, i: int) -> tuple[int, ...]:
        e = [0] * len(self.names)
        e[i] = 1
        return tuple(e)


def _grlex_key(e):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("varset", "field", "terms")

    def __init__(self, varset: VarSet, field: FieldSpec, terms: dict | None = None):
        self.varset = varset
        self.field = field
        self.terms = terms if terms is not None else {}

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, varset, field, value) -> "MultiPoly":
        c = field.scalar(value).raw
        if c == field.ops.zero:
            return cls(varset, field, {})
        return cls(varset, field, {(0,) * len(varset): c})

    @classmethod
    def var(cls, varset, field, which, coeff=1) -> "MultiPoly":
        i = varset.index[which] if isinstance(which, str) else int(which)
        c = field.scalar(coeff).raw
        return cls(varset, field, {varset.unit(i): c} if c != field.ops.zero else {})

    @classmethod
    def linear(cls, varset, field, coeffs: dict) -> "MultiPoly":
        """``sum coeffs[label] * label``; keys may be labels or indices."""
        ops = field.ops
        terms = {}
        for which, c in coeffs.items():
            i = varset.index[which] if isinstance(which, str) else int(which)
            raw = field.scalar(c).raw
            e = varset.unit(i)
            cur = terms.get(e)
            raw = raw if cur is None else ops.add(cur, raw)
            if raw == ops.zero:
                terms.pop(e, None)
            else:
                terms[e] = raw
        return cls(varset, field, terms)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.varset != self.varset or other.field != self.field:
                raise ValueError("polynomials over different varsets or fields")
            return other
        return MultiPoly.const(self.varset, self.field, other)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        o = self._coerce(other)
        return MultiPoly(self.varset, self.field, kernels.poly_add(self.terms, o.terms, self.field.ops))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        o = self._coerce(other)
        return MultiPoly(self.varset, self.field, kernels.poly_sub(self.terms, o.terms, self.field.ops))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return MultiPoly(self.varset, self.field, kernels.poly_neg(self.terms, self.field.ops))

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        if isinstance(other, (int, Scalar)) or not isinstance(other, MultiPoly):
            c = self.field.scalar(other).raw
            return MultiPoly(self.varset, self.field, kernels.poly_scale(self.terms, c, self.field.ops))
        o = self._coerce(other)
        return MultiPoly(self.varset, self.field,
                         _check_cap(kernels.poly_mul(self.terms, o.terms, self.field.ops)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = MultiPoly.const(self.varset, self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        return RatFunc(self) / other

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self) == other
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self) -> Scalar:
        return Scalar(self.field, self.terms.get((0,) * len(self.varset), self.field.ops.zero))

    def leading(self) -> tuple[tuple[int, ...], tuple]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, which) -> int:
        i = self.varset.index[which] if isinstance(which, str) else int(which)
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return used

    def coeff_of(self, exps) -> Scalar:
        return Scalar(self.field, self.terms.get(tuple(exps), self.field.ops.zero))

    def scale_raw(self, c) -> "MultiPoly":
        return MultiPoly(self.varset, self.field, kernels.poly_scale(self.terms, c, self.field.ops))

    def monomial_content(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * len(self.varset)
        it = iter(self.terms)
        low = list(next(it))
        for e in it:
            for i, k in enumerate(e):
                if k < low[i]:
                    low[i] = k
        return tuple(low)

    def shift(self, delta: Sequence[int]) -> "MultiPoly":
        """Multiply by the monomial ``x^delta`` (entries may be negative if exact)."""
        return MultiPoly(self.varset, self.field,
                         {tuple(a + b for a, b in zip(e, delta)): c for e, c in self.terms.items()})

    def divide_exact(self, other: "MultiPoly") -> "MultiPoly | None":
        """Quotient if ``other`` divides ``self`` exactly, else ``None``."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        ops = self.field.ops
        le, lc = other.leading()
        lc_inv = ops.inv(lc)
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem, key=_grlex_key)
            diff = tuple(a - b for a, b in zip(e, le))
            if any(d < 0 for d in diff):
                return None
            c = ops.mul(rem[e], lc_inv)
            quot[diff] = c
            step = {tuple(a + b for a, b in zip(oe, diff)): ops.mul(oc, c) for oe, oc in other.terms.items()}
            rem = kernels.poly_sub(rem, step, ops)
            if len(quot) > TERM_CAP:
                raise ResourceLimitError("exact division exceeded term cap")
        return MultiPoly(self.varset, self.field, quot)

    def evaluate(self, point: Sequence[tuple]) -> tuple:
        """Evaluate at raw field values; returns a raw value."""
        ops = self.field.ops
        total = ops.zero
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = ops.mul(t, ops.pow(point[i], k))
            total = ops.add(total, t)
        return total

    def rename(self, varset: VarSet, mapping: Sequence[int]) -> "MultiPoly":
        """Move to ``varset`` sending variable ``i`` to ``mapping[i]``."""
        n = len(varset)
        out = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                if k:
                    new[mapping[i]] += k
            out[tuple(new)] = c
        return MultiPoly(varset, self.field, out)

    def to_json(self) -> list:
        items = sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)
        return [{"coeff": [raw_to_json(x) for x in c], "exps": list(e)} for e, c in items]

    @classmethod
    def from_json(cls, data, varset: VarSet, field: FieldSpec) -> "MultiPoly":
        terms = {}
        n = len(varset)
        ops = field.ops
        for item in data:
            e = tuple(int(k) for k in item["exps"])
            if len(e) != n or any(k < 0 for k in e):
                raise ValueError("exponent vector does not match varset")
            c = raw_from_json(item["coeff"], field)
            cur = terms.get(e)
            c = c if cur is None else ops.add(cur, c)
            terms[e] = c
        return cls(varset, field, {e: c for e, c in terms.items() if c != ops.zero})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True):
            mono = "*".join(
                (self.varset.names[i] if k == 1 else f"{self.varset.names[i]}^{k}") for i, k in enumerate(e) if k)
            coeff = format_raw(c, self.field)
            if not mono:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono)
            elif coeff == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


class RatFunc:
    """``num / den`` with ``den`` normalized to leading coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, normalize=True):
        if not isinstance(num, MultiPoly):
            raise TypeError("numerator must be a MultiPoly")
        if den is None:
            den = MultiPoly.const(num.varset, num.field, 1)
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.const(num.varset, num.field, den)
        if den.varset != num.varset or den.field != num.field:
            raise ValueError("numerator and denominator over different varsets")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den
        if normalize:
            self._normalize()

    def _normalize(self):
        num, den = self.num, self.den
        if num.is_zero():
            self.den = MultiPoly.const(num.varset, num.field, 1)
            return
        ops = num.field.ops
        if len(den.terms) > 1 or any(next(iter(den.terms))):
            low = [min(a, b) for a, b in zip(num.monomial_content(), den.monomial_content())]
            if any(low):
                neg = tuple(-k for k in low)
                num, den = num.shift(neg), den.shift(neg)
        _, lc = den.leading()
        if lc != ops.one:
            inv = ops.inv(lc)
            num, den = num.scale_raw(inv), den.scale_raw(inv)
        self.num, self.den = num, den

    @property
    def varset(self) -> VarSet:
        return self.num.varset

    @property
    def field(self) -> FieldSpec:
        return self.num.field

    @classmethod
    def const(cls, varset, field, value) -> "RatFunc":
        return cls(MultiPoly.const(varset, field, value))

    @classmethod
    def var(cls, varset, field, which, coeff=1) -> "RatFunc":
        return cls(MultiPoly.var(varset, field, which, coeff))

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.varset != self.varset or other.field != self.field:
                raise ValueError("rational functions over different varsets or fields")
            return other
        if isinstance(other, MultiPoly):
            return RatFunc(self.num._coerce(other))
        return RatFunc(MultiPoly.const(self.varset, self.field, other))

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _same_den(self, o):
        return self.den.terms == o.den.terms

    def __add__(self, other):
        o = self._coerce(other)
        if self._same_den(o):
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if self._same_den(o):
            return RatFunc(self.num - o.num, self.den)
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return RatFunc(-self.num, self.den, normalize=False)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            c = self.field.scalar(other).raw
            return RatFunc(self.num.scale_raw(c), self.den, normalize=False) if c != self.field.ops.zero \
                else RatFunc.const(self.varset, self.field, 0)
        o = self._coerce(other)
        if o.den.terms == self.num.terms and self.num:
            return RatFunc(o.num, self.den)
        if self.den.terms == o.num.terms and o.num:
            return RatFunc(self.num, o.den)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        if o.den.terms == self.den.terms:
            return RatFunc(self.num, o.num)
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num ** e, self.den ** e)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        if self.den.terms == o.den.terms:
            return self.num.terms == o.num.terms
        return (self.num * o.den).terms == (o.num * self.den).terms

    def __hash__(self):
        raise TypeError("RatFunc is unhashable (equality is not representation equality)")

    def reduced(self) -> "RatFunc":
        """Cancel the denominator when it divides the numerator exactly."""
        if self.is_polynomial():
            return self
        q = self.num.divide_exact(self.den)
        return RatFunc(q) if q is not None else self

    def evaluate(self, point: Sequence[tuple]) -> tuple:
        ops = self.field.ops
        d = self.den.evaluate(point)
        if d == ops.zero:
            raise ZeroDivisionError("denominator vanishes at point")
        return ops.mul(self.num.evaluate(point), ops.inv(d))

    def rename(self, varset: VarSet, mapping: Sequence[int]) -> "RatFunc":
        return RatFunc(self.num.rename(varset, mapping), self.den.rename(varset, mapping))

    def monomial_image(self):
        """``(i, raw_coeff)`` if this is ``coeff * x_i``, else ``None``."""
        if len(self.num.terms) != 1 or not self.den.is_constant():
            return None
        (e, c), = self.num.terms.items()
        if sum(e) != 1:
            return None
        i = e.index(1)
        dc = next(iter(self.den.terms.values()))
        ops = self.field.ops
        if dc != ops.one:
            c = ops.mul(c, ops.inv(dc))
        return i, c

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data, varset: VarSet, field: FieldSpec) -> "RatFunc":
        return cls(MultiPoly.from_json(data["num"], varset, field),
                   MultiPoly.from_json(data["den"], varset, field))

    def __str__(self):
        if self.is_polynomial():
            dc = next(iter(self.den.terms.values()))
            if dc == self.field.ops.one:
                return str(self.num)
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__


def as_ratfunc(x, varset: VarSet, field: FieldSpec) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, MultiPoly):
        return RatFunc(x)
    return RatFunc.const(varset, field, x)


# substitution ---------------------------------------------------------------

def _monomial_images(images: Sequence[RatFunc]):
    perm, mults = [], []
    for r in images:
        m = r.monomial_image()
        if m is None:
            return None
        perm.append(m[0])
        mults.append(m[1])
    return perm, mults


def _subst_poly(poly: MultiPoly, nums, dens, maxdeg, target: VarSet, field: FieldSpec) -> MultiPoly:
    """Numerator of ``poly(nums/dens)`` over the common denominator ``prod dens^maxdeg``."""
    ops = field.ops
    n = len(poly.varset)
    cache: dict = {}

    def factor(i, k):
        key = (i, k)
        f = cache.get(key)
        if f is None:
            f = nums[i] ** k if k else MultiPoly.const(target, field, 1)
            if dens[i] is not None and maxdeg[i] - k:
                f = f * dens[i] ** (maxdeg[i] - k)
            cache[key] = f
        return f

    def rec(terms: dict, i: int) -> MultiPoly:
        while i < n and all(e[i] == 0 for e in terms) and (dens[i] is None or maxdeg[i] == 0):
            i += 1
        if i == n:
            total = ops.zero
            for c in terms.values():
                total = ops.add(total, c)
            return MultiPoly(target, field, {(0,) * len(target): total} if total != ops.zero else {})
        groups: dict[int, dict] = {}
        for e, c in terms.items():
            groups.setdefault(e[i], {})[e] = c
        acc = MultiPoly(target, field, {})
        for k in sorted(groups):
            acc = acc + factor(i, k) * rec(groups[k], i + 1)
        return acc

    if not poly.terms:
        return MultiPoly(target, field, {})
    return rec(poly.terms, 0)


def substitute(f: RatFunc, images: Sequence[RatFunc]) -> RatFunc:
    """``f(images[0], ..., images[n-1])``; images may live in another varset."""
    if len(images) != len(f.varset):
        raise ValueError("need one image per variable")
    if not images:
        return f
    target = images[0].varset
    field = f.field
    mono = _monomial_images(images)
    if mono is not None:
        perm, mults = mono
        nv = len(target)
        num = MultiPoly(target, field, kernels.poly_map_monomial(f.num.terms, perm, mults, nv, field.ops))
        den = MultiPoly(target, field, kernels.poly_map_monomial(f.den.terms, perm, mults, nv, field.ops))
        if den.is_zero():
            raise ZeroDivisionError("substitution produces zero denominator")
        return RatFunc(num, den)
    n = len(f.varset)
    maxdeg = [max(f.num.degree_in(i), f.den.degree_in(i), 0) for i in range(n)]
    nums = [r.num for r in images]
    dens = [None if r.is_polynomial() and next(iter(r.den.terms.values())) == field.ops.one else r.den
            for r in images]
    num = _subst_poly(f.num, nums, dens, maxdeg, target, field)
    den = _subst_poly(f.den, nums, dens, maxdeg, target, field)
    if den.is_zero():
        raise ZeroDivisionError("substitution produces zero denominator")
    return RatFunc(num, den)


def variables(varset: VarSet, field: FieldSpec) -> list[RatFunc]:
    return [RatFunc.var(varset, field, i) for i in range(len(varset))]


# group actions --------------------------------------------------------------

class GroupAction:
    """Action of ``group`` on ``K(varset)`` given by per-element variable images."""

    def __init__(self, group: FiniteGroup, varset: VarSet, field: FieldSpec, images, verify=True):
        self.group = group
        self.varset = varset
        self.field = field
        self.images = tuple(tuple(row) for row in images)
        if len(self.images) != group.order or any(len(r) != len(varset) for r in self.images):
            raise ValueError("images must list every variable for every group element")
        self._mono = None
        mono = [_monomial_images(row) for row in self.images]
        if all(m is not None for m in mono):
            self._mono = mono
        if verify and not self.verify_law():
            raise ValueError("images do not define a left group action")

    @property
    def is_monomial(self) -> bool:
        return self._mono is not None

    def act(self, g: int, f) -> RatFunc:
        if isinstance(f, MultiPoly):
            f = RatFunc(f)
        if f.varset != self.varset:
            raise ValueError("element is not over the action's varset")
        return substitute(f, self.images[g])

    def verify_law(self, pairs=None) -> bool:
        """Check ``images[st][i] == s.(images[t][i])`` and the identity law."""
        G = self.group
        n = len(self.varset)
        xs = variables(self.varset, self.field)
        e = G.identity
        if self._mono is not None:
            one = self.field.ops.one
            ops = self.field.ops
            pe, me = self._mono[e]
            if list(pe) != list(range(n)) or any(m != one for m in me):
                return False
            if pairs is None:
                pairs = ((s, t) for s in range(G.order) for t in range(G.order))
            for s, t in pairs:
                ps, ms = self._mono[s]
                pt, mt = self._mono[t]
                pst, mst = self._mono[G.table[s][t]]
                for i in range(n):
                    j = pt[i]
                    if pst[i] != ps[j] or mst[i] != ops.mul(mt[i], ms[j]):
                        return False
            return True
        if any(self.images[e][i] != xs[i] for i in range(n)):
            return False
        if pairs is None:
            pairs = ((s, t) for s in range(G.order) for t in range(G.order))
        for s, t in pairs:
            st = G.table[s][t]
            for i in range(n):
                if substitute(self.images[t][i], self.images[s]) != self.images[st][i]:
                    return False
        return True

    def fixes(self, g: int, f: RatFunc) -> bool:
        return self.act(g, f) == f

    def kernel_on(self, elements: Sequence[RatFunc] | None = None) -> tuple[int, ...]:
        if elements is None:
            elements = variables(self.varset, self.field)
        return tuple(g for g in range(self.group.order) if all(self.fixes(g, f) for f in elements))

    def is_faithful(self) -> bool:
        return is_faithful(self)

    def restrict(self, subgroup_map: Sequence[int], subgroup: FiniteGroup) -> "GroupAction":
        """Action of ``subgroup`` through the embedding ``subgroup_map``."""
        return GroupAction(subgroup, self.varset, self.field,
                           [self.images[subgroup_map[h]] for h in range(subgroup.order)], verify=False)

    def to_json(self) -> dict:
        if self._mono is not None:
            return {
                "kind": "monomial",
                "group": self.group.to_json(),
                "varset": list(self.varset.names),
                "perm": [list(p) for p, _ in self._mono],
                "mult": [[[raw_to_json(x) for x in c] for c in m] for _, m in self._mono],
            }
        return {
            "kind": "images",
            "group": self.group.to_json(),
            "varset": list(self.varset.names),
            "images": [[r.to_json() for r in row] for row in self.images],
        }


def monomial_action(group, varset, field, perms, mults=None, verify=True) -> GroupAction:
    """Action with ``g.x_i = mults[g][i] * x_{perms[g][i]}``."""
    n = len(varset)
    rows = []
    for g in range(group.order):
        row = []
        for i in range(n):
            c = 1 if mults is None else mults[g][i]
            row.append(RatFunc.var(varset, field, perms[g][i], c))
        rows.append(row)
    return GroupAction(group, varset, field, rows, verify=verify)


def regular_action(G: FiniteGroup, K: FieldSpec, prefix: str = "x") -> tuple[VarSet, GroupAction]:
    """Variables ``x[g]``; ``h`` sends ``x[g]`` to ``x[hg]``."""
    vs = VarSet(f"{prefix}[g{g}]" for g in range(G.order))
    perms = [[G.table[h][g] for g in range(G.order)] for h in range(G.order)]
    return vs, monomial_action(G, vs, K, perms)


def is_faithful(action: GroupAction) -> bool:
    return action.kernel_on() == (action.group.identity,)


def compose_images(outer: Sequence[RatFunc], inner: Sequence[RatFunc]) -> list[RatFunc]:
    """Images of ``s t`` from ``outer = images[s]``, ``inner = images[t]``."""
    return [substitute(r, outer) for r in inner]


def action_from_generators(G: FiniteGroup, varset: VarSet, field: FieldSpec, gen_images: dict) -> GroupAction:
    """Extend generator images to all of ``G`` by breadth-first composition, then verify."""
    xs = variables(varset, field)
    images: dict[int, list[RatFunc]] = {G.identity: xs}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s, simg in gen_images.items():
                sg = G.table[s][g]
                if sg not in images:
                    images[sg] = compose_images(simg, images[g])
                    nxt.append(sg)
        frontier = nxt
    if len(images) != G.order:
        raise ValueError("supplied elements do not generate the group")
    try:
        return GroupAction(G, varset, field, [images[g] for g in range(G.order)])
    except ValueError as exc:
        raise ValueError("relation check fails: generator images are inconsistent with the group") from exc


def linear_action_from_matrices(G: FiniteGroup, varset: VarSet, field: FieldSpec, x_labels: Sequence[str],
                                A: dict, B: dict | None = None, base_images: dict | None = None) -> GroupAction:
    """``s.x = A(s) x + B(s)`` on ``x_labels``; other variables move by ``base_images``.

    ``A`` and ``B`` map generator indices to matrices / vectors of entries
    coercible to RatFunc over ``varset``.  Unlisted non-x variables are fixed.
    """
    xs = variables(varset, field)
    xidx = [varset.index[l] for l in x_labels]
    gen_images = {}
    for s, mat in A.items():
        mat = [[as_ratfunc(a, varset, field) for a in row] for row in mat]
        if _det_is_zero(mat):
            raise ValueError(f"matrix for generator {s} is singular")
        row = list(xs)
        if base_images and s in base_images:
            for i, r in enumerate(base_images[s]):
                if i not in xidx:
                    row[i] = as_ratfunc(r, varset, field)
        bvec = B.get(s) if B else None
        for a, i in enumerate(xidx):
            acc = RatFunc.const(varset, field, 0)
            for b, j in enumerate(xidx):
                if not mat[a][b].is_zero():
                    acc = acc + mat[a][b] * xs[j]
            if bvec is not None:
                acc = acc + as_ratfunc(bvec[a], varset, field)
            row[i] = acc
        gen_images[s] = row
    return action_from_generators(G, varset, field, gen_images)


def _det_is_zero(mat) -> bool:
    from .linalg import ratfunc_det_nonzero
    return not ratfunc_det_nonzero(mat)


# elements presented through auxiliary coordinates ---------------------------

class Presented:
    """An element ``expr(aux)`` where each aux variable stands for ``defs[j]``.

    Lets large expressions (``z(1)^16``, Laurent monomials in character sums)
    be checked in compact coordinates; ``expand`` rebuilds the plain form.
    """

    __slots__ = ("expr", "defs")

    def __init__(self, expr: RatFunc, defs: Sequence[RatFunc]):
        if len(defs) != len(expr.varset):
            raise ValueError("need one definition per auxiliary variable")
        self.expr = expr
        self.defs = tuple(defs)

    @property
    def aux(self) -> VarSet:
        return self.expr.varset

    @property
    def base(self) -> VarSet:
        return self.defs[0].varset

    @property
    def field(self) -> FieldSpec:
        return self.expr.field

    def expand(self) -> RatFunc:
        return substitute(self.expr, self.defs)

    def with_expr(self, expr: RatFunc) -> "Presented":
        return Presented(expr, self.defs)

    def to_json(self) -> dict:
        return {"kind": "presented", "aux": list(self.aux.names), "expr": self.expr.to_json(),
                "defs": [d.to_json() for d in self.defs]}

    def __str__(self):
        defs = ", ".join(f"{n} = {d}" for n, d in zip(self.aux.names, self.defs))
        return f"{self.expr}  where  {defs}"


def element_to_json(x) -> dict:
    if isinstance(x, Presented):
        return x.to_json()
    return {"kind": "ratfunc", **x.to_json()}


def element_from_json(data: dict, varset: VarSet, field: FieldSpec):
    if data.get("kind") == "presented":
        aux = VarSet(data["aux"])
        return Presented(RatFunc.from_json(data["expr"], aux, field),
                         [RatFunc.from_json(d, varset, field) for d in data["defs"]])
    return RatFunc.from_json(data, varset, field)


def random_point(varset: VarSet, field: FieldSpec, rng: random.Random, bound: int = 97) -> list[tuple]:
    ops = field.ops
    pt = []
    for _ in range(len(varset)):
        coeffs = [rng.randrange(-bound, bound + 1) for _ in range(field.degree)]
        pt.append(ops.from_coeffs(coeffs))
    return pt

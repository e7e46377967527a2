"""Finite groups as Cayley tables, plus the constructions the reductions need.

Every constructor returns a :class:`FiniteGroup` whose identity is index 0 and
which remembers a JSON ``spec`` describing how to rebuild it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd

from . import kernels
from .errors import HypothesisError, ResourceLimitError

ASSOC_CHECK_LIMIT = 64
DEFAULT_SIZE_CAP = 4096


class FiniteGroup:
    """A group given by its Cayley table ``table[a][b] = a*b``."""

    def __init__(self, table, identity=0, names=None, spec=None, proof=False):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.identity = int(identity)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(self.order))
        self.spec = spec if spec is not None else {"kind": "table", "table": [list(r) for r in self.table]}
        self._check(proof)

    def _check(self, proof):
        n = self.order
        if n < 1 or any(len(row) != n for row in self.table):
            raise ValueError("Cayley table must be square and nonempty")
        e = self.identity
        if self.table[e] != tuple(range(n)) or tuple(r[e] for r in self.table) != tuple(range(n)):
            raise ValueError("identity row/column is not the identity permutation")
        if not kernels.table_is_latin(self.table):
            raise ValueError("Cayley table is not a Latin square")
        if n <= ASSOC_CHECK_LIMIT:
            if not kernels.table_is_associative(self.table):
                raise ValueError("Cayley table is not associative")
        elif not proof:
            raise ValueError(f"associativity of order-{n} tables needs a constructor proof flag")

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table and self.identity == other.identity

    def __hash__(self):
        return hash((self.order, self.table[1:3] if self.order > 1 else ()))

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, spec={self.spec.get('kind')})"

    def elements(self):
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, *elts: int) -> int:
        return reduce(self.mul, elts, self.identity)

    @cached_property
    def _inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.table)

    def inv(self, a: int) -> int:
        return self._inverses[a]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = self.identity
        for _ in range(k):
            result = self.table[result][a]
        return result

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.table[self.table[g][x]][self.inv(g)]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    def element_order(self, a: int) -> int:
        return self.element_orders[a]

    @cached_property
    def exponent(self) -> int:
        return reduce(lambda x, y: x * y // gcd(x, y), self.element_orders, 1)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a + 1, self.order))

    @cached_property
    def center(self) -> tuple[int, ...]:
        t = self.table
        return tuple(a for a in range(self.order) if all(t[a][b] == t[b][a] for b in range(self.order)))

    def subgroup_generated(self, gens) -> frozenset[int]:
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    def is_subgroup(self, subset) -> bool:
        s = set(subset)
        if self.identity not in s:
            return False
        return all(self.table[a][b] in s for a in s for b in s)

    def is_normal(self, subset) -> bool:
        s = set(subset)
        if not self.is_subgroup(s):
            return False
        return all(self.conj(g, x) in s for g in range(self.order) for x in s)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in element-index order."""
        gens: list[int] = []
        current = frozenset({self.identity})
        # prefer high-order elements first for shorter lists
        for a in sorted(range(self.order), key=lambda x: (-self.element_orders[x], x)):
            if a not in current:
                gens.append(a)
                current = self.subgroup_generated(gens)
            if len(current) == self.order:
                break
        return tuple(gens)

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def to_json(self) -> dict:
        return self.spec


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.map[a]

    def is_homomorphism(self) -> bool:
        s, t, f = self.source, self.target, self.map
        if len(f) != s.order or f[s.identity] != t.identity:
            return False
        return all(f[s.table[a][b]] == t.table[f[a]][f[b]] for a in range(s.order) for b in range(s.order))

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.order

    def is_surjective(self) -> bool:
        return set(self.map) == set(range(self.target.order))

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective() and self.is_homomorphism()

    def kernel(self) -> frozenset[int]:
        return frozenset(a for a in range(self.source.order) if self.map[a] == self.target.identity)

    def inverse(self) -> "Homomorphism":
        if not (self.is_injective() and self.is_surjective()):
            raise ValueError("map is not bijective")
        inv = [0] * self.target.order
        for a, b in enumerate(self.map):
            inv[b] = a
        return Homomorphism(self.target, self.source, tuple(inv))

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """``self o other``."""
        return Homomorphism(other.source, self.target, tuple(self.map[b] for b in other.map))


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["1"] + [f"c^{i}" if i > 1 else "c" for i in range(1, n)]
    return FiniteGroup(table, names=names, spec={"kind": "cyclic", "n": n}, proof=True)


def abelian(invariant_factors) -> FiniteGroup:
    factors = [int(d) for d in invariant_factors]
    if any(d < 2 for d in factors):
        raise ValueError("invariant factors must each be at least 2")
    if any(factors[i + 1] % factors[i] for i in range(len(factors) - 1)):
        raise ValueError("invariant factors must form a divisibility chain d1 | d2 | ...")
    tuples = list(itertools.product(*[range(d) for d in factors]))
    index = {t: i for i, t in enumerate(tuples)}
    table = [[index[tuple((x + y) % d for x, y, d in zip(a, b, factors))] for b in tuples] for a in tuples]
    names = [str(t) for t in tuples]
    return FiniteGroup(table, names=names, spec={"kind": "abelian", "factors": factors}, proof=True)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``; element ``a + n*e`` is ``s^a t^e``."""
    if n < 1:
        raise ValueError("dihedral parameter must be positive")

    def mul(x, y):
        a, e = x % n, x // n
        b, f = y % n, y // n
        return ((a + (b if e == 0 else -b)) % n) + n * ((e + f) % 2)

    table = [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]
    names = []
    for x in range(2 * n):
        a, e = x % n, x // n
        parts = ([f"s^{a}"] if a else []) + (["t"] if e else [])
        names.append("".join(parts) or "1")
    return FiniteGroup(table, names=names, spec={"kind": "dihedral", "n": n}, proof=True)


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """``A x B`` with element ``a*|B| + b`` for the pair ``(a, b)``."""
    nb = B.order
    if A.identity != 0 or B.identity != 0:
        raise ValueError("direct_product expects identity at index 0")
    table = [[A.table[a1][a2] * nb + B.table[b1][b2]
              for a2 in range(A.order) for b2 in range(nb)]
             for a1 in range(A.order) for b1 in range(nb)]
    names = [f"({A.names[a]},{B.names[b]})" for a in range(A.order) for b in range(nb)]
    proof = A.order * nb > ASSOC_CHECK_LIMIT
    G = FiniteGroup(table, names=names, spec={"kind": "direct", "factors": [A.spec, B.spec]}, proof=proof)
    G.factors = (A, B)
    G.embeddings = (
        Homomorphism(A, G, tuple(a * nb for a in range(A.order))),
        Homomorphism(B, G, tuple(range(nb))),
    )
    G.projections = (
        Homomorphism(G, A, tuple(x // nb for x in range(G.order))),
        Homomorphism(G, B, tuple(x % nb for x in range(G.order))),
    )
    return G


def pair_index(G: FiniteGroup, a: int, b: int) -> int:
    """Index of ``(a, b)`` in a direct product ``G``."""
    return a * G.factors[1].order + b


@dataclass
class WreathStructure:
    H: FiniteGroup
    G: FiniteGroup
    total: FiniteGroup
    embed_Hg: tuple[Homomorphism, ...]
    embed_G: Homomorphism
    base_size: int = field(init=False)

    def __post_init__(self):
        self.base_size = self.H.order ** self.G.order

    def base_code(self, xs) -> int:
        code = 0
        for x in xs:
            code = code * self.H.order + x
        return code

    def base_tuple(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.G.order):
            code, r = divmod(code, self.H.order)
            out.append(r)
        return tuple(reversed(out))

    def element(self, xs, sigma: int) -> int:
        """Index of the pair ``(x, sigma)``, i.e. the product ``x * sigma``."""
        return self.base_code(xs) * self.G.order + sigma

    def decompose(self, index: int) -> tuple[tuple[int, ...], int]:
        code, sigma = divmod(index, self.G.order)
        return self.base_tuple(code), sigma

    def embed_N(self, xs) -> int:
        return self.element(xs, self.G.identity)

    @cached_property
    def N(self) -> frozenset[int]:
        return frozenset(self.element(self.base_tuple(c), 0) for c in range(self.base_size))

    @cached_property
    def M(self) -> frozenset[int]:
        """Base elements supported away from the identity coordinate."""
        e = self.H.identity
        return frozenset(i for i in self.N if self.decompose(i)[0][self.G.identity] == e)


def wreath_product(H: FiniteGroup, G: FiniteGroup, size_cap: int = DEFAULT_SIZE_CAP) -> WreathStructure:
    """``H wr G = N x| G`` with ``(x,s)(y,t) = (x * (s.y), s t)`` and ``(s.y)_g = y_{s^-1 g}``."""
    nh, ng = H.order, G.order
    size = nh ** ng * ng
    if size > size_cap:
        raise ResourceLimitError(f"wreath product order {size} exceeds size cap {size_cap}")
    if H.identity != 0 or G.identity != 0:
        raise ValueError("wreath_product expects identity at index 0")
    bases = list(itertools.product(range(nh), repeat=ng))
    code = {b: i for i, b in enumerate(bases)}
    ginv = [G.inv(g) for g in range(ng)]
    # (s . y)_g = y_{s^-1 g}
    shifted = [[None] * len(bases) for _ in range(ng)]
    for s in range(ng):
        for j, y in enumerate(bases):
            shifted[s][j] = tuple(y[G.table[ginv[s]][g]] for g in range(ng))
    table = []
    for i in range(size):
        xc, s = divmod(i, ng)
        x = bases[xc]
        row = []
        for j in range(size):
            yc, t = divmod(j, ng)
            sy = shifted[s][yc]
            prod = tuple(H.table[a][b] for a, b in zip(x, sy))
            row.append(code[prod] * ng + G.table[s][t])
        table.append(row)
    names = [f"{list(bases[i // ng])}{G.names[i % ng]}" for i in range(size)]
    total = FiniteGroup(table, names=names, spec={"kind": "wreath", "H": H.spec, "G": G.spec},
                        proof=True)
    ws = WreathStructure(H, G, total, (), Homomorphism(G, total, tuple(range(ng))))
    phis = []
    for g in range(ng):
        images = []
        for h in range(nh):
            xs = [H.identity] * ng
            xs[g] = h
            images.append(ws.element(xs, G.identity))
        phis.append(Homomorphism(H, total, tuple(images)))
    ws.embed_Hg = tuple(phis)
    return ws


def quotient(G: FiniteGroup, N) -> tuple[FiniteGroup, Homomorphism]:
    """``G/N`` on least-index coset representatives, plus the projection."""
    Nset = frozenset(N)
    if not G.is_subgroup(Nset):
        raise HypothesisError("N is not a subgroup")
    if not G.is_normal(Nset):
        raise HypothesisError("N is not a normal subgroup")
    coset_of = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            k = len(reps)
            reps.append(g)
            for x in Nset:
                coset_of[G.table[g][x]] = k
    # the identity coset has representative 0 == identity
    table = [[coset_of[G.table[r][s]] for s in reps] for r in reps]
    names = [G.names[r] + "N" for r in reps]
    Q = FiniteGroup(table, identity=coset_of[G.identity], names=names)
    return Q, Homomorphism(G, Q, tuple(coset_of))


@dataclass
class CentralExtensionData:
    """Data of ``1 -> <c> -> total -> quotient -> 1`` with ``|<c>| = p`` prime."""

    total: FiniteGroup
    p: int
    c: int
    quotient: FiniteGroup
    pi: Homomorphism
    section: tuple[int, ...]
    factor_set: tuple[tuple[int, ...], ...]  # factor_set[h][g] = m(h, g)
    conj_exp: tuple[int, ...]

    @cached_property
    def c_powers(self) -> tuple[int, ...]:
        return tuple(self.total.pow(self.c, i) for i in range(self.p))

    def reconstruct(self, i: int, h: int, j: int, g: int) -> tuple[int, int]:
        """``(c^i u(h)) (c^j u(g)) = c^k u(hg)``; returns ``(k, hg)``."""
        k = (i + j * self.conj_exp[h] + self.factor_set[h][g]) % self.p
        return k, self.quotient.table[h][g]

    def verify(self) -> bool:
        Gt, Q = self.total, self.quotient
        cp = self.c_powers
        if self.pi.kernel() != frozenset(cp) or not self.pi.is_surjective():
            return False
        if self.section[Q.identity] != Gt.identity:
            return False
        if any(self.pi(self.section[q]) != q for q in range(Q.order)):
            return False
        if any(self.conj_exp[h] % self.p == 0 for h in range(Q.order)):
            return False
        for i in range(self.p):
            for h in range(Q.order):
                a = Gt.table[cp[i]][self.section[h]]
                for j in range(self.p):
                    for g in range(Q.order):
                        b = Gt.table[cp[j]][self.section[g]]
                        k, hg = self.reconstruct(i, h, j, g)
                        if Gt.table[a][b] != Gt.table[cp[k]][self.section[hg]]:
                            return False
        return True


def central_extension_data(Gt: FiniteGroup, c: int, quotient_map: tuple[FiniteGroup, Homomorphism] | None = None
                           ) -> CentralExtensionData:
    """Extension data for the normal subgroup ``<c>`` of prime order.

    ``quotient_map`` may supply a preferred presentation ``(Q, pi)`` of the
    quotient; it must be a surjection with kernel exactly ``<c>``.
    """
    p = Gt.element_order(c)
    if not _is_prime(p):
        raise HypothesisError(f"element {c} has order {p}, which is not prime")
    C = Gt.subgroup_generated([c])
    if not Gt.is_normal(C):
        raise HypothesisError("<c> is not normal")
    if quotient_map is None:
        Q, pi = quotient(Gt, C)
    else:
        Q, pi = quotient_map
        if not pi.is_homomorphism() or not pi.is_surjective() or pi.kernel() != C:
            raise HypothesisError("supplied projection is not a surjection with kernel <c>")
    section = [-1] * Q.order
    for g in range(Gt.order):
        q = pi(g)
        if section[q] < 0:
            section[q] = g
    section[Q.identity] = Gt.identity
    cp = [Gt.pow(c, i) for i in range(p)]
    dlog = {x: i for i, x in enumerate(cp)}
    m = []
    for h in range(Q.order):
        row = []
        for g in range(Q.order):
            t = Gt.table[Gt.table[section[h]][section[g]]][Gt.inv(section[Q.table[h][g]])]
            row.append(dlog[t])
        m.append(tuple(row))
    n = tuple(dlog[Gt.conj(section[h], c)] for h in range(Q.order))
    ext = CentralExtensionData(Gt, p, c, Q, pi, tuple(section), tuple(m), n)
    if not ext.verify():
        raise AssertionError("extension data failed to reproduce the Cayley table")
    return ext


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def find_central_order_p(H: FiniteGroup, p: int) -> int:
    if H.order == 1 or not H.is_p_group(p):
        raise HypothesisError(f"group of order {H.order} is not a nontrivial {p}-group")
    for a in H.center:
        if H.element_order(a) == p:
            return a
    raise AssertionError("p-group with trivial center")  # impossible


def invariant_factors(A: FiniteGroup) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` computed from element orders."""
    if not A.is_abelian():
        raise HypothesisError("invariant factors need an abelian group")
    n = A.order
    orders = A.element_orders
    primes = [q for q in range(2, n + 1) if n % q == 0 and _is_prime(q)]
    elementary: dict[int, list[int]] = {}
    for q in primes:
        # counts[k] = |A[q^k]|; ranks[k] = #cyclic q-factors of order >= q^k
        counts = [1]
        while True:
            k = len(counts)
            counts.append(sum(1 for o in orders if (q ** k) % o == 0))
            if counts[-1] == counts[-2]:
                break
        ranks = [0]
        for k in range(1, len(counts)):
            r, ratio = 0, counts[k] // counts[k - 1]
            while ratio > 1:
                ratio //= q
                r += 1
            ranks.append(r)
        exps = []
        for k in range(1, len(ranks)):
            nxt = ranks[k + 1] if k + 1 < len(ranks) else 0
            exps += [k] * (ranks[k] - nxt)
        elementary[q] = sorted(exps, reverse=True)
    width = max((len(v) for v in elementary.values()), default=0)
    factors = [1] * width
    for q, exps in elementary.items():
        for i, e in enumerate(exps):
            factors[i] *= q ** e
    return sorted(factors)


def cyclic_decomposition(A: FiniteGroup) -> tuple[list[int], list[int]]:
    """Generators ``a_i`` of orders ``d_i`` (invariant factors) with ``A = prod <a_i>``."""
    ds = invariant_factors(A)
    k = len(ds)
    chosen: list[int] = []

    def span(gens):
        return A.subgroup_generated(gens)

    def search(i, current):
        if i < 0:
            return True
        target = ds[i]
        size = len(current)
        for a in range(A.order):
            if A.element_order(a) != target:
                continue
            new = span(chosen + [a])
            if len(new) == size * target:
                chosen.append(a)
                if search(i - 1, new):
                    return True
                chosen.pop()
        return False

    if not search(k - 1, frozenset({A.identity})):
        raise AssertionError("no cyclic decomposition found")
    gens = list(reversed(chosen))
    return ds, gens


def d2n_split(n: int) -> Homomorphism:
    """Isomorphism ``D_{2n} -> D_n x Z/2`` for odd ``n``, via ``<s^2, t>`` and ``<s^n>``."""
    if n < 1 or n % 2 == 0:
        raise HypothesisError("d2n_split needs n odd")
    big = dihedral(2 * n)
    target = direct_product(dihedral(n), cyclic(2))
    s = 1
    t = 2 * n  # index of tau in dihedral(2n)
    back = []
    for idx in range(target.order):
        dn_elt, k = divmod(idx, 2)
        b, e = dn_elt % n, dn_elt // n
        x = big.prod(big.pow(s, 2 * b), big.pow(t, e), big.pow(s, n * k))
        back.append(x)
    inverse = Homomorphism(target, big, tuple(back))
    if not inverse.is_isomorphism():
        raise AssertionError("d2n_split map is not an isomorphism")
    return inverse.inverse()


def phi_wreath_dihedral(n: int) -> tuple[Homomorphism, WreathStructure]:
    """``Phi(2a, 2b, e) = (a + b, s^(a-b) t^e)`` from ``Z/n wr Z/2`` to ``Z/n x D_n``."""
    if n < 1 or n % 2 == 0:
        raise HypothesisError("phi_wreath_dihedral needs n odd")
    ws = wreath_product(cyclic(n), cyclic(2))
    target = direct_product(cyclic(n), dihedral(n))
    half = pow(2, -1, n) if n > 1 else 0
    images = []
    for idx in range(ws.total.order):
        (x0, x1), eps = ws.decompose(idx)
        a, b = (x0 * half) % n, (x1 * half) % n
        dn = ((a - b) % n) + n * eps
        images.append(pair_index(target, (a + b) % n, dn))
    return Homomorphism(ws.total, target, tuple(images)), ws


def is_isomorphic(A: FiniteGroup, B: FiniteGroup) -> Homomorphism | None:
    """Exhaustive generator-image search (test helper, orders <= 64)."""
    if A.order != B.order or sorted(A.element_orders) != sorted(B.element_orders):
        return None
    if A.order > ASSOC_CHECK_LIMIT:
        raise ResourceLimitError("isomorphism search limited to order 64")
    gens = A.generators
    # express every element of A as a word in gens
    words = {A.identity: ()}
    frontier = [A.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for gi, g in enumerate(gens):
                y = A.table[x][g]
                if y not in words:
                    words[y] = words[x] + (gi,)
                    nxt.append(y)
        frontier = nxt
    candidates = [[b for b in range(B.order) if B.element_order(b) == A.element_order(g)] for g in gens]
    for images in itertools.product(*candidates):
        f = tuple(B.prod(*[images[i] for i in words[a]]) for a in range(A.order))
        hom = Homomorphism(A, B, f)
        if hom.is_injective() and hom.is_homomorphism():
            return hom
    return None


def group_from_spec(spec: dict, size_cap: int = DEFAULT_SIZE_CAP) -> FiniteGroup:
    kind = spec.get("kind")
    if kind == "cyclic":
        return cyclic(int(spec["n"]))
    if kind == "abelian":
        return abelian(spec["factors"])
    if kind == "dihedral":
        return dihedral(int(spec["n"]))
    if kind == "direct":
        factors = [group_from_spec(f, size_cap) for f in spec["factors"]]
        if not factors:
            return cyclic(1)
        return reduce(direct_product, factors)
    if kind == "wreath":
        return wreath_product(group_from_spec(spec["H"], size_cap), group_from_spec(spec["G"], size_cap),
                              size_cap).total
    if kind == "table":
        table = spec["table"]
        if len(table) > size_cap:
            raise ResourceLimitError(f"group order {len(table)} exceeds size cap {size_cap}")
        return FiniteGroup(table, identity=int(spec.get("identity", 0)), spec=spec)
    raise ValueError(f"unknown group kind {kind!r}")


def describe(G: FiniteGroup) -> dict:
    info = {
        "order": G.order,
        "abelian": G.is_abelian(),
        "center_order": len(G.center),
        "exponent": G.exponent,
    }
    if info["abelian"]:
        info["invariant_factors"] = invariant_factors(G)
    return info

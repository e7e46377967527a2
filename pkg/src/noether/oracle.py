"""Independent verification: integer lattices and brute-force checks over every group element.

Nothing here trusts construction-side conventions; each check loops over the
full group.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

from .funcfield import GroupAction, MultiPoly, Presented, RatFunc, VarSet, substitute, variables
from .groups import FiniteGroup
from .linalg import rref, ratfunc_det_nonzero
from .scalars import FieldSpec, Scalar, primitive_root


# integer lattices -------------------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(M: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form ``H = U M`` with ``U`` unimodular.

    Pivots are positive; entries above a pivot lie in ``[0, pivot)``; zero rows last.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    H = [list(map(int, r)) for r in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            g, s, t = _xgcd(a, b)
            if g < 0:
                g, s, t = -g, -s, -t
            ua, ub = a // g, b // g
            hr, hi = H[r], H[i]
            H[r] = [s * x + t * y for x, y in zip(hr, hi)]
            H[i] = [-ub * x + ua * y for x, y in zip(hr, hi)]
            urow, uirow = U[r], U[i]
            U[r] = [s * x + t * y for x, y in zip(urow, uirow)]
            U[i] = [-ub * x + ua * y for x, y in zip(urow, uirow)]
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def int_det(M: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, r)) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k]), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def kernel_lattice(M: Sequence[Sequence[int]], moduli: Sequence[int], ncols: int | None = None
                   ) -> tuple[list[list[int]], int]:
    """Basis of ``{v in Z^n : M v = 0 mod moduli}`` and its index in ``Z^n``."""
    k = len(M)
    n = ncols if ncols is not None else (len(M[0]) if k else 0)
    if len(moduli) != k:
        raise ValueError("one modulus per row")
    if any(d < 1 for d in moduli):
        raise ValueError("moduli must be positive")
    rows = []
    for j in range(n):
        rows.append([int(M[i][j]) for i in range(k)] + [int(j == t) for t in range(n)])
    for i in range(k):
        rows.append([int(moduli[i]) if t == i else 0 for t in range(k)] + [0] * n)
    H, _ = hnf(rows)
    basis = [r[k:] for r in H if not any(r[:k]) and any(r[k:])]
    if len(basis) != n:
        raise ArithmeticError("kernel lattice is not of full rank")
    return basis, abs(int_det(basis))


def image_size(M: Sequence[Sequence[int]], moduli: Sequence[int], ncols: int) -> int:
    """Order of the image of ``Z^n -> prod Z/d_i`` by direct closure (small cases)."""
    k = len(M)
    cols = [tuple(int(M[i][j]) % moduli[i] for i in range(k)) for j in range(ncols)]
    seen = {tuple([0] * k)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for c in cols:
                w = tuple((a + b) % d for a, b, d in zip(v, c, moduli))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen)


# linear forms and induced actions -----------------------------------------

def linear_coeffs(f: RatFunc) -> list[tuple]:
    """Coefficient vector of a homogeneous linear form; raises otherwise."""
    if not f.is_polynomial():
        raise ValueError("not a linear form: has a denominator")
    ops = f.field.ops
    dc = next(iter(f.den.terms.values()))
    inv = ops.inv(dc) if dc != ops.one else None
    vec = [ops.zero] * len(f.varset)
    for e, c in f.num.terms.items():
        if sum(e) != 1:
            raise ValueError("not a homogeneous linear form")
        vec[e.index(1)] = c if inv is None else ops.mul(c, inv)
    return vec


class SpanSolver:
    """Express vectors in terms of a fixed list of independent vectors."""

    def __init__(self, vectors: Sequence[Sequence[tuple]], ops):
        r = len(vectors)
        self.ops = ops
        self.n = len(vectors[0]) if r else 0
        aug = [list(v) + [ops.one if i == j else ops.zero for j in range(r)] for i, v in enumerate(vectors)]
        red, piv = rref(aug, ops)
        self.pivots = [p for p in piv if p < self.n]
        self.rank = len(self.pivots)
        self.rows = red[:self.rank]
        self.size = r

    def coordinates(self, vec: Sequence[tuple]):
        ops = self.ops
        rest = list(vec)
        coords = [ops.zero] * self.size
        full = self.rank == self.n
        for p, row in zip(self.pivots, self.rows):
            a = rest[p]
            if a != ops.zero:
                if not full:
                    # full rank: every vector lies in the span
                    rest = [ops.sub(x, ops.mul(a, y)) for x, y in zip(rest, row[:self.n])]
                coords = [ops.add(x, ops.mul(a, y)) for x, y in zip(coords, row[self.n:])]
        if full:
            return coords
        if any(x != ops.zero for x in rest):
            return None
        return coords


def forms_rank(forms: Sequence[RatFunc]) -> int:
    if not forms:
        return 0
    ops = forms[0].field.ops
    return len(rref([linear_coeffs(f) for f in forms], ops)[1])


def induced_action(action: GroupAction, defs: Sequence[RatFunc], aux: VarSet) -> GroupAction:
    """Action on ``K(aux)`` induced through independent linear forms ``defs`` spanning a stable subspace."""
    field = action.field
    ops = field.ops
    vecs = [linear_coeffs(d) for d in defs]
    solver = SpanSolver(vecs, ops)
    if solver.rank != len(defs):
        raise ValueError("defining forms are linearly dependent")
    rows = []
    for g in range(action.group.order):
        row = []
        for d in defs:
            coords = solver.coordinates(linear_coeffs(action.act(g, d)))
            if coords is None:
                raise ValueError("span of defining forms is not stable under the action")
            row.append(RatFunc(MultiPoly(aux, field, {aux.unit(j): c for j, c in enumerate(coords) if c != ops.zero})))
        rows.append(row)
    return GroupAction(action.group, aux, field, rows, verify=False)


def cross_images(action: GroupAction, g: int, defs: Sequence[RatFunc], target_defs: Sequence[RatFunc],
                 target_aux: VarSet, solver: "SpanSolver | None" = None) -> list[RatFunc] | None:
    """``g.defs[i]`` written in the coordinates of ``target_defs``, or None if one leaves their span."""
    field = action.field
    ops = field.ops
    if solver is None:
        solver = SpanSolver([linear_coeffs(d) for d in target_defs], ops)
    out = []
    for d in defs:
        coords = solver.coordinates(linear_coeffs(action.act(g, d)))
        if coords is None:
            return None
        out.append(RatFunc(MultiPoly(target_aux, field,
                                     {target_aux.unit(j): c for j, c in enumerate(coords) if c != ops.zero})))
    return out


# checks ------------------------------------------------------------------------

def check_invariant(f, action: GroupAction) -> bool:
    """``g.f == f`` for every group element."""
    if isinstance(f, Presented):
        aux_action = induced_action(action, f.defs, f.aux)
        return all(aux_action.act(g, f.expr) == f.expr for g in range(action.group.order))
    return all(action.act(g, f) == f for g in range(action.group.order))


def action_kernel(action: GroupAction, forms: Sequence[RatFunc] | None = None) -> tuple[int, ...]:
    """Elements fixing every variable (or every given element)."""
    elems = variables(action.varset, action.field) if forms is None else list(forms)
    return tuple(g for g in range(action.group.order) if all(action.act(g, f) == f for f in elems))


def affine_parts(zs: Sequence[RatFunc], x_labels: Sequence[str]) -> tuple[list[list[RatFunc]], list[RatFunc]]:
    """Linear-part matrix and constant vector of affine-in-x elements over ``L``."""
    if not zs:
        return [], []
    vs, field = zs[0].varset, zs[0].field
    xi = [vs.index[l] for l in x_labels]
    mat, const = [], []
    for z in zs:
        if any(z.den.degree_in(i) > 0 for i in xi):
            raise ValueError("denominator involves x variables")
        parts = {i: {} for i in xi}
        rest = {}
        for e, c in z.num.terms.items():
            dx = [i for i in xi if e[i]]
            deg = sum(e[i] for i in xi)
            if deg == 0:
                rest[e] = c
            elif deg == 1:
                i = dx[0]
                parts[i][tuple(0 if t == i else k for t, k in enumerate(e))] = c
            else:
                raise ValueError("element is not affine in the x variables")
        mat.append([RatFunc(MultiPoly(vs, field, parts[i]), z.den) for i in xi])
        const.append(RatFunc(MultiPoly(vs, field, rest), z.den))
    return mat, const


def check_generates_affine(zs: Sequence[RatFunc], x_labels: Sequence[str]) -> bool:
    """``L(z) = L(x)`` for affine families: nonzero linear-part determinant."""
    if len(zs) != len(x_labels):
        return False
    if not zs:
        return True
    mat, _ = affine_parts(zs, x_labels)
    return ratfunc_det_nonzero(mat)


def check_homomorphism(action: GroupAction, aux_action: GroupAction, defs: Sequence[RatFunc]) -> bool:
    """``g.defs[v] == aux_images[g][v](defs)`` for every element and aux variable."""
    for g in range(action.group.order):
        for v, d in enumerate(defs):
            if action.act(g, d) != substitute(aux_action.images[g][v], defs):
                return False
    return True


def orbit_degree_bound(aux_action: GroupAction, L_labels: Sequence[str], x_label: str) -> tuple[int, tuple[int, ...]]:
    """Size of the orbit of ``x`` under the kernel of the action on ``L``; a lower bound for invariant degree."""
    vs, field = aux_action.varset, aux_action.field
    L = [RatFunc.var(vs, field, l) for l in L_labels]
    N = action_kernel(aux_action, L)
    x = RatFunc.var(vs, field, x_label)
    orbit: list[RatFunc] = []
    for nu in N:
        img = aux_action.act(nu, x)
        if all(img != o for o in orbit):
            orbit.append(img)
    return len(orbit), N


def x_degree(f: RatFunc, x_label: str) -> int:
    i = f.varset.index[x_label]
    if f.den.degree_in(i) > 0:
        raise ValueError("x occurs in the denominator")
    return f.num.degree_in(i)


# monomial actions -----------------------------------------------------------

class MonomialActionSpec:
    """``g.y_i = mults[g][i] * y_{perms[g][i]}`` with root-of-unity multipliers."""

    def __init__(self, group: FiniteGroup, varset: VarSet, field: FieldSpec, perms, mults):
        self.group, self.varset, self.field = group, varset, field
        self.perms = [list(p) for p in perms]
        self.mults = [list(m) for m in mults]
        self.action = GroupAction(group, varset, field, [
            [RatFunc.var(varset, field, self.perms[g][i], Scalar(field, self.mults[g][i])) for i in range(len(varset))]
            for g in range(group.order)])

    @classmethod
    def from_action(cls, action: GroupAction) -> "MonomialActionSpec":
        if not action.is_monomial:
            raise ValueError("action is not monomial")
        perms = [p for p, _ in action._mono]
        mults = [m for _, m in action._mono]
        return cls(action.group, action.varset, action.field, perms, mults)

    def is_diagonal(self) -> bool:
        return all(p == list(range(len(self.varset))) for p in self.perms)


def _discrete_log(ops, base, order, value):
    acc = ops.one
    for k in range(order):
        if acc == value:
            return k
        acc = ops.mul(acc, base)
    raise ValueError("multiplier is not a power of the chosen root of unity")


def monomial_invariant_generators(spec: MonomialActionSpec):
    """Invariant monomials (diagonal case, with index) or orbit sums/products otherwise.

    Returns ``(generators, index)``; ``index`` is ``None`` off the diagonal path.
    """
    field = spec.field
    ops = field.ops
    vs = spec.varset
    n = len(vs)
    G = spec.group
    if spec.is_diagonal():
        orders = []
        for g in range(G.order):
            for m in spec.mults[g]:
                orders.append(Scalar(field, m).multiplicative_order(10_000))
        e = 1
        for o in orders:
            e = e * o // gcd(e, o)
        zeta = primitive_root(field, e).raw
        M = [[_discrete_log(ops, zeta, e, spec.mults[g][i]) for i in range(n)] for g in range(G.order)]
        basis, index = kernel_lattice(M, [e] * G.order, n)
        gens = [RatFunc(MultiPoly(vs, field, {tuple(w): ops.one})) for w in basis]
        for f in gens:
            if not check_invariant(f, spec.action):
                raise ArithmeticError("lattice monomial failed invariance")
        return gens, index
    gens = []
    xs = variables(vs, field)
    seen_orbits = set()
    for i in range(n):
        orbit = frozenset(spec.perms[g][i] for g in range(G.order))
        if orbit in seen_orbits:
            continue
        seen_orbits.add(orbit)
        stab = [g for g in range(G.order) if spec.action.act(g, xs[i]) == xs[i]]
        reps, covered = [], set()
        for g in range(G.order):
            if g in covered:
                continue
            reps.append(g)
            covered.update(G.table[g][s] for s in stab)
        images = [spec.action.act(g, xs[i]) for g in reps]
        total = images[0]
        prod = images[0]
        for im in images[1:]:
            total = total + im
            prod = prod * im
        for f in (total, prod):
            if not f.is_zero() and all(f != h for h in gens):
                gens.append(f)
    for f in gens:
        if not check_invariant(f, spec.action):
            raise ArithmeticError("orbit element failed invariance")
    return gens, None

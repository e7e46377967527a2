"""Invariants of semi-affine actions ``s.x = A(s) x + B(s)`` over a subfield ``L``.

``trivialize_action`` produces ``n`` invariants ``z = P x + q`` with
``P = sum_t t(R) A(t)`` and ``q = sum_t t(R) B(t)``.  Invariance follows from the
cocycle rules ``A(st) = s(A(t)) A(s)`` and ``B(st) = s(A(t)) B(s) + s(B(t))``;
a faithful action on ``L`` makes ``det P != 0`` for a generic ``R``.

``minimal_invariant`` handles one variable: with ``N`` the kernel on ``L``, the
product ``F`` over the ``N``-orbit of ``x`` is ``N``-invariant of degree equal to
the orbit size, a lower bound for any invariant; summing translates of ``r F``
over ``G/N`` keeps that degree whenever the leading coefficient survives.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import HypothesisError, RetryExhaustedError
from .funcfield import GroupAction, MultiPoly, RatFunc, VarSet
from .linalg import ratfunc_det_nonzero
from .oracle import action_kernel, affine_parts, check_generates_affine, x_degree

DEFAULT_RETRIES = 32


class SemiAffineSetup:
    """A group action on ``K(L_vars, x_vars)`` that is semi-affine in ``x`` over ``L``."""

    def __init__(self, action: GroupAction, L_labels: Sequence[str], x_labels: Sequence[str],
                 check_cocycle: bool = True):
        self.action = action
        self.group = action.group
        self.varset = action.varset
        self.field = action.field
        self.L_labels = tuple(L_labels)
        self.x_labels = tuple(x_labels)
        if set(self.L_labels) & set(self.x_labels):
            raise ValueError("L and x variables overlap")
        if set(self.L_labels) | set(self.x_labels) != set(self.varset.names):
            raise ValueError("L and x variables must partition the varset")
        xi = [self.varset.index[l] for l in self.x_labels]
        for g in range(self.group.order):
            for l in self.L_labels:
                img = action.images[g][self.varset.index[l]]
                if any(img.num.degree_in(i) > 0 or img.den.degree_in(i) > 0 for i in xi):
                    raise HypothesisError("the action does not preserve L")
        self.A, self.B = [], []
        for g in range(self.group.order):
            imgs = [action.images[g][i] for i in xi]
            try:
                mat, const = affine_parts(imgs, self.x_labels)
            except ValueError as exc:
                raise HypothesisError(f"action is not affine in x over L: {exc}") from exc
            self.A.append(mat)
            self.B.append(const)
        for g in range(self.group.order):
            if self.x_labels and not ratfunc_det_nonzero(self.A[g]):
                raise HypothesisError(f"A({g}) is singular")
        if check_cocycle and not self.cocycle_holds():
            raise ValueError("cocycle rule fails; the images do not form an action")

    @property
    def n(self) -> int:
        return len(self.x_labels)

    def L_elements(self) -> list[RatFunc]:
        return [RatFunc.var(self.varset, self.field, l) for l in self.L_labels]

    def x_elements(self) -> list[RatFunc]:
        return [RatFunc.var(self.varset, self.field, l) for l in self.x_labels]

    def act_matrix(self, g: int, mat):
        return [[self.action.act(g, e) for e in row] for row in mat]

    def cocycle_holds(self) -> bool:
        G = self.group
        n = self.n
        for s in range(G.order):
            for t in range(G.order):
                st = G.table[s][t]
                sAt = self.act_matrix(s, self.A[t])
                sBt = [self.action.act(s, b) for b in self.B[t]]
                for i in range(n):
                    for j in range(n):
                        acc = sum((sAt[i][k] * self.A[s][k][j] for k in range(n)),
                                  RatFunc.const(self.varset, self.field, 0))
                        if acc != self.A[st][i][j]:
                            return False
                    acc = sBt[i]
                    for k in range(n):
                        acc = acc + sAt[i][k] * self.B[s][k]
                    if acc != self.B[st][i]:
                        return False
        return True

    def base_kernel(self) -> tuple[int, ...]:
        return action_kernel(self.action, self.L_elements())

    def base_is_faithful(self) -> bool:
        return self.base_kernel() == (self.group.identity,)


@dataclass
class Trivialization:
    z_exprs: list
    P: list
    seed: int
    retries: int
    theta: RatFunc | None = None


@dataclass
class MinimalInvariant:
    f: RatFunc
    degree: int
    lower_bound: int
    minimality_certified: bool
    kernel: tuple
    seed: int
    retries: int
    orbit: list = field(default_factory=list)


def _random_L_element(rng: random.Random, setup: SemiAffineSetup, allow_zero: bool) -> RatFunc:
    vs, K = setup.varset, setup.field
    char = K.characteristic
    coeffs = [c for c in (1, -1, 2, -2) if not char or c % char] + ([0] if allow_zero else [])
    c = rng.choice(coeffs)
    if c == 0:
        return RatFunc.const(vs, K, 0)
    mono = RatFunc.const(vs, K, c)
    L = setup.L_labels
    if L:
        # degrees up to the exponent reach every character of a cyclic subgroup,
        # including the trivial one on non-constant monomials; small degrees dominate
        top = max(2, setup.group.exponent)
        deg = 0
        while deg < top and rng.random() < 0.6:
            deg += 1
        for _ in range(deg):
            mono = mono * RatFunc.var(vs, K, rng.choice(L))
    if mono.is_zero():
        mono = RatFunc.const(vs, K, 1)
    return mono


def trace_one_element(setup: SemiAffineSetup, seed: int = 0, max_retries: int = DEFAULT_RETRIES) -> RatFunc:
    """``theta`` with ``sum_s s(theta) = 1``."""
    if not setup.base_is_faithful():
        raise HypothesisError("the action on L is not faithful")
    rng = random.Random(seed)
    vs, K = setup.varset, setup.field
    for attempt in range(max_retries):
        theta0 = RatFunc.const(vs, K, 1) if attempt == 0 else _random_L_element(rng, setup, False)
        s = RatFunc.const(vs, K, 0)
        for g in range(setup.group.order):
            s = s + setup.action.act(g, theta0)
        if not s.is_zero():
            return theta0 / s
    raise RetryExhaustedError("no trace-one element found", seed, max_retries)


def _mat_mul(a, b, zero):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k) if not a[i][t].is_zero() and not b[t][j].is_zero()), zero)
             for j in range(m)] for i in range(n)]


def trivialize_action(setup: SemiAffineSetup, seed: int = 0, max_retries: int = DEFAULT_RETRIES) -> Trivialization:
    """Invariant ``z_1..z_n`` with ``L(z) = L(x)``; deterministic in ``(setup, seed)``."""
    if not setup.base_is_faithful():
        raise HypothesisError("the action on L is not faithful")
    G = setup.group
    n = setup.n
    vs, K = setup.varset, setup.field
    zero = RatFunc.const(vs, K, 0)
    xs = setup.x_elements()
    if n == 0:
        return Trivialization([], [[RatFunc.const(vs, K, 1)]], seed, 0)
    theta = trace_one_element(setup, seed, max_retries)
    rng = random.Random(seed)
    for attempt in range(max_retries):
        if attempt == 0:
            R = [[theta if i == j else zero for j in range(n)] for i in range(n)]
        else:
            R = [[_random_L_element(rng, setup, True) for _ in range(n)] for _ in range(n)]
        P = [[zero] * n for _ in range(n)]
        q = [zero] * n
        for t in range(G.order):
            tR = setup.act_matrix(t, R)
            P = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(P, _mat_mul(tR, setup.A[t], zero))]
            tB = _mat_mul(tR, [[b] for b in setup.B[t]], zero)
            q = [a + b[0] for a, b in zip(q, tB)]
        if not ratfunc_det_nonzero(P, seed + attempt):
            continue
        zs = []
        for i in range(n):
            acc = q[i]
            for j in range(n):
                if not P[i][j].is_zero():
                    acc = acc + P[i][j] * xs[j]
            zs.append(acc.reduced())
        for g in range(G.order):
            for z in zs:
                if setup.action.act(g, z) != z:
                    raise ArithmeticError("constructed element is not invariant")
        if not check_generates_affine(zs, setup.x_labels):
            raise ArithmeticError("constructed family does not generate over L")
        one = RatFunc.const(vs, K, 1)
        P_aug = [list(P[i]) + [q[i]] for i in range(n)] + [[zero] * n + [one]]
        return Trivialization(zs, P_aug, seed, attempt, theta)
    raise RetryExhaustedError("every sampled matrix gave a singular averaged matrix", seed, max_retries)


def minimal_invariant(setup: SemiAffineSetup, seed: int = 0, max_retries: int = DEFAULT_RETRIES) -> MinimalInvariant:
    """Invariant polynomial in the single x variable of the least degree allowed by the kernel orbit."""
    if setup.n != 1:
        raise ValueError("minimal_invariant needs exactly one x variable")
    G = setup.group
    vs, K = setup.varset, setup.field
    xl = setup.x_labels[0]
    x = setup.x_elements()[0]
    N = setup.base_kernel()
    orbit: list[RatFunc] = []
    for nu in N:
        img = setup.action.act(nu, x)
        if all(img != o for o in orbit):
            orbit.append(img)
    F = RatFunc.const(vs, K, 1)
    lead = RatFunc.const(vs, K, 1)
    for img in orbit:
        F = F * img
        mat, _ = affine_parts([img], [xl])
        lead = lead * mat[0][0]
    F = (F / lead).reduced()
    d = len(orbit)
    reps, covered = [], set()
    for g in range(G.order):
        if g not in covered:
            reps.append(g)
            covered.update(G.table[g][nu] for nu in N)
    rng = random.Random(seed)
    for attempt in range(max_retries):
        r = RatFunc.const(vs, K, 1) if attempt == 0 else _random_L_element(rng, setup, False)
        rF = r * F
        f = RatFunc.const(vs, K, 0)
        for s in reps:
            f = f + setup.action.act(s, rF)
        f = f.reduced()
        if f.is_zero() or x_degree(f, xl) != d:
            continue
        for g in range(G.order):
            if setup.action.act(g, f) != f:
                raise ArithmeticError("minimal invariant failed the invariance check")
        return MinimalInvariant(f, d, d, True, N, seed, attempt, orbit)
    raise RetryExhaustedError("leading coefficient vanished for every multiplier", seed, max_retries)

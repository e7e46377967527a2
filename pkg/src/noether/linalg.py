"""Linear algebra over K (raw field tuples) and fraction-free determinants over K[x]."""

from __future__ import annotations

import random
from typing import Sequence

from .funcfield import MultiPoly, RatFunc


def rref(rows: Sequence[Sequence[tuple]], ops) -> tuple[list[list[tuple]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != ops.zero), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ops.inv(m[r][c])
        m[r] = [ops.mul(v, inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != ops.zero:
                f = m[i][c]
                m[i] = [ops.sub(a, ops.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows, ops) -> int:
    return len(rref(rows, ops)[1])


def solve_in_span(basis_rref: list[list[tuple]], pivots: list[int], vec: Sequence[tuple], ops):
    """Coefficients ``a`` with ``vec = sum a_i basis_rref[i]``, or ``None``."""
    coeffs = [vec[c] for c in pivots]
    rest = list(vec)
    for a, row in zip(coeffs, basis_rref):
        if a != ops.zero:
            rest = [ops.sub(x, ops.mul(a, y)) for x, y in zip(rest, row)]
    if any(x != ops.zero for x in rest):
        return None
    return coeffs


def inverse(mat: Sequence[Sequence[tuple]], ops) -> list[list[tuple]]:
    n = len(mat)
    aug = [list(row) + [ops.one if i == j else ops.zero for j in range(n)] for i, row in enumerate(mat)]
    red, piv = rref(aug, ops)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def mat_mul(a, b, ops):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = ops.zero
            for t in range(k):
                if a[i][t] != ops.zero and b[t][j] != ops.zero:
                    s = ops.add(s, ops.mul(a[i][t], b[t][j]))
            row.append(s)
        out.append(row)
    return out


def poly_det(mat: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Bareiss elimination; every division is exact."""
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    vs, field = mat[0][0].varset, mat[0][0].field
    m = [list(r) for r in mat]
    sign = 1
    prev = MultiPoly.const(vs, field, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return MultiPoly(vs, field, {})
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                q = num.divide_exact(prev)
                if q is None:
                    raise ArithmeticError("inexact Bareiss division")
                m[i][j] = q
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def ratfunc_det(mat: Sequence[Sequence[RatFunc]]) -> RatFunc:
    """Clear each row's denominators, then Bareiss over polynomials."""
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    vs, field = mat[0][0].varset, mat[0][0].field
    rows = []
    scale = MultiPoly.const(vs, field, 1)
    for row in mat:
        dens = []
        for r in row:
            if not r.is_polynomial() and all(r.den.terms != d.terms for d in dens):
                dens.append(r.den)
        common = MultiPoly.const(vs, field, 1)
        for d in dens:
            common = common * d
        prow = []
        for r in row:
            if r.is_polynomial():
                c = next(iter(r.den.terms.values()))
                p = r.num.scale_raw(field.ops.inv(c)) * common
            else:
                q = common.divide_exact(r.den)
                p = r.num * q
            prow.append(p)
        rows.append(prow)
        scale = scale * common
    return RatFunc(poly_det(rows), scale)


def _curve_det_nonzero(mat, rng: random.Random, degree: int = 3) -> bool | None:
    """Restrict to a random curve ``x_i = c_i(s)``; a nonzero univariate determinant proves ``det != 0``."""
    from .funcfield import VarSet, substitute

    vs, field = mat[0][0].varset, mat[0][0].field
    p = field.characteristic
    line = VarSet(["s"])
    images = []
    for _ in range(len(vs)):
        terms = {}
        for k in range(degree + 1):
            c = field.ops.from_coeffs([rng.randrange(p) for _ in range(field.degree)])
            if c != field.ops.zero:
                terms[(k,)] = c
        images.append(RatFunc(MultiPoly(line, field, terms)))
    try:
        restricted = [[substitute(r, images) for r in row] for row in mat]
    except ZeroDivisionError:
        return None
    return not ratfunc_det(restricted).is_zero() or None


def ratfunc_det_nonzero(mat: Sequence[Sequence[RatFunc]], seed: int = 0, trials: int = 3) -> bool:
    """Decide ``det != 0``.

    A nonzero value at a point (characteristic 0) or along a random curve
    (characteristic p, where the prime field is too small for points) proves
    the claim outright; only when every sample vanishes is the symbolic
    Bareiss determinant computed.
    """
    if not mat:
        return True
    vs, field = mat[0][0].varset, mat[0][0].field
    ops = field.ops
    rng = random.Random(seed)
    for _ in range(trials):
        if field.characteristic:
            if _curve_det_nonzero(mat, rng):
                return True
            continue
        pt = [ops.from_coeffs([rng.randrange(-50, 51) for _ in range(field.degree)]) for _ in range(len(vs))]
        try:
            vals = [[r.evaluate(pt) for r in row] for row in mat]
        except ZeroDivisionError:
            continue
        red, piv = rref(vals, ops)
        if len(piv) == len(mat):
            return True
    return not ratfunc_det(mat).is_zero()

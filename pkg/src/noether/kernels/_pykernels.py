"""Pure-Python kernels: coefficient-field arithmetic and sparse polynomial loops.

Raw field elements are tuples of length ``d`` (the degree of the modulus),
holding ``gmpy2.mpq`` entries in characteristic 0 and ints in ``[0, p)`` in
characteristic ``p``.  Polynomials are dicts mapping dense exponent tuples to
nonzero raw coefficients.  ``_ckernels.pyx`` mirrors this module exactly.
"""

from gmpy2 import mpq

BACKEND = "python"


class FieldOps:
    """Arithmetic on raw coefficient tuples modulo a monic modulus."""

    __slots__ = ("p", "modulus", "d", "zero", "one", "_tail")

    def __init__(self, p, modulus):
        self.p = int(p)
        self.modulus = tuple(int(c) for c in modulus)
        self.d = len(self.modulus) - 1
        if self.d < 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        self.zero = tuple(self._c(0) for _ in range(self.d))
        self.one = (self._c(1),) + self.zero[1:]
        # x^d = -sum(tail[i] x^i)
        self._tail = tuple(self._c(c) for c in self.modulus[:-1])

    def _c(self, k):
        if self.p:
            return int(k) % self.p
        return mpq(k)

    def from_int(self, k):
        return (self._c(k),) + self.zero[1:]

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != self.d:
            raise ValueError("expected %d coefficients" % self.d)
        return tuple(self._c(c) if self.p else mpq(c) for c in coeffs)

    def is_zero(self, a):
        return a == self.zero

    def add(self, a, b):
        p = self.p
        if p:
            return tuple((x + y) % p for x, y in zip(a, b))
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        if p:
            return tuple((x - y) % p for x, y in zip(a, b))
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        if p:
            return tuple((-x) % p for x in a)
        return tuple(-x for x in a)

    def mul(self, a, b):
        d = self.d
        p = self.p
        if d == 1:
            if p:
                return ((a[0] * b[0]) % p,)
            return (a[0] * b[0],)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        tail = self._tail
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                base = k - d
                for i in range(d):
                    prod[base + i] -= c * tail[i]
        if p:
            return tuple(c % p for c in prod[:d])
        return tuple(mpq(c) for c in prod[:d])

    def scale_int(self, a, k):
        p = self.p
        if p:
            return tuple((x * k) % p for x in a)
        return tuple(x * k for x in a)

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero scalar")
        p = self.p
        if self.d == 1:
            if p:
                return (pow(a[0], -1, p),)
            return (1 / a[0],)
        # extended Euclid in F[x] on (a, modulus)
        r0 = _trim(list(self.modulus) if not p else [c % p for c in self.modulus])
        r0 = [self._c(c) for c in r0]
        r1 = _trim(list(a))
        s0, s1 = [self._c(0)], [self._c(1)]
        while len(r1) > 1 or r1[0]:
            q, r = self._divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self._psub(s0, self._pmul(q, s1))
        # r0 is a nonzero constant
        c = r0[0]
        cinv = pow(c, -1, p) if p else 1 / c
        out = [self._red(x * cinv) for x in s0] + [self._c(0)] * self.d
        return tuple(out[: self.d])

    # helpers on plain coefficient lists (low to high)
    def _red(self, x):
        return x % self.p if self.p else mpq(x)

    def _pmul(self, a, b):
        out = [self._c(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = self._red(out[i + j] + x * y)
        return _trim(out)

    def _psub(self, a, b):
        n = max(len(a), len(b))
        a = a + [self._c(0)] * (n - len(a))
        b = b + [self._c(0)] * (n - len(b))
        return _trim([self._red(x - y) for x, y in zip(a, b)])

    def _divmod(self, a, b):
        p = self.p
        a = list(a)
        lead = b[-1]
        linv = pow(lead, -1, p) if p else 1 / lead
        q = [self._c(0)] * max(1, len(a) - len(b) + 1)
        while len(a) >= len(b) and (len(a) > 1 or a[0]):
            c = self._red(a[-1] * linv)
            shift = len(a) - len(b)
            q[shift] = c
            for i, y in enumerate(b):
                a[shift + i] = self._red(a[shift + i] - c * y)
            a = _trim(a)
            if len(a) < len(b) or (len(a) == 1 and not a[0]):
                break
        return _trim(q), a


def _trim(c):
    while len(c) > 1 and not c[-1]:
        c.pop()
    return c


def poly_add(a, b, ops):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    zero = ops.zero
    add = ops.add
    for e, c in b.items():
        cur = out.get(e)
        if cur is None:
            out[e] = c
        else:
            s = add(cur, c)
            if s == zero:
                del out[e]
            else:
                out[e] = s
    return out


def poly_sub(a, b, ops):
    out = dict(a)
    zero = ops.zero
    sub = ops.sub
    neg = ops.neg
    for e, c in b.items():
        cur = out.get(e)
        if cur is None:
            out[e] = neg(c)
        else:
            s = sub(cur, c)
            if s == zero:
                del out[e]
            else:
                out[e] = s
    return out


def poly_neg(a, ops):
    neg = ops.neg
    return {e: neg(c) for e, c in a.items()}


def poly_scale(a, c, ops):
    if c == ops.zero:
        return {}
    if c == ops.one:
        return dict(a)
    mul = ops.mul
    zero = ops.zero
    out = {}
    for e, x in a.items():
        y = mul(x, c)
        if y != zero:
            out[e] = y
    return out


def poly_mul(a, b, ops):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    mul = ops.mul
    add = ops.add
    zero = ops.zero
    out = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            t = mul(ca, cb)
            cur = get(e)
            out[e] = t if cur is None else add(cur, t)
    return {e: c for e, c in out.items() if c != zero}


def poly_map_monomial(a, perm, mults, nvars, ops):
    """Substitute variable ``i`` by ``mults[i] * var[perm[i]]``.

    ``perm`` need not be injective; exponents landing on the same target add.
    """
    mul = ops.mul
    powpow = ops.pow
    one = ops.one
    zero = ops.zero
    trivial = [m == one for m in mults]
    cache = {}
    out = {}
    for e, c in a.items():
        new = [0] * nvars
        coeff = c
        for i, k in enumerate(e):
            if k:
                new[perm[i]] += k
                if not trivial[i]:
                    key = (i, k)
                    f = cache.get(key)
                    if f is None:
                        f = powpow(mults[i], k)
                        cache[key] = f
                    coeff = mul(coeff, f)
        t = tuple(new)
        cur = out.get(t)
        out[t] = coeff if cur is None else ops.add(cur, coeff)
    return {e: c for e, c in out.items() if c != zero}


def table_is_latin(table):
    n = len(table)
    full = set(range(n))
    for row in table:
        if set(row) != full:
            return False
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            return False
    return True


def table_is_associative(table):
    n = len(table)
    for a in range(n):
        row_a = table[a]
        for b in range(n):
            ab = row_a[b]
            row_ab = table[ab]
            row_b = table[b]
            for c in range(n):
                if row_ab[c] != row_a[row_b[c]]:
                    return False
    return True

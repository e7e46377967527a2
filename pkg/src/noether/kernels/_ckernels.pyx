# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``; identical semantics, C loops where typed."""

from gmpy2 import mpq

BACKEND = "cython"

DEF MAXD = 64


cdef class FieldOps:
    cdef public long long p
    cdef public tuple modulus
    cdef public int d
    cdef public tuple zero
    cdef public tuple one
    cdef tuple _tail
    cdef long long _ctail[MAXD]
    cdef bint _small

    def __init__(self, p, modulus):
        cdef int i
        self.p = int(p)
        self.modulus = tuple([int(c) for c in modulus])
        self.d = len(self.modulus) - 1
        if self.d < 1 or self.modulus[self.d] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        if self.d > MAXD:
            raise ValueError("modulus degree too large")
        zero = []
        for i in range(self.d):
            zero.append(self._c(0))
        self.zero = tuple(zero)
        self.one = (self._c(1),) + self.zero[1:]
        tail = []
        for i in range(self.d):
            tail.append(self._c(self.modulus[i]))
        self._tail = tuple(tail)
        self._small = self.p > 0 and self.p < 2147483648
        if self._small:
            for i in range(self.d):
                self._ctail[i] = self._tail[i]

    def __reduce__(self):
        return (FieldOps, (self.p, self.modulus))

    cpdef object _c(self, object k):
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

    cpdef bint is_zero(self, tuple a):
        return a == self.zero

    cpdef tuple add(self, tuple a, tuple b):
        cdef long long p = self.p
        cdef int i
        if p:
            if self.d == 1:
                return (((<long long>a[0]) + (<long long>b[0])) % p,)
            return tuple([(a[i] + b[i]) % p for i in range(self.d)])
        if self.d == 1:
            return (a[0] + b[0],)
        return tuple([a[i] + b[i] for i in range(self.d)])

    cpdef tuple sub(self, tuple a, tuple b):
        cdef long long p = self.p
        cdef int i
        if p:
            if self.d == 1:
                return (((<long long>a[0]) - (<long long>b[0]) + p) % p,)
            return tuple([(a[i] - b[i]) % p for i in range(self.d)])
        if self.d == 1:
            return (a[0] - b[0],)
        return tuple([a[i] - b[i] for i in range(self.d)])

    cpdef tuple neg(self, tuple a):
        cdef long long p = self.p
        cdef int i
        if p:
            return tuple([(-a[i]) % p for i in range(self.d)])
        return tuple([-a[i] for i in range(self.d)])

    cpdef tuple mul(self, tuple a, tuple b):
        cdef int d = self.d
        cdef long long p = self.p
        cdef int i, j, k, base
        cdef long long cprod[2 * MAXD]
        cdef long long c
        if d == 1:
            if p:
                if self._small:
                    return (((<long long>a[0]) * (<long long>b[0])) % p,)
                return ((a[0] * b[0]) % p,)
            return (a[0] * b[0],)
        if self._small:
            for k in range(2 * d - 1):
                cprod[k] = 0
            for i in range(d):
                c = a[i]
                if c:
                    for j in range(d):
                        cprod[i + j] = (cprod[i + j] + c * (<long long>b[j])) % p
            for k in range(2 * d - 2, d - 1, -1):
                c = cprod[k]
                if c:
                    base = k - d
                    for i in range(d):
                        cprod[base + i] = (cprod[base + i] - c * self._ctail[i]) % p
            return tuple([(cprod[i] % p + p) % p for i in range(d)])
        prod = [0] * (2 * d - 1)
        for i in range(d):
            x = a[i]
            if x:
                for j in range(d):
                    y = b[j]
                    if y:
                        prod[i + j] += x * y
        tail = self._tail
        for k in range(2 * d - 2, d - 1, -1):
            cc = prod[k]
            if cc:
                base = k - d
                for i in range(d):
                    prod[base + i] -= cc * tail[i]
        if p:
            return tuple([prod[i] % p for i in range(d)])
        return tuple([mpq(prod[i]) for i in range(d)])

    cpdef tuple scale_int(self, tuple a, object k):
        cdef long long p = self.p
        if p:
            return tuple([(x * k) % p for x in a])
        return tuple([x * k for x in a])

    cpdef tuple pow(self, tuple a, object e):
        if e < 0:
            a = self.inv(a)
            e = -e
        cdef tuple result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    cpdef tuple inv(self, tuple a):
        # rarely hot; delegate to the reference implementation
        from ._pykernels import FieldOps as _Ref
        return _Ref(self.p, self.modulus).inv(a)


def poly_add(dict a, dict b, FieldOps ops):
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = dict(a)
    cdef tuple zero = ops.zero
    cdef tuple s
    for e, c in b.items():
        cur = out.get(e)
        if cur is None:
            out[e] = c
        else:
            s = ops.add(cur, c)
            if s == zero:
                del out[e]
            else:
                out[e] = s
    return out


def poly_sub(dict a, dict b, FieldOps ops):
    cdef dict out = dict(a)
    cdef tuple zero = ops.zero
    cdef tuple s
    for e, c in b.items():
        cur = out.get(e)
        if cur is None:
            out[e] = ops.neg(c)
        else:
            s = ops.sub(cur, c)
            if s == zero:
                del out[e]
            else:
                out[e] = s
    return out


def poly_neg(dict a, FieldOps ops):
    return {e: ops.neg(c) for e, c in a.items()}


def poly_scale(dict a, tuple c, FieldOps ops):
    if c == ops.zero:
        return {}
    if c == ops.one:
        return dict(a)
    cdef dict out = {}
    cdef tuple zero = ops.zero
    cdef tuple y
    for e, x in a.items():
        y = ops.mul(x, c)
        if y != zero:
            out[e] = y
    return out


def poly_mul(dict a, dict b, FieldOps ops):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = {}
    cdef tuple zero = ops.zero
    cdef tuple ea, eb, t
    cdef Py_ssize_t n, i
    cdef list buf
    for eb_obj, cb in b.items():
        eb = <tuple>eb_obj
        n = len(eb)
        for ea_obj, ca in a.items():
            ea = <tuple>ea_obj
            buf = [0] * n
            for i in range(n):
                buf[i] = <long>ea[i] + <long>eb[i]
            e = tuple(buf)
            t = ops.mul(ca, cb)
            cur = out.get(e)
            out[e] = t if cur is None else ops.add(cur, t)
    return {e: c for e, c in out.items() if c != zero}


def poly_map_monomial(dict a, list perm, list mults, int nvars, FieldOps ops):
    cdef tuple one = ops.one
    cdef tuple zero = ops.zero
    cdef list trivial = [m == one for m in mults]
    cdef dict cache = {}
    cdef dict out = {}
    cdef Py_ssize_t i, n
    cdef long k
    cdef list new
    cdef tuple coeff, e
    for e_obj, c in a.items():
        e = <tuple>e_obj
        n = len(e)
        new = [0] * nvars
        coeff = c
        for i in range(n):
            k = e[i]
            if k:
                new[perm[i]] += k
                if not trivial[i]:
                    key = (i, k)
                    f = cache.get(key)
                    if f is None:
                        f = ops.pow(mults[i], k)
                        cache[key] = f
                    coeff = ops.mul(coeff, f)
        t = tuple(new)
        cur = out.get(t)
        out[t] = coeff if cur is None else ops.add(cur, coeff)
    return {e: c for e, c in out.items() if c != zero}


def table_is_latin(table):
    cdef Py_ssize_t n = len(table)
    cdef Py_ssize_t i, j
    cdef bytearray seen
    for i in range(n):
        seen = bytearray(n)
        row = table[i]
        for j in range(n):
            v = row[j]
            if v < 0 or v >= n or seen[v]:
                return False
            seen[v] = 1
    for j in range(n):
        seen = bytearray(n)
        for i in range(n):
            v = table[i][j]
            if v < 0 or v >= n or seen[v]:
                return False
            seen[v] = 1
    return True


def table_is_associative(table):
    cdef Py_ssize_t n = len(table)
    cdef Py_ssize_t a, b, c, ab
    cdef list rows = [list(r) for r in table]
    cdef list row_a, row_b, row_ab
    for a in range(n):
        row_a = rows[a]
        for b in range(n):
            ab = row_a[b]
            row_ab = rows[ab]
            row_b = rows[b]
            for c in range(n):
                if row_ab[c] != row_a[row_b[c]]:
                    return False
    return True

"""Exact arithmetic in Q(zeta_m) and F_p(zeta_m).

Elements are stored densely in the power basis of ``x mod f`` where ``f`` is
the modulus polynomial; the class of ``x`` is the adjoined root of unity.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from gmpy2 import mpq

from . import kernels
from .errors import HypothesisError


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _ipoly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _ipoly_divexact(a, b):
    """Exact division of integer polynomials (low to high), ``b`` monic."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1]
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, low to high."""
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    den = [1]
    for d in _divisors(m)[:-1]:
        den = _ipoly_mul(den, cyclotomic_polynomial(d))
    return tuple(_ipoly_divexact(num, den))


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def _mult_order(a: int, m: int) -> int:
    if m == 1:
        return 1
    k, x = 1, a % m
    while x != 1:
        x = (x * a) % m
        k += 1
    return k


def _fp_poly_rem(a, b, p):
    """Remainder of ``a`` by monic ``b`` over F_p (coefficient lists, low to high)."""
    a = [c % p for c in a]
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            for i, y in enumerate(b):
                a[k - db + i] = (a[k - db + i] - c * y) % p
    return a[:db]


def _least_factor_mod_p(m: int, p: int) -> tuple[int, ...]:
    """Least monic irreducible factor of Phi_m over F_p.

    Candidates ``x^d - (r_0 + r_1 x + ... + r_{d-1} x^{d-1})`` are tried with
    ``(r_0, ..., r_{d-1})`` in lexicographic order, so for ``d = 1`` this picks
    ``x - r`` with ``r`` the least primitive m-th root in F_p.
    """
    phi = [c % p for c in cyclotomic_polynomial(m)]
    deg = _mult_order(p, m)
    if deg == len(phi) - 1:
        return tuple(phi)
    for rs in itertools.product(range(p), repeat=deg):
        cand = [(-r) % p for r in rs] + [1]
        if not any(_fp_poly_rem(phi, cand, p)):
            return tuple(cand)
    raise AssertionError("no factor found")  # unreachable: Phi_m splits into degree-d factors


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int
    zeta_order: int
    modulus: tuple[int, ...]
    ops: object = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.ops is None:
            object.__setattr__(self, "ops", kernels.FieldOps(self.characteristic, self.modulus))

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def __call__(self, value) -> "Scalar":
        return self.scalar(value)

    def scalar(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                raise ValueError("scalar from a different field")
            return value
        if isinstance(value, (list, tuple)):
            return Scalar(self, self.ops.from_coeffs(value))
        if self.characteristic and not isinstance(value, int):
            q = mpq(value)
            num = int(q.numerator) % self.characteristic
            den = int(q.denominator) % self.characteristic
            if den == 0:
                raise ZeroDivisionError("denominator vanishes mod p")
            return Scalar(self, self.ops.from_int(num * pow(den, -1, self.characteristic)))
        if self.characteristic:
            return Scalar(self, self.ops.from_int(value))
        return Scalar(self, (mpq(value),) + self.ops.zero[1:])

    def zero(self) -> "Scalar":
        return Scalar(self, self.ops.zero)

    def one(self) -> "Scalar":
        return Scalar(self, self.ops.one)

    def zeta(self) -> "Scalar":
        """The adjoined primitive ``zeta_order``-th root of unity."""
        if self.degree == 1:
            # x - r: zeta = r
            return self.scalar(-self.modulus[0])
        return Scalar(self, self.ops.from_coeffs([0, 1] + [0] * (self.degree - 2)))

    def to_json(self) -> dict:
        return {"char": self.characteristic, "zeta_order": self.zeta_order,
                "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        spec = field_with_root_of_unity(int(data["char"]), int(data["zeta_order"]))
        if list(spec.modulus) != [int(c) for c in data["modulus"]]:
            raise ValueError("field modulus does not match the canonical construction")
        return spec

    def label(self) -> str:
        base = "Q" if self.characteristic == 0 else f"Fp:{self.characteristic}"
        if self.zeta_order == 1:
            return base
        return f"{base}(zeta:{self.zeta_order})"

    def __repr__(self):
        return f"FieldSpec({self.label()})"


@lru_cache(maxsize=None)
def field_with_root_of_unity(characteristic: int, m: int) -> FieldSpec:
    """The field ``Q(zeta_m)`` (characteristic 0) or ``F_p(zeta_m)``."""
    if m < 1:
        raise ValueError("m must be positive")
    if characteristic != 0:
        if not _is_prime(characteristic):
            raise ValueError(f"characteristic {characteristic} is not prime")
        if m % characteristic == 0:
            raise HypothesisError(
                f"primitive {m}-th root of unity requires char K = {characteristic} not dividing {m}")
        modulus = _least_factor_mod_p(m, characteristic)
    else:
        modulus = cyclotomic_polynomial(m)
    return FieldSpec(characteristic, m, tuple(modulus))


_FIELD_RE = re.compile(r"^\s*(Q|Fp:(\d+))\s*(?:\(\s*zeta:(\d+)\s*\))?\s*$")


def parse_field(text: str) -> FieldSpec:
    """Parse selectors such as ``Q``, ``Q(zeta:4)``, ``Fp:2``, ``Fp:7(zeta:3)``."""
    match = _FIELD_RE.match(text)
    if not match:
        raise ValueError(f"cannot parse field selector {text!r}")
    char = int(match.group(2)) if match.group(2) else 0
    m = int(match.group(3)) if match.group(3) else 1
    return field_with_root_of_unity(char, m)


class Scalar:
    __slots__ = ("field", "raw")

    def __init__(self, field: FieldSpec, raw: tuple):
        self.field = field
        self.raw = raw

    @property
    def coeffs(self) -> tuple:
        return self.raw

    def _other(self, other) -> tuple:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError("mixed-field scalar arithmetic")
            return other.raw
        return self.field.scalar(other).raw

    def __add__(self, other):
        return Scalar(self.field, self.field.ops.add(self.raw, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.ops.sub(self.raw, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.ops.sub(self._other(other), self.raw))

    def __mul__(self, other):
        return Scalar(self.field, self.field.ops.mul(self.raw, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.ops.neg(self.raw))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.ops.inv(self.raw))

    def __truediv__(self, other):
        return self * Scalar(self.field, self._other(other)).inverse()

    def __rtruediv__(self, other):
        return Scalar(self.field, self._other(other)) * self.inverse()

    def __pow__(self, e: int):
        return Scalar(self.field, self.field.ops.pow(self.raw, e))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.raw == other.raw
        try:
            return self.raw == self.field.scalar(other).raw
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field.characteristic, self.field.modulus, self.raw))

    def __bool__(self):
        return self.raw != self.field.ops.zero

    def is_zero(self) -> bool:
        return self.raw == self.field.ops.zero

    def multiplicative_order(self, bound: int | None = None) -> int:
        """Least ``k >= 1`` with ``self**k == 1``; raises if none up to ``bound``."""
        if self.is_zero():
            raise ValueError("zero has no multiplicative order")
        one = self.field.ops.one
        bound = bound if bound is not None else _group_order_bound(self.field)
        x = self.raw
        for k in range(1, bound + 1):
            if x == one:
                return k
            x = self.field.ops.mul(x, self.raw)
        raise ValueError("element of infinite (or too large) order")

    def to_json(self):
        return [raw_to_json(c) for c in self.raw]

    def __repr__(self):
        return f"Scalar({format_raw(self.raw, self.field)})"

    def __str__(self):
        return format_raw(self.raw, self.field)


def _group_order_bound(field: FieldSpec) -> int:
    if field.characteristic:
        return field.characteristic ** field.degree - 1
    # roots of unity in Q(zeta_m) have order dividing lcm(2, m)
    return 2 * field.zeta_order


def raw_to_json(c):
    if isinstance(c, int):
        return c
    q = mpq(c)
    if q.denominator == 1:
        return int(q.numerator)
    return f"{int(q.numerator)}/{int(q.denominator)}"


def raw_from_json(values, field: FieldSpec) -> tuple:
    out = []
    for v in values:
        if isinstance(v, str):
            num, _, den = v.partition("/")
            q = mpq(int(num), int(den or 1))
        elif isinstance(v, int):
            q = mpq(v)
        else:
            raise ValueError(f"bad scalar coefficient {v!r}")
        if field.characteristic:
            p = field.characteristic
            out.append(int(q.numerator) * pow(int(q.denominator), -1, p) % p)
        else:
            out.append(q)
    if len(out) != field.degree:
        raise ValueError("scalar has wrong number of coefficients")
    return tuple(out)


def scalar_from_json(values, field: FieldSpec) -> Scalar:
    return Scalar(field, raw_from_json(values, field))


def format_raw(raw: tuple, field: FieldSpec) -> str:
    if len(raw) == 1:
        return str(raw_to_json(raw[0]))
    parts = []
    for i, c in enumerate(raw):
        if not c:
            continue
        s = str(raw_to_json(c))
        if i == 0:
            parts.append(s)
        elif i == 1:
            parts.append(f"{s}*z" if s != "1" else "z")
        else:
            parts.append(f"{s}*z^{i}" if s != "1" else f"z^{i}")
    if not parts:
        return "0"
    if len(parts) == 1 and raw[0]:
        return parts[0]
    return "(" + " + ".join(parts) + ")"


def primitive_root(field: FieldSpec, n: int) -> Scalar:
    """An element of multiplicative order exactly ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    m = field.zeta_order
    if n == 1:
        return field.one()
    if m % n == 0:
        root = field.zeta() ** (m // n)
    elif field.characteristic == 0:
        # roots of unity in Q(zeta_m) form a cyclic group of order lcm(2, m)
        big = m if m % 2 == 0 else 2 * m
        if big % n:
            raise HypothesisError(f"field {field.label()} has no primitive {n}-th root of unity")
        gen = field.zeta() if m % 2 == 0 else -field.zeta()
        root = gen ** (big // n)
    else:
        p = field.characteristic
        q = p ** field.degree
        if n % p == 0 or (q - 1) % n:
            raise HypothesisError(f"field {field.label()} has no primitive {n}-th root of unity")
        root = None
        for coeffs in itertools.product(range(p), repeat=field.degree):
            cand = Scalar(field, field.ops.from_coeffs(coeffs))
            if cand.is_zero():
                continue
            if cand.multiplicative_order(q - 1) == q - 1:
                root = cand ** ((q - 1) // n)
                break
    if root is None or root.multiplicative_order(max(n, 2)) != n:
        raise HypothesisError(f"field {field.label()} has no primitive {n}-th root of unity")
    return root

"""The compiled and pure-Python kernels must agree exactly."""

import random

import pytest

from noether import kernels
from noether.scalars import field_with_root_of_unity

pytestmark = pytest.mark.skipif(kernels.compiled is None, reason="compiled kernels not built")

FIELDS = [(0, 1), (0, 5), (7, 3), (2, 1), (3, 8)]


def _poly(rng, ops, p):
    out = {}
    for _ in range(12):
        e = tuple(rng.randint(0, 2) for _ in range(3))
        c = ops.from_coeffs([rng.randint(-5, 5) % p if p else rng.randint(-5, 5) for _ in range(ops.d)])
        if not ops.is_zero(c):
            out[e] = c
    return out


@pytest.mark.parametrize("char,m", FIELDS)
def test_backends_agree(char, m):
    spec = field_with_root_of_unity(char, m)
    P, C = kernels.pure.FieldOps(char, spec.modulus), kernels.compiled.FieldOps(char, spec.modulus)
    for seed in range(5):
        a, b = _poly(random.Random(seed), P, char), _poly(random.Random(seed + 100), P, char)
        ca, cb = _poly(random.Random(seed), C, char), _poly(random.Random(seed + 100), C, char)
        assert a == ca and b == cb
        assert kernels.pure.poly_mul(a, b, P) == kernels.compiled.poly_mul(ca, cb, C)
        assert kernels.pure.poly_add(a, b, P) == kernels.compiled.poly_add(ca, cb, C)
        assert kernels.pure.poly_sub(a, b, P) == kernels.compiled.poly_sub(ca, cb, C)
        perm = [2, 0, 1]
        mults = [P.from_int(k + 1) for k in range(3)]
        assert (kernels.pure.poly_map_monomial(a, perm, mults, 3, P)
                == kernels.compiled.poly_map_monomial(ca, perm, [C.from_int(k + 1) for k in range(3)], 3, C))
        for c in list(a.values())[:3]:
            assert P.inv(c) == C.inv(c)
            assert P.pow(c, 7) == C.pow(c, 7)


def test_table_checks_agree():
    good = [[(i + j) % 5 for j in range(5)] for i in range(5)]
    bad = [[0, 1, 2], [1, 0, 0], [2, 1, 0]]
    nonassoc = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    for fn in ("table_is_latin", "table_is_associative"):
        for t in (good, bad, nonassoc):
            assert getattr(kernels.pure, fn)(t) == getattr(kernels.compiled, fn)(t)


def test_backend_selected():
    assert kernels.BACKEND == ("cython" if kernels.compiled is not None else "python")


def test_certificates_identical_across_backends(tmp_path):
    import os
    import subprocess
    import sys
    outs = []
    for pure in ("", "1"):
        out = tmp_path / f"cert{pure or 0}.json"
        env = dict(os.environ, NOETHER_PURE_PYTHON=pure)
        if not pure:
            env.pop("NOETHER_PURE_PYTHON")
        subprocess.run([sys.executable, "-m", "noether.cli", "reduce", "--theorem", "1.1",
                        "--H", '{"kind": "cyclic", "n": 3}', "--G", '{"kind": "cyclic", "n": 2}',
                        "--field", "Q(zeta:3)", "--out", str(out)], env=env, check=True, capture_output=True)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]

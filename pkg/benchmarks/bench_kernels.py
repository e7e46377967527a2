"""Compiled versus pure-Python kernels on the operations that dominate the constructions.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

from noether import kernels
from noether.groups import dihedral, wreath_product
from noether.scalars import field_with_root_of_unity


def random_poly(rng, ops, nvars, nterms, maxdeg, p):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, maxdeg) for _ in range(nvars))
        coeffs = [rng.randint(-9, 9) for _ in range(ops.d)]
        c = ops.from_coeffs([x % p for x in coeffs] if p else coeffs)
        if not ops.is_zero(c):
            terms[e] = c
    return terms


def cases():
    for label, char, m in (("Q", 0, 1), ("Q(zeta:5)", 0, 5), ("Fp:7(zeta:3)", 7, 3)):
        spec = field_with_root_of_unity(char, m)
        yield label, spec.characteristic, spec.modulus


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled kernels unavailable; only the pure-Python backend can be timed", file=sys.stderr)
    backends = [("pure", kernels.pure)] + ([("compiled", kernels.compiled)] if kernels.compiled else [])
    print(f"{'operation':<38}{'backend':<10}{'best of ' + str(args.repeat) + ' (ms)':>18}")
    for label, p, modulus in cases():
        polys = {}
        for name, mod in backends:
            ops = mod.FieldOps(p, modulus)
            r = random.Random(args.seed)
            a = random_poly(r, ops, 6, 60, 3, p)
            b = random_poly(r, ops, 6, 60, 3, p)
            perm = list(range(6))
            r.shuffle(perm)
            mults = [ops.one] * 6
            polys[name] = (ops, a, b, perm, mults)
        results = {}
        for name, mod in backends:
            ops, a, b, perm, mults = polys[name]
            t_mul = min(timeit.repeat(lambda: mod.poly_mul(a, b, ops), number=20, repeat=args.repeat)) / 20
            t_map = min(timeit.repeat(lambda: mod.poly_map_monomial(a, perm, mults, 6, ops), number=200,
                                      repeat=args.repeat)) / 200
            results[name] = (mod.poly_mul(a, b, ops), mod.poly_map_monomial(a, perm, mults, 6, ops))
            print(f"{'poly_mul 60x60 terms, ' + label:<38}{name:<10}{t_mul * 1e3:>18.3f}")
            print(f"{'poly_map_monomial, ' + label:<38}{name:<10}{t_map * 1e3:>18.4f}")
        if len(results) == 2 and results["pure"] != results["compiled"]:
            print(f"backends disagree on {label}", file=sys.stderr)
            return 1
    table = [list(r) for r in wreath_product(dihedral(3), dihedral(1)).total.table]
    for name, mod in backends:
        t = min(timeit.repeat(lambda: mod.table_is_associative(table), number=3, repeat=args.repeat)) / 3
        print(f"{'associativity, order ' + str(len(table)):<38}{name:<10}{t * 1e3:>18.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""``noether`` command line: groups, reductions, certificate verification and the oracle.

Exit codes: 0 ok, 1 a claim failed, 2 usage or hypothesis error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import funcfield
from .descent import DEFAULT_RETRIES
from .errors import HypothesisError, ResourceLimitError, RetryExhaustedError
from .groups import DEFAULT_SIZE_CAP, central_extension_data, cyclic, describe, group_from_spec, quotient
from .scalars import parse_field

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
THEOREMS = ("1.1", "1.4", "1.5", "1.6", "1.7", "1.8", "1.9", "1.10", "4.2", "fischer", "crosscheck")


class UsageError(Exception):
    pass


def _load_json(text: str, what: str):
    """Inline JSON, or a path to a JSON file."""
    source = text
    if not text.lstrip().startswith(("{", "[")):
        path = Path(text)
        if not path.exists():
            raise UsageError(f"{what}: no such file {text!r}")
        source = path.read_text()
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _group(text, cfg, what="group"):
    if text is None:
        raise UsageError(f"missing --{what}")
    spec = _load_json(text, what)
    if not isinstance(spec, dict):
        raise UsageError(f"{what}: expected a JSON object")
    try:
        return group_from_spec(spec, cfg.cap_size)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"{what}: bad group spec ({exc})") from None


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers") from None


def _witness(H, K, args):
    from .reductions.fischer import fischer_construct
    from .reductions.witness import trivial_witness
    if H.order == 1:
        w = trivial_witness(H, K)
    elif H.is_abelian():
        w = fischer_construct(H, K, args.seed)[1]
    else:
        raise HypothesisError("a witness for K(H) is built only for abelian H (requires H abelian)")
    return w.stabilized(args.stable) if args.stable else w


def _reduce(args, K):
    from .reductions import crosscheck, fischer, theorem11, theorem16, theorem19, theorem42, theorem110
    kw = dict(seed=args.seed, max_retries=args.max_retries)
    t = args.theorem
    if t == "fischer":
        A = _group(args.group, args)
        return fischer.fischer(A, K, args.seed)
    if t == "crosscheck":
        return crosscheck.crosscheck_abelian(_group(args.group, args), K, args.seed)
    if t == "1.1":
        return theorem11.theorem11_embed(_group(args.H, args, "H"), _group(args.G, args, "G"), K, **kw)
    if t == "1.4":
        return theorem16.theorem14_reduce(_group(args.G, args, "G"), K, **kw)
    if t in ("1.5", "4.2"):
        if args.n is None:
            raise UsageError("missing --n")
        if t == "1.5":
            return theorem16.theorem15_pipeline(args.n, K, **kw)
        w = None
        if args.n > 1 and args.n % 2:
            w = _witness(cyclic(args.n), K, args)
        return theorem42.theorem42_pipeline(args.n, K, w, **kw)
    if t == "1.6":
        if args.split:
            ext = theorem16.split_extension(_group(args.split, args, "split"))
        else:
            Gt = _group(args.group, args)
            if args.center is None:
                raise UsageError("missing --center (index of the central element c) or --split")
            if not 0 <= args.center < Gt.order:
                raise UsageError("--center is not a group element index")
            ext = central_extension_data(Gt, args.center, quotient(Gt, Gt.subgroup_generated([args.center])))
        return theorem16.theorem16_reduce(ext, K, **kw)
    if t == "1.7":
        return theorem16.theorem17_chain(_group(args.H, args, "H"), _group(args.G, args, "G"), K, **kw)
    if t == "1.8":
        if args.subgroup is None:
            raise UsageError("missing --subgroup")
        return theorem16.theorem18_chain(_group(args.group, args), _int_list(args.subgroup, "subgroup"), K, **kw)
    H, G = _group(args.H, args, "H"), _group(args.G, args, "G")
    if t == "1.9":
        w = _witness(H, K, args) if args.witness else None
        return theorem19.theorem19_construct(H, G, K, w, **kw)
    return theorem110.theorem110_construct(H, G, K, _witness(H, K, args),
                                          size_cap=min(args.cap_size, theorem110.REGULAR_CAP), **kw)


def _write(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_group(args) -> int:
    G = _group(args.spec, args, "spec")
    info = describe(G)
    kind = "abelian" if info["abelian"] else "nonabelian"
    print(f"{kind}, order {info['order']}")
    print(f"center order {info['center_order']}, exponent {info['exponent']}")
    if info["abelian"]:
        print("invariant factors " + " x ".join(map(str, info["invariant_factors"])) if info["invariant_factors"]
              else "invariant factors (trivial)")
    return EXIT_OK


def cmd_reduce(args) -> int:
    K = parse_field(args.field)
    cert = _reduce(args, K)
    text = cert.dumps()
    total, bad = cert.claim_count()
    skipped = _count_skipped(cert)
    print(f"theorem {cert.theorem}: {total} claims, {bad} failed, {skipped} skipped", file=sys.stderr)
    if bad:
        print(f"first failure: {cert.first_failure()}", file=sys.stderr)
    _write(text, args.out)
    return EXIT_FAIL if bad else EXIT_OK


def _count_skipped(cert) -> int:
    return sum(1 for c in cert.claims if c.get("status") == "skipped") + sum(_count_skipped(s) for s in cert.sub)


def cmd_verify(args) -> int:
    from .reductions import SchemaError, reverify
    path = Path(args.certificate)
    if not path.exists():
        raise UsageError(f"no such file {args.certificate!r}")
    data = _load_json(path.read_text(), "certificate")
    try:
        rows = reverify(data, args.cap_size)
    except SchemaError as exc:
        raise UsageError(str(exc)) from None
    bad = [r for r in rows if not r[2]]
    for name, stored, now, err in bad:
        print(f"FAILED {name}" + (f" ({err})" if err else ""))
    changed = sum(1 for r in rows if r[1] != r[2])
    print(f"{len(rows)} claims re-verified, {len(bad)} failed, {changed} differ from the stored verdict")
    return EXIT_FAIL if bad else EXIT_OK


def cmd_oracle(args) -> int:
    from . import oracle
    if args.hnf:
        M = _load_json(args.hnf, "hnf")
        H, _ = oracle.hnf(M)
        print(json.dumps(H))
        return EXIT_OK
    if args.kernel:
        M = _load_json(args.kernel, "kernel")
        if args.moduli is None:
            raise UsageError("--kernel needs --moduli")
        try:
            basis, index = oracle.kernel_lattice(M, _int_list(args.moduli, "moduli"))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print(json.dumps({"basis": basis, "index": index}))
        return EXIT_OK
    if args.invariant_check:
        K = parse_field(args.field)
        G = _group(args.group, args)
        terms = _load_json(args.invariant_check, "invariant-check")
        vs, act = funcfield.regular_action(G, K)
        f = funcfield.RatFunc.const(vs, K, 0)
        try:
            for coeff, exps in terms:
                if len(exps) != G.order:
                    raise UsageError("each exponent vector needs one entry per group element")
                mono = funcfield.RatFunc.const(vs, K, coeff)
                for i, e in enumerate(exps):
                    if e:
                        mono = mono * funcfield.RatFunc.var(vs, K, i) ** int(e)
                f = f + mono
        except (TypeError, ValueError):
            raise UsageError("invariant-check: expected [[coeff, [exponents]], ...]") from None
        ok = oracle.check_invariant(f, act)
        print(f"{f}: {'invariant' if ok else 'not invariant'} under all {G.order} elements")
        return EXIT_OK if ok else EXIT_FAIL
    raise UsageError("choose one of --hnf, --kernel, --invariant-check")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-retries", type=int, default=DEFAULT_RETRIES)
    common.add_argument("--field", default="Q", help='"Q", "Q(zeta:4)", "Fp:2", "Fp:7(zeta:3)"')
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--cap-terms", type=int, default=200_000)
    common.add_argument("--cap-size", type=int, default=DEFAULT_SIZE_CAP)

    p = argparse.ArgumentParser(prog="noether", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", parents=[common], help="describe a group given as JSON")
    g.add_argument("spec", help="group spec (file or inline JSON)")
    g.set_defaults(func=cmd_group)

    r = sub.add_parser("reduce", parents=[common], help="run a construction and write its certificate")
    r.add_argument("--theorem", required=True, choices=THEOREMS)
    r.add_argument("--group")
    r.add_argument("--H")
    r.add_argument("--G")
    r.add_argument("--n", type=int)
    r.add_argument("--center", type=int, help="index of the central element c (1.6)")
    r.add_argument("--split", help="G for the split extension Z/2 x G (1.6)")
    r.add_argument("--subgroup", help="comma-separated element indices of the normal subgroup (1.8)")
    r.add_argument("--witness", action="store_true", help="attach a witness for K(H) (1.9)")
    r.add_argument("--stable", type=int, default=0, help="extra fixed indeterminates in the witness (1.10)")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", parents=[common], help="re-run every claim of a certificate")
    v.add_argument("certificate")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", parents=[common], help="lattice and invariance checks")
    o.add_argument("--hnf", metavar="MATRIX")
    o.add_argument("--kernel", metavar="MATRIX")
    o.add_argument("--moduli")
    o.add_argument("--invariant-check", metavar="TERMS", help="[[coeff, [exponents]], ...] in x[g]")
    o.add_argument("--group")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.cap_terms < 1 or args.cap_size < 1 or args.max_retries < 1:
        print("error: caps and retries must be positive", file=sys.stderr)
        return EXIT_USAGE
    previous = funcfield.TERM_CAP
    funcfield.set_term_cap(args.cap_terms)
    try:
        return args.func(args)
    except (UsageError, HypothesisError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimitError, RetryExhaustedError, RecursionError, MemoryError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    finally:
        funcfield.set_term_cap(previous)


if __name__ == "__main__":
    sys.exit(main())

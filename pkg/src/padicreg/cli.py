"""Command line entry point: ``padicreg {gen,fit,experiment,verify}``.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
3 search budget exhausted, 4 empty locus while lifting digits.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import EmptyLocus, NotPrimeError, RestartBudgetExhausted, TrialBudgetExhausted
from .experiment import run_experiment
from .instance_io import InstanceFile, InstanceFormatError, dump, load_instance
from .modp_regress import GATES, Regime, RegressConfig, linear_regression_mod_p, regime_check
from .padic_regress import trailing_digits_regression
from .synthgen import gen_modp_instance, gen_padic_instance

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET, EXIT_EMPTY = 0, 1, 2, 3, 4


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_gen(args) -> int:
    try:
        if args.E is None:
            inst = gen_modp_instance(args.p, args.D, args.N, args.r, args.seed)
        else:
            inst = gen_padic_instance(args.p, args.D, args.E, args.N, args.r, args.seed)
    except NotPrimeError:
        return _fail("modulus is not prime", EXIT_USAGE)
    except ValueError as exc:
        return _fail(str(exc), EXIT_USAGE)
    record = InstanceFile.from_instance(inst)
    if args.out in (None, "-"):
        dump(record, sys.stdout)
    else:
        with open(args.out, "w") as fh:
            dump(record, fh)
    return EXIT_OK


def cmd_fit(args) -> int:
    try:
        inst = load_instance(args.instance)
    except (OSError, InstanceFormatError, ValueError) as exc:
        return _fail(str(exc), EXIT_USAGE)
    if regime_check(inst.p, inst.D, inst.N) is Regime.WARNING:
        print(f"warning: D={inst.D} <= 2*floor(log_{inst.p} N); the search may not terminate",
              file=sys.stderr)
    config = RegressConfig(rep=args.rep, max_restarts=args.max_restarts, seed=args.seed,
                           gate=args.gate)
    try:
        if inst.E == 1:
            c, stats = linear_regression_mod_p(inst.modp_dataset(), config)
            result = {"c": list(c.entries), "c0": stats.c0, "c1": stats.c1}
        else:
            levels = []
            c = trailing_digits_regression(inst.padic_dataset(), config, stats_out=levels)
            result = {"c": c, "c0": sum(s.c0 for s in levels), "c1": sum(s.c1 for s in levels)}
    except (RestartBudgetExhausted, TrialBudgetExhausted) as exc:
        return _fail(str(exc), EXIT_BUDGET)
    except EmptyLocus as exc:
        return _fail(str(exc), EXIT_EMPTY)
    text = json.dumps(result)
    if args.out in (None, "-"):
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.cases < 0:
        return _fail("--cases must be non-negative", EXIT_USAGE)
    try:
        report = run_experiment(p=args.p, D=args.D, N=args.N, r=args.r, rep=args.rep,
                                cases=args.cases, seed=args.seed, E=args.E,
                                max_restarts=args.max_restarts, gate=args.gate,
                                workers=args.workers)
    except NotPrimeError:
        return _fail("modulus is not prime", EXIT_USAGE)
    except ValueError as exc:
        return _fail(str(exc), EXIT_USAGE)
    text = report.to_csv() if args.format == "csv" else report.to_json() + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        inst = load_instance(args.instance)
        if args.fit == "-":
            fitted = json.load(sys.stdin)
        else:
            with open(args.fit) as fh:
                fitted = json.load(fh)
    except (OSError, InstanceFormatError, ValueError) as exc:
        return _fail(str(exc), EXIT_USAGE)
    if inst.truth is None:
        return _fail("instance file stores no truth", EXIT_USAGE)
    c = fitted["c"] if isinstance(fitted, dict) else fitted
    c = [int(v) for v in c]
    if len(c) != len(inst.truth):
        return _fail(f"expected {len(inst.truth)} coordinates, got {len(c)}", EXIT_USAGE)
    m = inst.modulus
    for d, (got, want) in enumerate(zip(c, inst.truth)):
        if (got - want) % m:
            print(f"mismatch at coordinate {d}: fitted {got % m}, truth {want % m}")
            return EXIT_MISMATCH
    print("ok")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padicreg",
                                     description="Robust linear regression mod p and over Z_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    def fit_flags(sp):
        sp.add_argument("--rep", type=int, default=3, help="consecutive failed trials allowed")
        sp.add_argument("--max-restarts", type=int, default=None)
        sp.add_argument("--gate", choices=GATES, default="hull")

    g = sub.add_parser("gen", help="write a synthetic instance as JSON lines")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--D", type=int, required=True)
    g.add_argument("--N", type=int, required=True)
    g.add_argument("--r", type=float, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--E", type=int, default=None, help="p-adic precision; omit for mod p")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("fit", help="fit an instance file and print the coefficients")
    f.add_argument("instance")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--out", default=None)
    fit_flags(f)
    f.set_defaults(func=cmd_fit)

    e = sub.add_parser("experiment", help="run a seeded battery of cases")
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--D", type=int, required=True)
    e.add_argument("--N", type=int, required=True)
    e.add_argument("--r", type=float, required=True)
    e.add_argument("--cases", type=int, default=10)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--E", type=int, default=None)
    e.add_argument("--format", choices=("csv", "json"), default="csv")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--out", default=None)
    fit_flags(e)
    e.set_defaults(func=cmd_experiment)

    v = sub.add_parser("verify", help="compare a fit result with the stored truth")
    v.add_argument("instance")
    v.add_argument("fit", help="JSON file written by `fit`, or - for stdin")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad flags already
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

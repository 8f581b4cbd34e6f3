"""Command line entry point: ``perv-pn <verb> [--n N] [--field F] ...``.

Exit status: 0 when every check passed, 1 on a violation (or an inconclusive
check without --allow-inconclusive), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import sys

from sympy import isprime

from .linalg import PrimeField, QQ
from .quiver import build_An
from .report import RENDERERS, build_report
from .suites import SUITES, run_suite

VERBS = {
    "verify-homtables": ["homtables"],
    "verify-extalgebra": ["extalgebra"],
    "verify-strings": ["strings"],
    "verify-cy": ["cy"],
    "verify-serre": ["serre"],
    "census": ["census"],
    "verify-all": list(SUITES),
}


def _field(text: str):
    s = text.strip().lower()
    if s in ("rationals", "qq", "q", "0"):
        return "rationals", QQ
    for prefix in ("prime:", "gf", "p="):
        if s.startswith(prefix):
            s = s[len(prefix):].strip("() ")
    try:
        p = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown field {text!r} (use 'rationals' or a prime)")
    if not isprime(p):
        raise argparse.ArgumentTypeError(f"{p} is not a prime")
    return f"GF({p})", PrimeField(p)


def _n(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--n expects an integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("--n must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_n, default=2, help="dimension of P^n (default 2)")
    common.add_argument("--field", type=_field, default=("rationals", QQ),
                        help="'rationals' (default) or a prime p; p > 0 runs are advisory")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized iso searches")
    common.add_argument("--format", choices=sorted(RENDERERS), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--allow-inconclusive", action="store_true",
                        help="do not fail on inconclusive isomorphism searches")
    parser = argparse.ArgumentParser(
        prog="perv-pn",
        description="Verify homological facts about Perv(P^n) as modules over A_n. "
                    "Worker threads: PERV_PN_WORKERS.")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, suites in VERBS.items():
        sub.add_parser(verb, parents=[common], help=f"run suite(s): {', '.join(suites)}")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    field_name, field = args.field
    A = build_An(args.n, field)
    reports = [run_suite(s, A, args.seed) for s in VERBS[args.verb]]
    report = build_report(reports, n=args.n, field=field_name, seed=args.seed,
                          allow_inconclusive=args.allow_inconclusive)
    text = RENDERERS[args.format](report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"{args.verb}: {report['status']} -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0 if report["status"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())

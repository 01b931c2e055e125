"""Command-line front end.

    frobsig run FILE [--e-max N] [--format json|csv|table] [--out PATH] ...
    frobsig gamma FILE --Gamma t --levels 0,1,2 --e 1
    frobsig verify [FILE ...]

Exit codes: 0 success, 1 a verification check failed, 2 invalid input or
instance rejected, 3 a budget was exhausted.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .errors import (
    DegreeBudgetExceeded,
    FrobsigError,
    ParseError,
    TooManySubspaces,
)
from .instance import Task, load_instance
from .report import render, to_json
from .runner import RunOptions, run_instance, run_task
from .verify import all_passed, corpus_paths, verify_corpus

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--e-max", type=int, dest="e_max", help="largest Frobenius exponent (default 2)")
    p.add_argument("--order", choices=("grevlex", "lex"), help="monomial order (default grevlex)")
    p.add_argument("--dim", type=int, help="override the Krull dimension")
    p.add_argument("--budget", type=int, help="candidate budget (default 10^6)")
    p.add_argument("--rank1-only", action="store_true", default=None, dest="rank1_only")
    p.add_argument("--parallel", type=int, help="worker processes for candidate evaluation")
    p.add_argument("--samples", help="comma-separated coefficient samples, e.g. 0,1,t,t+1")
    p.add_argument("--format", choices=("json", "csv", "table"), default="table", dest="fmt")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--emit-gb", action="store_true", help="print reduced Gröbner bases to stderr")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobsig",
        description="Truncated relative F-signatures of local rings over finite and function fields.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute the tasks of an instance file")
    run.add_argument("instance")
    run.add_argument("--e", type=int, help="single exponent instead of 1..e-max")
    _common(run)

    gamma = sub.add_parser("gamma", help="level-L Gamma construction report")
    gamma.add_argument("instance")
    gamma.add_argument("--Gamma", dest="gamma", default=None, help="comma-separated transcendentals")
    gamma.add_argument("--levels", default=None, help="comma-separated levels, e.g. 0,1,2")
    gamma.add_argument("--e", type=int, default=None)
    gamma.add_argument("--ideal", help="ideal name (default: the first declared)")
    _common(gamma)

    verify = sub.add_parser("verify", help="invariant suites (bundled corpus by default)")
    verify.add_argument("instances", nargs="*")
    verify.add_argument("--e", type=int, help=argparse.SUPPRESS)
    _common(verify)
    return parser


def _options(args) -> RunOptions:
    return RunOptions(
        e_max=args.e_max,
        e=getattr(args, "e", None),
        order=args.order,
        dim=args.dim,
        budget=args.budget,
        rank1_only=args.rank1_only,
        parallel=args.parallel,
        samples=args.samples,
        gamma=getattr(args, "gamma", None),
        levels=getattr(args, "levels", None),
        ideal=getattr(args, "ideal", None),
        emit_gb=sys.stderr if args.emit_gb else None,
    )


def _records(args, opts):
    if args.command == "verify":
        paths = args.instances or corpus_paths()
        return verify_corpus(paths, opts)
    inst = load_instance(args.instance)
    if args.command == "gamma":
        gamma_tasks = [t for t in inst.tasks if t.kind == "gamma"]
        if gamma_tasks:
            task = gamma_tasks[0]
        else:
            if not inst.ideals:
                raise ParseError("instance declares no ideal")
            task = Task("gamma", (inst.ideals[0][0],))
        return run_task(inst, task, opts)
    return run_instance(inst, opts)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    opts = _options(args)
    try:
        records = _records(args, opts)
    except (TooManySubspaces, DegreeBudgetExceeded) as exc:
        print(f"frobsig: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FrobsigError, ValueError, OSError) as exc:
        print(f"frobsig: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(to_json(records))
    if not args.out or args.fmt != "json":
        sys.stdout.write(render(records, args.fmt))

    if args.command == "verify" or any(r.get("task") == "verify" for r in records):
        checks = [r for r in records if r.get("task") == "verify"]
        if not all_passed(checks):
            return EXIT_CHECK_FAILED
    if any(r.get("paths_agree") is False for r in records):
        print("frobsig: the two computation paths disagree", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: verify, sweep, sharpness, fourier-test, orbit-check.  Each run
writes a versioned CSV (to --out, or stdout when omitted) and a JSON summary
(next to the CSV with a .json suffix, or stderr).  Exit status: 0 when every
checked inequality passed, 1 on any failure, 2 on configuration errors.
Reruns with the same flags and seed produce byte-identical CSV output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import FFPlanesError
from .geometry import DEFAULT_ENUM_BUDGET
from .runners import (
    RunResult,
    SweepConfig,
    run_fourier_test,
    run_orbit_check,
    run_sharpness,
    run_sweep,
    run_verify,
)


def _parse_field(text: str):
    parts = text.split(",")
    if len(parts) == 1:
        return int(parts[0]), 1
    if len(parts) == 2:
        return int(parts[0]), int(parts[1])
    raise argparse.ArgumentTypeError(f"expected p or p,k, got {text!r}")


def _parse_int_list(text: str):
    return tuple(int(x) for x in text.split(","))


def _add_common(sub, sizes=True):
    sub.add_argument(
        "--field",
        action="append",
        type=_parse_field,
        metavar="P[,K]",
        help="field as p or p,k; repeatable (default 5)",
    )
    sub.add_argument(
        "--dim", action="append", type=int, metavar="D",
        help="dimension; repeatable (default 2)",
    )
    if sizes:
        sub.add_argument(
            "--esize", action="append", type=_parse_int_list, metavar="N[,N...]",
            help="point-set sizes; repeatable or comma separated",
        )
        sub.add_argument(
            "--fsize", action="append", type=_parse_int_list, metavar="N[,N...]",
            help="plane-set sizes; repeatable or comma separated",
        )
    sub.add_argument("--trials", type=int, default=None, help="instances per size cell")
    sub.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    sub.add_argument(
        "--budget", type=int, default=DEFAULT_ENUM_BUDGET,
        help="enumeration budget for exhaustive scans",
    )
    sub.add_argument("--out", type=str, default=None, help="CSV output path")


def _flatten(groups):
    if not groups:
        return None
    return tuple(x for group in groups for x in group)


def _config(args, default_trials) -> SweepConfig:
    return SweepConfig(
        fields=tuple(args.field) if args.field else ((5, 1),),
        dims=tuple(args.dim) if args.dim else (2,),
        e_sizes=_flatten(getattr(args, "esize", None)),
        f_sizes=_flatten(getattr(args, "fsize", None)),
        trials=args.trials if args.trials is not None else default_trials,
        seed=args.seed,
        budget=args.budget,
    )


def _emit(result: RunResult, out: str | None) -> int:
    text = json.dumps(result.summary, indent=2, sort_keys=True)
    if out:
        path = Path(out)
        path.write_text(result.csv_text)
        path.with_suffix(path.suffix + ".json").write_text(text + "\n")
        print(text)
    else:
        sys.stdout.write(result.csv_text)
        print(text, file=sys.stderr)
    return result.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffplanes",
        description="Exact point-to-hyperplane distance statistics over small finite fields.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser(
        "verify",
        help="per-instance verification of every checked inequality",
    )
    _add_common(verify)
    verify.add_argument(
        "--selftest-corrupt",
        action="store_true",
        help="test mode: corrupt the distance histogram to force a failure",
    )

    sweep = commands.add_parser(
        "sweep", help="size grid crossing the |E||F| = q^(d+1) threshold"
    )
    _add_common(sweep)

    sharp = commands.add_parser(
        "sharpness", help="prime-subfield construction inside F_(p^2)^d"
    )
    sharp.add_argument("--prime", type=int, required=True, help="odd prime p")
    sharp.add_argument("--dim", type=int, default=2)
    sharp.add_argument("--budget", type=int, default=DEFAULT_ENUM_BUDGET)
    sharp.add_argument("--out", type=str, default=None)

    fourier = commands.add_parser(
        "fourier-test", help="transform identities on seeded random sets"
    )
    _add_common(fourier, sizes=False)

    orbit = commands.add_parser(
        "orbit-check", help="exhaustive rigid-motion oracle on the full configuration"
    )
    orbit.add_argument("--field", type=_parse_field, default=(3, 1), metavar="P[,K]")
    orbit.add_argument("--dim", type=int, default=2)
    orbit.add_argument("--budget", type=int, default=DEFAULT_ENUM_BUDGET)
    orbit.add_argument("--max-pairs", type=int, default=200_000)
    orbit.add_argument("--out", type=str, default=None)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            result = run_verify(_config(args, default_trials=1), corrupt=args.selftest_corrupt)
        elif args.command == "sweep":
            result = run_sweep(_config(args, default_trials=20))
        elif args.command == "sharpness":
            result = run_sharpness(args.prime, args.dim, args.budget)
        elif args.command == "fourier-test":
            result = run_fourier_test(_config(args, default_trials=50))
        else:
            p, k = args.field
            result = run_orbit_check(p, k, args.dim, args.budget, args.max_pairs)
    except FFPlanesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return _emit(result, args.out)


if __name__ == "__main__":
    sys.exit(main())

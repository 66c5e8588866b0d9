"""Command line: gen | run | verify | bench | report.

Exit codes: 0 success, 1 verification mismatch, 2 bad input or parameters.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .dpc import compute_maxima
from .fileio import (
    InstanceFormatError,
    append_rows,
    read_instance,
    read_rows,
    read_sidecar,
    write_instance,
    write_sidecar,
)
from .lab import Family, generate, naive_maxima

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_gen(args) -> int:
    inst = generate(args.family, args.n, args.h, args.d, args.seed)
    write_instance(inst.points, args.out)
    write_sidecar(args.out, bench.instance_metadata(inst))
    print(f"wrote {args.out}: family={args.family} n={inst.points.n} d={inst.points.d} "
          f"h={inst.known_maxima_size}")
    return EXIT_OK


def cmd_run(args) -> int:
    points = read_instance(args.input)
    meta = read_sidecar(args.input)
    row = bench.report_row(args.algo, points, meta, Path(args.input).stem)
    append_rows(args.report, [row])
    print(f"{args.algo}: n={row['n']} d={row['d']} h={row['h']} "
          f"queries={row['dominance_queries']} iterations={row['iterations']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    points = read_instance(args.input)
    if points.n == 0:
        raise InstanceFormatError("instance has no points")
    got, _ = compute_maxima(points)
    want = naive_maxima(points)
    got_set, want_set = got.as_set(), want.as_set()
    status = "match" if got_set == want_set else "mismatch"
    print(f"n={points.n} d={points.d} h={want.n} {status}")
    if got_set != want_set:
        diff = sorted(got_set ^ want_set)[0]
        side = "missing from" if diff in want_set else "spurious in"
        print(f"first differing point {diff} ({side} dpc output)")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_bench(args) -> int:
    seeds = list(range(args.seed, args.seed + args.seeds))
    algos = args.algos.split(",") if args.algos else None
    rows = bench.bench_rows(args.family, args.d, args.h_rule, args.n_list, seeds, algos, args.jobs)
    append_rows(args.report, rows)
    print(f"appended {len(rows)} rows to {args.report}")
    return EXIT_OK


def cmd_report(args) -> int:
    if not Path(args.report).exists():
        raise UsageError(f"no such report: {args.report}")
    print(bench.summarize(read_rows(args.report)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dpcmax", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    families = [f.value for f in Family]

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run one algorithm and append a report row")
    p.add_argument("--algo", choices=bench.ALGORITHMS, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="check dpc output against the naive baseline")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="generate and run a scaling sweep")
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--h-rule", default="sqrt", help="sqrt | log | all | <int>")
    p.add_argument("--n-list", type=_int_list, required=True)
    p.add_argument("--seeds", type=int, default=1, help="number of consecutive seeds")
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--algos", help="comma-separated subset of " + ",".join(bench.ALGORITHMS))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("report", help="summarise a report CSV")
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFormatError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

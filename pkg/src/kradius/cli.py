"""Command-line interface: construct, verify, bound, search, bench.

Exit codes: 0 success / property holds, 1 property fails, 2 usage or parse
error, 3 a construction failed its own verification.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass
from typing import Optional

from . import __version__
from .bounds import bounds, exact_search
from .builder import Q_CHOICES, STRATEGIES, construct, estimated_ratio
from .core import (
    ConstructionError,
    InvalidInput,
    format_json,
    format_text,
    parse_sequence,
    verify,
)
from .optimal2p import render

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUG = 0, 1, 2, 3
SEARCH_SIZE_LIMIT = 12


@dataclass
class BenchRow:
    n: int
    k: int
    strategy: str
    q_used: Optional[int]
    length: Optional[int]
    lower_bound: Optional[int]
    ratio: Optional[str]
    build_time: Optional[float]
    verify_time: Optional[float]
    error: str = ""


BENCH_FIELDS = list(BenchRow.__dataclass_fields__)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def _count(text: str) -> int:
    # budgets like 1e6 are convenient on the command line
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if value != int(value):
        raise argparse.ArgumentTypeError(f"not a whole number: {text!r}")
    return int(value)


def _emit(text: str, out: Optional[str]) -> None:
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    seq, plan = construct(args.n, args.k, args.strategy, args.q_choice)
    lower = bounds(args.n, args.k).lower if args.n else 0
    top = plan.trace[0] if plan.trace else None
    if args.format == "json":
        text = format_json(seq, strategy=top.strategy if top else None,
                           trace=plan.to_dict()["trace"], lower_bound=lower) + "\n"
    elif args.show_underlines and top and top.strategy == "optimal_2p" and seq.n == 2 * top.q:
        labels = render(seq, top.q)
        text = f"# n={seq.n} k={seq.k}\n" + "".join(f"{s}\n" for s in labels)
    else:
        text = format_text(seq)
    _emit(text, args.out)
    print(f"length={len(seq)} lower_bound={lower}", file=sys.stderr)
    for step in plan.trace:
        q = "" if step.q is None else f" q={step.q}"
        print(f"{'  ' * step.depth}{step.strategy} n={step.n} k={step.k}{q}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.file == "-":
        text = sys.stdin.read()
    else:
        with open(args.file) as fh:
            text = fh.read()
    seq = parse_sequence(text)
    report = verify(seq, args.k)
    if args.format == "json":
        print(json.dumps(report.to_dict()))
    else:
        print(f"n={report.n} k={report.k} length={len(seq)}")
        print(f"covered {report.covered_pairs}/{report.total_pairs} pairs")
        print("k-radius: yes" if report.is_k_radius else "k-radius: NO")
        for a, b in report.uncovered_witnesses:
            print(f"  uncovered ({a}, {b})")
        if report.truncated:
            print("  ... (witness list truncated)")
    return EXIT_OK if report.is_k_radius else EXIT_FAIL


def cmd_bound(args) -> int:
    b = bounds(args.n, args.k)
    if args.format == "json":
        print(json.dumps(b.to_dict()))
    else:
        for key, value in b.to_dict().items():
            if value is not None:
                print(f"{key}: {value}")
    return EXIT_OK


def cmd_search(args) -> int:
    if args.n > SEARCH_SIZE_LIMIT and not args.allow_long:
        print(f"search: n > {SEARCH_SIZE_LIMIT} may run for a very long time; "
              "pass --allow-long to proceed", file=sys.stderr)
        return EXIT_USAGE
    if args.budget <= 0:
        raise InvalidInput("budget must be positive")
    res = exact_search(args.n, args.k, args.budget, args.length_cap)
    if args.format == "json":
        print(json.dumps(res.to_dict()))
    else:
        print(f"n={res.n} k={res.k} status={res.status}")
        if res.best_length is not None:
            print(f"best_length: {res.best_length}")
        print(f"proven_lower: {res.proven_lower}")
        print(f"nodes: {res.nodes_explored}  elapsed: {res.elapsed:.3f}s")
        if res.witness is not None:
            print("witness: " + ",".join(map(str, res.witness.tolist())))
    return EXIT_OK


def bench_row(n: int, k: int, strategy: str, q_choice: str, check: bool = True) -> BenchRow:
    try:
        t0 = time.perf_counter()
        seq, plan = construct(n, k, strategy, q_choice, self_verify=False)
        t1 = time.perf_counter()
        ok = verify(seq).is_k_radius if check else True
        t2 = time.perf_counter()
        lower = bounds(n, k).lower
        q_used = next((s.q for s in plan.trace if s.strategy == "main_recursive"), None)
        row = BenchRow(
            n, k, strategy, q_used, len(seq), lower,
            f"{estimated_ratio(len(seq), n, k):.6f}",
            round(t1 - t0, 6), round(t2 - t1, 6) if check else None,
        )
        if not ok:
            row.error = "not k-radius"
        elif len(seq) < lower:
            row.error = "below lower bound"
        return row
    except Exception as exc:  # one bad grid point must not sink the run
        return BenchRow(n, k, strategy, None, None, None, None, None, None,
                        error=f"{type(exc).__name__}: {exc}")


def cmd_bench(args) -> int:
    writer = None
    if args.format == "csv":
        writer = csv.DictWriter(sys.stdout, fieldnames=BENCH_FIELDS, lineterminator="\n")
        writer.writeheader()
    failed = False
    for strategy in args.strategies.split(","):
        for n in args.n_list:
            row = bench_row(n, args.k, strategy.strip(), args.q_choice, not args.no_verify)
            failed |= bool(row.error)
            if writer:
                writer.writerow(asdict(row))
            else:
                print(json.dumps(asdict(row)))
            sys.stdout.flush()
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kradius", description="Build and check k-radius sequences.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a k-radius sequence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("--q-choice", choices=Q_CHOICES, default="prime")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--show-underlines", action="store_true",
                   help="for n=2p, k=2 print symbols >= p as _v")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check the k-radius property of a sequence file")
    p.add_argument("file", help="sequence file, or - for stdin")
    p.add_argument("--k", type=int, help="override the radius in the file header")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="known bounds on f_k(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("search", help="exact branch-and-bound search for f_k(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=_count, default=2_000_000, help="node budget")
    p.add_argument("--length-cap", type=int, help="only try lengths up to this")
    p.add_argument("--allow-long", action="store_true", help=f"permit n > {SEARCH_SIZE_LIMIT}")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bench", help="lengths and timings over a list of n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-list", type=_int_list, required=True)
    p.add_argument("--strategies", default="auto", help="comma-separated strategies")
    p.add_argument("--q-choice", choices=Q_CHOICES, default="prime")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConstructionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_BUG
    except (InvalidInput, ValueError, OSError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

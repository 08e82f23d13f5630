"""Command-line entry point: ``pathmin {query,verify,bench,adversary,ladders}``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 internal invariant violation (including oracle use at query time).
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import adversary
from .bench import bench_one, format_csv
from .errors import (
    EnumerationLimitError,
    LadderInvariantError,
    PathMinError,
    QueryOracleCallError,
)
from .index import preprocess
from .ladders import build_ladders
from .oracle import CountingOracle, IntWeightOracle
from .shapes import SHAPES, random_parents_with_height, random_weights, relabel
from .tree import RootedTree, format_tree, read_tree
from .verify import VerifyReport, corrupt_index, verify_tree

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


def _seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("PATHMIN_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise SystemExit(f"PATHMIN_SEED must be an integer, got {env!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(eval_size(s)) for s in text.split(",") if s]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def eval_size(s: str) -> int:
    """Accepts ``1024`` or ``2^10``."""
    s = s.strip()
    if "^" in s:
        base, exp = s.split("^", 1)
        return int(base) ** int(exp)
    return int(s)


def cmd_query(args: argparse.Namespace) -> int:
    tree, oracle = read_tree(args.tree)
    counter = CountingOracle(oracle)
    index = preprocess(tree, counter)
    snap = counter.snapshot_calls()
    out = sys.stdout
    status = EXIT_OK
    with open(args.queries, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split()
            try:
                if len(parts) != 2:
                    raise ValueError(f"expected 'v l', got {len(parts)} field(s)")
                v, l = int(parts[0]), int(parts[1])
                res = index.query(v, l)
            except (ValueError, IndexError) as exc:
                print(f"error: {args.queries}:{lineno}: {exc}", file=sys.stderr)
                status = EXIT_USAGE
                break
            if res.node is None:
                out.write("EMPTY\n")
            else:
                out.write(f"{res.node} {tree.parent_of(res.node)}\n")
    if not counter.assert_no_calls_since(snap):
        raise QueryOracleCallError("oracle used while answering queries")
    return status


def cmd_verify(args: argparse.Namespace) -> int:
    tamper = corrupt_index if args.inject_fault else None
    report = VerifyReport()
    if args.tree:
        tree, oracle = read_tree(args.tree)
        verify_tree(tree, oracle, report, tamper=tamper)
    else:
        n, h, seed, trials = args.random
        seed = _seed(seed)
        if n < 1 or not 0 <= h <= n - 1:
            print(f"error: no tree with n={n} has height {h}", file=sys.stderr)
            return EXIT_USAGE
        rng = random.Random(seed)
        for _ in range(trials):
            parents, root = relabel(random_parents_with_height(n, h, rng), 0, rng)
            tree = RootedTree.from_parents(parents, root)
            weights = random_weights(n, rng, spread=args.spread)
            verify_tree(tree, IntWeightOracle(weights), report, rng=rng, tamper=tamper)
            if not report.ok:
                break
    print(f"trees={report.trees} queries={report.queries} build_oracle_calls={report.oracle_calls} "
          f"query_oracle_calls=0")
    if report.ok:
        print("PASS")
        return EXIT_OK
    m = report.mismatches[0]
    print(f"FAIL v={m.v} l={m.l} got={m.got.node} expected={m.expected.node}")
    return EXIT_FAIL


def cmd_bench(args: argparse.Namespace) -> int:
    seed = _seed(args.seed)
    records = [bench_one(shape, n, seed, queries=args.queries)
               for shape in args.shapes for n in args.sizes]
    text = format_csv(records, timings=not args.no_timings)
    if args.csv and args.csv != "-":
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_adversary(args: argparse.Namespace) -> int:
    if args.height_two is not None:
        distinct, expected = adversary.check_height_two(args.height_two)
        print(f"subtrees={args.height_two} tables={distinct} expected={expected}")
        return EXIT_OK if distinct == expected else EXIT_FAIL
    if args.n is not None:
        X, q = adversary.parameter_choice(args.n, args.h)
    else:
        if args.x is None or args.q is None:
            print("error: give --x and --q, or --n and --h", file=sys.stderr)
            return EXIT_USAGE
        X, q = args.x, args.q
    inst = adversary.generate_instance(X, q, pad_to=args.pad_to)
    floor = adversary.info_lower_bound(X, q)
    text = format_tree(inst.tree, inst.weights.tolist(),
                       comment=f"adversarial instance X={X} q={q}")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    elif not args.check:
        sys.stdout.write(text)
    status = EXIT_OK
    if args.check:
        rep = adversary.check_distinguishability(X, q)
        print(f"vectors={rep.distinct_tables} expected={rep.expected} floor={floor}")
        status = EXIT_OK if rep.ok else EXIT_FAIL
    else:
        print(f"X={X} q={q} nodes={inst.tree.n} height={inst.tree.height} floor={floor}",
              file=sys.stderr)
    return status


def cmd_ladders(args: argparse.Namespace) -> int:
    tree, _ = read_tree(args.tree)
    sys.stdout.write(build_ladders(tree).format())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathmin",
                                     description="Leaf-to-ancestor path minimum index.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("query", help="answer 'v l' queries against a tree file")
    p.add_argument("tree")
    p.add_argument("queries")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="check the index against brute force")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--random", nargs=4, type=int, metavar=("N", "H", "SEED", "TRIALS"))
    g.add_argument("--tree")
    p.add_argument("--spread", type=int, default=None,
                   help="weights drawn from 0..SPREAD-1 (default sqrt(n), forcing ties)")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="oracle-call and latency benchmark, CSV output")
    p.add_argument("--shapes", type=lambda s: s.split(","), default=list(SHAPES))
    p.add_argument("--sizes", type=_int_list, default=[2**8, 2**10, 2**12])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--queries", type=int, default=10_000)
    p.add_argument("--csv", default="-")
    p.add_argument("--no-timings", action="store_true",
                   help="leave wall-clock columns blank so output is byte-reproducible")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("adversary", help="emit a lower-bound instance")
    p.add_argument("--x", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int, help="derive X, q from n and --h")
    p.add_argument("--h", type=int)
    p.add_argument("--check", action="store_true")
    p.add_argument("--pad-to", type=int, default=None)
    p.add_argument("--height-two", type=int, default=None, metavar="SUBTREES")
    p.add_argument("--out")
    p.set_defaults(func=cmd_adversary)

    p = sub.add_parser("ladders", help="dump the ladder decomposition of a tree file")
    p.add_argument("tree")
    p.set_defaults(func=cmd_ladders)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "shapes", None):
        bad = [s for s in args.shapes if s not in SHAPES]
        if bad:
            print(f"error: unknown shape(s) {', '.join(bad)}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except (LadderInvariantError, QueryOracleCallError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except EnumerationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PathMinError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

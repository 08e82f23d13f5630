"""Benchmark: oracle calls per n log h and query latency per tree shape."""

from __future__ import annotations

import csv
import io
import random
import statistics
import time
from dataclasses import astuple, dataclass

from .errors import QueryOracleCallError
from .index import PathMinIndex, preprocess
from .oracle import CountingOracle, IntWeightOracle
from .shapes import random_weights, shape_tree

CSV_HEADER = ("shape", "n", "h", "build_ms", "oracle_calls", "calls_per_nlogh",
              "queries", "avg_query_ns", "max_query_ns")


@dataclass
class BenchRecord:
    shape: str
    n: int
    h: int
    build_ms: float
    oracle_calls: int
    calls_per_nlogh: float
    queries: int
    avg_query_ns: float
    max_query_ns: int


def nlogh(n: int, h: int) -> int:
    return n * max(1, h.bit_length() - 1)


def random_queries(index: PathMinIndex, count: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform node, then uniform non-empty hop count (empty when the node is the root)."""
    tree = index.tree
    out = []
    for _ in range(count):
        v = rng.randrange(tree.n)
        d = tree.depth_of(v)
        out.append((v, rng.randint(1, d) if d else 0))
    return out


def time_queries(index: PathMinIndex, queries: list[tuple[int, int]]) -> list[int]:
    """Per-query wall time in nanoseconds."""
    clock = time.perf_counter_ns
    query = index.query
    out = []
    for v, l in queries:
        t0 = clock()
        query(v, l)
        out.append(clock() - t0)
    return out


def bench_one(shape: str, n: int, seed: int, queries: int = 10_000) -> BenchRecord:
    rng = random.Random(f"{seed}:{shape}:{n}")
    tree = shape_tree(shape, n, rng)
    counter = CountingOracle(IntWeightOracle(random_weights(n, rng, spread=max(2, n))))
    t0 = time.perf_counter()
    index = preprocess(tree, counter)
    build_ms = (time.perf_counter() - t0) * 1e3
    calls = counter.snapshot_calls()
    qs = random_queries(index, queries, rng)
    times = time_queries(index, qs)
    if not counter.assert_no_calls_since(calls):
        raise QueryOracleCallError(f"{shape} n={n}: oracle used during queries")
    return BenchRecord(
        shape=shape, n=n, h=tree.height, build_ms=build_ms, oracle_calls=calls,
        calls_per_nlogh=calls / nlogh(n, tree.height), queries=len(qs),
        avg_query_ns=statistics.fmean(times) if times else 0.0,
        max_query_ns=max(times, default=0),
    )


def format_csv(records: list[BenchRecord], timings: bool = True) -> str:
    """CSV text; with ``timings=False`` the wall-clock columns are left blank."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        row = list(astuple(r))
        row[3] = f"{r.build_ms:.3f}" if timings else ""
        row[5] = f"{r.calls_per_nlogh:.6f}"
        row[7] = f"{r.avg_query_ns:.1f}" if timings else ""
        row[8] = r.max_query_ns if timings else ""
        w.writerow(row)
    return buf.getvalue()

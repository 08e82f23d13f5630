"""Exit criteria for the package. Each test prints one [PASS]/[FAIL] line.

Run alone with ``pytest tests/test_acceptance.py -s``.
"""

import itertools
import math
import random
import statistics
import time

import numpy as np
import pytest

from pathmin import adversary
from pathmin.bench import format_csv, nlogh, bench_one, random_queries, time_queries
from pathmin.cli import main
from pathmin.index import preprocess
from pathmin.ladders import build_ladders, longest_path_decomposition
from pathmin.oracle import CompOrder, CountingOracle, IntWeightOracle
from pathmin.reference import BruteForceModel, brute_pre_lower
from pathmin.rmq import build_pre_lower, build_sparse_table, rmq_query
from pathmin.shapes import SHAPES, random_parents_with_height, random_weights, relabel, shape_tree
from pathmin.tree import RootedTree
from pathmin.verify import check_index

pytestmark = pytest.mark.slow

EQUIV_TREES_PER_SHAPE = 45          # 225 trees in total
EQUIV_MAX_N = 300
EQUIV_TIME_LIMIT_S = 60.0
CALL_BOUND_FACTOR = 10
CALL_SIZES = [2**8, 2**10, 2**12, 2**14, 2**16]
RATIO_GROWTH_LIMIT = 1.5
LATENCY_QUERIES = 100_000
LATENCY_SMALL, LATENCY_LARGE = 2**10, 2**20
LATENCY_RATIO_LIMIT = 3.0
LEMMA_TREES, LEMMA_MAX_N = 120, 500
RMQ_EXHAUSTIVE_MAX_LEN, RMQ_ALPHABET = 10, 3
RMQ_RANDOM_LENGTHS = [11, 17, 32, 64, 100, 128, 200, 255, 256]
ADVERSARY_PARAMS = [(2, 1), (3, 1), (2, 2), (3, 2), (4, 1)]
ADVERSARY_TIME_LIMIT_S = 120.0


def shaped_instance(shape, rng):
    n = rng.randint(1, EQUIV_MAX_N)
    if shape == "random":
        parents, root = random_parents_with_height(n, rng.randint(0, n - 1), rng), 0
    else:
        base = shape_tree(shape, n, rng)
        parents, root = base.parent.tolist(), base.root
    parents, root = relabel(parents, root, rng)
    tree = RootedTree.from_parents(parents, root)
    spread = rng.choice([1, 2, 3, max(2, int(n ** 0.5))])
    return tree, IntWeightOracle(random_weights(n, rng, spread=spread))


@pytest.fixture(scope="module")
def equivalence_instances():
    rng = random.Random(2024)
    return [shaped_instance(shape, rng) for shape in SHAPES for _ in range(EQUIV_TREES_PER_SHAPE)]


@pytest.fixture(scope="module")
def equivalence_run(equivalence_instances):
    """Criteria 1 and 2 share one pass over all instances."""
    start = time.perf_counter()
    mismatches = queries = 0
    counter_moved = []
    for tree, oracle in equivalence_instances:
        counter = CountingOracle(oracle)
        index = preprocess(tree, counter)
        snap = counter.snapshot_calls()
        model = BruteForceModel(tree, CompOrder(oracle, tree.root))
        count, bad = check_index(index, model, stop_at_first=False)
        queries += count
        mismatches += len(bad)
        if not counter.assert_no_calls_since(snap):
            counter_moved.append(counter.calls - snap)
    return {"seconds": time.perf_counter() - start, "queries": queries,
            "mismatches": mismatches, "moved": counter_moved,
            "trees": len(equivalence_instances)}


def test_c1_oracle_equivalence(equivalence_run, report_criterion):
    r = equivalence_run
    ok = r["trees"] >= 200 and r["mismatches"] == 0 and r["seconds"] < EQUIV_TIME_LIMIT_S
    assert report_criterion(
        "C1 oracle equivalence", ok,
        f"{r['trees']} trees, {r['queries']} queries, {r['mismatches']} mismatches, "
        f"{r['seconds']:.1f}s (limit {EQUIV_TIME_LIMIT_S:.0f}s)")


def test_c2_zero_query_calls(equivalence_run, rmq_exhaustive_run, report_criterion):
    moved = equivalence_run["moved"] + rmq_exhaustive_run["moved"]
    assert report_criterion("C2 zero oracle calls at query time", not moved,
                            f"{len(moved)} instance(s) with query-time calls")


def test_c3_preprocessing_call_bound(report_criterion):
    failures = []
    rows = []
    for shape in SHAPES:
        ratio = {}
        for n in CALL_SIZES:
            rec = bench_one(shape, n, seed=7, queries=0)
            bound = CALL_BOUND_FACTOR * n * (rec.h.bit_length() - 1 + 2)
            if rec.oracle_calls > bound:
                failures.append(f"{shape} n={n}: {rec.oracle_calls} > {bound}")
            ratio[n] = rec.calls_per_nlogh
        rows.append(f"{shape} {ratio[2**10]:.2f}->{ratio[2**16]:.2f}")
        if ratio[2**16] > RATIO_GROWTH_LIMIT * ratio[2**10]:
            failures.append(f"{shape}: ratio {ratio[2**16]:.3f} > 1.5 x {ratio[2**10]:.3f}")
    assert report_criterion("C3 preprocessing calls O(n log h)", not failures,
                            "; ".join(failures or rows))


def test_c4_constant_query_time(report_criterion):
    medians = {}
    for n in (LATENCY_SMALL, LATENCY_LARGE):
        rng = random.Random(n)
        tree = shape_tree("path", n)
        counter = CountingOracle(IntWeightOracle(random_weights(n, rng, spread=n)))
        index = preprocess(tree, counter)
        snap = counter.snapshot_calls()
        qs = random_queries(index, LATENCY_QUERIES, rng)
        time_queries(index, qs[:5000])  # warm-up
        medians[n] = statistics.median(time_queries(index, qs))
        assert counter.assert_no_calls_since(snap)
        del index
    ratio = medians[LATENCY_LARGE] / medians[LATENCY_SMALL]
    assert report_criterion(
        "C4 constant query time", ratio <= LATENCY_RATIO_LIMIT,
        f"median {medians[LATENCY_SMALL]:.0f}ns at 2^10, {medians[LATENCY_LARGE]:.0f}ns at 2^20, "
        f"ratio {ratio:.2f} (limit {LATENCY_RATIO_LIMIT})")


def lemma_one_violations(tree):
    """Count (x, L, y) triples whose segment [y, x] is missing from x's base ladder."""
    lpd = longest_path_decomposition(tree)
    lad = build_ladders(tree)
    par = tree._parent_list
    violations = checked = 0
    for x in range(tree.n):
        i = int(lad.base_ladder[x])
        ladder = lad.ladder(i)
        pos = lad.position(tree, x, i)
        # longest verified stretch of ancestors of x that the ladder holds contiguously
        covered, y, p = 0, x, pos
        if 0 <= p < len(ladder) and ladder[p] == x:
            while p + 1 < len(ladder) and par[y] != -1 and ladder[p + 1] == par[y]:
                y, p, covered = par[y], p + 1, covered + 1
        else:
            covered = -1
        for L in range(int(lpd.down[x]) + 1):
            reach = min(L, tree.depth_of(x))
            checked += reach + 1
            violations += max(0, reach - covered)
    return violations, checked


def test_c5_lemma_one_coverage(report_criterion):
    rng = random.Random(55)
    violations = checked = 0
    for _ in range(LEMMA_TREES):
        n = rng.randint(1, LEMMA_MAX_N)
        h = rng.choice([rng.randint(0, n - 1), min(n - 1, rng.randint(0, 20))])
        parents, root = relabel(random_parents_with_height(n, h, rng), 0, rng)
        v, c = lemma_one_violations(RootedTree.from_parents(parents, root))
        violations += v
        checked += c
    assert report_criterion("C5 Lemma 1 whole-segment coverage", violations == 0,
                            f"{LEMMA_TREES} trees, {checked} (x, L, y) triples, {violations} violations")


def check_rmq_array(A, weights, root, stats):
    w = list(weights)
    counter = CountingOracle(IntWeightOracle(w))
    comp = CompOrder(counter, root)
    table = build_sparse_table(A, comp)
    pre = build_pre_lower(A, comp)
    if pre.tolist() != brute_pre_lower(A, comp):
        stats["pre_lower_bad"] += 1
    snap = counter.snapshot_calls()
    comp_snap = comp.calls
    answers = [[rmq_query(table, pre, L, R) for R in range(L + 1, len(A) + 1)]
               for L in range(len(A))]
    if not counter.assert_no_calls_since(snap) or comp.calls != comp_snap:
        stats["moved"].append(counter.calls - snap)
    for L in range(len(A)):
        best = L
        for R in range(L + 1, len(A) + 1):
            if R - 1 != best and comp.comp(A[R - 1], A[best]):
                best = R - 1
            stats["queries"] += 1
            if answers[L][R - L - 1] != best:
                stats["bad"] += 1


@pytest.fixture(scope="module")
def rmq_exhaustive_run():
    stats = {"arrays": 0, "queries": 0, "bad": 0, "pre_lower_bad": 0, "moved": []}
    for m in range(1, RMQ_EXHAUSTIVE_MAX_LEN + 1):
        A = list(range(m))
        for w in itertools.product(range(RMQ_ALPHABET), repeat=m):
            check_rmq_array(A, list(w) + [0], m, stats)
            stats["arrays"] += 1
    rng = random.Random(66)
    for m in RMQ_RANDOM_LENGTHS:
        for _ in range(3):
            w = [rng.randrange(rng.choice([2, 3, m])) for _ in range(m + 1)]
            A = list(range(m + 1))
            rng.shuffle(A)  # includes the root id m somewhere in the array
            check_rmq_array(A, w, m, stats)
            stats["arrays"] += 1
    return stats


def test_c6_modified_rmq(rmq_exhaustive_run, report_criterion):
    s = rmq_exhaustive_run
    expected_arrays = sum(RMQ_ALPHABET ** m for m in range(1, RMQ_EXHAUSTIVE_MAX_LEN + 1))
    ok = s["bad"] == 0 and not s["moved"] and s["arrays"] >= expected_arrays
    assert report_criterion("C6 modified RMQ", ok,
                            f"{s['arrays']} arrays, {s['queries']} ranges, {s['bad']} wrong, "
                            f"{len(s['moved'])} with query-time calls")


def test_c7_pre_lower_and_lower_dist(equivalence_instances, rmq_exhaustive_run, report_criterion):
    pre_bad = rmq_exhaustive_run["pre_lower_bad"]
    dist_bad = checked = 0
    for tree, oracle in equivalence_instances:
        index = preprocess(tree, oracle)
        comp = CompOrder(oracle, tree.root)
        lad = index.ladders
        for i in range(len(lad)):
            o = int(lad.offset[i])
            local = [p - o if p >= 0 else -1
                     for p in index.pre_lower[o:o + int(lad.length[i])].tolist()]
            if local != brute_pre_lower(lad.ladder(i), comp):
                pre_bad += 1
        model = BruteForceModel(tree, comp)
        for v in range(tree.n):
            if v != tree.root:
                checked += 1
                if index.lower.distance(v) != model.brute_lower_dist(v):
                    dist_bad += 1
    assert report_criterion("C7 preLower and lowerDist vs brute force",
                            pre_bad == 0 and dist_bad == 0,
                            f"{pre_bad} preLower arrays wrong, {dist_bad}/{checked} lowerDist wrong")


def test_c8_lower_bound_family(report_criterion):
    start = time.perf_counter()
    problems = []
    details = []
    for X, q in ADVERSARY_PARAMS:
        rep = adversary.check_distinguishability(X, q)
        expected = math.factorial(X) ** q
        if not rep.ok or rep.distinct_tables != expected:
            problems.append(f"({X},{q}) {rep}")
        floor = adversary.info_lower_bound(X, q)
        least = None
        for choice in adversary.enumerate_choices(X, q):
            inst = adversary.generate_instance(X, q, choice)
            calls = preprocess(inst.tree, inst.oracle()).stats.oracle_calls
            least = calls if least is None else min(least, calls)
        if least < floor:
            problems.append(f"({X},{q}) min calls {least} < floor {floor}")
        details.append(f"({X},{q}) {rep.distinct_tables}/{expected} floor={floor} min_calls={least}")
    elapsed = time.perf_counter() - start
    if elapsed >= ADVERSARY_TIME_LIMIT_S:
        problems.append(f"took {elapsed:.1f}s")
    assert report_criterion("C8 lower-bound family", not problems,
                            "; ".join(problems or details) + f" [{elapsed:.1f}s]")


def test_c9_determinism(tmp_path, capsys, report_criterion):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        code = main(["bench", "--sizes", "256,1024", "--seed", "11", "--queries", "500",
                     "--no-timings", "--csv", str(p)])
        assert code == 0
    capsys.readouterr()
    same_csv = paths[0].read_bytes() == paths[1].read_bytes()
    rng = random.Random(99)
    digests_equal = True
    for shape in SHAPES:
        tree, oracle = shaped_instance(shape, rng)
        d1 = preprocess(tree, oracle).digest()
        d2 = preprocess(tree, IntWeightOracle(oracle.weights.copy())).digest()
        digests_equal &= d1 == d2
    assert report_criterion("C9 determinism", same_csv and digests_equal,
                            f"bench CSV identical={same_csv}, index digests identical={digests_equal}")

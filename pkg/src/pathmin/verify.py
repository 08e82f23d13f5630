"""Equivalence harness: index answers against the brute-force model."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import QueryOracleCallError
from .index import PathMinIndex, QueryResult, preprocess
from .oracle import CompOrder, CountingOracle, WeightOracle
from .reference import BruteForceModel
from .tree import RootedTree

EXHAUSTIVE_LIMIT = 300


@dataclass
class Mismatch:
    v: int
    l: int
    got: QueryResult
    expected: QueryResult


@dataclass
class VerifyReport:
    trees: int = 0
    queries: int = 0
    oracle_calls: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_index(index: PathMinIndex, model: BruteForceModel,
                sample: int | None = None, rng: random.Random | None = None,
                stop_at_first: bool = True) -> tuple[int, list[Mismatch]]:
    """Compare ``index`` to ``model`` on every (v, l) pair, or on ``sample`` random pairs."""
    tree = index.tree
    mismatches = []
    count = 0
    if sample is None:
        for v in range(tree.n):
            for l, expected in enumerate(model.prefix_minima(v)):
                got = index.query(v, l)
                count += 1
                if got != expected:
                    mismatches.append(Mismatch(v, l, got, expected))
                    if stop_at_first:
                        return count, mismatches
    else:
        rng = rng or random.Random(0)
        for _ in range(sample):
            v = rng.randrange(tree.n)
            l = rng.randint(0, tree.depth_of(v))
            got, expected = index.query(v, l), model.brute_min(v, l)
            count += 1
            if got != expected:
                mismatches.append(Mismatch(v, l, got, expected))
                if stop_at_first:
                    break
    return count, mismatches


def verify_tree(tree: RootedTree, oracle: WeightOracle, report: VerifyReport | None = None,
                sample: int | None = None, rng: random.Random | None = None,
                tamper=None) -> VerifyReport:
    """Build an index over a counted oracle and check it; any query-time call raises.

    ``tamper``, if given, is applied to the built index before checking (harness self-test).
    """
    report = report or VerifyReport()
    counter = CountingOracle(oracle)
    index = preprocess(tree, counter)
    if tamper is not None:
        tamper(index)
    # the reference gets its own comparator so only the index is metered
    model = BruteForceModel(tree, CompOrder(oracle, tree.root))
    if sample is None and tree.n > EXHAUSTIVE_LIMIT:
        sample = 20 * tree.n
    snap = counter.snapshot_calls()
    count, mismatches = check_index(index, model, sample=sample, rng=rng)
    if not counter.assert_no_calls_since(snap):
        raise QueryOracleCallError(f"{counter.calls - snap} oracle call(s) during queries")
    report.trees += 1
    report.queries += count
    report.oracle_calls += index.stats.oracle_calls
    report.mismatches.extend(mismatches)
    return report


def corrupt_index(index: PathMinIndex) -> None:
    """Overwrite one stored block minimum with a wrong node (test hook)."""
    tree = index.tree
    mb = index.lift.min_block
    for v in tree.order.tolist()[::-1]:
        if tree.depth_of(v) >= 2:
            mb[1, v] = tree.parent_of(v) if mb[1, v] == v else v
            return
    if tree.n >= 2:
        # height 1: make a level-0 block answer with a different node
        v = int(tree.order[1])
        other = int(tree.order[2]) if tree.n > 2 else tree.root
        mb[0, v] = other

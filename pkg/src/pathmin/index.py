"""Constant-time leaf-to-ancestor path minimum index.

:func:`preprocess` spends O(n log h) comparator calls; :meth:`PathMinIndex.query`
spends none. The index keeps no reference to the oracle once built.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidArgumentError, LadderInvariantError, OutOfRangeError
from .ladders import LadderDecomposition, build_ladders
from .lifting import LiftingTables, LowerAncestorData, build_lifting, compute_lower_dist
from .oracle import CompOrder, CountingOracle, WeightOracle
from .rmq import SparseTable, build_pre_lower, build_sparse_table, log_table
from .tree import RootedTree

EMPTY_KIND = "EMPTY"
MIN_KIND = "MIN"


class QueryResult(NamedTuple):
    kind: str
    node: int | None = None

    @property
    def is_empty(self) -> bool:
        return self.kind == EMPTY_KIND


EMPTY = QueryResult(EMPTY_KIND)


@dataclass
class BuildStats:
    oracle_calls: int
    comp_calls: int
    build_seconds: float


class PathMinIndex:
    """Answers ``query(v, l)``: the lowest node on ``[v, pre_l(v))``.

    The returned node ``m`` stands for the edge ``(parent(m), m)``.
    """

    def __init__(self, tree: RootedTree, lg: list[int], ladders: LadderDecomposition,
                 rmq: SparseTable, pre_lower: np.ndarray, lift: LiftingTables,
                 lower: LowerAncestorData, stats: BuildStats):
        self.tree = tree
        self.lg = lg
        self.ladders = ladders
        self.rmq = rmq
        self.pre_lower = pre_lower
        self.lift = lift
        self.lower = lower
        self.stats = stats
        self._freeze()

    def _freeze(self) -> None:
        # memoryviews index to plain ints without numpy scalar overhead
        n = self.tree.n
        self._n = n
        self._depth = memoryview(self.tree.depth)
        self._up = memoryview(self.lift.up.reshape(-1))
        self._min_block = memoryview(self.lift.min_block.reshape(-1))
        self._base = memoryview(self.ladders.base_ladder)
        self._lad_off = memoryview(self.ladders.offset)
        self._lad_len = memoryview(self.ladders.length)
        self._lad_deep = memoryview(self.ladders.deepest)
        self._flat = memoryview(self.ladders.nodes)
        m = len(self.ladders.nodes)
        self._m = m
        self._st = memoryview(np.concatenate(self.rmq.levels))
        self._pre = memoryview(self.pre_lower)
        self._lower_dist = memoryview(self.lower.lower_dist)

    def query(self, v: int, l: int) -> QueryResult:
        if not 0 <= v < self._n:
            raise InvalidArgumentError(f"unknown node {v}")
        depth = self._depth
        dv = depth[v]
        if not 0 <= l <= dv:
            raise OutOfRangeError(f"hop count {l} outside 0..{dv} for node {v}")
        if l == 0:
            return EMPTY
        n = self._n
        k = self.lg[l]
        a = self._min_block[k * n + v]
        if l == 1 << k:
            return QueryResult(MIN_KIND, a)
        p = self._up[k * n + v]
        lad = self._base[p]
        off = self._lad_off[lad]
        top = off + depth[self._lad_deep[lad]]
        L = top - depth[p]
        R = top - (dv - l)
        if R > off + self._lad_len[lad]:
            raise LadderInvariantError(f"query ({v}, {l}): segment leaves base ladder {lad} of node {p}")
        j = self.lg[R - L]
        m1 = self._st[j * self._m + L]
        m2 = self._st[j * self._m + R - (1 << j)]
        if m1 != m2 and self._pre[m2] < m1:
            m1 = m2
        b = self._flat[m1]
        if self._lower_dist[a] > depth[a] - depth[b]:
            return QueryResult(MIN_KIND, a)
        return QueryResult(MIN_KIND, b)

    def query_edge(self, v: int, l: int) -> tuple[int, int] | None:
        """The minimum as an edge ``(parent, child)``, or None for an empty path."""
        res = self.query(v, l)
        if res.node is None:
            return None
        return self.tree.parent_of(res.node), res.node

    def digest(self) -> str:
        """SHA-256 over every stored table; equal digests mean equal stored minima."""
        h = hashlib.sha256()
        for arr in (self.tree.parent, self.ladders.nodes, self.ladders.offset,
                    *self.rmq.levels, self.pre_lower, self.lift.up,
                    self.lift.min_block, self.lower.lower_dist, self.lower.lower_parent):
            a = np.ascontiguousarray(arr, dtype=np.int64)
            h.update(str(a.shape).encode())
            h.update(a.tobytes())
        return h.hexdigest()


def preprocess(tree: RootedTree, oracle: WeightOracle) -> PathMinIndex:
    """Build the index. Oracle calls are counted into ``index.stats``."""
    start = time.perf_counter()
    counter = CountingOracle(oracle)
    comp = CompOrder(counter, tree.root)
    # ladders never exceed h + 1 nodes, so this also covers every RMQ block length
    lg = log_table(tree.height + 1)
    ladders = build_ladders(tree)
    rmq = build_sparse_table(ladders.nodes, comp, starts=ladders.offset)
    pre_lower = build_pre_lower(ladders.nodes, comp, starts=ladders.offset)
    lift = build_lifting(tree, comp)
    lower = compute_lower_dist(tree, lift, comp)
    stats = BuildStats(oracle_calls=counter.calls, comp_calls=comp.calls,
                       build_seconds=time.perf_counter() - start)
    return PathMinIndex(tree, lg, ladders, rmq, pre_lower, lift, lower, stats)

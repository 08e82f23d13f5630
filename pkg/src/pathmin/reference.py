"""Brute-force ground truth. Uses only the tree's parent links and a CompOrder."""

from __future__ import annotations

import math
from typing import Iterator, Sequence

from .errors import InvalidArgumentError, OutOfRangeError
from .index import EMPTY, MIN_KIND, QueryResult
from .oracle import CompOrder
from .rmq import NO_LOWER
from .tree import RootedTree


class BruteForceModel:
    def __init__(self, tree: RootedTree, comp: CompOrder):
        self.tree = tree
        self.comp = comp

    def brute_min(self, v: int, l: int) -> QueryResult:
        tree = self.tree
        tree.check_node(v)
        if l < 0 or l > tree.depth_of(v):
            raise OutOfRangeError(f"hop count {l} outside 0..{tree.depth_of(v)} for node {v}")
        if l == 0:
            return EMPTY
        return QueryResult(MIN_KIND, self.comp.min_node(tree.half_open_path(v, l)))

    def prefix_minima(self, v: int) -> Iterator[QueryResult]:
        """``brute_min(v, l)`` for ``l = 0, 1, ..., depth(v)`` in one parent walk."""
        par = self.tree._parent_list
        comp = self.comp.comp
        yield EMPTY
        best = v
        x = v
        for _ in range(self.tree.depth_of(v)):
            if x != best and comp(x, best):
                best = x
            yield QueryResult(MIN_KIND, best)
            x = par[x]

    def brute_pre_lower(self, A: Sequence[int]) -> list[int]:
        return brute_pre_lower(A, self.comp)

    def brute_lower_dist(self, v: int) -> float:
        """Distance to the nearest strictly lower non-root ancestor, or ``math.inf``."""
        tree = self.tree
        tree.check_node(v)
        if v == tree.root:
            raise InvalidArgumentError("the root has no lower-ancestor distance")
        par = tree._parent_list
        x = par[v]
        for i in range(1, tree.depth_of(v)):
            if self.comp.comp(x, v):
                return i
            x = par[x]
        return math.inf


def brute_pre_lower(A: Sequence[int], comp: CompOrder) -> list[int]:
    """Literal O(m^2) evaluation: the largest ``j < i`` with ``A[j]`` lower than ``A[i]``."""
    A = [int(x) for x in A]
    out = []
    for i in range(len(A)):
        lower = [j for j in range(i) if comp.comp(A[j], A[i])]
        out.append(max(lower) if lower else NO_LOWER)
    return out


def brute_range_min(A: Sequence[int], comp: CompOrder, L: int, R: int) -> int:
    """Position of the lowest element of ``A[L:R]`` by scanning."""
    best = L
    for i in range(L + 1, R):
        if comp.comp(int(A[i]), int(A[best])):
            best = i
    return best

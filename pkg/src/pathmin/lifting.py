"""Binary lifting with half-open block minima, and nearest lower ancestors.

Tables are level-major arrays of shape ``(levels, n)``. Entry ``(k, v)`` is
defined only when ``depth(v) >= 2**k``; otherwise it holds -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .oracle import CompOrder
from .tree import RootedTree

UNDEFINED = -1


@dataclass(frozen=True, eq=False)
class LiftingTables:
    up: np.ndarray         # up[k, v] = pre_{2^k}(v)
    min_block: np.ndarray  # lowest node of [v, pre_{2^k}(v))

    @property
    def levels(self) -> int:
        return self.up.shape[0]


@dataclass(frozen=True, eq=False)
class LowerAncestorData:
    lower_dist: np.ndarray    # ``infinity`` when there is no lower proper ancestor
    lower_parent: np.ndarray  # UNDEFINED when lower_dist is infinite
    infinity: int             # n + 1, larger than any depth

    def distance(self, v: int) -> float:
        d = int(self.lower_dist[v])
        return math.inf if d == self.infinity else d


def lifting_levels(height: int) -> int:
    """``floor(log2 h) + 1`` levels, none for a single-node tree."""
    return height.bit_length()


def build_lifting(tree: RootedTree, comp: CompOrder) -> LiftingTables:
    n = tree.n
    levels = lifting_levels(tree.height)
    up = np.full((levels, n), UNDEFINED, dtype=np.int64)
    min_block = np.full((levels, n), UNDEFINED, dtype=np.int64)
    if levels == 0:
        return LiftingTables(up, min_block)
    depth = tree.depth
    nonroot = np.flatnonzero(depth >= 1)
    up[0, nonroot] = tree.parent[nonroot]
    min_block[0, nonroot] = nonroot
    for k in range(1, levels):
        v = np.flatnonzero(depth >= (1 << k))
        mid = up[k - 1, v]
        up[k, v] = up[k - 1, mid]
        lower = min_block[k - 1, v]
        upper = min_block[k - 1, mid]
        min_block[k, v] = np.where(comp.comp_many(lower, upper), lower, upper)
    return LiftingTables(up, min_block)


def compute_lower_dist(tree: RootedTree, lift: LiftingTables, comp: CompOrder) -> LowerAncestorData:
    """Descending-power search from each node's parent, all nodes in lockstep.

    A block is skipped when its stored minimum is not lower than the node, so
    the walk stops just below the nearest lower ancestor (or at the root).
    """
    n = tree.n
    inf = n + 1
    lower_dist = np.full(n, inf, dtype=np.int64)
    lower_parent = np.full(n, UNDEFINED, dtype=np.int64)
    depth = tree.depth
    # a depth-1 node only has the root above it, which is never lower
    v = np.flatnonzero(depth >= 2)
    x = tree.parent[v].copy()
    d = np.ones(len(v), dtype=np.int64)
    for t in range(lift.levels - 1, -1, -1):
        step = 1 << t
        sel = np.flatnonzero(depth[x] >= step)
        if len(sel) == 0:
            continue
        blocked = comp.comp_many(lift.min_block[t, x[sel]], v[sel])
        jump = sel[~blocked]
        x[jump] = lift.up[t, x[jump]]
        d[jump] += step
    cand = np.flatnonzero(x != tree.root)
    found = cand[comp.comp_many(x[cand], v[cand])]
    lower_dist[v[found]] = d[found]
    lower_parent[v[found]] = x[found]
    return LowerAncestorData(lower_dist, lower_parent, inf)

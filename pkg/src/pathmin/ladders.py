"""Longest-path decomposition and its extension into ladders.

All ladders live in one flat array. Ladder ``i`` occupies
``nodes[offset[i]:offset[i] + length[i]]`` and is stored from its deepest node
toward the root, so node ``y`` sits at position ``depth(deepest[i]) - depth(y)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tree import RootedTree


@dataclass(frozen=True, eq=False)
class LongestPathDecomposition:
    down: np.ndarray        # longest distance from each node to a leaf below it
    keep: np.ndarray        # child kept by each node, -1 for leaves
    paths: list[tuple[int, int]]  # (deepest node, vertex count)
    path_of: np.ndarray     # index into ``paths`` for each node


@dataclass(frozen=True, eq=False)
class LadderDecomposition:
    nodes: np.ndarray
    offset: np.ndarray
    length: np.ndarray
    deepest: np.ndarray
    base_ladder: np.ndarray  # ladder derived from the node's own path

    def __len__(self) -> int:
        return len(self.offset)

    def ladder(self, i: int) -> list[int]:
        o = int(self.offset[i])
        return self.nodes[o:o + int(self.length[i])].tolist()

    def position(self, tree: RootedTree, y: int, ladder: int) -> int:
        return tree.depth_of(int(self.deepest[ladder])) - tree.depth_of(y)

    def format(self) -> str:
        """One ladder per line, deepest node first."""
        return "".join(" ".join(map(str, self.ladder(i))) + "\n" for i in range(len(self)))


def longest_path_decomposition(tree: RootedTree) -> LongestPathDecomposition:
    n = tree.n
    cs = tree.child_start.tolist()
    ci = tree.child_index.tolist()
    order = tree.order.tolist()
    down = [0] * n
    keep = [-1] * n
    for v in reversed(order):
        best = -1
        # children ascend by id, so strict ">" keeps the smallest id on ties
        for j in range(cs[v], cs[v + 1]):
            c = ci[j]
            if down[c] > best:
                best = down[c]
                keep[v] = c
        if best >= 0:
            down[v] = best + 1

    par = tree._parent_list
    root = tree.root
    paths = []
    path_of = [-1] * n
    for top in order:
        if top != root and keep[par[top]] == top:
            continue
        idx = len(paths)
        v = top
        count = 1
        path_of[v] = idx
        while keep[v] != -1:
            v = keep[v]
            path_of[v] = idx
            count += 1
        paths.append((v, count))
    return LongestPathDecomposition(
        down=np.array(down, dtype=np.int64),
        keep=np.array(keep, dtype=np.int64),
        paths=paths,
        path_of=np.array(path_of, dtype=np.int64),
    )


def extend_to_ladders(lpd: LongestPathDecomposition, tree: RootedTree) -> LadderDecomposition:
    """Double each path upward, capped at the root: ``(v, l) -> (v, min(2l, depth(v)+1))``."""
    par = tree._parent_list
    dep = tree._depth_list
    flat: list[int] = []
    offset = []
    length = []
    deepest = []
    for v, count in lpd.paths:
        size = min(2 * count, dep[v] + 1)
        offset.append(len(flat))
        length.append(size)
        deepest.append(v)
        x = v
        for _ in range(size - 1):
            flat.append(x)
            x = par[x]
        flat.append(x)
    return LadderDecomposition(
        nodes=np.array(flat, dtype=np.int64),
        offset=np.array(offset, dtype=np.int64),
        length=np.array(length, dtype=np.int64),
        deepest=np.array(deepest, dtype=np.int64),
        base_ladder=lpd.path_of.copy(),
    )


def build_ladders(tree: RootedTree) -> LadderDecomposition:
    return extend_to_ladders(longest_path_decomposition(tree), tree)

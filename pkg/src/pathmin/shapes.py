"""Deterministic tree and weight generators for verification and benchmarks."""

from __future__ import annotations

import random

import numpy as np

from .errors import InvalidArgumentError
from .tree import RootedTree

SHAPES = ("path", "random", "star", "caterpillar", "binary")


def path_parents(n: int) -> list[int]:
    return [-1] + list(range(n - 1))


def star_parents(n: int) -> list[int]:
    return [-1] + [0] * (n - 1)


def caterpillar_parents(n: int) -> list[int]:
    """Spine ``0..s-1`` with ``s = ceil(n/2)``; the rest are legs on spine nodes in order."""
    s = (n + 1) // 2
    return [-1] + list(range(s - 1)) + list(range(n - s))


def binary_parents(n: int) -> list[int]:
    """Complete binary tree in heap order; height ``floor(log2 n)``."""
    return [-1] + [(i - 1) // 2 for i in range(1, n)]


def random_parents(n: int, rng: random.Random) -> list[int]:
    """Random recursive tree: node i attaches to a uniform earlier node."""
    return [-1] + [rng.randrange(i) for i in range(1, n)]


def random_parents_with_height(n: int, h: int, rng: random.Random) -> list[int]:
    """Random tree on ``n`` nodes with height exactly ``h``.

    Grafts a spine ``0..h`` first, then attaches each further node to a uniform
    earlier node whose depth is below ``h``.
    """
    if n < 1 or not 0 <= h <= n - 1:
        raise InvalidArgumentError(f"no tree with n={n} nodes has height {h}")
    if h == 0:
        return [-1]
    parents = [-1] + list(range(h))
    depth = list(range(h + 1))
    open_nodes = list(range(h))
    for i in range(h + 1, n):
        p = rng.choice(open_nodes)
        parents.append(p)
        depth.append(depth[p] + 1)
        if depth[i] < h:
            open_nodes.append(i)
    return parents


def relabel(parents: list[int], root: int, rng: random.Random) -> tuple[list[int], int]:
    """Apply a random permutation of node ids."""
    n = len(parents)
    perm = list(range(n))
    rng.shuffle(perm)
    out = [-1] * n
    for v, p in enumerate(parents):
        if p >= 0:
            out[perm[v]] = perm[p]
    return out, perm[root]


def shape_tree(shape: str, n: int, rng: random.Random | None = None) -> RootedTree:
    if n < 1:
        raise InvalidArgumentError("tree must have at least one node")
    if shape == "path":
        parents = path_parents(n)
    elif shape == "star":
        parents = star_parents(n)
    elif shape == "caterpillar":
        parents = caterpillar_parents(n)
    elif shape == "binary":
        parents = binary_parents(n)
    elif shape == "random":
        parents = random_parents(n, rng or random.Random(0))
    else:
        raise InvalidArgumentError(f"unknown shape {shape!r}; choose from {', '.join(SHAPES)}")
    return RootedTree.from_parents(parents, 0)


def random_weights(n: int, rng: random.Random, spread: int | None = None) -> np.ndarray:
    """Integer weights from ``0..spread-1``; the default spread is small enough to force ties."""
    if spread is None:
        spread = max(2, int(n ** 0.5))
    return np.array([rng.randrange(spread) for _ in range(n)], dtype=np.int64)

"""Rooted tree model, edge-list ingestion and the tree text format.

Edge weights are moved onto the child endpoint: node ``v`` carries the value
of edge ``(parent(v), v)`` and the root carries nothing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

from .errors import (
    CycleError,
    DisconnectedError,
    DuplicateEdgeError,
    InvalidArgumentError,
    NodeRangeError,
    OutOfRangeError,
    ParseError,
)
from .oracle import IntWeightOracle

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


@dataclass(frozen=True, eq=False)
class RootedTree:
    """Immutable rooted tree over dense node ids ``0..n-1``.

    ``parent[root] == -1``. Children are kept in CSR form
    (``child_index[child_start[v]:child_start[v + 1]]``) in ascending id order.
    ``order`` is a BFS order from the root, so parents precede children.
    """

    n: int
    root: int
    parent: np.ndarray
    depth: np.ndarray
    child_start: np.ndarray
    child_index: np.ndarray
    order: np.ndarray
    height: int
    _parent_list: list = field(repr=False, compare=False)
    _depth_list: list = field(repr=False, compare=False)

    @classmethod
    def from_parents(cls, parents: Iterable[int], root: int) -> "RootedTree":
        """Build from a parent array (``parents[root]`` is ignored)."""
        par = np.array(list(parents) if not isinstance(parents, np.ndarray) else parents,
                       dtype=np.int64)
        n = len(par)
        if n == 0:
            raise InvalidArgumentError("tree must have at least one node")
        if not 0 <= root < n:
            raise NodeRangeError(f"root {root} out of range 0..{n - 1}")
        par[root] = -1
        others = np.arange(n) != root
        if np.any((par[others] < 0) | (par[others] >= n)):
            raise NodeRangeError("parent id out of range")
        if np.any(par[others] == np.flatnonzero(others)):
            raise CycleError("node is its own parent")

        counts = np.bincount(par[others], minlength=n)
        child_start = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=child_start[1:])
        # stable sort on parent keeps children in ascending id order
        kids = np.flatnonzero(others)
        child_index = kids[np.argsort(par[kids], kind="stable")]

        depth = np.full(n, -1, dtype=np.int64)
        depth[root] = 0
        order = [root]
        cs = child_start.tolist()
        ci = child_index.tolist()
        dl = depth.tolist()
        head = 0
        while head < len(order):
            v = order[head]
            head += 1
            dv = dl[v] + 1
            for j in range(cs[v], cs[v + 1]):
                c = ci[j]
                dl[c] = dv
                order.append(c)
        if len(order) != n:
            # every node has exactly one parent, so unreached nodes sit on a cycle
            raise CycleError(f"{n - len(order)} node(s) unreachable from root {root}: parent links cycle")
        depth = np.array(dl, dtype=np.int64)
        return cls(
            n=n,
            root=root,
            parent=par,
            depth=depth,
            child_start=child_start,
            child_index=child_index,
            order=np.array(order, dtype=np.int64),
            height=int(depth.max()),
            _parent_list=par.tolist(),
            _depth_list=dl,
        )

    def children(self, v: int) -> list[int]:
        return self.child_index[self.child_start[v]:self.child_start[v + 1]].tolist()

    def parent_of(self, v: int) -> int:
        return self._parent_list[v]

    def depth_of(self, v: int) -> int:
        return self._depth_list[v]

    def check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidArgumentError(f"unknown node {v} (tree has {self.n} nodes)")

    def ancestor(self, v: int, i: int) -> int:
        """``pre_i(v)`` by walking parents."""
        self.check_node(v)
        if not 0 <= i <= self._depth_list[v]:
            raise OutOfRangeError(f"node {v} has no ancestor at distance {i}")
        par = self._parent_list
        for _ in range(i):
            v = par[v]
        return v

    def half_open_path(self, v: int, l: int) -> list[int]:
        """Nodes ``[v, parent(v), ..., pre_{l-1}(v)]``; the endpoint ``pre_l(v)`` is excluded."""
        self.check_node(v)
        if l < 0:
            raise InvalidArgumentError(f"hop count must be non-negative, got {l}")
        if l > self._depth_list[v]:
            raise OutOfRangeError(f"hop count {l} exceeds depth {self._depth_list[v]} of node {v}")
        par = self._parent_list
        out = []
        for _ in range(l):
            out.append(v)
            v = par[v]
        return out

    def edges(self) -> list[tuple[int, int]]:
        """``(parent, child)`` pairs in BFS order."""
        par = self._parent_list
        return [(par[c], c) for c in self.order.tolist()[1:]]


def build_tree(edges: Iterable[tuple[int, int, int]], root: int,
               n: int | None = None) -> tuple[RootedTree, IntWeightOracle]:
    """Orient an undirected weighted edge list away from ``root``.

    Returns the tree and an integer oracle where ``value(v) = w(parent(v), v)``.
    ``n`` defaults to ``len(edges) + 1``.
    """
    edges = list(edges)
    if n is None:
        n = len(edges) + 1
    if n < 1:
        raise InvalidArgumentError("tree must have at least one node")
    if not 0 <= root < n:
        raise NodeRangeError(f"root {root} out of range 0..{n - 1}")
    seen: set[tuple[int, int]] = set()
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    uf = list(range(n))

    def find(x: int) -> int:
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    for i, (u, v, w) in enumerate(edges):
        if not (0 <= u < n and 0 <= v < n):
            raise NodeRangeError(f"edge {i} ({u}, {v}): node out of range 0..{n - 1}")
        if not INT64_MIN <= w <= INT64_MAX:
            raise InvalidArgumentError(f"edge {i} weight {w} does not fit in 64 bits")
        if u == v:
            raise CycleError(f"edge {i} is a self-loop on node {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdgeError(f"edge {i} ({u}, {v}) repeats an earlier edge")
        seen.add(key)
        ru, rv = find(u), find(v)
        if ru == rv:
            raise CycleError(f"edge {i} ({u}, {v}) closes a cycle")
        uf[ru] = rv
        adj[u].append((v, w))
        adj[v].append((u, w))
    if len(edges) != n - 1:
        raise DisconnectedError(f"{n} nodes need {n - 1} edges, got {len(edges)}")

    parent = [-1] * n
    weight = [0] * n
    visited = [False] * n
    visited[root] = True
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y, w in adj[x]:
            if not visited[y]:
                visited[y] = True
                parent[y] = x
                weight[y] = w
                queue.append(y)
    if not all(visited):
        raise DisconnectedError("edges do not connect every node to the root")
    return RootedTree.from_parents(parent, root), IntWeightOracle(weight)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _ints(text: str, lineno: int, count: int) -> list[int]:
    parts = text.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} integers, got {len(parts)}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def parse_tree(stream: TextIO) -> tuple[RootedTree, IntWeightOracle]:
    """Read the ``n root`` / ``u v w`` text format."""
    header = None
    edges = []
    for lineno, raw in enumerate(stream, 1):
        text = _strip(raw)
        if not text:
            continue
        if header is None:
            header = _ints(text, lineno, 2)
            if header[0] < 1:
                raise ParseError(f"node count must be positive, got {header[0]}", lineno)
            continue
        edges.append(_ints(text, lineno, 3))
        if len(edges) > header[0] - 1:
            raise ParseError(f"more than n-1 = {header[0] - 1} edges", lineno)
    if header is None:
        raise ParseError("empty tree file")
    n, root = header
    if len(edges) != n - 1:
        raise ParseError(f"expected {n - 1} edges, got {len(edges)}")
    return build_tree([tuple(e) for e in edges], root, n=n)


def read_tree(path: str) -> tuple[RootedTree, IntWeightOracle]:
    with open(path, encoding="utf-8") as fh:
        return parse_tree(fh)


def format_tree(tree: RootedTree, weights: Iterable[int], comment: str | None = None) -> str:
    """Serialise ``tree`` with node values ``weights`` back to edge-list text."""
    w = list(weights)
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{tree.n} {tree.root}")
    lines.extend(f"{p} {c} {w[c]}" for p, c in tree.edges())
    return "\n".join(lines) + "\n"

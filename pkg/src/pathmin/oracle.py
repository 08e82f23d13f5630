"""Strict comparison oracles and the tie-broken total order built on top of them.

The index never reads weights. Everything it knows about values comes from
``WeightOracle.less`` (or its batched form ``less_many``), so wrapping an oracle
in :class:`CountingOracle` measures exactly how many comparisons a build costs.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError


class WeightOracle(ABC):
    """Answers "is value(a) strictly less than value(b)?" for non-root nodes."""

    @abstractmethod
    def less(self, a: int, b: int) -> bool:
        ...

    def less_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise ``less``; one oracle call per pair.

        Subclasses may override with a vectorised version, but must keep the
        one-call-per-pair accounting.
        """
        return np.fromiter((self.less(int(x), int(y)) for x, y in zip(a, b)),
                           dtype=bool, count=len(a))


class IntWeightOracle(WeightOracle):
    """Oracle over a concrete array of 64-bit signed integer node values.

    ``weights[root]`` exists only to keep the array dense; it is never read
    because :class:`CompOrder` answers root comparisons itself.
    """

    def __init__(self, weights: Sequence[int] | np.ndarray):
        self.weights = np.asarray(weights, dtype=np.int64)
        self._values = self.weights.tolist()

    def __len__(self) -> int:
        return len(self._values)

    def less(self, a: int, b: int) -> bool:
        return self._values[a] < self._values[b]

    def less_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.weights[a] < self.weights[b]


class CountingOracle(WeightOracle):
    """Wraps another oracle and counts every inner invocation."""

    def __init__(self, inner: WeightOracle):
        self.inner = inner
        self.calls = 0

    def less(self, a: int, b: int) -> bool:
        self.calls += 1
        return self.inner.less(a, b)

    def less_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        self.calls += len(a)
        return self.inner.less_many(a, b)

    def snapshot_calls(self) -> int:
        return self.calls

    def assert_no_calls_since(self, snapshot: int) -> bool:
        return self.calls == snapshot


class CompOrder:
    """Strict total order on the nodes of one tree.

    Values are compared through the oracle (at most two calls per evaluation),
    equal values fall back to ascending node id, and the root is larger than
    every other node without consulting the oracle.

    ``calls`` counts Comp evaluations, including root ones that cost no oracle call.
    """

    def __init__(self, oracle: WeightOracle, root: int):
        self.oracle = oracle
        self.root = root
        self.calls = 0

    def comp(self, v: int, u: int) -> bool:
        """True iff ``v`` precedes (is lower than) ``u``."""
        if v == u:
            raise InvalidArgumentError(f"comp({v}, {u}): order is strict, nodes must differ")
        self.calls += 1
        root = self.root
        if u == root:
            return True
        if v == root:
            return False
        oracle = self.oracle
        if oracle.less(v, u):
            return True
        if oracle.less(u, v):
            return False
        return v < u

    def comp_many(self, v: np.ndarray, u: np.ndarray) -> np.ndarray:
        """Elementwise ``comp`` with identical oracle-call accounting."""
        v = np.asarray(v, dtype=np.int64)
        u = np.asarray(u, dtype=np.int64)
        if v.shape != u.shape:
            raise InvalidArgumentError("comp_many: operand shapes differ")
        if np.any(v == u):
            raise InvalidArgumentError("comp_many: order is strict, nodes must differ")
        self.calls += len(v)
        out = u == self.root
        both = ~out & (v != self.root)
        if not both.any():
            return out
        idx = np.flatnonzero(both)
        a, b = v[idx], u[idx]
        first = self.oracle.less_many(a, b)
        out[idx[first]] = True
        rest = ~first
        if rest.any():
            ar, br = a[rest], b[rest]
            second = self.oracle.less_many(br, ar)
            out[idx[rest]] = ~second & (ar < br)
        return out

    def min_node(self, nodes: Sequence[int]) -> int:
        """The lowest node of a non-empty sequence, by linear scan."""
        it = iter(nodes)
        best = next(it)
        for x in it:
            if self.comp(x, best):
                best = x
        return best

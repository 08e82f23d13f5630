"""Lower-bound instance family for zero-query-cost path minimum structures.

``q`` copies of a spine ``b_1..b_X`` hang under a dummy root, spine values
strictly increasing with depth, and leaf ``l_i`` under ``b_i``. The value of
``l_i`` is placed in one of ``i`` gaps of the spine values, so each copy has
``X!`` possible nearest-smaller answer vectors and the family has ``(X!)^q``.
Any preprocessing that lets queries run without comparisons must separate all
of them, hence needs at least ``ceil(q * log2(X!))`` comparisons.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import EnumerationLimitError, InvalidArgumentError, OutOfRangeError
from .oracle import CompOrder, IntWeightOracle
from .reference import BruteForceModel
from .tree import RootedTree

ENUMERATION_LIMIT = 10**5
SPINE_STEP = 10
PAD_BASE = 10**15

WeightChoice = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class AdversarialInstance:
    X: int
    q: int
    choice: WeightChoice
    tree: RootedTree
    weights: np.ndarray
    spine: list[list[int]]   # spine[c][i-1] = b_i of copy c
    leaves: list[list[int]]  # leaves[c][i-1] = l_i of copy c

    def oracle(self) -> IntWeightOracle:
        return IntWeightOracle(self.weights)

    def all_leaves(self) -> list[int]:
        return [x for copy in self.leaves for x in copy]


def choice_count(X: int, q: int) -> int:
    return math.factorial(X) ** q


def enumerate_choices(X: int, q: int) -> Iterator[WeightChoice]:
    per_copy = list(itertools.product(*(range(i) for i in range(1, X + 1))))
    for combo in itertools.product(per_copy, repeat=q):
        yield tuple(combo)


def _check_choice(X: int, q: int, choice: Sequence[Sequence[int]]) -> WeightChoice:
    if len(choice) != q:
        raise InvalidArgumentError(f"choice has {len(choice)} copies, expected {q}")
    out = []
    for c, copy in enumerate(choice):
        if len(copy) != X:
            raise InvalidArgumentError(f"copy {c} has {len(copy)} entries, expected {X}")
        for i, j in enumerate(copy, 1):
            if not 0 <= j < i:
                raise InvalidArgumentError(f"copy {c} leaf {i}: choice {j} not in 0..{i - 1}")
        out.append(tuple(int(j) for j in copy))
    return tuple(out)


def generate_instance(X: int, q: int, choice: Sequence[Sequence[int]] | None = None,
                      pad_to: int | None = None) -> AdversarialInstance:
    """Concrete tree and weights; ``choice=None`` places every leaf below its whole spine.

    Copy ``c`` uses values offset by ``10*(X+2)*c``: ``b_i -> 10i`` and choice
    ``j`` for a leaf ``-> 10j + 5``, i.e. just above ``b_j`` (below ``b_1`` for j=0).
    ``pad_to`` adds leaves under the root with distinct huge values.
    """
    if X < 1 or q < 1:
        raise InvalidArgumentError("X and q must be positive")
    if choice is None:
        choice = [[0] * X for _ in range(q)]
    choice = _check_choice(X, q, choice)
    n = 1 + 2 * q * X
    if pad_to is not None:
        if pad_to < n:
            raise InvalidArgumentError(f"pad_to={pad_to} is below the {n} nodes the instance needs")
        total = pad_to
    else:
        total = n
    parents = [-1] * total
    weights = [0] * total
    spine, leaves = [], []
    for c in range(q):
        base = 1 + 2 * X * c
        off = SPINE_STEP * (X + 2) * c
        bs = [base + i for i in range(X)]
        ls = [base + X + i for i in range(X)]
        for i in range(X):
            parents[bs[i]] = bs[i - 1] if i else 0
            weights[bs[i]] = off + SPINE_STEP * (i + 1)
            parents[ls[i]] = bs[i]
            weights[ls[i]] = off + SPINE_STEP * choice[c][i] + SPINE_STEP // 2
        spine.append(bs)
        leaves.append(ls)
    for v in range(n, total):
        parents[v] = 0
        weights[v] = PAD_BASE + v
    tree = RootedTree.from_parents(parents, 0)
    return AdversarialInstance(X, q, choice, tree, np.array(weights, dtype=np.int64), spine, leaves)


def answer_vector(instance: AdversarialInstance) -> tuple[int | None, ...]:
    """Nearest lower ancestor of every leaf (copy-major), ``None`` when there is none."""
    tree = instance.tree
    model = BruteForceModel(tree, CompOrder(instance.oracle(), tree.root))
    out = []
    for leaf in instance.all_leaves():
        d = model.brute_lower_dist(leaf)
        out.append(None if d == math.inf else tree.ancestor(leaf, int(d)))
    return tuple(out)


def answer_table(instance: AdversarialInstance) -> tuple[tuple[int, ...], ...]:
    """Brute-force minimum for every (leaf, endpoint) query, endpoints from parent to root."""
    tree = instance.tree
    model = BruteForceModel(tree, CompOrder(instance.oracle(), tree.root))
    rows = []
    for leaf in instance.all_leaves():
        rows.append(tuple(r.node for r in itertools.islice(model.prefix_minima(leaf), 2, None)))
    return tuple(rows)


def recover_nearest_smaller(query: Callable[[int, int], int], tree: RootedTree,
                            leaf: int) -> int | None:
    """Nearest lower ancestor of ``leaf`` using only minimum queries.

    Raises the endpoint from ``parent(leaf)``; the first answer other than the
    leaf itself is that ancestor.
    """
    for l in range(2, tree.depth_of(leaf) + 1):
        m = query(leaf, l)
        if m != leaf:
            return m
    return None


@dataclass(frozen=True)
class DistinguishabilityReport:
    vectors: int
    distinct_tables: int
    distinct_answer_vectors: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.vectors == self.distinct_tables == self.distinct_answer_vectors == self.expected


def check_distinguishability(X: int, q: int,
                             limit: int = ENUMERATION_LIMIT) -> DistinguishabilityReport:
    expected = choice_count(X, q)
    if expected > limit:
        raise EnumerationLimitError(f"(X!)^q = {expected} exceeds enumeration limit {limit}")
    tables = set()
    vectors = set()
    count = 0
    for choice in enumerate_choices(X, q):
        inst = generate_instance(X, q, choice)
        tables.add(answer_table(inst))
        vectors.add(answer_vector(inst))
        count += 1
    return DistinguishabilityReport(count, len(tables), len(vectors), expected)


def info_lower_bound(X: int, q: int) -> int:
    """Smallest K with ``2**K >= (X!)**q``, i.e. ``ceil(q * log2(X!))`` exactly."""
    if X < 1 or q < 1:
        raise InvalidArgumentError("X and q must be positive")
    return (choice_count(X, q) - 1).bit_length()


def parameter_choice(n: int, h: int) -> tuple[int, int]:
    """``X = floor(min(h/2, n/4))``, ``q = floor((n-1) / 2X)`` for ``8 <= h <= n``."""
    if not 8 <= h <= n:
        raise OutOfRangeError(f"need 8 <= h <= n, got n={n}, h={h}; use the height-two family below 8")
    X = min(h // 2, n // 4)
    q = (n - 1) // (2 * X)
    return X, q


# -- height-two family, for 2 <= h < 8 ---------------------------------------

def generate_height_two(bits: Sequence[int]) -> tuple[RootedTree, np.ndarray]:
    """Subtrees ``r - b_t - l_t``; bit 0 puts ``l_t`` below ``b_t``, bit 1 above."""
    s = len(bits)
    parents = [-1] * (1 + 2 * s)
    weights = [0] * (1 + 2 * s)
    for t, bit in enumerate(bits):
        if bit not in (0, 1):
            raise InvalidArgumentError(f"bit {t} must be 0 or 1, got {bit}")
        b, leaf = 1 + 2 * t, 2 + 2 * t
        parents[b] = 0
        parents[leaf] = b
        weights[b] = SPINE_STEP * t + 5
        weights[leaf] = SPINE_STEP * t + (8 if bit else 2)
    return RootedTree.from_parents(parents, 0), np.array(weights, dtype=np.int64)


def check_height_two(s: int, limit: int = ENUMERATION_LIMIT) -> tuple[int, int]:
    """Returns (distinct answer tables, 2**s)."""
    if 2**s > limit:
        raise EnumerationLimitError(f"2^{s} exceeds enumeration limit {limit}")
    tables = set()
    for bits in itertools.product((0, 1), repeat=s):
        tree, w = generate_height_two(bits)
        model = BruteForceModel(tree, CompOrder(IntWeightOracle(w), 0))
        tables.add(tuple(model.brute_min(2 + 2 * t, 2).node for t in range(s)))
    return len(tables), 2**s

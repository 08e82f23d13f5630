"""Sparse-table range minimum whose queries never compare values.

Every choice between two candidate positions is made at build time through
:class:`CompOrder`. The last choice a query would normally make, between the
two overlapping blocks, is resolved with ``pre_lower``: the nearest earlier
position holding a strictly lower element.

A table may hold several independent arrays back to back (``starts`` gives
their first positions); blocks never cross a boundary. Positions stored in
the table and in ``pre_lower`` are global positions into the flat array.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, OutOfRangeError
from .oracle import CompOrder

NO_LOWER = -1


def log_table(size: int) -> list[int]:
    """``lg[i] = floor(log2 i)`` for ``1 <= i <= size``; ``lg[0]`` is a placeholder 0."""
    lg = [0] * (max(size, 1) + 1)
    for i in range(2, size + 1):
        lg[i] = lg[i >> 1] + 1
    return lg


@dataclass(frozen=True, eq=False)
class SparseTable:
    """``levels[k][i]`` is the position of the minimum of ``[i, i + 2**k)``, or -1
    where that block runs past the end of its segment."""

    array: np.ndarray
    levels: list[np.ndarray]
    segment_end: np.ndarray
    lg: list[int]

    def __len__(self) -> int:
        return len(self.array)


def _segment_ends(m: int, starts: Sequence[int] | None) -> np.ndarray:
    if starts is None:
        return np.full(m, m, dtype=np.int64)
    starts = np.asarray(starts, dtype=np.int64)
    bounds = np.append(starts, m)
    if len(starts) == 0 or starts[0] != 0 or np.any(np.diff(bounds) <= 0):
        raise InvalidArgumentError("segment starts must begin at 0 and strictly increase")
    return np.repeat(bounds[1:], np.diff(bounds))


def build_sparse_table(A: Sequence[int] | np.ndarray, comp: CompOrder,
                       starts: Sequence[int] | None = None) -> SparseTable:
    """Fill the table bottom-up; each level costs one comp per valid block."""
    arr = np.asarray(A, dtype=np.int64)
    m = len(arr)
    if m == 0:
        raise InvalidArgumentError("cannot build a sparse table over an empty array")
    seg_end = _segment_ends(m, starts)
    longest = int(np.max(seg_end - np.arange(m)))
    positions = np.arange(m, dtype=np.int64)
    levels = [positions]
    k = 1
    while (1 << k) <= longest:
        half = 1 << (k - 1)
        prev = levels[-1]
        cur = np.full(m, -1, dtype=np.int64)
        idx = np.flatnonzero(positions + (1 << k) <= seg_end)
        left = prev[idx]
        right = prev[idx + half]
        take_left = comp.comp_many(arr[left], arr[right])
        cur[idx] = np.where(take_left, left, right)
        levels.append(cur)
        k += 1
    return SparseTable(array=arr, levels=levels, segment_end=seg_end, lg=log_table(longest))


def build_pre_lower(A: Sequence[int] | np.ndarray, comp: CompOrder,
                    starts: Sequence[int] | None = None) -> np.ndarray:
    """Monotone-stack scan; at most ``2m`` comp calls."""
    arr = np.asarray(A, dtype=np.int64)
    m = len(arr)
    seg_end = _segment_ends(m, starts).tolist() if m else []
    values = arr.tolist()
    out = [NO_LOWER] * m
    cmp = comp.comp
    stack: list[int] = []
    end = 0
    for i in range(m):
        if i == end:
            stack.clear()
            end = seg_end[i]
        x = values[i]
        while stack and cmp(x, values[stack[-1]]):
            stack.pop()
        if stack:
            out[i] = stack[-1]
        stack.append(i)
    return np.array(out, dtype=np.int64)


def rmq_query(table: SparseTable, pre_lower: np.ndarray, L: int, R: int) -> int:
    """Position of the minimum of ``[L, R)``. Makes no comparisons of values."""
    if L >= R:
        raise InvalidArgumentError(f"empty range [{L}, {R})")
    if L < 0 or R > table.segment_end[L]:
        raise OutOfRangeError(f"range [{L}, {R}) leaves its segment")
    k = table.lg[R - L]
    level = table.levels[k]
    m1 = int(level[L])
    m2 = int(level[R - (1 << k)])
    if m1 == m2:
        return m1
    if pre_lower[m2] < m1:
        return m2
    return m1

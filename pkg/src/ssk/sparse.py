"""Exact SSK via match lists and a 1-D range-sum tree.

Instead of filling full DP tables, each level sweeps the rows of a match
list in increasing i, asking the tree for the prefix sum over columns
j' < j before inserting the row's own entries; that ordering enforces the
strict (i' < i, j' < j) dominance of the suffix recursion.  List values
carry the dummy gap weight lambda**(m-i+n-j) so the recursion needs no
per-step rescaling; the kernel is recovered at the end by multiplying
each value by lambda**(i+j-m-n).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._engines import sparse_kernel
from .core import KernelParams, KernelVector, SymbolSeq, build_match_list
from .hdr import HdrScalar, ZERO, _raw


class RangeSumTree:
    """Static-capacity tree over keys 1..n: point update, prefix sum.

    Laid out implicitly in an array: the node keyed j at depth d holds the
    sum of inserted values with keys in [j - 2**(h-d) + 1, j], the root is
    keyed 2**h, left/right children sit half a span below/above their
    parent, odd keys are the leaves.  Updates climb to ancestors above the
    key, prefix sums collect the node and its ancestors below it; both are
    O(log n).
    """

    __slots__ = ("capacity", "size", "height", "_values")

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        size = 1
        height = 0
        while size < capacity:
            size *= 2
            height += 1
        self.capacity = capacity
        self.size = size
        self.height = height
        self._values = [ZERO] * (size + 1)

    def update(self, key: int, value: HdrScalar) -> None:
        """Add value at key; all nodes whose span contains key absorb it."""
        if not (1 <= key <= self.capacity):
            raise KeyError(f"key {key} outside 1..{self.capacity}")
        if value.is_zero:
            return
        j = key
        while j <= self.size:
            self._values[j] = self._values[j] + value
            j += j & (-j)

    def prefix_sum(self, key: int) -> HdrScalar:
        """Sum of all inserted values with keys in [1, key]; key 0 gives 0."""
        if key < 0 or key > self.size:
            raise KeyError(f"key {key} outside 0..{self.size}")
        acc = ZERO
        j = key
        while j > 0:
            acc = acc + self._values[j]
            j -= j & (-j)
        return acc

    def node_value(self, key: int) -> HdrScalar:
        """Stored sum at the node keyed ``key`` (test introspection)."""
        return self._values[key]


@dataclass
class LevelMatchLists:
    """Per-row lists L_q(i) of (j, dummy-weighted suffix value)."""

    level: int
    rows: dict[int, list[tuple[int, HdrScalar]]] = field(default_factory=dict)

    def row(self, i: int) -> list[tuple[int, HdrScalar]]:
        return self.rows.get(i, [])

    def total_size(self) -> int:
        return sum(len(r) for r in self.rows.values())


def sparse_ssk(s: SymbolSeq, t: SymbolSeq, params: KernelParams) -> KernelVector:
    """Exact K_1..K_p(s, t) in O(p * |L| * log |t|) after list construction."""
    matches = build_match_list(s, t, params.lam)
    k_m, k_e = sparse_kernel(matches.i, matches.j, len(s), len(t),
                             params.p, params.lam)
    return KernelVector([_raw(float(m), int(e)) for m, e in zip(k_m, k_e)])


def sparse_level_lists(s: SymbolSeq, t: SymbolSeq,
                       params: KernelParams) -> list[LevelMatchLists]:
    """Pure-Python sweep that returns L_1..L_p (small inputs, tests).

    Independent of the njit engine: drives :class:`RangeSumTree` with
    HdrScalar values directly.
    """
    m, n = len(s), len(t)
    matches = build_match_list(s, t, params.lam)
    lam_mn = HdrScalar.from_lambda_power(params.lam, m + n)

    level1 = LevelMatchLists(level=1)
    for (i, j), tilde in matches.entries():
        # bar value = lambda**(m+n) * tilde value
        level1.rows.setdefault(i, []).append((j, lam_mn * tilde))
    levels = [level1]

    for q in range(2, params.p + 1):
        prev = levels[-1]
        nxt = LevelMatchLists(level=q)
        if n >= 1:
            tree = RangeSumTree(n)
            for i in sorted(prev.rows):
                for j, _v in prev.rows[i]:
                    total = tree.prefix_sum(j - 1)
                    if total:
                        nxt.rows.setdefault(i, []).append((j, total))
                for j, v in prev.rows[i]:
                    tree.update(j, v)
        levels.append(nxt)
    return levels


def level_lists_to_kernel(levels: list[LevelMatchLists], m: int, n: int,
                          lam: float) -> KernelVector:
    """Fold each level's list into K_q by discarding the dummy weight."""
    values = []
    for lvl in levels:
        total = ZERO
        for i, row in lvl.rows.items():
            for j, v in row:
                total = total + v * HdrScalar.from_lambda_power(lam, i + j - m - n)
        values.append(total)
    return KernelVector(values) if values else KernelVector([ZERO])

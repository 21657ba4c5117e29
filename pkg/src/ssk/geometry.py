"""Static 2-D layered range sum tree over composite-number keys.

Coordinates are pairs (primary | tiebreak) under lexicographic order, so
every point gets distinct keys in both dimensions and queries carry
+-infinity tiebreak sentinels.  The tree answers orthogonal range sums in
O(log n): one pair of binary searches at the split node, then O(1) per
canonical node through the fractional-cascading left-count array (the
small/large pointer accessors below expose the classic pointer view of
that array).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import _lrst
from .hdr import HdrScalar, ZERO, _raw

# finite coordinates must fit under the encoding shift with room for sentinels
COORD_BOUND = 2 ** 30 - 1
_SHIFT = 2 ** 31
_LO_SENTINEL = -(2 ** 30)
_HI_SENTINEL = 2 ** 30
_EXP_BOUND = 2 ** 60  # weight exponents must stay summable in the int64 store


class CompositeKey(NamedTuple):
    """Lexicographically ordered (primary | tiebreak) coordinate."""

    primary: int
    tiebreak: float  # int for points; +-math.inf allowed in queries

    def __repr__(self):
        return f"({self.primary}|{self.tiebreak})"


def _encode_point_key(key: CompositeKey) -> int:
    p, t = key.primary, key.tiebreak
    if not (-COORD_BOUND <= p <= COORD_BOUND):
        raise ValueError(f"primary coordinate {p} out of range +-{COORD_BOUND}")
    if math.isinf(t) or t != int(t):
        raise ValueError(f"point tiebreak must be a finite integer, got {t}")
    t = int(t)
    if not (-COORD_BOUND <= t <= COORD_BOUND):
        raise ValueError(f"tiebreak coordinate {t} out of range +-{COORD_BOUND}")
    return p * _SHIFT + t


def _encode_query_key(key: CompositeKey) -> int:
    p = key.primary
    if p > COORD_BOUND:
        p, t = COORD_BOUND, _HI_SENTINEL
    elif p < -COORD_BOUND:
        p, t = -COORD_BOUND, _LO_SENTINEL
    else:
        t = key.tiebreak
        if t == math.inf:
            t = _HI_SENTINEL
        elif t == -math.inf:
            t = _LO_SENTINEL
        else:
            t = max(_LO_SENTINEL, min(_HI_SENTINEL, int(t)))
    return p * _SHIFT + t


@dataclass(frozen=True)
class WeightedPoint:
    x: CompositeKey
    y: CompositeKey
    weight: HdrScalar

    @classmethod
    def from_match(cls, i: int, j: int, weight: HdrScalar) -> "WeightedPoint":
        """Match-pair point: x = (i|j), y = (j|i) keeps all keys distinct."""
        return cls(x=CompositeKey(i, j), y=CompositeKey(j, i), weight=weight)


@dataclass(frozen=True)
class RangeQuery2D:
    x_lo: CompositeKey
    x_hi: CompositeKey
    y_lo: CompositeKey
    y_hi: CompositeKey

    def __post_init__(self):
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise ValueError("query bounds must satisfy lo <= hi in each dimension")

    @classmethod
    def box(cls, x1: int, x2: int, y1: int, y2: int) -> "RangeQuery2D":
        """[(x1|-inf):(x2|+inf)] x [(y1|-inf):(y2|+inf)]."""
        return cls(
            x_lo=CompositeKey(x1, -math.inf),
            x_hi=CompositeKey(x2, math.inf),
            y_lo=CompositeKey(y1, -math.inf),
            y_hi=CompositeKey(y2, math.inf),
        )

    @classmethod
    def dominance(cls, i: int, j: int) -> "RangeQuery2D":
        """All points strictly below (i, j) in both coordinates."""
        return cls.box(0, i - 1, 0, j - 1)


class LayeredRangeSumTree:
    """Immutable after build; O(n log n) storage, O(log n) range sums."""

    def __init__(self, points: Sequence[WeightedPoint], include_points: bool = True):
        pts = list(points)
        self.size = len(pts)
        self._points: list[WeightedPoint] = []
        self._arrays = None
        if not pts:
            return
        xenc = np.empty(self.size, np.int64)
        yenc = np.empty(self.size, np.int64)
        w_m = np.empty(self.size, np.float64)
        w_e = np.empty(self.size, np.int64)
        for k, pt in enumerate(pts):
            xenc[k] = _encode_point_key(pt.x)
            yenc[k] = _encode_point_key(pt.y)
            if pt.weight.mantissa < 0:
                raise ValueError("weights must be nonnegative")
            if abs(pt.weight.exponent) > _EXP_BOUND:
                raise ValueError("weight exponent exceeds the engine bound 2**30")
            w_m[k] = pt.weight.mantissa
            w_e[k] = pt.weight.exponent
        order = np.argsort(xenc, kind="stable")
        xenc = xenc[order]
        if np.any(xenc[1:] == xenc[:-1]):
            raise ValueError("duplicate composite x-keys")
        yenc = yenc[order]
        if np.unique(yenc).size != self.size:
            raise ValueError("duplicate composite y-keys")
        self._points = [pts[int(k)] for k in order]
        self._arrays = _lrst.build_tree(xenc, yenc, w_m[order], w_e[order],
                                        include_points)
        self._xenc = xenc
        self._yenc = yenc
        self._w_m = w_m[order]
        self._w_e = w_e[order]

    # -- queries ---------------------------------------------------------

    def range_sum(self, query: RangeQuery2D) -> HdrScalar:
        return self.range_sum_with_stats(query)[0]

    def range_sum_with_stats(self, query: RangeQuery2D) -> tuple[HdrScalar, int]:
        """(sum of weights inside the box, number of nodes touched)."""
        if self._arrays is None:
            return ZERO, 0
        xlo, xhi, ylo, yhi = self._encode_query(query)
        m, e, touched = _lrst.range_sum(*self._arrays[:8],
                                        self._arrays[9], self._arrays[10],
                                        self._xenc, self._yenc,
                                        self._w_m, self._w_e,
                                        xlo, xhi, ylo, yhi)
        return _raw(float(m), int(e)), int(touched)

    def range_report(self, query: RangeQuery2D) -> list[WeightedPoint]:
        """Exactly the points inside the box, via the same traversal."""
        if self._arrays is None:
            return []
        (node_left, node_right, node_lo, node_hi, node_split,
         node_off, a_ykey, a_cnt, a_pt, _pm, _pe) = self._arrays
        if a_pt.size == 0:
            raise ValueError("tree was built with include_points=False")
        xlo, xhi, ylo, yhi = self._encode_query(query)
        out: list[int] = []

        def leaf_check(v):
            leaf = int(node_lo[v])
            if (xlo <= self._xenc[leaf] <= xhi
                    and ylo <= self._yenc[leaf] <= yhi):
                out.append(leaf)

        v = 0
        while node_left[v] != -1:
            split = int(node_split[v])
            if xhi <= split:
                v = int(node_left[v])
            elif xlo > split:
                v = int(node_right[v])
            else:
                break
        if node_left[v] == -1:
            leaf_check(v)
            return [self._points[k] for k in out]

        off = int(node_off[v])
        size = int(node_hi[v] - node_lo[v])
        block = a_ykey[off:off + size]
        b1 = int(np.searchsorted(block, ylo, side="left"))
        b2 = int(np.searchsorted(block, yhi, side="right"))
        coff = off + v

        def emit(node, lo_cnt, hi_cnt):
            o = int(node_off[node])
            out.extend(int(p) for p in a_pt[o + lo_cnt:o + hi_cnt])

        for going_left in (True, False):
            child = int(node_left[v]) if going_left else int(node_right[v])
            if going_left:
                c1, c2 = int(a_cnt[coff + b1]), int(a_cnt[coff + b2])
            else:
                c1 = b1 - int(a_cnt[coff + b1])
                c2 = b2 - int(a_cnt[coff + b2])
            while node_left[child] != -1:
                ccoff = int(node_off[child]) + child
                lcnt1, lcnt2 = int(a_cnt[ccoff + c1]), int(a_cnt[ccoff + c2])
                split = int(node_split[child])
                if going_left:
                    if xlo <= split:
                        emit(int(node_right[child]), c1 - lcnt1, c2 - lcnt2)
                        c1, c2 = lcnt1, lcnt2
                        child = int(node_left[child])
                    else:
                        c1, c2 = c1 - lcnt1, c2 - lcnt2
                        child = int(node_right[child])
                else:
                    if xhi > split:
                        emit(int(node_left[child]), lcnt1, lcnt2)
                        c1, c2 = c1 - lcnt1, c2 - lcnt2
                        child = int(node_right[child])
                    else:
                        c1, c2 = lcnt1, lcnt2
                        child = int(node_left[child])
            leaf_check(child)
        return [self._points[k] for k in out]

    def _encode_query(self, query: RangeQuery2D):
        return (_encode_query_key(query.x_lo), _encode_query_key(query.x_hi),
                _encode_query_key(query.y_lo), _encode_query_key(query.y_hi))

    # -- structure introspection (invariant walkers live on these) -------

    @property
    def node_count(self) -> int:
        return 0 if self._arrays is None else int(self._arrays[0].size)

    def node_children(self, v: int) -> tuple[int, int]:
        """(left, right), -1 for a leaf."""
        return int(self._arrays[0][v]), int(self._arrays[1][v])

    def node_leaf_span(self, v: int) -> tuple[int, int]:
        """[lo, hi) range of x-sorted point ranks under node v."""
        return int(self._arrays[2][v]), int(self._arrays[3][v])

    def node_points(self, v: int) -> list[WeightedPoint]:
        lo, hi = self.node_leaf_span(v)
        return self._points[lo:hi]

    def assoc_keys(self, v: int) -> list[int]:
        """Encoded y-keys of node v's associated array, ascending."""
        off = int(self._arrays[5][v])
        size = self._node_size(v)
        return [int(k) for k in self._arrays[6][off:off + size]]

    def assoc_prefix_sums(self, v: int) -> list[HdrScalar]:
        """Running prefix sums, one leading zero slot then one per entry."""
        poff = int(self._arrays[5][v]) + v
        size = self._node_size(v)
        pm = self._arrays[9][poff:poff + size + 1]
        pe = self._arrays[10][poff:poff + size + 1]
        return [_raw(float(m), int(e)) for m, e in zip(pm, pe)]

    def small_pointer(self, v: int, slot: int, side: str) -> int | None:
        """Child slot with the smallest y-key >= this slot's key, else None."""
        child, csize = self._child(v, side)
        cnt = self._cnt(v, slot)
        idx = cnt if side == "left" else slot - cnt
        return idx if idx < csize else None

    def large_pointer(self, v: int, slot: int, side: str) -> int | None:
        """Child slot with the largest y-key <= this slot's key, else None."""
        child, csize = self._child(v, side)
        cnt = self._cnt(v, slot + 1)
        idx = (cnt if side == "left" else slot + 1 - cnt) - 1
        return idx if idx >= 0 else None

    def _node_size(self, v: int) -> int:
        return int(self._arrays[3][v] - self._arrays[2][v])

    def _child(self, v: int, side: str) -> tuple[int, int]:
        child = int(self._arrays[0][v] if side == "left" else self._arrays[1][v])
        if child < 0:
            raise ValueError(f"node {v} is a leaf")
        return child, self._node_size(child)

    def _cnt(self, v: int, c: int) -> int:
        coff = int(self._arrays[5][v]) + v
        return int(self._arrays[7][coff + c])

    def encoded_y(self, v: int) -> np.ndarray:
        off = int(self._arrays[5][v])
        return self._arrays[6][off:off + self._node_size(v)]


def tilde_match_points(match_list) -> list[WeightedPoint]:
    """Lift a MatchList into weighted points for the tree."""
    return [WeightedPoint.from_match(i, j, v) for (i, j), v in match_list.entries()]

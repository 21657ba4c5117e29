"""Approximate SSK by depth-first expansion of co-occurring subsequences.

The trie of common subsequences is never materialized: the recursion
carries, per string, alive lists A(u, g) mapping gap count g <= g_max to
a multiset of last-match indices.  Extending u by a symbol c consumes
each alive index at strictly later occurrences of c, adding the skipped
distance to the gap count.  With all gap counts admitted the result
equals the exact kernel; capping them trades accuracy for the
O(C(p + g_max, g_max) * (|s| + |t|)) bound.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass, field

from .core import KernelParams, KernelVector, SymbolSeq, build_occurrence_index
from .hdr import HdrScalar, ZERO

GapLists = dict[int, Counter]


@dataclass
class AliveLists:
    """A(u, g) for one subsequence u: gap count -> {last index: multiplicity}."""

    s_lists: GapLists = field(default_factory=dict)
    t_lists: GapLists = field(default_factory=dict)


def _level1(occ: list, c: int) -> GapLists:
    positions = occ[c]
    if positions.size == 0:
        return {}
    return {0: Counter(int(p) for p in positions)}


def _extend(lists: GapLists, occ: list, c: int, g_max: int) -> GapLists:
    """Alive lists of u + c from those of u."""
    positions = occ[c]
    out: GapLists = {}
    if positions.size == 0:
        return out
    pos = positions.tolist()
    for g, counter in lists.items():
        budget = g_max - g
        for last, mult in counter.items():
            lo = bisect_right(pos, last)
            hi = bisect_right(pos, last + budget + 1)
            for nxt in pos[lo:hi]:
                g2 = g + (nxt - last - 1)
                bucket = out.get(g2)
                if bucket is None:
                    bucket = out[g2] = Counter()
                bucket[nxt] += mult
    return out


def _gap_weight(lists: GapLists, depth: int, lam: float) -> HdrScalar:
    """sum over g of lambda**(g + depth) * |A(u, g)|."""
    total = ZERO
    for g, counter in lists.items():
        size = sum(counter.values())
        total = total + (HdrScalar.from_lambda_power(lam, g + depth)
                         * HdrScalar.from_float(float(size)))
    return total


def _min_alive(lists: GapLists) -> int:
    return min(min(counter) for counter in lists.values())


def trie_ssk(s: SymbolSeq, t: SymbolSeq, params: KernelParams,
             g_max: int = 10) -> KernelVector:
    """Gap-capped K_1..K_p; exact at level q once g_max >= max(|s|,|t|) - q."""
    if g_max < 0:
        raise ValueError("g_max must be >= 0")
    p, lam = params.p, params.lam
    totals = [ZERO] * p
    if len(s) == 0 or len(t) == 0:
        return KernelVector(totals)
    size = max(s.alphabet_size, t.alphabet_size)
    occ_s = build_occurrence_index(s, size)
    occ_t = build_occurrence_index(t, size)

    def candidates(after_s: int, after_t: int) -> list[int]:
        out = []
        for c in range(size):
            ps, pt = occ_s[c], occ_t[c]
            if ps.size and pt.size and ps[-1] > after_s and pt[-1] > after_t:
                out.append(c)
        return out

    def visit(depth: int, ls: GapLists, lt: GapLists):
        totals[depth - 1] = totals[depth - 1] + (
            _gap_weight(ls, depth, lam) * _gap_weight(lt, depth, lam))
        if depth == p:
            return
        for c in candidates(_min_alive(ls), _min_alive(lt)):
            ls2 = _extend(ls, occ_s, c, g_max)
            if not ls2:
                continue
            lt2 = _extend(lt, occ_t, c, g_max)
            if lt2:
                visit(depth + 1, ls2, lt2)

    for c in range(size):
        if occ_s[c].size and occ_t[c].size:
            visit(1, _level1(occ_s, c), _level1(occ_t, c))
    return KernelVector(totals)


def alive_lists_snapshot(s: SymbolSeq, t: SymbolSeq, u: list[int] | tuple[int, ...],
                         g_max: int) -> AliveLists:
    """A_s(u, g) and A_t(u, g) for all g <= g_max."""
    if len(u) < 1:
        raise ValueError("u must have at least one symbol")
    size = max(s.alphabet_size, t.alphabet_size)
    occ_s = build_occurrence_index(s, size)
    occ_t = build_occurrence_index(t, size)
    ls = _level1(occ_s, u[0])
    lt = _level1(occ_t, u[0])
    for c in u[1:]:
        ls = _extend(ls, occ_s, c, g_max) if ls else {}
        lt = _extend(lt, occ_t, c, g_max) if lt else {}
    return AliveLists(s_lists=ls, t_lists=lt)

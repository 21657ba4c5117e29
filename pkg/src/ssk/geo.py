"""Exact SSK via layered-range-sum-tree queries over tilde-scaled match lists.

Level 1 is a plain fold of the match list: each entry's tilde value
lambda**(2-i-j) times lambda**(i+j) contributes lambda**2.  Every further
level builds a tree over the current list, asks for the strict-dominance
sum below each entry, keeps the positive ones as the next list and folds
result * lambda**(i+j) into K_q.  Total work O(p * |L| * log |L|).
"""

from __future__ import annotations

import numpy as np
from numba import njit

from . import _lrst
from ._hdrops import hadd, hmul, power_ladder
from .core import KernelParams, KernelVector, SymbolSeq, build_match_list
from .hdr import HdrScalar, _raw


@njit(cache=True)
def _fold_level1(ent_i, ent_j, v_m, v_e, pow_m, pow_e):
    km, ke = 0.0, 0
    for k in range(len(ent_i)):
        rm, re = hmul(v_m[k], v_e[k], pow_m[ent_i[k] + ent_j[k]],
                      pow_e[ent_i[k] + ent_j[k]])
        km, ke = hadd(km, ke, rm, re)
    return km, ke


def _encode(i_arr, j_arr, m, n):
    """Pack composite keys x=(i|j), y=(j|i); uint32 when lengths allow."""
    if max(m, n) < 65536:
        shift = 65536
        x = ((i_arr.astype(np.int64) << 16) | j_arr).astype(np.uint32)
        y = ((j_arr.astype(np.int64) << 16) | i_arr).astype(np.uint32)
    else:
        shift = 2 ** 31
        x = (i_arr.astype(np.int64) << 31) | j_arr
        y = (j_arr.astype(np.int64) << 31) | i_arr
    return x, y, shift


def _exponent_dtype(m: int, n: int, lam: float) -> type:
    """Smallest exponent dtype that can hold every prefix-sum exponent.

    Tilde values stay within lambda**(+-(m+n)); sums add at most ~64 bits
    of count and per-level growth on top.
    """
    bound = (m + n) * abs(np.log2(lam)) + 64 if lam < 1.0 else 64
    if bound < 32000:
        return np.int16
    if bound < 2 ** 31 - 4096:
        return np.int32
    return np.int64


def _run_levels(s: SymbolSeq, t: SymbolSeq, params: KernelParams,
                collect_levels: bool):
    m, n = len(s), len(t)
    matches = build_match_list(s, t, params.lam)
    p = params.p
    k_pairs = [(0.0, 0)] * p
    levels = []

    ent_i = matches.i
    ent_j = matches.j
    v_m = matches.value_m
    v_e = matches.value_e.astype(_exponent_dtype(m, n, params.lam))
    if collect_levels:
        levels.append((ent_i, ent_j, v_m, v_e))
    if len(ent_i) == 0:
        return k_pairs, levels

    pow_m, pow_e = power_ladder(params.lam, m + n)
    k_pairs[0] = _fold_level1(ent_i, ent_j, v_m, v_e, pow_m, pow_e)

    for q in range(2, p + 1):
        if len(ent_i) == 0:
            break
        # entries stay (i, j)-sorted across levels, so the encoded x-keys
        # arrive presorted for the tree build
        xenc, yenc, shift = _encode(ent_i, ent_j, m, n)
        tree = _lrst.build_tree(xenc, yenc, v_m, v_e, False)
        km, ke, ent_i, ent_j, v_m, v_e = _lrst.geo_level(
            *tree[:8], tree[9], tree[10], xenc, yenc, v_m, v_e,
            ent_i, ent_j, pow_m, pow_e, shift)
        # trees near 2**23 points weigh GBs; drop before the next build
        tree = xenc = yenc = None
        k_pairs[q - 1] = (km, ke)
        if collect_levels:
            levels.append((ent_i, ent_j, v_m, v_e))
    return k_pairs, levels


def geometric_ssk(s: SymbolSeq, t: SymbolSeq, params: KernelParams) -> KernelVector:
    """Exact K_1..K_p(s, t)."""
    k_pairs, _ = _run_levels(s, t, params, collect_levels=False)
    return KernelVector([_raw(float(m), int(e)) for m, e in k_pairs])


def geo_level_lists(s: SymbolSeq, t: SymbolSeq, params: KernelParams
                    ) -> list[list[tuple[int, int, HdrScalar]]]:
    """Surviving tilde-valued lists per level (level 1 = full match list)."""
    _, levels = _run_levels(s, t, params, collect_levels=True)
    out = []
    for ent_i, ent_j, v_m, v_e in levels:
        out.append([
            (int(i), int(j), _raw(float(m), int(e)))
            for i, j, m, e in zip(ent_i, ent_j, v_m, v_e)
        ])
    return out

"""njit build/query routines for the layered range sum tree.

The main tree is perfectly balanced over points sorted by encoded x-key,
data at the leaves; every node carries its canonical subset sorted by
y-key together with running prefix sums of the weights.  Fractional
cascading is stored as one left-count per associated slot: among a node's
first c entries, a_cnt[coff + c] went to the left child.  Counts of
entries below/above a query bound cascade parent-to-child in O(1) from
that array, which is exactly the small/large pointer mechanism (the
pointer accessors in :mod:`ssk.geometry` are thin views of it).

Weight bookkeeping is (mantissa, exponent) pairs; parent prefix sums are
formed by adding the two child prefix sums at the merge frontier, one
rounding per level.  The exponent store adopts the dtype of the input
weight-exponent array, so kernel-sized workloads can run in int16 while
generic callers keep int64; key arrays likewise follow the caller's
encoding dtype.  Match lists near 2**23 points put the structure around
4 GB, so every byte per slot counts here.
"""

import math

import numpy as np
from numba import njit

from ._hdrops import hadd, hmul, hsub

LEAF = np.int32(-1)


@njit(cache=True)
def build_tree(xkeys, ykeys, w_m, w_e, with_points):
    """Build all node and associated arrays from x-sorted input.

    xkeys must be strictly increasing and nonempty; ykeys/w aligned with
    it.  Returns (node_left, node_right, node_lo, node_hi, node_split,
    node_off, a_ykey, a_cnt, a_pt, psum_m, psum_e); the cnt and prefix-sum
    blocks of node v start at node_off[v] + v (one extra slot per node).
    """
    n = len(xkeys)
    max_nodes = 2 * n - 1
    node_left = np.full(max_nodes, -1, np.int32)
    node_right = np.full(max_nodes, -1, np.int32)
    node_lo = np.zeros(max_nodes, np.int32)
    node_hi = np.zeros(max_nodes, np.int32)
    node_split = np.zeros(max_nodes, xkeys.dtype)

    # preorder enumeration; the stack holds at most one pending right
    # sibling per depth
    cap = 2 * int(math.ceil(math.log2(max(n, 2)))) + 8
    stack_lo = np.zeros(cap, np.int32)
    stack_hi = np.zeros(cap, np.int32)
    stack_parent = np.zeros(cap, np.int32)
    stack_isleft = np.zeros(cap, np.int8)
    stack_lo[0] = 0
    stack_hi[0] = n
    stack_parent[0] = -1
    top = 1
    count = 0
    while top > 0:
        top -= 1
        lo = stack_lo[top]
        hi = stack_hi[top]
        parent = stack_parent[top]
        isleft = stack_isleft[top]
        v = count
        count += 1
        node_lo[v] = lo
        node_hi[v] = hi
        if parent >= 0:
            if isleft:
                node_left[parent] = v
            else:
                node_right[parent] = v
        if hi - lo == 1:
            node_split[v] = xkeys[lo]
        else:
            mid = lo + (hi - lo + 1) // 2  # left child takes the ceil half
            node_split[v] = xkeys[mid - 1]
            # push right first so the left child gets the next preorder id
            stack_lo[top] = mid
            stack_hi[top] = hi
            stack_parent[top] = v
            stack_isleft[top] = 0
            top += 1
            stack_lo[top] = lo
            stack_hi[top] = mid
            stack_parent[top] = v
            stack_isleft[top] = 1
            top += 1

    node_off = np.zeros(count, np.int32)
    total = 0
    for v in range(count):
        node_off[v] = total
        total += node_hi[v] - node_lo[v]

    a_ykey = np.zeros(total, ykeys.dtype)
    a_cnt = np.zeros(total + count, np.int32)  # per node: size+1 slots
    a_pt = np.zeros(total if with_points else 0, np.int32)
    psum_m = np.zeros(total + count)
    psum_e = np.zeros(total + count, w_e.dtype)

    # fill bottom-up: preorder ids put children after their parent
    for v in range(count - 1, -1, -1):
        off = node_off[v]
        poff = off + v
        size = node_hi[v] - node_lo[v]
        psum_m[poff] = 0.0
        psum_e[poff] = 0
        lc = node_left[v]
        if lc == LEAF:
            leaf = node_lo[v]
            a_ykey[off] = ykeys[leaf]
            if with_points:
                a_pt[off] = leaf
            psum_m[poff + 1] = w_m[leaf]
            psum_e[poff + 1] = w_e[leaf]
            a_cnt[poff] = 0
            a_cnt[poff + 1] = 0
            continue
        rc = node_right[v]
        loff = node_off[lc]
        lsize = node_hi[lc] - node_lo[lc]
        lpoff = loff + lc
        roff = node_off[rc]
        rsize = node_hi[rc] - node_lo[rc]
        rpoff = roff + rc
        li = 0
        ri = 0
        for c in range(size):
            a_cnt[poff + c] = li
            take_left = False
            if li < lsize and ri < rsize:
                take_left = a_ykey[loff + li] < a_ykey[roff + ri]
            elif li < lsize:
                take_left = True
            if take_left:
                a_ykey[off + c] = a_ykey[loff + li]
                if with_points:
                    a_pt[off + c] = a_pt[loff + li]
                li += 1
            else:
                a_ykey[off + c] = a_ykey[roff + ri]
                if with_points:
                    a_pt[off + c] = a_pt[roff + ri]
                ri += 1
            sm, se = hadd(psum_m[lpoff + li], np.int64(psum_e[lpoff + li]),
                          psum_m[rpoff + ri], np.int64(psum_e[rpoff + ri]))
            psum_m[poff + 1 + c] = sm
            psum_e[poff + 1 + c] = se
        a_cnt[poff + size] = lsize

    return (node_left, node_right, node_lo, node_hi, node_split,
            node_off, a_ykey, a_cnt, a_pt, psum_m, psum_e)


@njit(inline="always", cache=True)
def _count_lt(a_ykey, off, size, key):
    """Entries among the node's slots with ykey < key."""
    lo, hi = 0, size
    while lo < hi:
        mid = (lo + hi) // 2
        if a_ykey[off + mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(inline="always", cache=True)
def _count_le(a_ykey, off, size, key):
    """Entries among the node's slots with ykey <= key."""
    lo, hi = 0, size
    while lo < hi:
        mid = (lo + hi) // 2
        if a_ykey[off + mid] <= key:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(inline="always", cache=True)
def _contribution(psum_m, psum_e, poff, b1, b2):
    if b2 <= b1:
        return 0.0, 0
    return hsub(psum_m[poff + b2], np.int64(psum_e[poff + b2]),
                psum_m[poff + b1], np.int64(psum_e[poff + b1]))


@njit(cache=True)
def range_sum(node_left, node_right, node_lo, node_hi, node_split,
              node_off, a_ykey, a_cnt, psum_m, psum_e,
              xkeys, ykeys, w_m, w_e,
              xlo, xhi, ylo, yhi):
    """Sum of weights inside the box; also returns nodes touched.

    One pair of binary searches happens at the split node; both boundary
    walks cascade the below/above counts through a_cnt, adding each
    canonical node's prefix-sum difference in O(1).
    """
    total_m, total_e = 0.0, 0
    touched = 0
    if len(xkeys) == 0 or xlo > xhi or ylo > yhi:
        return total_m, total_e, touched

    v = 0
    while node_left[v] != LEAF:
        if xhi <= node_split[v]:
            v = node_left[v]
        elif xlo > node_split[v]:
            v = node_right[v]
        else:
            break

    if node_left[v] == LEAF:
        leaf = node_lo[v]
        touched += 1
        if xlo <= xkeys[leaf] <= xhi and ylo <= ykeys[leaf] <= yhi:
            return w_m[leaf], np.int64(w_e[leaf]), touched
        return total_m, total_e, touched

    # counts of y-keys below/within the band at the split node
    off = node_off[v]
    size = node_hi[v] - node_lo[v]
    b1 = _count_lt(a_ykey, off, size, ylo)
    b2 = _count_le(a_ykey, off, size, yhi)
    coff = off + v

    # left boundary path
    child = node_left[v]
    c1 = a_cnt[coff + b1]
    c2 = a_cnt[coff + b2]
    while node_left[child] != LEAF:
        ccoff = node_off[child] + child
        if xlo <= node_split[child]:
            rc = node_right[child]
            r1 = c1 - a_cnt[ccoff + c1]
            r2 = c2 - a_cnt[ccoff + c2]
            sm, se = _contribution(psum_m, psum_e, node_off[rc] + rc, r1, r2)
            total_m, total_e = hadd(total_m, total_e, sm, se)
            touched += 1
            c1 = a_cnt[ccoff + c1]
            c2 = a_cnt[ccoff + c2]
            child = node_left[child]
        else:
            c1 = c1 - a_cnt[ccoff + c1]
            c2 = c2 - a_cnt[ccoff + c2]
            child = node_right[child]
    leaf = node_lo[child]
    touched += 1
    if xlo <= xkeys[leaf] <= xhi and ylo <= ykeys[leaf] <= yhi:
        total_m, total_e = hadd(total_m, total_e, w_m[leaf], np.int64(w_e[leaf]))

    # right boundary path
    child = node_right[v]
    c1 = b1 - a_cnt[coff + b1]
    c2 = b2 - a_cnt[coff + b2]
    while node_left[child] != LEAF:
        ccoff = node_off[child] + child
        if xhi > node_split[child]:
            lc = node_left[child]
            l1 = a_cnt[ccoff + c1]
            l2 = a_cnt[ccoff + c2]
            sm, se = _contribution(psum_m, psum_e, node_off[lc] + lc, l1, l2)
            total_m, total_e = hadd(total_m, total_e, sm, se)
            touched += 1
            c1 = c1 - a_cnt[ccoff + c1]
            c2 = c2 - a_cnt[ccoff + c2]
            child = node_right[child]
        else:
            c1 = a_cnt[ccoff + c1]
            c2 = a_cnt[ccoff + c2]
            child = node_left[child]
    leaf = node_lo[child]
    touched += 1
    if xlo <= xkeys[leaf] <= xhi and ylo <= ykeys[leaf] <= yhi:
        total_m, total_e = hadd(total_m, total_e, w_m[leaf], np.int64(w_e[leaf]))

    return total_m, total_e, touched


@njit(cache=True)
def geo_level(node_left, node_right, node_lo, node_hi, node_split,
              node_off, a_ykey, a_cnt, psum_m, psum_e,
              xkeys, ykeys, w_m, w_e,
              ent_i, ent_j, pow_m, pow_e, shift):
    """One geometric level: dominance query per entry, fold and survive.

    For entry (i, j) the query box is x in [(0|-inf), (i-1|+inf)],
    y in [(0|-inf), (j-1|+inf)] in the packed composite encoding with the
    given shift.  Returns (K_q mantissa, exponent, surviving arrays).
    """
    count = len(ent_i)
    out_i = np.empty(count, np.int32)
    out_j = np.empty(count, np.int32)
    out_m = np.empty(count)
    out_e = np.empty(count, w_e.dtype)
    n_out = 0
    k_m, k_e = 0.0, 0
    for k in range(count):
        i = ent_i[k]
        j = ent_j[k]
        xhi = (np.int64(i) - 1) * shift + (shift - 1)
        yhi = (np.int64(j) - 1) * shift + (shift - 1)
        sm, se, _ = range_sum(node_left, node_right, node_lo, node_hi,
                              node_split, node_off, a_ykey, a_cnt,
                              psum_m, psum_e, xkeys, ykeys, w_m, w_e,
                              0, xhi, 0, yhi)
        if sm > 0.0:
            out_i[n_out] = i
            out_j[n_out] = j
            out_m[n_out] = sm
            out_e[n_out] = se
            n_out += 1
            rm, re = hmul(sm, se, pow_m[i + j], pow_e[i + j])
            k_m, k_e = hadd(k_m, k_e, rm, re)
    return k_m, k_e, out_i[:n_out], out_j[:n_out], out_m[:n_out], out_e[:n_out]

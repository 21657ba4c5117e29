"""njit computation engines for the dynamic and sparse algorithms.

Each engine works on raw arrays with (mantissa, exponent) value pairs;
the public wrappers in :mod:`ssk.dp` and :mod:`ssk.sparse` handle domain
types.  Indices are 1-based to match the recursions.
"""

import numpy as np
from numba import njit

from ._hdrops import hadd, hmul, hsub, power_ladder, power_ladder_inv


@njit(cache=True)
def dp_kernel(s, t, p, lam_m, lam_e, lam2_m, lam2_e):
    """All levels K_1..K_p of the suffix-kernel dynamic program.

    Keeps the full suffix table KPS (overwritten level by level, each cell
    read before written) and two rolling rows of the DP accumulator.
    """
    m, n = len(s), len(t)
    k_m = np.zeros(p)
    k_e = np.zeros(p, np.int64)

    kps_m = np.zeros((m, n))
    kps_e = np.zeros((m, n), np.int64)
    km, ke = 0.0, 0
    for i in range(m):
        si = s[i]
        for j in range(n):
            if si == t[j]:
                kps_m[i, j] = lam2_m
                kps_e[i, j] = lam2_e
                km, ke = hadd(km, ke, lam2_m, lam2_e)
    k_m[0], k_e[0] = km, ke

    prev_m = np.zeros(n + 1)
    prev_e = np.zeros(n + 1, np.int64)
    cur_m = np.zeros(n + 1)
    cur_e = np.zeros(n + 1, np.int64)
    for q in range(2, p + 1):
        km, ke = 0.0, 0
        prev_m[:] = 0.0
        prev_e[:] = 0
        for i in range(1, m + 1):
            cur_m[0] = 0.0
            cur_e[0] = 0
            si = s[i - 1]
            for j in range(1, n + 1):
                am, ae = hmul(lam_m, lam_e, prev_m[j], prev_e[j])
                bm, be = hmul(lam_m, lam_e, cur_m[j - 1], cur_e[j - 1])
                cm, ce = hmul(lam2_m, lam2_e, prev_m[j - 1], prev_e[j - 1])
                dm, de = hadd(kps_m[i - 1, j - 1], kps_e[i - 1, j - 1], am, ae)
                dm, de = hadd(dm, de, bm, be)
                dm, de = hsub(dm, de, cm, ce)
                cur_m[j] = dm
                cur_e[j] = de
                if si == t[j - 1]:
                    nm, ne = hmul(lam2_m, lam2_e, prev_m[j - 1], prev_e[j - 1])
                    kps_m[i - 1, j - 1] = nm
                    kps_e[i - 1, j - 1] = ne
                    km, ke = hadd(km, ke, nm, ne)
                else:
                    kps_m[i - 1, j - 1] = 0.0
                    kps_e[i - 1, j - 1] = 0
            prev_m, cur_m = cur_m, prev_m
            prev_e, cur_e = cur_e, prev_e
        k_m[q - 1], k_e[q - 1] = km, ke
    return k_m, k_e


@njit(inline="always", cache=True)
def _fenwick_update(fm, fe, size, key, vm, ve):
    j = key
    while j <= size:
        fm[j], fe[j] = hadd(fm[j], fe[j], vm, ve)
        j += j & (-j)


@njit(inline="always", cache=True)
def _fenwick_prefix(fm, fe, key):
    sm, se = 0.0, 0
    j = key
    while j > 0:
        sm, se = hadd(sm, se, fm[j], fe[j])
        j -= j & (-j)
    return sm, se


@njit(cache=True)
def sparse_kernel(mi, mj, m, n, p, lam):
    """All levels K_1..K_p from a match list via range-sum-tree sweeps.

    mi/mj hold the 1-based match positions sorted by (i, j).  Level lists
    carry the dummy-weighted values lambda**(m-i+n-j) * K_q^S; the kernel
    per level is recovered with the lambda**(i+j-m-n) rescale.
    """
    k_m = np.zeros(p)
    k_e = np.zeros(p, np.int64)
    count = len(mi)
    if count == 0:
        return k_m, k_e

    ladder_m, ladder_e = power_ladder(lam, m + n)
    inv_m, inv_e = power_ladder_inv(lam, m + n)

    # level-1 list: bar value at (i,j) is lambda**(m+n+2-i-j)
    cur_i = mi.copy()
    cur_j = mj.copy()
    cur_m = np.empty(count)
    cur_e = np.empty(count, np.int64)
    km, ke = 0.0, 0
    for k in range(count):
        expo = m + n + 2 - cur_i[k] - cur_j[k]
        cur_m[k] = ladder_m[expo]
        cur_e[k] = ladder_e[expo]
        # rescale lambda**(i+j-m-n) leaves lambda**2 per entry
        rm, re = hmul(cur_m[k], cur_e[k], inv_m[m + n - cur_i[k] - cur_j[k]],
                      inv_e[m + n - cur_i[k] - cur_j[k]])
        km, ke = hadd(km, ke, rm, re)
    k_m[0], k_e[0] = km, ke

    size = 1
    while size < n:
        size *= 2
    fm = np.zeros(size + 1)
    fe = np.zeros(size + 1, np.int64)

    for q in range(2, p + 1):
        fm[:] = 0.0
        fe[:] = 0
        nxt_i = np.empty(len(cur_i), np.int32)
        nxt_j = np.empty(len(cur_i), np.int32)
        nxt_m = np.empty(len(cur_i))
        nxt_e = np.empty(len(cur_i), np.int64)
        out = 0
        km, ke = 0.0, 0
        pos = 0
        total = len(cur_i)
        while pos < total:
            row = cur_i[pos]
            row_end = pos
            while row_end < total and cur_i[row_end] == row:
                row_end += 1
            for k in range(pos, row_end):
                sm, se = _fenwick_prefix(fm, fe, cur_j[k] - 1)
                if sm > 0.0:
                    nxt_i[out] = row
                    nxt_j[out] = cur_j[k]
                    nxt_m[out] = sm
                    nxt_e[out] = se
                    out += 1
                    rm, re = hmul(sm, se, inv_m[m + n - row - cur_j[k]],
                                  inv_e[m + n - row - cur_j[k]])
                    km, ke = hadd(km, ke, rm, re)
            for k in range(pos, row_end):
                _fenwick_update(fm, fe, size, cur_j[k], cur_m[k], cur_e[k])
            pos = row_end
        k_m[q - 1], k_e[q - 1] = km, ke
        if out == 0:
            break
        cur_i = nxt_i[:out]
        cur_j = nxt_j[:out]
        cur_m = nxt_m[:out]
        cur_e = nxt_e[:out]
    return k_m, k_e

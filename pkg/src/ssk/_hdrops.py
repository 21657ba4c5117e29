"""njit-level (mantissa, exponent) arithmetic.

These helpers are the engine-side twin of :class:`ssk.hdr.HdrScalar`:
same normalization (mantissa in [0.5, 1), 0.0 for zero), same operation
order, same alignment cutoff, so results agree bitwise with the Python
class.  Exponents are int64 here; engine values stay far inside that
range (|e| <= (|s|+|t|) * |log2 lambda| plus a few dozen bits of count).
"""

import math

import numpy as np
from numba import njit

# keep in sync with ssk.hdr.MIN_ALIGN
MIN_ALIGN = -1074


@njit(inline="always", cache=True)
def hnorm(m, e):
    if m == 0.0:
        return 0.0, 0
    fm, fe = math.frexp(m)
    return fm, e + fe


@njit(inline="always", cache=True)
def hmul(m1, e1, m2, e2):
    if m1 == 0.0 or m2 == 0.0:
        return 0.0, 0
    return hnorm(m1 * m2, e1 + e2)


@njit(inline="always", cache=True)
def hadd(m1, e1, m2, e2):
    if m1 == 0.0:
        return m2, e2
    if m2 == 0.0:
        return m1, e1
    if e1 < e2:
        m1, e1, m2, e2 = m2, e2, m1, e1
    d = e2 - e1
    if d < MIN_ALIGN:
        return m1, e1
    return hnorm(m1 + math.ldexp(m2, d), e1)


@njit(inline="always", cache=True)
def hsub(m1, e1, m2, e2):
    # clamped at zero; callers subtract prefix sums where m1 >= m2
    if m2 == 0.0:
        return m1, e1
    d = e2 - e1
    if d > 0:
        return 0.0, 0
    if d < MIN_ALIGN:
        return m1, e1
    m = m1 - math.ldexp(m2, d)
    if m <= 0.0:
        return 0.0, 0
    return hnorm(m, e1)


@njit(cache=True)
def hpow(lam, k):
    """lambda**k as a pair, square-and-multiply, any integer k."""
    if k < 0:
        bm, be = math.frexp(1.0 / lam)
        k = -k
    else:
        bm, be = math.frexp(lam)
    rm, re = 0.5, 1  # 1.0 normalized
    while k:
        if k & 1:
            rm, re = hmul(rm, re, bm, be)
        bm, be = hmul(bm, be, bm, be)
        k >>= 1
    return rm, re


@njit(cache=True)
def power_ladder(lam, n):
    """Arrays (m, e) with slot k holding lambda**k, k = 0..n."""
    pm = np.empty(n + 1)
    pe = np.empty(n + 1, np.int64)
    pm[0], pe[0] = 0.5, 1
    bm, be = math.frexp(lam)
    cm, ce = 0.5, 1
    for k in range(1, n + 1):
        cm, ce = hmul(cm, ce, bm, be)
        pm[k], pe[k] = cm, ce
    return pm, pe


@njit(cache=True)
def power_ladder_inv(lam, n):
    """Arrays (m, e) with slot k holding lambda**(-k), k = 0..n."""
    pm = np.empty(n + 1)
    pe = np.empty(n + 1, np.int64)
    pm[0], pe[0] = 0.5, 1
    bm, be = math.frexp(1.0 / lam)
    cm, ce = 0.5, 1
    for k in range(1, n + 1):
        cm, ce = hmul(cm, ce, bm, be)
        pm[k], pe[k] = cm, ce
    return pm, pe


@njit(inline="always", cache=True)
def hlog(m, e):
    if m == 0.0:
        return -math.inf
    return math.log(m) + e * 0.6931471805599453

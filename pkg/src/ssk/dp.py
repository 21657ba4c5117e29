"""Exact SSK by dynamic programming over full suffix/accumulator tables.

The recursion, for level q and 1-based prefix lengths (k, l):

    DP_q(k, l) = K_{q-1}^S(k, l) + lam*DP_q(k-1, l) + lam*DP_q(k, l-1)
                 - lam^2*DP_q(k-1, l-1)
    K_q^S(k, l) = [s_k = t_l] * lam^2 * DP_q(k-1, l-1)

and K_q(s, t) is the sum of K_q^S over all prefix pairs.  ``dp_ssk`` runs
the njit engine in O(p*|s|*|t|); ``dp_tables`` is an independent
pure-Python rendering of the same recursion that materializes the final
level's tables for inspection and testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._engines import dp_kernel
from .core import KernelParams, KernelVector, SymbolSeq
from .hdr import HdrScalar, ZERO, _raw


def dp_ssk(s: SymbolSeq, t: SymbolSeq, params: KernelParams) -> KernelVector:
    """Exact K_1..K_p(s, t)."""
    lam_m, lam_e = math.frexp(params.lam)
    l2 = params.lam * params.lam
    lam2_m, lam2_e = math.frexp(l2)
    k_m, k_e = dp_kernel(s.symbols, t.symbols, params.p,
                         lam_m, lam_e, lam2_m, lam2_e)
    return KernelVector([_raw(float(m), int(e)) for m, e in zip(k_m, k_e)])


@dataclass(frozen=True)
class DpTables:
    """Filled suffix and accumulator tables at the final level.

    Both are (|s|+1) x (|t|+1) lists of HdrScalar with zero row/column 0,
    indexed by 1-based prefix lengths.
    """

    kps: list[list[HdrScalar]]
    dp: list[list[HdrScalar]]


def dp_tables(s: SymbolSeq, t: SymbolSeq, params: KernelParams) -> DpTables:
    """Pure-Python table fill for level p; intended for small inputs."""
    m, n = len(s), len(t)
    lam = HdrScalar.from_float(params.lam)
    lam2 = lam * lam
    ss = s.symbols.tolist()
    ts = t.symbols.tolist()

    kps = [[ZERO] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if ss[i - 1] == ts[j - 1]:
                kps[i][j] = lam2

    dp = [[ZERO] * (n + 1) for _ in range(m + 1)]
    for _q in range(2, params.p + 1):
        new_kps = [[ZERO] * (n + 1) for _ in range(m + 1)]
        dp = [[ZERO] * (n + 1) for _ in range(m + 1)]
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                dp[i][j] = (kps[i][j] + lam * dp[i - 1][j] + lam * dp[i][j - 1]
                            - lam2 * dp[i - 1][j - 1])
                if ss[i - 1] == ts[j - 1]:
                    new_kps[i][j] = lam2 * dp[i - 1][j - 1]
        kps = new_kps
    return DpTables(kps=kps, dp=dp)


def dp_level_sums(s: SymbolSeq, t: SymbolSeq, params: KernelParams) -> KernelVector:
    """K_1..K_p summed from the pure-Python tables (slow, test oracle)."""
    values = []
    for q in range(1, params.p + 1):
        tables = dp_tables(s, t, KernelParams(p=q, lam=params.lam))
        total = ZERO
        for row in tables.kps:
            for v in row:
                total = total + v
        values.append(total)
    return KernelVector(values)

"""Brute-force oracles: direct enumeration of subsequence occurrences.

These are the ground truth the dynamic, sparse and geometric algorithms
are checked against.  Everything here enumerates index tuples explicitly
(cost ~2**|s|), so inputs are capped; nothing here shares code with the
fast recursions.
"""

from __future__ import annotations

from itertools import combinations

from .core import KernelParams, KernelVector, SymbolSeq
from .hdr import HdrScalar, ZERO

# C(14, 7)**2 index-tuple pairs is still well under a second
ORACLE_LENGTH_CAP = 14

# explicit feature maps refuse alphabets with more than this many coordinates
FEATURE_SPACE_CAP = 2 ** 22


def _check_cap(s: SymbolSeq, t: SymbolSeq | None, length_cap: int):
    longest = len(s) if t is None else max(len(s), len(t))
    if longest > length_cap:
        raise ValueError(
            f"oracle input length {longest} exceeds the cap {length_cap}; "
            "use dp/sparse/geometric for long strings"
        )


def _span_power_sums(seq: SymbolSeq, q: int, lam: float) -> dict[tuple, float]:
    """u -> sum over occurrences I of u in seq of lambda**l(I), |u| = q."""
    syms = seq.symbols.tolist()
    out: dict[tuple, float] = {}
    for idx in combinations(range(len(syms)), q):
        u = tuple(syms[k] for k in idx)
        span = idx[-1] - idx[0] + 1
        out[u] = out.get(u, 0.0) + lam ** span
    return out


def brute_force_ssk(s: SymbolSeq, t: SymbolSeq, params: KernelParams,
                    length_cap: int = ORACLE_LENGTH_CAP) -> KernelVector:
    """Exact K_1..K_p by enumerating all index tuples of both strings."""
    _check_cap(s, t, length_cap)
    values = []
    for q in range(1, params.p + 1):
        phi_s = _span_power_sums(s, q, params.lam)
        phi_t = _span_power_sums(t, q, params.lam)
        total = 0.0
        for u, a in phi_s.items():
            b = phi_t.get(u)
            if b is not None:
                total += a * b
        values.append(HdrScalar.from_float(total))
    return KernelVector(values)


def brute_force_suffix(s: SymbolSeq, t: SymbolSeq, params: KernelParams,
                       length_cap: int = ORACLE_LENGTH_CAP) -> HdrScalar:
    """Exact suffix kernel K_p^S: occurrences must end at the last position."""
    _check_cap(s, t, length_cap)
    p = params.p
    if len(s) < p or len(t) < p:
        return ZERO

    def suffix_sums(seq: SymbolSeq) -> dict[tuple, float]:
        syms = seq.symbols.tolist()
        last = len(syms) - 1
        out: dict[tuple, float] = {}
        for head in combinations(range(last), p - 1):
            idx = head + (last,)
            u = tuple(syms[k] for k in idx)
            span = idx[-1] - idx[0] + 1
            out[u] = out.get(u, 0.0) + params.lam ** span
        return out

    phi_s = suffix_sums(s)
    phi_t = suffix_sums(t)
    total = 0.0
    for u, a in phi_s.items():
        b = phi_t.get(u)
        if b is not None:
            total += a * b
    return HdrScalar.from_float(total)


def explicit_feature_map(s: SymbolSeq, params: KernelParams,
                         length_cap: int = ORACLE_LENGTH_CAP,
                         feature_cap: int = FEATURE_SPACE_CAP) -> dict[tuple, float]:
    """u -> phi_u^p(s) over all length-p subsequences u actually occurring."""
    if s.alphabet_size ** params.p > feature_cap:
        raise ValueError(
            f"feature space size {s.alphabet_size}**{params.p} exceeds cap {feature_cap}"
        )
    _check_cap(s, None, length_cap)
    return _span_power_sums(s, params.p, params.lam)


def feature_map_inner(phi_s: dict[tuple, float], phi_t: dict[tuple, float]) -> float:
    if len(phi_t) < len(phi_s):
        phi_s, phi_t = phi_t, phi_s
    return sum(a * phi_t[u] for u, a in phi_s.items() if u in phi_t)

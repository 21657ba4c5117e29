"""Core domain types shared by every kernel algorithm.

Strings live here as :class:`SymbolSeq` (integer symbol ids over a finite
alphabet), kernel settings as :class:`KernelParams`, per-level results as
:class:`KernelVector`, and the sparse algorithms' input as
:class:`MatchList`.  Positions in all public interfaces are 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .hdr import ZERO, HdrScalar, rel_deviation

TOKEN_MODES = ("character", "word")


class SymbolSeq:
    """A string encoded as symbol ids in [0, alphabet_size)."""

    __slots__ = ("symbols", "alphabet_size")

    def __init__(self, symbols: Iterable[int], alphabet_size: int):
        arr = np.asarray(list(symbols) if not isinstance(symbols, np.ndarray) else symbols,
                         dtype=np.int32)
        if alphabet_size < 0:
            raise ValueError("alphabet_size must be >= 0")
        if arr.size and (arr.min() < 0 or arr.max() >= alphabet_size):
            raise ValueError("symbol ids must lie in [0, alphabet_size)")
        arr.flags.writeable = False
        object.__setattr__(self, "symbols", arr)
        object.__setattr__(self, "alphabet_size", int(alphabet_size))

    def __setattr__(self, name, value):
        raise AttributeError("SymbolSeq is immutable")

    def __len__(self) -> int:
        return int(self.symbols.size)

    def __iter__(self):
        return iter(self.symbols.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolSeq):
            return NotImplemented
        return (self.alphabet_size == other.alphabet_size
                and np.array_equal(self.symbols, other.symbols))

    def prefix(self, length: int) -> "SymbolSeq":
        return SymbolSeq(self.symbols[:length], self.alphabet_size)

    def __repr__(self) -> str:
        return f"SymbolSeq({self.symbols.tolist()}, alphabet_size={self.alphabet_size})"


@dataclass(frozen=True)
class KernelParams:
    """Subsequence length p and decay penalty lambda in (0, 1]."""

    p: int
    lam: float

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if not (0.0 < self.lam <= 1.0) or math.isnan(self.lam):
            raise ValueError(f"lambda must be in (0, 1], got {self.lam}")


class KernelVector:
    """Kernel values K_1 .. K_p for one string pair."""

    __slots__ = ("values",)

    def __init__(self, values: Sequence[HdrScalar]):
        vals = tuple(values)
        if not vals:
            raise ValueError("KernelVector needs at least one level")
        for v in vals:
            if not isinstance(v, HdrScalar):
                raise TypeError("KernelVector holds HdrScalar values")
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("KernelVector is immutable")

    @property
    def p(self) -> int:
        return len(self.values)

    def level(self, q: int) -> HdrScalar:
        """K_q, 1-based."""
        return self.values[q - 1]

    def log_values(self) -> np.ndarray:
        return np.array([v.log() for v in self.values])

    def max_rel_deviation(self, other: "KernelVector") -> float:
        """Largest per-level relative deviation, computed in log domain."""
        if self.p != other.p:
            raise ValueError("kernel vectors have different p")
        return max(
            rel_deviation(a.log(), b.log())
            for a, b in zip(self.values, other.values)
        )

    def __iter__(self):
        return iter(self.values)

    def __repr__(self) -> str:
        return f"KernelVector({list(self.values)!r})"


class MatchList:
    """Ordered ((i, j), value) pairs for the positions with s_i = t_j.

    Values carry the level-1 tilde-scaled suffix kernel
    lambda**(2 - i - j), the initial weights of the geometric algorithm.
    Entries are sorted by (i, j); positions are 1-based.
    """

    __slots__ = ("i", "j", "value_m", "value_e", "lam")

    def __init__(self, i: np.ndarray, j: np.ndarray,
                 value_m: np.ndarray, value_e: np.ndarray, lam: float):
        for a in (i, j, value_m, value_e):
            a.flags.writeable = False
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "value_m", value_m)
        object.__setattr__(self, "value_e", value_e)
        object.__setattr__(self, "lam", lam)

    def __setattr__(self, name, value):
        raise AttributeError("MatchList is immutable")

    def __len__(self) -> int:
        return int(self.i.size)

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.i.tolist(), self.j.tolist()))

    def entries(self) -> list[tuple[tuple[int, int], HdrScalar]]:
        from .hdr import _raw

        return [
            ((int(ii), int(jj)), _raw(float(m), int(e)))
            for ii, jj, m, e in zip(self.i, self.j, self.value_m, self.value_e)
        ]

    def value_at(self, i: int, j: int) -> HdrScalar:
        from .hdr import _raw

        idx = np.flatnonzero((self.i == i) & (self.j == j))
        if idx.size == 0:
            raise KeyError((i, j))
        k = int(idx[0])
        return _raw(float(self.value_m[k]), int(self.value_e[k]))


def encode_texts(texts: Sequence[str], mode: str) -> tuple[dict[str, int], list[SymbolSeq]]:
    """Tokenize texts and map identical tokens to shared symbol ids.

    mode "character" splits into single characters, "word" on whitespace.
    Ids are assigned in order of first appearance across all texts.
    """
    if mode not in TOKEN_MODES:
        raise ValueError(f"mode must be one of {TOKEN_MODES}, got {mode!r}")
    vocab: dict[str, int] = {}
    token_lists = []
    for text in texts:
        tokens = list(text) if mode == "character" else text.split()
        for tok in tokens:
            if tok not in vocab:
                vocab[tok] = len(vocab)
        token_lists.append(tokens)
    size = len(vocab)
    seqs = [SymbolSeq([vocab[tok] for tok in tokens], size) for tokens in token_lists]
    return vocab, seqs


def build_occurrence_index(s: SymbolSeq, alphabet_size: int | None = None) -> list[np.ndarray]:
    """Per-symbol ascending lists of 1-based positions i with s_i = c."""
    size = s.alphabet_size if alphabet_size is None else alphabet_size
    if len(s) and int(s.symbols.max()) >= size:
        raise ValueError("sequence contains symbols outside the alphabet")
    index: list[np.ndarray] = []
    if len(s) == 0:
        return [np.empty(0, np.int32) for _ in range(size)]
    order = np.argsort(s.symbols, kind="stable")
    positions = (order + 1).astype(np.int32)
    counts = np.bincount(s.symbols, minlength=size)
    stops = np.cumsum(counts)
    start = 0
    for c in range(size):
        stop = int(stops[c])
        index.append(positions[start:stop])
        start = stop
    return index


def match_list_size(s: SymbolSeq, t: SymbolSeq) -> int:
    """|L(s, t)| without materializing the list."""
    size = max(s.alphabet_size, t.alphabet_size)
    if len(s) == 0 or len(t) == 0:
        return 0
    occ_s = np.bincount(s.symbols, minlength=size).astype(np.int64)
    occ_t = np.bincount(t.symbols, minlength=size).astype(np.int64)
    return int(np.dot(occ_s, occ_t))


def build_match_list(s: SymbolSeq, t: SymbolSeq, lam: float) -> MatchList:
    """Match list of (i, j) with s_i = t_j, valued lambda**(2 - i - j).

    Built from the occurrence index of t, so entries come out sorted by
    (i, j) in O(|s| + |t| + alphabet + |L|).
    """
    if s.alphabet_size != t.alphabet_size:
        raise ValueError("sequences must share one alphabet")
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"lambda must be in (0, 1], got {lam}")
    m, n = len(s), len(t)
    if m == 0 or n == 0:
        empty = np.empty(0, np.int32)
        return MatchList(empty, empty.copy(),
                         np.empty(0, np.float64), np.empty(0, np.int64), lam)
    occ_t = build_occurrence_index(t)
    row_counts = np.array([occ_t[c].size for c in s.symbols], dtype=np.int64)
    total = int(row_counts.sum())
    i_arr = np.repeat(np.arange(1, m + 1, dtype=np.int32), row_counts)
    if total:
        j_arr = np.concatenate([occ_t[c] for c in s.symbols if occ_t[c].size])
    else:
        j_arr = np.empty(0, np.int32)

    from ._hdrops import power_ladder_inv

    pm, pe = power_ladder_inv(lam, m + n)  # slot k = lambda**(-k)
    k = (i_arr.astype(np.int64) + j_arr - 2)  # tilde exponent: lambda**(2-i-j)
    value_m = pm[k]
    value_e = pe[k]
    return MatchList(i_arr, j_arr.astype(np.int32), value_m, value_e, lam)


def normalize(k_st: HdrScalar, k_ss: HdrScalar, k_tt: HdrScalar) -> float:
    """k_st / sqrt(k_ss * k_tt), evaluated in log domain."""
    if k_ss.is_zero or k_tt.is_zero:
        raise ValueError("self-kernel is zero (string empty or shorter than p)")
    if k_st.is_zero:
        return 0.0
    value = math.exp(k_st.log() - 0.5 * (k_ss.log() + k_tt.log()))
    return min(value, 1.0)


def zero_vector(p: int) -> KernelVector:
    return KernelVector([ZERO] * p)

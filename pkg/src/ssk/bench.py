"""Benchmark harness: synthetic grids, corpus runs, cross-validation.

Workloads are generated per grid cell from a seed split as
SeedSequence([seed, length, alphabet_size, pair_id]) feeding numpy's
PCG64, which is recorded in the CSV header; everything except the
elapsed-time columns is a pure function of (config, corpus bytes).
"""

from __future__ import annotations

import csv
import math
import string
import time
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Callable, IO, Iterable

import numpy as np
import psutil

from .core import (KernelParams, KernelVector, SymbolSeq, encode_texts,
                   match_list_size)
from .dp import dp_ssk
from .geo import geometric_ssk
from .oracle import ORACLE_LENGTH_CAP, brute_force_ssk
from .sparse import sparse_ssk
from .trie import trie_ssk

ALGORITHMS = ("brute", "dp", "trie", "sparse", "geometric")

CSV_VERSION = 1

SYNTH_COLUMNS = ("algorithm", "len_s", "len_t", "alphabet_size", "p", "lambda",
                 "match_list_size", "pair_id", "repetition",
                 "elapsed_nanoseconds", "kernel_value_log", "status")

CORPUS_COLUMNS = ("doc_a", "doc_b", "len_s", "len_t", "inverse_match_frequency",
                  "mean_size", "match_list_size", "algorithm", "p", "lambda",
                  "pair_id", "repetition", "elapsed_nanoseconds",
                  "kernel_value_log", "status")

# timing columns stripped by the determinism check
ELAPSED_COLUMNS = ("elapsed_nanoseconds",)


@dataclass(frozen=True)
class BenchConfig:
    algorithms: tuple[str, ...]
    lengths: tuple[int, ...]
    alphabet_sizes: tuple[int, ...]
    p: int
    lam: float
    seed: int
    g_max: int = 10
    repetitions: int = 5
    pairs: int = 3
    ps: tuple[int, ...] = ()          # corpus levels; defaults to (p,)
    tokenize: str = "word"            # corpus tokenization mode
    tolerance: float = 1e-9           # crosscheck relative tolerance
    oracle_cap: int = ORACLE_LENGTH_CAP

    def __post_init__(self):
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}, pick from {ALGORITHMS}")
        if not self.algorithms:
            raise ValueError("need at least one algorithm")
        if self.repetitions < 1 or self.pairs < 1:
            raise ValueError("repetitions and pairs must be >= 1")
        if any(n < 1 for n in self.lengths) or any(a < 1 for a in self.alphabet_sizes):
            raise ValueError("lengths and alphabet sizes must be positive")
        KernelParams(p=self.p, lam=self.lam)  # validates p and lambda
        if self.g_max < 0:
            raise ValueError("g_max must be >= 0")
        if not self.ps:
            object.__setattr__(self, "ps", (self.p,))

    @property
    def params(self) -> KernelParams:
        return KernelParams(p=self.p, lam=self.lam)


@dataclass(frozen=True)
class BenchRecord:
    algorithm: str
    len_s: int
    len_t: int
    alphabet_size: int
    p: int
    lam: float
    match_list_size: int
    pair_id: int
    repetition: int
    elapsed_nanoseconds: int
    kernel_value_log: float
    status: str = "ok"

    def row(self) -> list:
        return [self.algorithm, self.len_s, self.len_t, self.alphabet_size,
                self.p, repr(self.lam), self.match_list_size, self.pair_id,
                self.repetition, self.elapsed_nanoseconds,
                repr(self.kernel_value_log), self.status]


def cell_rng(seed: int, length: int, alphabet_size: int, pair_id: int):
    return np.random.default_rng([seed, length, alphabet_size, pair_id])


def gen_random_pair(length: int, alphabet_size: int, rng) -> tuple[SymbolSeq, SymbolSeq]:
    """Two sequences with symbols i.i.d. uniform over the alphabet."""
    if length < 0 or alphabet_size < 1:
        raise ValueError("length must be >= 0 and alphabet_size >= 1")
    a = rng.integers(0, alphabet_size, size=length, dtype=np.int32)
    b = rng.integers(0, alphabet_size, size=length, dtype=np.int32)
    return SymbolSeq(a, alphabet_size), SymbolSeq(b, alphabet_size)


def make_runner(name: str, config: BenchConfig) -> Callable[[SymbolSeq, SymbolSeq], KernelVector]:
    params = config.params
    if name == "brute":
        return lambda s, t: brute_force_ssk(s, t, params, length_cap=config.oracle_cap)
    if name == "dp":
        return lambda s, t: dp_ssk(s, t, params)
    if name == "trie":
        return lambda s, t: trie_ssk(s, t, params, g_max=config.g_max)
    if name == "sparse":
        return lambda s, t: sparse_ssk(s, t, params)
    if name == "geometric":
        return lambda s, t: geometric_ssk(s, t, params)
    raise ValueError(f"unknown algorithm {name!r}")


def estimate_peak_bytes(name: str, m: int, n: int, matches: int) -> int:
    """Rough high-water memory for one run, used to pre-flag oom cells."""
    if name == "dp":
        return 12 * m * n + 128 * (n + 1)
    if name == "sparse":
        return 64 * matches + 16 * n
    if name == "geometric":
        levels = max(1, math.ceil(math.log2(max(matches, 2))) + 1)
        return 20 * matches * levels + 80 * matches
    return 0


def _memory_ok(name: str, m: int, n: int, matches: int) -> bool:
    need = estimate_peak_bytes(name, m, n, matches)
    return need + (256 << 20) < psutil.virtual_memory().available


# -- crosscheck ------------------------------------------------------------


@dataclass(frozen=True)
class CrosscheckFailure:
    length: int
    alphabet_size: int
    pair_id: int
    algo_a: str
    algo_b: str
    level: int
    deviation: float


@dataclass
class CrosscheckReport:
    passed: bool = True
    checked_pairs: int = 0
    max_rel_deviation: float = 0.0
    failures: list[CrosscheckFailure] = field(default_factory=list)

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        lines = [f"crosscheck {state}: {self.checked_pairs} pairs, "
                 f"max relative deviation {self.max_rel_deviation:.3e}"]
        for f in self.failures[:20]:
            lines.append(
                f"  MISMATCH len={f.length} sigma={f.alphabet_size} "
                f"pair={f.pair_id}: {f.algo_a} vs {f.algo_b} at level {f.level} "
                f"deviates by {f.deviation:.3e}")
        if len(self.failures) > 20:
            lines.append(f"  ... {len(self.failures) - 20} more")
        return "\n".join(lines)


def crosscheck(config: BenchConfig,
               mutator: Callable[[str, KernelVector], KernelVector] | None = None,
               extra_pairs: Iterable[tuple[SymbolSeq, SymbolSeq]] = ()
               ) -> CrosscheckReport:
    """Compare all configured algorithms pairwise on generated pairs.

    ``mutator`` may perturb a named algorithm's output (fault-injection
    hook for testing the harness itself).
    """
    if len(config.algorithms) < 2:
        raise ValueError("crosscheck needs at least two algorithms")
    if "brute" in config.algorithms and max(config.lengths) > config.oracle_cap:
        raise ValueError("brute force requested beyond the oracle length cap")
    runners = {name: make_runner(name, config) for name in config.algorithms}
    report = CrosscheckReport()

    def check_pair(length, alpha, pair_id, s, t):
        vecs = {}
        for name, run in runners.items():
            vec = run(s, t)
            if mutator is not None:
                vec = mutator(name, vec)
            vecs[name] = vec
        names = list(vecs)
        for a_i in range(len(names)):
            for b_i in range(a_i + 1, len(names)):
                a, b = names[a_i], names[b_i]
                if "trie" in (a, b) and config.g_max < max(len(s), len(t)) - 1:
                    continue  # trie is approximate below full gap budget
                for q in range(1, config.p + 1):
                    from .hdr import rel_deviation
                    dev = rel_deviation(vecs[a].level(q).log(), vecs[b].level(q).log())
                    report.max_rel_deviation = max(report.max_rel_deviation, dev)
                    if dev > config.tolerance:
                        report.passed = False
                        report.failures.append(CrosscheckFailure(
                            length, alpha, pair_id, a, b, q, dev))
        report.checked_pairs += 1

    for length in config.lengths:
        for alpha in config.alphabet_sizes:
            for pair_id in range(config.pairs):
                rng = cell_rng(config.seed, length, alpha, pair_id)
                s, t = gen_random_pair(length, alpha, rng)
                check_pair(length, alpha, pair_id, s, t)
    for pair_id, (s, t) in enumerate(extra_pairs):
        check_pair(len(s), s.alphabet_size, -(pair_id + 1), s, t)
    return report


# -- synthetic benchmark -----------------------------------------------------


def _header(kind: str, config: BenchConfig) -> str:
    cfg = ";".join(f"{f.name}={getattr(config, f.name)!r}" for f in fields(config))
    return (f"# ssk-bench-{kind} csv v{CSV_VERSION}; "
            f"rng=numpy-PCG64(SeedSequence([seed,length,alphabet,pair])); {cfg}")


def _timed_runs(run, s, t, repetitions):
    """One discarded warm-up, then (elapsed_ns, KernelVector) per repetition."""
    run(s, t)
    out = []
    for _ in range(repetitions):
        t0 = time.perf_counter_ns()
        vec = run(s, t)
        t1 = time.perf_counter_ns()
        out.append((t1 - t0, vec))
    return out


def bench_synthetic(config: BenchConfig, out: IO[str]) -> int:
    """Grid benchmark; returns the number of failed (oom/error) cells."""
    writer = csv.writer(out)
    out.write(_header("synthetic", config) + "\n")
    writer.writerow(SYNTH_COLUMNS)
    failed = 0
    for length in config.lengths:
        for alpha in config.alphabet_sizes:
            for pair_id in range(config.pairs):
                rng = cell_rng(config.seed, length, alpha, pair_id)
                s, t = gen_random_pair(length, alpha, rng)
                ml = match_list_size(s, t)
                for name in config.algorithms:
                    base = dict(algorithm=name, len_s=len(s), len_t=len(t),
                                alphabet_size=alpha, p=config.p, lam=config.lam,
                                match_list_size=ml, pair_id=pair_id)
                    if name == "brute" and max(len(s), len(t)) > config.oracle_cap:
                        failed += 1
                        writer.writerow(BenchRecord(
                            repetition=0, elapsed_nanoseconds=-1,
                            kernel_value_log=math.nan, status="cap",
                            **base).row())
                        continue
                    if not _memory_ok(name, len(s), len(t), ml):
                        failed += 1
                        writer.writerow(BenchRecord(
                            repetition=0, elapsed_nanoseconds=-1,
                            kernel_value_log=math.nan, status="oom",
                            **base).row())
                        continue
                    run = make_runner(name, config)
                    try:
                        results = _timed_runs(run, s, t, config.repetitions)
                    except MemoryError:
                        failed += 1
                        writer.writerow(BenchRecord(
                            repetition=0, elapsed_nanoseconds=-1,
                            kernel_value_log=math.nan, status="oom",
                            **base).row())
                        continue
                    for rep, (elapsed, vec) in enumerate(results):
                        writer.writerow(BenchRecord(
                            repetition=rep, elapsed_nanoseconds=elapsed,
                            kernel_value_log=vec.level(config.p).log(),
                            **base).row())
    return failed


# -- corpus benchmark --------------------------------------------------------

_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


def preprocess_text(text: str) -> str:
    """Lowercase and strip punctuation; tokenization happens at encode time."""
    return text.lower().translate(_PUNCT_TABLE)


def load_corpus(directory: str | Path) -> tuple[list[tuple[str, str]], list[str]]:
    """(name, preprocessed text) per readable file, plus unreadable names."""
    directory = Path(directory)
    docs = []
    unreadable = []
    for path in sorted(p for p in directory.iterdir() if p.is_file()):
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError):
            unreadable.append(path.name)
            continue
        docs.append((path.name, preprocess_text(text)))
    return docs, unreadable


def bench_corpus(directory: str | Path, config: BenchConfig, out: IO[str]) -> int:
    """Pair documents by closest token counts and time each algorithm.

    Emits one row per (pair, algorithm, p, repetition) with the pair's
    inverse match frequency |s||t|/|L| and mean size; returns the number
    of failed cells.
    """
    writer = csv.writer(out)
    out.write(_header("corpus", config) + "\n")
    writer.writerow(CORPUS_COLUMNS)
    docs, unreadable = load_corpus(directory)
    failed = 0
    for name in unreadable:
        writer.writerow([name, "", 0, 0, "", "", 0, "", 0, repr(config.lam),
                         -1, 0, -1, repr(math.nan), "unreadable"])
    mode = "character" if config.tokenize == "character" else "word"
    _vocab, seqs = encode_texts([text for _name, text in docs], mode)
    named = sorted(zip((n for n, _ in docs), seqs),
                   key=lambda kv: (len(kv[1]), kv[0]))
    pairs = [(named[k], named[k + 1]) for k in range(0, len(named) - 1, 2)]
    for pair_id, ((name_a, s), (name_b, t)) in enumerate(pairs):
        ml = match_list_size(s, t)
        imf = (len(s) * len(t) / ml) if ml else math.inf
        mean_size = (len(s) + len(t)) / 2
        for algo in config.algorithms:
            for p in config.ps:
                sub = replace(config, p=p, ps=(p,))
                run = make_runner(algo, sub)
                prefix = [name_a, name_b, len(s), len(t), repr(imf),
                          repr(mean_size), ml, algo, p, repr(config.lam), pair_id]
                if algo == "brute" and max(len(s), len(t)) > config.oracle_cap:
                    failed += 1
                    writer.writerow(prefix + [0, -1, repr(math.nan), "cap"])
                    continue
                if not _memory_ok(algo, len(s), len(t), ml):
                    failed += 1
                    writer.writerow(prefix + [0, -1, repr(math.nan), "oom"])
                    continue
                try:
                    results = _timed_runs(run, s, t, config.repetitions)
                except MemoryError:
                    failed += 1
                    writer.writerow(prefix + [0, -1, repr(math.nan), "oom"])
                    continue
                for rep, (elapsed, vec) in enumerate(results):
                    writer.writerow(prefix + [rep, elapsed,
                                              repr(vec.level(p).log()), "ok"])
    return failed


def strip_elapsed(csv_text: str) -> str:
    """Drop timing columns so deterministic output can be compared bytewise."""
    lines = csv_text.splitlines()
    if not lines:
        return ""
    out = [lines[0]]
    header = lines[1].split(",")
    drop = [header.index(c) for c in ELAPSED_COLUMNS if c in header]
    for line in lines[1:]:
        cells = line.split(",")
        out.append(",".join(c for k, c in enumerate(cells) if k not in drop))
    return "\n".join(out) + "\n"

"""Command-line harness: selfcheck, compute, crosscheck and benchmarks."""

from __future__ import annotations

import argparse
import sys
from contextlib import nullcontext

from .bench import (ALGORITHMS, BenchConfig, bench_corpus, bench_synthetic,
                    crosscheck, make_runner)
from .core import KernelParams, encode_texts, normalize, build_match_list
from .dp import dp_ssk
from .geo import geometric_ssk
from .geometry import LayeredRangeSumTree, RangeQuery2D, tilde_match_points
from .hdr import HdrScalar
from .oracle import brute_force_ssk
from .sparse import sparse_level_lists, sparse_ssk
from .trie import trie_ssk


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x)


def _algo_list(text: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in text.split(",") if x.strip())


def _fmt(v: HdrScalar) -> str:
    f = v.to_float()
    if v.is_zero or (f not in (0.0, float("inf"))):
        return repr(f)
    return f"{v.mantissa}*2^{v.exponent}"


def cmd_selfcheck(_args) -> int:
    """Worked-example fixtures; quick smoke for a fresh install."""
    lam = 0.5
    failures = 0

    def check(name: str, ok: bool, detail: str = ""):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
        if not ok:
            failures += 1

    _v, (s, t) = encode_texts(["gatta", "cata"], "character")
    params = KernelParams(p=3, lam=lam)
    expected = (6 * lam ** 2,
                2 * lam ** 4 + 2 * lam ** 5 + lam ** 7,
                2 * lam ** 7)
    for name, vec in [("brute", brute_force_ssk(s, t, params)),
                      ("dp", dp_ssk(s, t, params)),
                      ("sparse", sparse_ssk(s, t, params)),
                      ("geometric", geometric_ssk(s, t, params)),
                      ("trie(g_max=4)", trie_ssk(s, t, params, g_max=4))]:
        got = tuple(v.to_float() for v in vec)
        check(f"{name} K_1..K_3(gatta, cata)", got == expected, f"{got}")

    _v, (bar, bat) = encode_texts(["bar", "bat"], "character")
    p2 = KernelParams(p=2, lam=lam)
    k_st = dp_ssk(bar, bat, p2).level(2)
    k_ss = dp_ssk(bar, bar, p2).level(2)
    k_tt = dp_ssk(bat, bat, p2).level(2)
    check("K_2(bar, bat) = lambda^4", k_st.to_float() == lam ** 4)
    check("normalized = 1/(2 + lambda^2)",
          abs(normalize(k_st, k_ss, k_tt) - 1 / (2 + lam ** 2)) < 1e-15)

    levels = sparse_level_lists(s, t, KernelParams(p=2, lam=lam))
    l1_row2 = [(j, v.to_float()) for j, v in levels[0].row(2)]
    l2_row5 = [(j, v.to_float()) for j, v in levels[1].row(5)]
    check("sparse L_1(2)", l1_row2 == [(2, lam ** 7), (4, lam ** 5)], f"{l1_row2}")
    check("sparse L_2(5)", l2_row5 == [(4, lam ** 7 + lam ** 5 + lam ** 4)], f"{l2_row5}")

    tree = LayeredRangeSumTree(tilde_match_points(build_match_list(s, t, lam)))
    queries = [((1, 1), 0.0), ((1, 3), 0.0), ((2, 2), lam ** -2),
               ((3, 2), lam ** -2), ((4, 1), 0.0),
               ((4, 3), lam ** -5 + lam ** -4 + lam ** -2)]
    for (x2, y2), want in queries:
        got = tree.range_sum(RangeQuery2D.box(0, x2, 0, y2)).to_float()
        check(f"range sum [(0|-inf):({x2}|+inf)]x[(0|-inf):({y2}|+inf)]",
              got == want, f"{got}")

    print(f"selfcheck: {'all good' if failures == 0 else f'{failures} failures'}")
    return 1 if failures else 0


def cmd_compute(args) -> int:
    _v, (s, t) = encode_texts([args.s, args.t], args.mode)
    params = KernelParams(p=args.p, lam=args.lam)
    runner = {
        "brute": lambda: brute_force_ssk(s, t, params),
        "dp": lambda: dp_ssk(s, t, params),
        "sparse": lambda: sparse_ssk(s, t, params),
        "geometric": lambda: geometric_ssk(s, t, params),
        "trie": lambda: trie_ssk(s, t, params, g_max=args.g_max),
    }[args.algorithm]
    vec = runner()
    for q in range(1, params.p + 1):
        v = vec.level(q)
        print(f"K_{q} = {_fmt(v)}  (ln = {v.log()!r})")
    return 0


def cmd_crosscheck(args) -> int:
    config = BenchConfig(
        algorithms=args.algorithms, lengths=args.lengths,
        alphabet_sizes=args.alphabets, p=args.p, lam=args.lam,
        seed=args.seed, g_max=args.g_max, pairs=args.pairs,
        tolerance=args.tolerance)
    report = crosscheck(config)
    print(report.summary())
    return 0 if report.passed else 1


def _write_bench(args, runner) -> int:
    ctx = open(args.out, "w", newline="") if args.out else nullcontext(sys.stdout)
    with ctx as out:
        failed = runner(out)
    if failed:
        print(f"{failed} cells failed (see status column)", file=sys.stderr)
    return 1 if failed else 0


def cmd_bench_synthetic(args) -> int:
    config = BenchConfig(
        algorithms=args.algorithms, lengths=args.lengths,
        alphabet_sizes=args.alphabets, p=args.p, lam=args.lam,
        seed=args.seed, g_max=args.g_max, repetitions=args.repetitions,
        pairs=args.pairs)
    return _write_bench(args, lambda out: bench_synthetic(config, out))


def cmd_bench_corpus(args) -> int:
    config = BenchConfig(
        algorithms=args.algorithms, lengths=(1,), alphabet_sizes=(1,),
        p=max(args.p_list), lam=args.lam, seed=args.seed, g_max=args.g_max,
        repetitions=args.repetitions, pairs=1, ps=args.p_list,
        tokenize=args.tokenize)
    return _write_bench(args, lambda out: bench_corpus(args.directory, config, out))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssk-bench",
        description="String subsequence kernels: compute, cross-validate, benchmark.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("selfcheck", help="verify the worked-example fixtures")

    c = sub.add_parser("compute", help="kernel values for one string pair")
    c.add_argument("--s", required=True, help="first string")
    c.add_argument("--t", required=True, help="second string")
    c.add_argument("--mode", choices=("character", "word"), default="character")
    c.add_argument("-p", type=int, default=3, help="subsequence length")
    c.add_argument("--lam", type=float, default=0.5, help="decay penalty")
    c.add_argument("--algorithm", choices=ALGORITHMS, default="dp")
    c.add_argument("--g-max", type=int, default=10, dest="g_max")

    def common(p, need_seed=True):
        p.add_argument("--lengths", type=_int_list, required=True,
                       help="comma-separated string lengths")
        p.add_argument("--alphabets", type=_int_list, required=True,
                       help="comma-separated alphabet sizes")
        p.add_argument("-p", type=int, default=10)
        p.add_argument("--lam", type=float, default=0.5)
        p.add_argument("--pairs", type=int, default=3)
        p.add_argument("--g-max", type=int, default=10, dest="g_max")
        p.add_argument("--seed", type=int, required=need_seed,
                       help="base RNG seed (mandatory for reproducibility)")

    x = sub.add_parser("crosscheck", help="pairwise-compare algorithm outputs")
    common(x)
    x.add_argument("--algorithms", type=_algo_list, default=("dp", "sparse", "geometric"))
    x.add_argument("--tolerance", type=float, default=1e-9)

    b = sub.add_parser("bench-synthetic", help="timing grid over random pairs (CSV)")
    common(b)
    b.add_argument("--algorithms", type=_algo_list, default=("dp", "sparse", "geometric"))
    b.add_argument("--repetitions", type=int, default=5)
    b.add_argument("--out", help="CSV path (default: stdout)")

    d = sub.add_parser("bench-corpus", help="timing over a directory of text files (CSV)")
    d.add_argument("directory")
    d.add_argument("--algorithms", type=_algo_list, default=("dp", "sparse", "geometric"))
    d.add_argument("--p-list", type=_int_list, default=(2, 5, 10), dest="p_list")
    d.add_argument("--lam", type=float, default=0.5)
    d.add_argument("--tokenize", choices=("word", "character"), default="word")
    d.add_argument("--repetitions", type=int, default=5)
    d.add_argument("--g-max", type=int, default=10, dest="g_max")
    d.add_argument("--seed", type=int, required=True)
    d.add_argument("--out", help="CSV path (default: stdout)")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "selfcheck": cmd_selfcheck,
        "compute": cmd_compute,
        "crosscheck": cmd_crosscheck,
        "bench-synthetic": cmd_bench_synthetic,
        "bench-corpus": cmd_bench_corpus,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())

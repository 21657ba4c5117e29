#!/usr/bin/env python3
"""Fabricate a small corpus directory for trying bench-corpus.

Writes N pseudo-documents of zipf-ish word soup with varying lengths, so
pairs land at different inverse match frequencies.  Then e.g.:

    python scripts/make_demo_corpus.py demo_docs 30
    ssk-bench bench-corpus demo_docs --p-list 2,5,10 --seed 7 --out corpus.csv
"""

import sys
from pathlib import Path

import numpy as np

WORDS = [f"w{k:03d}" for k in range(400)]


def main(argv):
    out_dir = Path(argv[0]) if argv else Path("demo_docs")
    count = int(argv[1]) if len(argv) > 1 else 20
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(1234)
    ranks = np.arange(1, len(WORDS) + 1, dtype=float)
    probs = (1 / ranks) / (1 / ranks).sum()
    for k in range(count):
        length = int(rng.integers(80, 600))
        tokens = rng.choice(WORDS, size=length, p=probs)
        (out_dir / f"doc{k:03d}.txt").write_text(" ".join(tokens) + "\n")
    print(f"wrote {count} documents to {out_dir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))

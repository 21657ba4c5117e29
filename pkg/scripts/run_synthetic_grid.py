#!/usr/bin/env python3
"""Reproduce the full synthetic timing grid.

Lengths and alphabet sizes both sweep 2, 4, ..., 8192 at p=10,
lambda=0.5.  The complete grid takes hours and the densest cells are
recorded as oom on small machines; pass --lengths/--alphabets to trim.
"""

import sys

from ssk.cli import main

GRID = ",".join(str(2 ** k) for k in range(1, 14))

if __name__ == "__main__":
    args = sys.argv[1:]
    defaults = ["bench-synthetic",
                "--lengths", GRID,
                "--alphabets", GRID,
                "-p", "10", "--lam", "0.5",
                "--pairs", "3", "--repetitions", "5",
                "--seed", "42",
                "--algorithms", "dp,sparse,geometric",
                "--out", "synthetic_grid.csv"]
    sys.exit(main(args if args else defaults))

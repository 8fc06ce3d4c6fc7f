#!/usr/bin/env python3
"""Timing-growth experiment for the convex n-fold solver.

Solves random feasible 2x2xN line-sum transportation instances with the
squared-norm objective while doubling the layer count N, and prints the
wall-clock time per solve together with the per-doubling growth ratio.
Near-polynomial growth shows up as a ratio that stays bounded as N
doubles.

Usage: python scripts/timing_growth.py [--max-n 64] [--threads 1] [--seed 0]
"""

from __future__ import annotations

import argparse
import random
import time

from gravopt.apps import build_threeway
from gravopt.config import RunConfig
from gravopt.convexopt import SquaredNormObjective, solve_convex_nfold


def make_instance(rng: random.Random, n: int):
    # sample a witness table, take its margins: the instance is feasible
    tab = [[[rng.randint(0, 3) for _ in range(n)] for _ in range(2)]
           for _ in range(2)]
    u = [[sum(tab[i][j]) for j in range(2)] for i in range(2)]
    v = [[sum(tab[i][j][k] for j in range(2)) for k in range(n)]
         for i in range(2)]
    z = [[sum(tab[i][j][k] for i in range(2)) for k in range(n)]
         for j in range(2)]
    stencil, rhs, codec = build_threeway(2, 2, n, u, v, z)
    arrays = [[[[rng.randint(-2, 2) for _ in range(n)]
                for _ in range(2)] for _ in range(2)]
              for _ in range(2)]
    return stencil, rhs, codec.encode_weights(arrays)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=64)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    config = RunConfig.from_env(threads=args.threads)
    objective = SquaredNormObjective()

    n = 4
    previous = None
    print(f"{'n':>6} {'ms':>10} {'ratio':>8}  status")
    while n <= args.max_n:
        stencil, rhs, weights = make_instance(rng, n)
        start = time.perf_counter()
        out = solve_convex_nfold(stencil, n, weights, rhs, objective, config)
        elapsed = (time.perf_counter() - start) * 1000.0
        ratio = "" if previous is None else f"{elapsed / max(previous, 0.05):.2f}"
        print(f"{n:>6} {elapsed:>10.1f} {ratio:>8}  {out.status}")
        previous = elapsed
        n *= 2


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Adaptive-walk success vs ruggedness.

Sweeps the NK interaction order and reports the mean best-fitness percentile
reached by greedy and stochastic walk batches, plus the local-optima count.
"""

import argparse

import numpy as np

import fitgraph as fg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--k", type=int, nargs="+", default=[0, 2, 4, 8, 11])
    ap.add_argument("--runs", type=int, default=100)
    ap.add_argument("--seeds", type=int, default=20)
    args = ap.parse_args()

    print(f"{'k':>3} {'n_optima':>9} {'greedy pct':>11} {'stochastic pct':>15}")
    for k in args.k:
        optima, greedy, stochastic = [], [], []
        for seed in range(args.seeds):
            landscape = fg.nk(args.n, k, seed=seed)
            optima.append(landscape.optima.count)
            greedy.append(
                fg.run_de(landscape, "greedy", runs=args.runs, seed=seed).mean_percentile
            )
            stochastic.append(
                fg.run_de(landscape, "stochastic", runs=args.runs, seed=seed).mean_percentile
            )
        print(
            f"{k:>3} {np.mean(optima):>9.1f} {np.mean(greedy):>11.4f} "
            f"{np.mean(stochastic):>15.4f}"
        )


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Construction runtime and memory as landscape size grows.

Generates NK landscapes from 2^5 up to 2^max-n variants and times the full
record -> graph pipeline; peak RSS is the process high-water mark.
"""

import argparse
import resource
import time

import numpy as np

import fitgraph as fg
from fitgraph.landscape import VariantRecord, build_from_records


def sequences_of(landscape):
    space = landscape.space
    digits = np.stack(
        [space.digits(landscape.codes, i) for i in range(space.n)], axis=1
    )
    return np.array(["0", "1"], dtype="U1")[digits].view(f"U{space.n}").ravel()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=20)
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()

    print(f"{'n':>3} {'variants':>10} {'edges':>10} {'build (s)':>10} {'rss (GB)':>9}")
    for n in range(5, args.max_n + 1, 3):
        gen = fg.generate(fg.GeneratorConfig(model="nk", n=n, k=min(args.k, n - 1),
                                             seed=args.seed))
        records = [
            VariantRecord(tuple(s), float(f))
            for s, f in zip(sequences_of(gen), gen.fitness)
        ]
        t0 = time.time()
        landscape = build_from_records(records, "binary")
        dt = time.time() - t0
        rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1e6
        print(f"{n:>3} {landscape.node_count:>10} {landscape.edge_count:>10} "
              f"{dt:>10.2f} {rss:>9.2f}")


if __name__ == "__main__":
    main()

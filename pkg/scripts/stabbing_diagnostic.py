"""How many k-d partition cells a random axis box partially intersects,
relative to r^(1-1/d), on uniform points."""

import argparse

import numpy as np

from dpcmaxima.core import AxisBox, PointSet
from dpcmaxima.kdpart import build_partition, partial_intersection_count


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=4096)
    ap.add_argument("--boxes", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'d':>2} {'r':>6} {'max':>6} {'mean':>8} {'max/r^(1-1/d)':>14}")
    for d in (2, 3, 4):
        S = PointSet(rng.random((args.n, d)))
        for r in (16, 64, 256, 1024):
            P = build_partition(S, r)
            counts = []
            for _ in range(args.boxes):
                a, b = rng.random(d), rng.random(d)
                counts.append(partial_intersection_count(
                    P, AxisBox(tuple(np.minimum(a, b)), tuple(np.maximum(a, b)))))
            scale = r ** (1 - 1 / d)
            print(f"{d:>2} {r:>6} {max(counts):>6} {np.mean(counts):>8.1f} {max(counts) / scale:>14.3f}")


if __name__ == "__main__":
    main()

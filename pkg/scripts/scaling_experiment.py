"""Counter-based scaling sweep over the cascade and balanced families.

Writes one CSV row per (family, n, seed) with the dpc trace counters and the
theoretical cost of the known partition, then prints the per-doubling growth
of mean dominance queries.

    python scripts/scaling_experiment.py --d 4 --n-list 4096,8192,16384,32768 --seeds 3 --out scaling.csv
"""

import argparse
import csv
import math
from collections import defaultdict

from dpcmaxima.dpc import compute_maxima
from dpcmaxima.lab import gen_balanced, gen_cascade, partition_entropy, theoretical_cost


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", type=int, default=4)
    ap.add_argument("--n-list", default="4096,8192,16384,32768")
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--out", default="scaling.csv")
    args = ap.parse_args()
    ns = [int(x) for x in args.n_list.split(",")]

    rows = []
    for family, gen in (("cascade", gen_cascade), ("balanced", gen_balanced)):
        for n in ns:
            h = math.ceil(math.sqrt(n))
            if family == "balanced":
                while n % h:
                    h -= 1
            for seed in range(args.seeds):
                inst = gen(n, h, args.d, seed)
                _, trace = compute_maxima(inst.points)
                rows.append(dict(
                    family=family, n=n, h=h, d=args.d, seed=seed,
                    queries=trace.total_queries,
                    groups_touched=trace.groups_touched,
                    iterations=len(trace.iterations),
                    sigma=" ".join(str(it.sigma_after) for it in trace.iterations),
                    entropy=partition_entropy(inst.known_partition),
                    theoretical_cost=theoretical_cost(inst.known_partition, args.d),
                ))

    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)

    means = defaultdict(list)
    for r in rows:
        means[r["family"], r["n"]].append(r["queries"])
    for family in ("cascade", "balanced"):
        series = [sum(means[family, n]) / len(means[family, n]) for n in ns]
        growth = [b / a for a, b in zip(series, series[1:])]
        print(f"{family:>9}: mean queries {[round(s, 1) for s in series]}")
        print(f"{'':>9}  queries/point {[round(s / n, 4) for s, n in zip(series, ns)]}")
        print(f"{'':>9}  growth per doubling {[round(g, 3) for g in growth]}")
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()

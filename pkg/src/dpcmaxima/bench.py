"""Running algorithms on instances and summarising report rows."""

from __future__ import annotations

import math
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence

import numpy as np

from .core import PointSet, dedupe
from .dpc import compute_maxima
from .lab import (
    Family,
    GeneratedInstance,
    _naive_mask,
    generate,
    partition_entropy,
    sweep_maxima_2d,
    theoretical_cost,
)

ALGORITHMS = ("dpc", "naive", "sweep2d")


def run_algorithm(algo: str, points: PointSet):
    """Returns (maxima, counters) for one algorithm on one point set."""
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    if algo == "sweep2d" and points.d != 2:
        raise ValueError(f"sweep2d needs d=2, got d={points.d}")
    if points.n == 0:
        raise ValueError("empty instance")
    t0 = time.perf_counter_ns()
    if algo == "dpc":
        maxima, trace = compute_maxima(points)
        elapsed = time.perf_counter_ns() - t0
        counters = dict(dominance_queries=trace.total_queries, iterations=len(trace.iterations),
                        duplicates_removed=trace.duplicates_removed, distinct=trace.n)
    elif algo == "naive":
        S, dups = dedupe(points)
        mask, comparisons = _naive_mask(S.coords)
        maxima = S.take(np.flatnonzero(mask))
        elapsed = time.perf_counter_ns() - t0
        counters = dict(dominance_queries=comparisons, iterations=0,
                        duplicates_removed=dups, distinct=S.n)
    else:
        S, dups = dedupe(points)
        maxima = sweep_maxima_2d(S)
        elapsed = time.perf_counter_ns() - t0
        counters = dict(dominance_queries=S.n, iterations=0, duplicates_removed=dups, distinct=S.n)
    counters["wall_time_ns"] = elapsed
    return maxima, counters


def report_row(algo: str, points: PointSet, meta: Optional[Dict], instance_id: str):
    maxima, c = run_algorithm(algo, points)
    meta = meta or {}
    return {
        "instance_id": instance_id,
        "family": meta.get("family", "unknown"),
        "n": points.n,
        "d": points.d,
        "h": maxima.n,
        "algorithm": algo,
        "wall_time_ns": c["wall_time_ns"],
        "dominance_queries": c["dominance_queries"],
        "iterations": c["iterations"],
        "points_pruned_total": c["distinct"] - maxima.n,
        "duplicates_removed": c["duplicates_removed"],
        "entropy_known": meta.get("entropy_known"),
        "theoretical_cost": meta.get("theoretical_cost"),
        "seed": meta.get("seed"),
    }


def instance_metadata(inst: GeneratedInstance) -> Dict:
    pts = inst.points
    meta = {
        "family": inst.family.value,
        "seed": inst.seed,
        "n": pts.n,
        "d": pts.d,
        "known_maxima_size": inst.known_maxima_size,
        "partition_sizes": None,
        "entropy_known": None,
        "theoretical_cost": None,
    }
    if inst.known_partition is not None:
        spec = inst.known_partition
        meta["partition_sizes"] = list(spec.subset_sizes)
        meta["entropy_known"] = partition_entropy(spec)
        meta["theoretical_cost"] = theoretical_cost(spec, pts.d)
    return meta


def resolve_h(rule: str, n: int, family: str) -> Optional[int]:
    """h from a rule: 'sqrt', 'log', 'all', or a literal integer.

    Balanced instances need h | n, so the rule's value is lowered to the
    largest divisor of n not above it.
    """
    if Family(family) is Family.UNIFORM:
        return None
    if rule == "sqrt":
        h = math.ceil(math.sqrt(n))
    elif rule == "log":
        h = max(1, math.ceil(math.log2(n)))
    elif rule == "all":
        h = n
    else:
        h = int(rule)
    h = max(1, min(h, n))
    if Family(family) is Family.BALANCED:
        while n % h:
            h -= 1
    return h


def instance_id(family: str, n: int, h: Optional[int], d: int, seed: int) -> str:
    return f"{family}-n{n}-h{h if h is not None else 'na'}-d{d}-s{seed}"


def _bench_job(args):
    family, n, h, d, seed, algos = args
    inst = generate(family, n, h, d, seed)
    meta = instance_metadata(inst)
    iid = instance_id(family, n, h, d, seed)
    return [report_row(a, inst.points, meta, iid) for a in algos]


def bench_rows(family: str, d: int, h_rule: str, n_list: Sequence[int], seeds: Sequence[int],
               algos: Optional[Sequence[str]] = None, jobs: int = 1) -> List[Dict]:
    if algos is None:
        algos = ["dpc", "naive"] + (["sweep2d"] if d == 2 else [])
    elif "sweep2d" in algos and d != 2:
        raise ValueError("sweep2d needs d=2")
    tasks = [(family, n, resolve_h(h_rule, n, family), d, s, tuple(algos))
             for n in n_list for s in seeds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_bench_job, tasks))
    else:
        chunks = [_bench_job(t) for t in tasks]
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=lambda r: (r["family"], r["n"], r["seed"], r["algorithm"]))
    return rows


def _num(x: str) -> Optional[float]:
    return float(x) if x not in ("", None) else None


def summarize(rows: List[Dict[str, str]]) -> str:
    if not rows:
        return "no rows"
    blocks = defaultdict(lambda: defaultdict(list))
    for r in rows:
        blocks[r["family"]][r["algorithm"]].append(r)
    out = []
    header = f"  {'algorithm':<10} {'rows':>5} {'mean n':>10} {'queries/pt':>12} {'iters':>7} {'q/cost':>10}"
    for family in sorted(blocks):
        out.append(f"family {family}")
        out.append(header)
        for algo in sorted(blocks[family]):
            group = blocks[family][algo]
            ns = [_num(r["n"]) for r in group]
            qpp = [_num(r["dominance_queries"]) / _num(r["n"]) for r in group]
            its = [_num(r["iterations"]) for r in group]
            ratios = [_num(r["dominance_queries"]) / _num(r["theoretical_cost"])
                      for r in group if _num(r["theoretical_cost"])]
            ratio = f"{sum(ratios) / len(ratios):10.4f}" if ratios else f"{'-':>10}"
            out.append(f"  {algo:<10} {len(group):>5} {sum(ns) / len(ns):>10.1f} "
                       f"{sum(qpp) / len(qpp):>12.4f} {sum(its) / len(its):>7.2f} {ratio}")
    return "\n".join(out)

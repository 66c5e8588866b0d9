"""Divide, prune and conquer maxima computation with per-iteration counters."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .core import PointSet, dedupe
from .kdpart import next_pow2, partition_blocks
from .oracle import OracleStats, batch_dominated


@dataclass(frozen=True)
class IterationRecord:
    j: int
    r_j: int
    sigma_before: int
    sigma_after: int
    queries_issued: int
    subsets_pruned: int
    groups_touched: int


@dataclass
class TraceMetrics:
    iterations: List[IterationRecord] = field(default_factory=list)
    total_queries: int = 0
    duplicates_removed: int = 0
    h: int = 0
    n: int = 0

    @property
    def groups_touched(self) -> int:
        return sum(it.groups_touched for it in self.iterations)

    @property
    def points_pruned(self) -> int:
        return self.n - self.h


def iteration_bound(n: int) -> int:
    """ceil(log2 log2 n) + 1, the most outer-loop passes on n distinct points."""
    if n < 4:
        return 1
    return math.ceil(math.log2(math.log2(n))) + 1


def rj_schedule(j: int, n: int) -> int:
    """2^(2^j), capped at the smallest power of two >= n."""
    if j < 1 or n < 1:
        raise ValueError("need j >= 1 and n >= 1")
    cap = next_pow2(n)
    cap_exp = cap.bit_length() - 1
    # compare exponents so the double exponential is never materialised
    if j >= cap_exp.bit_length() + 1 or (1 << j) >= cap_exp:
        return cap
    return 1 << (1 << j)


def _prune(coords: np.ndarray, r: int, j: int):
    order, bounds = partition_blocks(coords, r)
    sizes = np.diff(bounds)
    blocks = np.flatnonzero(sizes)
    corners = np.maximum.reduceat(coords[order], bounds[:-1][blocks], axis=0)
    stats = OracleStats()
    # one oracle over the set as it stands at iteration start
    dominated = np.asarray(batch_dominated(coords, corners, budget_r=r, stats=stats), dtype=bool)
    keep = np.repeat(~dominated, sizes[blocks])
    survivors = np.sort(order[keep])
    record = IterationRecord(
        j=j,
        r_j=r,
        sigma_before=coords.shape[0],
        sigma_after=survivors.shape[0],
        queries_issued=int(corners.shape[0]),
        subsets_pruned=int(dominated.sum()),
        groups_touched=stats.groups_touched,
    )
    kept_blocks = [(bounds[i], bounds[i + 1]) for i in blocks[~dominated]]
    return order, kept_blocks, survivors, record


def prune_iteration(points: PointSet, r: int, j: int = 1) -> Tuple[PointSet, List[PointSet], IterationRecord]:
    """One partition-and-prune pass: drop every subset whose enclosing box's
    max corner is weakly dominated by a different point of ``points``."""
    if points.n == 0:
        raise ValueError("cannot prune an empty point set")
    order, kept_blocks, survivors, record = _prune(points.coords, r, j)
    kept = [points.take(order[a:b]) for a, b in kept_blocks]
    return points.take(survivors), kept, record


def compute_maxima(points: PointSet) -> Tuple[PointSet, TraceMetrics]:
    """Pareto-maximal points of ``points`` (after removing exact duplicates)."""
    if points.n == 0:
        raise ValueError("cannot compute the maxima of an empty point set")
    S, dups = dedupe(points)
    trace = TraceMetrics(duplicates_removed=dups, n=S.n)
    coords, index = S.coords, S.index
    n = S.n
    j = 0
    biggest_kept = n
    while biggest_kept > 1:
        j += 1
        r = rj_schedule(j, n)
        _, kept_blocks, rows, record = _prune(coords, r, j)
        coords, index = coords[rows], index[rows]
        trace.iterations.append(record)
        trace.total_queries += record.queries_issued
        biggest_kept = max((b - a for a, b in kept_blocks), default=0)
    result = PointSet(coords, index, d=S.d)
    trace.h = result.n
    return result, trace

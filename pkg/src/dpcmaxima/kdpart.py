"""Median-split k-d tree partition of a point set into r' = 2^k subsets.

Every level splits each cell at the lower median along axis ``level mod d``,
ordering points by (coordinate, input position). A cell of m points yields
children of ceil(m/2) and floor(m/2) points, so after k levels every leaf
holds at most ceil(n / 2^k) points. Singleton cells split into (1, 0), which
pads the leaf list with empty subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .core import AxisBox, DimensionError, as_array


def next_pow2(r: int) -> int:
    return 1 << max(0, (int(r) - 1).bit_length())


@dataclass(frozen=True)
class KdPartition:
    subsets: Tuple[np.ndarray, ...]  # row positions into the partitioned set
    cells: Tuple[AxisBox, ...]
    r: int
    depth: int
    n: int

    @property
    def sizes(self) -> List[int]:
        return [len(s) for s in self.subsets]

    @property
    def max_size(self) -> int:
        return -(-self.n // len(self.subsets))

    def nonempty(self):
        return [(s, c) for s, c in zip(self.subsets, self.cells) if len(s)]


def _split_levels(pts: np.ndarray, levels: int):
    """Run the level-wise median splits; returns (order, bounds, depth_used)."""
    n, d = pts.shape
    order = np.arange(n, dtype=np.int64)
    bounds = np.array([0, n], dtype=np.int64)
    depth_used = 0
    for level in range(levels):
        axis = level % d
        sizes = np.diff(bounds)
        if sizes.max() > 1:
            depth_used = level + 1
        seg = np.repeat(np.arange(sizes.shape[0]), sizes)
        # order within each segment by (coordinate, input position)
        perm = np.lexsort((order, pts[order, axis], seg))
        order = order[perm]
        mids = bounds[:-1] + (sizes + 1) // 2
        new = np.empty(2 * sizes.shape[0] + 1, dtype=np.int64)
        new[0:-1:2] = bounds[:-1]
        new[1::2] = mids
        new[-1] = n
        bounds = new
    return order, bounds, depth_used


def build_partition(points, r: int) -> KdPartition:
    """Partition ``points`` into ``next_pow2(r)`` subsets of size <= ceil(n/r')."""
    pts = as_array(points)
    n = pts.shape[0]
    if n == 0:
        raise ValueError("cannot partition an empty point set")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    rp = next_pow2(r)
    levels = rp.bit_length() - 1
    order, bounds, depth = _split_levels(pts, levels)
    subsets, cells = [], []
    d = pts.shape[1]
    for a, b in zip(bounds[:-1], bounds[1:]):
        rows = order[a:b]
        subsets.append(rows)
        if b > a:
            block = pts[rows]
            cells.append(AxisBox(tuple(block.min(axis=0)), tuple(block.max(axis=0))))
        else:
            cells.append(AxisBox((0.0,) * d, (0.0,) * d))
    return KdPartition(tuple(subsets), tuple(cells), rp, depth, n)


def partition_blocks(pts: np.ndarray, r: int):
    """Array-level variant used on the hot path: (order, bounds) of r' leaves."""
    rp = next_pow2(r)
    order, bounds, _ = _split_levels(pts, rp.bit_length() - 1)
    return order, bounds


def _partial_mask(partition: KdPartition, b: AxisBox) -> np.ndarray:
    """Per subset: nonempty and partially intersecting ``b`` (closed boxes)."""
    if len(b.lo) != len(partition.cells[0].lo):
        raise DimensionError(f"dimension mismatch: box d={len(b.lo)}")
    clo = np.array([c.lo for c in partition.cells])
    chi = np.array([c.hi for c in partition.cells])
    blo, bhi = np.asarray(b.lo), np.asarray(b.hi)
    disjoint = np.any(chi < blo, axis=1) | np.any(bhi < clo, axis=1)
    contained = np.all(blo <= clo, axis=1) & np.all(chi <= bhi, axis=1)
    nonempty = np.array([len(s) > 0 for s in partition.subsets])
    return nonempty & ~disjoint & ~contained


def partial_intersection_count(partition: KdPartition, b: AxisBox) -> int:
    return int(_partial_mask(partition, b).sum())


def residual_points(partition: KdPartition, points, b: AxisBox) -> int:
    """Points inside ``b`` whose subset's cell is not contained in ``b``."""
    pts = as_array(points)
    lo, hi = np.asarray(b.lo), np.asarray(b.hi)
    # contained cells are fully filtered; disjoint cells hold no point of b
    partial = np.flatnonzero(_partial_mask(partition, b))
    if partial.shape[0] == 0:
        return 0
    rows = np.concatenate([partition.subsets[i] for i in partial])
    block = pts[rows]
    return int(np.count_nonzero(np.all((block >= lo) & (block <= hi), axis=1)))

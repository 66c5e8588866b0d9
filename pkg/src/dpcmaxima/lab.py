"""Baseline maxima algorithms, instance families and partition arithmetic."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .core import AxisBox, DimensionError, PointSet, as_array, dedupe

class Family(str, enum.Enum):
    BALANCED = "balanced"
    CASCADE = "cascade"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class RespectfulPartitionSpec:
    subset_sizes: Tuple[int, ...]
    n: int
    boxes: Optional[Tuple[AxisBox, ...]] = None
    members: Optional[Tuple[Tuple[int, ...], ...]] = None  # row positions per subset

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.subset_sizes)
        object.__setattr__(self, "subset_sizes", sizes)
        if any(s < 1 for s in sizes):
            raise ValueError("every subset size must be >= 1")
        if sum(sizes) != self.n:
            raise ValueError(f"subset sizes sum to {sum(sizes)}, expected n={self.n}")

    @property
    def h(self) -> int:
        return len(self.subset_sizes)


@dataclass(frozen=True)
class GeneratedInstance:
    points: PointSet
    known_maxima_size: int
    known_partition: Optional[RespectfulPartitionSpec]
    family: Family
    seed: int


# -- baselines --------------------------------------------------------------------

def _naive_mask(pts: np.ndarray, block: int = 256) -> Tuple[np.ndarray, int]:
    """Maximality mask of distinct points, plus the pairwise comparisons made.

    Points are visited in descending lexicographic order, where any dominator
    precedes what it dominates; each block is compared against the maxima
    accepted so far and against itself.
    """
    n = pts.shape[0]
    maximal = np.zeros(n, dtype=bool)
    order = np.lexsort(tuple(-pts[:, i] for i in range(pts.shape[1] - 1, -1, -1)))
    found = np.empty((0, pts.shape[1]))
    comparisons = 0
    for a in range(0, n, block):
        rows = order[a:a + block]
        c = pts[rows]
        beaten = np.zeros(c.shape[0], dtype=bool)
        for other in (found, c):
            if other.shape[0] == 0:
                continue
            ge = np.all(other[None, :, :] >= c[:, None, :], axis=2)
            gt = np.any(other[None, :, :] > c[:, None, :], axis=2)
            beaten |= (ge & gt).any(axis=1)
            comparisons += c.shape[0] * other.shape[0]
        maximal[rows[~beaten]] = True
        found = np.concatenate((found, c[~beaten]))
    return maximal, comparisons


def naive_maxima(points) -> PointSet:
    """Points dominated by no other point, found by pairwise comparison."""
    S = points if isinstance(points, PointSet) else PointSet(as_array(points))
    S, _ = dedupe(S)
    mask, _ = _naive_mask(S.coords)
    return S.take(np.flatnonzero(mask))


def sweep_maxima_2d(points) -> PointSet:
    """Planar maxima: scan by x descending, keep points raising the best y."""
    S = points if isinstance(points, PointSet) else PointSet(as_array(points))
    if S.d != 2:
        raise DimensionError(f"sweep_maxima_2d needs d=2, got d={S.d}")
    if S.n == 0:
        raise ValueError("cannot compute the maxima of an empty point set")
    S, _ = dedupe(S)
    pts = S.coords
    order = np.lexsort((-pts[:, 1], -pts[:, 0]))
    keep, best = [], -math.inf
    for i, y in zip(order.tolist(), pts[order, 1].tolist()):
        if y > best:
            keep.append(i)
            best = y
    return S.take(sorted(keep))


# -- generators -------------------------------------------------------------------

def _open_uniform(rng: np.random.Generator, shape) -> np.ndarray:
    """Uniform draws from the open interval (0, 1)."""
    x = rng.random(shape)
    while True:
        bad = x == 0.0
        if not bad.any():
            return x
        x[bad] = rng.random(int(bad.sum()))


def _staircase_corners(h: int, d: int) -> np.ndarray:
    k = np.arange(1, h + 1, dtype=np.float64)
    corners = np.full((h, d), float(h))
    corners[:, 0] = k
    corners[:, 1] = h + 1 - k
    return corners


def _check_known_maxima(pts: np.ndarray, corners: np.ndarray, owner: np.ndarray) -> None:
    # every filler point sits strictly below its owning corner, and the corners
    # are pairwise incomparable through their first two coordinates
    fill = owner >= 0
    if fill.any() and not np.all(pts[fill] < corners[owner[fill]]):
        raise AssertionError("generated filler point escapes its dominating corner")
    if not (np.all(np.diff(corners[:, 0]) > 0) and np.all(np.diff(corners[:, 1]) < 0)):
        raise AssertionError("generated staircase corners are comparable")


def _assemble(corners, fill, owner_of_fill, rng) -> Tuple[np.ndarray, np.ndarray]:
    pts = np.concatenate((corners, fill))
    owner = np.concatenate((np.full(corners.shape[0], -1), owner_of_fill))
    perm = rng.permutation(pts.shape[0])
    return pts[perm], owner[perm]


def gen_cascade(n: int, h: int, d: int, seed: int) -> GeneratedInstance:
    """h staircase maxima that all dominate one cluster of n-h points in (0,1)^d."""
    if d < 2:
        raise ValueError("d must be >= 2")
    if not 1 <= h <= n:
        raise ValueError(f"need 1 <= h <= n, got h={h}, n={n}")
    rng = np.random.default_rng(seed)
    corners = _staircase_corners(h, d)
    fill = _open_uniform(rng, (n - h, d))
    pts, owner = _assemble(corners, fill, np.zeros(n - h, dtype=np.int64), rng)
    _check_known_maxima(pts, corners, owner)
    rows = np.arange(n)
    singleton_rows = rows[owner == -1]
    members = [(int(i),) for i in singleton_rows]
    boxes = [AxisBox(tuple(pts[i]), tuple(pts[i])) for i in singleton_rows]
    sizes = [1] * h
    if n > h:
        members.insert(0, tuple(rows[owner == 0].tolist()))
        boxes.insert(0, AxisBox((0.0,) * d, (1.0,) * d))
        sizes.insert(0, n - h)
    spec = RespectfulPartitionSpec(tuple(sizes), n, tuple(boxes), tuple(members))
    return GeneratedInstance(PointSet(pts), h, spec, Family.CASCADE, seed)


def gen_balanced(n: int, h: int, d: int, seed: int) -> GeneratedInstance:
    """h staircase corners, each dominating its own n/h - 1 points just below it."""
    if d < 2:
        raise ValueError("d must be >= 2")
    if not 1 <= h <= n:
        raise ValueError(f"need 1 <= h <= n, got h={h}, n={n}")
    if n % h:
        raise ValueError(f"h={h} must divide n={n}")
    rng = np.random.default_rng(seed)
    corners = _staircase_corners(h, d)
    per = n // h - 1
    owner_fill = np.repeat(np.arange(h), per)
    fill = corners[owner_fill] - _open_uniform(rng, (h * per, d))
    pts, owner = _assemble(corners, fill, owner_fill, rng)
    _check_known_maxima(pts, corners, owner)
    rows = np.arange(n)
    corner_row = {}
    for i in rows[owner == -1]:
        corner_row[int(pts[i, 0]) - 1] = int(i)
    members, boxes = [], []
    for k in range(h):
        block = [corner_row[k]] + rows[owner == k].tolist()
        members.append(tuple(block))
        boxes.append(AxisBox(tuple(corners[k] - 1.0), tuple(corners[k])))
    spec = RespectfulPartitionSpec((n // h,) * h, n, tuple(boxes), tuple(members))
    return GeneratedInstance(PointSet(pts), h, spec, Family.BALANCED, seed)


def gen_uniform(n: int, d: int, seed: int) -> GeneratedInstance:
    if n < 1:
        raise ValueError("n must be >= 1")
    if d < 2:
        raise ValueError("d must be >= 2")
    rng = np.random.default_rng(seed)
    S = PointSet(rng.random((n, d)))
    return GeneratedInstance(S, naive_maxima(S).n, None, Family.UNIFORM, seed)


def generate(family, n: int, h: Optional[int], d: int, seed: int) -> GeneratedInstance:
    family = Family(family)
    if family is Family.UNIFORM:
        return gen_uniform(n, d, seed)
    if h is None:
        raise ValueError(f"family {family.value} needs h")
    return (gen_cascade if family is Family.CASCADE else gen_balanced)(n, h, d, seed)


# -- partition arithmetic ------------------------------------------------------------

def partition_entropy(spec: RespectfulPartitionSpec) -> float:
    """Sum of (n_k/n) log2(n/n_k), in bits."""
    if sum(spec.subset_sizes) != spec.n:
        raise ValueError("subset sizes do not sum to n")
    n = spec.n
    return math.fsum((nk / n) * math.log2(n / nk) for nk in spec.subset_sizes)


def respectful_verify(points, boxes: Sequence[AxisBox], subsets: Sequence[Sequence[int]]) -> bool:
    """Every subset is a singleton or its box's max corner is weakly dominated
    (equality allowed) by some point of the set."""
    pts = as_array(points)
    n = pts.shape[0]
    if len(boxes) != len(subsets):
        raise ValueError("need exactly one box per subset")
    seen = np.zeros(n, dtype=np.int64)
    for s in subsets:
        if len(s) == 0:
            raise ValueError("empty subset in partition")
        np.add.at(seen, np.asarray(s, dtype=np.int64), 1)
    if not np.all(seen == 1):
        raise ValueError("subsets do not partition the point set")
    ok = True
    for box, s in zip(boxes, subsets):
        block = pts[np.asarray(s, dtype=np.int64)]
        lo, hi = np.asarray(box.lo), np.asarray(box.hi)
        if not np.all((block >= lo) & (block <= hi)):
            raise ValueError("box does not enclose its subset")
        if len(s) == 1:
            continue
        if not np.any(np.all(pts >= hi, axis=1)):
            ok = False
    return ok


def theoretical_cost(spec: RespectfulPartitionSpec, d: int) -> float:
    """n + sum n_k (log2(n/n_k))^(d-2); a diagnostic, with 0^0 = 1."""
    n = spec.n
    return n + math.fsum(nk * math.log2(n / nk) ** (d - 2) for nk in spec.subset_sizes)


def gibbs_bound_check(sizes: Sequence[int], n: int, d: int, rel_tol: float = 1e-9) -> bool:
    """sum n_k log2(n/n_k)^(d-2) <= n log2(h)^(d-2), on the concave domain
    n/n_k >= 2^(d-1)."""
    sizes = [int(s) for s in sizes]
    if not sizes or any(s < 1 for s in sizes) or sum(sizes) != n:
        raise ValueError("sizes must be positive and sum to n")
    if d < 2:
        raise ValueError("d must be >= 2")
    if len(sizes) == 1:
        return True  # one block: both sides vanish
    floor = 2 ** (d - 1)
    if any(n < floor * s for s in sizes):
        raise ValueError(f"every n/n_k must be >= 2^(d-1) = {floor}")
    lhs = math.fsum(s * math.log2(n / s) ** (d - 2) for s in sizes)
    rhs = n * math.log2(len(sizes)) ** (d - 2)
    return lhs <= rhs + rel_tol * abs(rhs)

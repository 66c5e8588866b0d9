"""Batch dominance-emptiness queries.

Every oracle here answers, for each query q, whether some indexed point p
satisfies ``p >= q`` componentwise with ``p != q``. The tree and sweep
structures natively answer the weaker "some p >= q"; queries that coincide
with an indexed point are re-asked once per coordinate with that coordinate
nudged to the next representable float, which turns ``>=`` into ``>`` exactly
and so excludes the identical point.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .core import DimensionError, as_array

BRUTE_CUTOFF = 32
LEAF_SIZE = 24
_CHUNK = 1 << 22


@dataclass
class OracleStats:
    queries: int = 0
    groups_touched: int = 0


def _prepare(points, queries):
    pts = as_array(points)
    q = as_array(queries)
    if q.size == 0:
        return pts, None
    if pts.ndim != 2 or (pts.shape[0] and pts.shape[1] != q.shape[1]):
        raise DimensionError(f"dimension mismatch: points {pts.shape}, queries {q.shape}")
    if pts.shape[0] == 0:
        pts = pts.reshape(0, q.shape[1])
    return pts, q


def _brute_ge_excl(pts: np.ndarray, q: np.ndarray, exclude_equal: bool = True) -> np.ndarray:
    out = np.zeros(q.shape[0], dtype=bool)
    if pts.shape[0] == 0 or q.shape[0] == 0:
        return out
    step = max(1, _CHUNK // max(1, pts.shape[0] * pts.shape[1]))
    for a in range(0, q.shape[0], step):
        qq = q[a:a + step, None, :]
        ge = np.all(pts[None, :, :] >= qq, axis=2)
        if exclude_equal:
            ge &= np.any(pts[None, :, :] != qq, axis=2)
        out[a:a + step] = ge.any(axis=1)
    return out


def brute_batch(points, queries) -> List[bool]:
    """Reference answers by comparing every query against every point."""
    pts, q = _prepare(points, queries)
    if q is None:
        return []
    return _brute_ge_excl(pts, q).tolist()


# -- exclusion of the identical point -----------------------------------------

def _member_mask(pts: np.ndarray, q: np.ndarray) -> np.ndarray:
    if pts.shape[0] == 0:
        return np.zeros(q.shape[0], dtype=bool)
    keys = {row.tobytes() for row in pts}
    return np.fromiter((row.tobytes() in keys for row in q), dtype=bool, count=q.shape[0])


def _excl_from_ge(ge_fn, pts: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Turn a ">= somewhere in the set" oracle into the excluding predicate."""
    ans = ge_fn(q)
    hit = np.flatnonzero(ans & _member_mask(pts, q))
    if hit.shape[0]:
        d = q.shape[1]
        base = q[hit]
        bumped = np.repeat(base, d, axis=0)
        cols = np.tile(np.arange(d), hit.shape[0])
        rows = np.arange(bumped.shape[0])
        bumped[rows, cols] = np.nextafter(bumped[rows, cols], np.inf)
        ans[hit] = ge_fn(bumped).reshape(hit.shape[0], d).any(axis=1)
    return ans


# -- 2D staircase ---------------------------------------------------------------

def _staircase_arrays(pts2: np.ndarray):
    if pts2.shape[0] == 0:
        return np.empty(0), np.empty(0)
    order = np.lexsort((-pts2[:, 1], -pts2[:, 0]))  # x descending, then y descending
    ys = pts2[order, 1]
    prev_best = np.concatenate(([-np.inf], np.maximum.accumulate(ys)[:-1]))
    keep = order[ys > prev_best][::-1]
    return pts2[keep, 0].copy(), pts2[keep, 1].copy()


def _staircase_ge(xs: np.ndarray, ys: np.ndarray, q: np.ndarray) -> np.ndarray:
    if xs.shape[0] == 0:
        return np.zeros(q.shape[0], dtype=bool)
    i = np.searchsorted(xs, q[:, 0], side="left")
    ok = i < xs.shape[0]
    res = np.zeros(q.shape[0], dtype=bool)
    res[ok] = ys[i[ok]] >= q[ok, 1]
    return res


@dataclass(frozen=True)
class Staircase2D:
    """Maximal points of a planar set, x ascending and y strictly descending."""

    xs: np.ndarray
    ys: np.ndarray

    def __len__(self):
        return self.xs.shape[0]

    def query(self, q) -> bool:
        qx, qy = float(q[0]), float(q[1])
        i = bisect.bisect_left(self.xs, qx)
        if i == len(self.xs) or self.ys[i] < qy:
            return False
        # the step with the smallest x >= qx has the largest y; if it *is* q,
        # every other candidate is either lower or dominated by q itself
        return not (self.xs[i] == qx and self.ys[i] == qy)

    def query_batch(self, q: np.ndarray) -> np.ndarray:
        ge = _staircase_ge(self.xs, self.ys, q)
        if self.xs.shape[0] == 0:
            return ge
        i = np.minimum(np.searchsorted(self.xs, q[:, 0], side="left"), self.xs.shape[0] - 1)
        same = (self.xs[i] == q[:, 0]) & (self.ys[i] == q[:, 1])
        return ge & ~same


def build_staircase_2d(points) -> Staircase2D:
    pts = as_array(points)
    if pts.shape[0] and pts.shape[1] != 2:
        raise DimensionError(f"staircase needs d=2, got d={pts.shape[1]}")
    xs, ys = _staircase_arrays(pts.reshape(-1, 2))
    xs.setflags(write=False)
    ys.setflags(write=False)
    return Staircase2D(xs, ys)


def query_staircase(st: Staircase2D, q) -> bool:
    if len(q) != 2:
        raise DimensionError(f"staircase query needs d=2, got d={len(q)}")
    return st.query(q)


# -- offline 3D sweep -------------------------------------------------------------

class _DynamicStaircase:
    """Planar maxima under insertion; x ascending, y strictly descending."""

    def __init__(self):
        self.xs: List[float] = []
        self.ys: List[float] = []

    def covers(self, x: float, y: float) -> bool:
        i = bisect.bisect_left(self.xs, x)
        return i < len(self.xs) and self.ys[i] >= y

    def insert(self, x: float, y: float) -> None:
        if self.covers(x, y):
            return
        # drop steps the new point covers: x' <= x and y' <= y, contiguous left of it
        hi = bisect.bisect_right(self.xs, x)
        lo = hi
        while lo > 0 and self.ys[lo - 1] <= y:
            lo -= 1
        del self.xs[lo:hi]
        del self.ys[lo:hi]
        self.xs.insert(lo, x)
        self.ys.insert(lo, y)


def _sweep3_ge(pts: np.ndarray, q: np.ndarray) -> np.ndarray:
    ans = np.zeros(q.shape[0], dtype=bool)
    if pts.shape[0] == 0 or q.shape[0] == 0:
        return ans
    p_order = np.argsort(-pts[:, 2], kind="stable")
    q_order = np.argsort(-q[:, 2], kind="stable")
    pz = pts[p_order, 2].tolist()
    stair = _DynamicStaircase()
    pl = pts[p_order].tolist()
    ql = q.tolist()
    k, m = 0, len(pl)
    for qi in q_order.tolist():
        qx, qy, qz = ql[qi]
        # points tied with the query's z are inserted before it is answered
        while k < m and pz[k] >= qz:
            stair.insert(pl[k][0], pl[k][1])
            k += 1
        ans[qi] = stair.covers(qx, qy)
    return ans


def offline_sweep_3d(points, queries) -> List[bool]:
    pts, q = _prepare(points, queries)
    if q is None:
        return []
    if q.shape[1] != 3:
        raise DimensionError(f"offline sweep needs d=3, got d={q.shape[1]}")
    return _excl_from_ge(lambda qq: _sweep3_ge(pts, qq), pts, q).tolist()


# -- dimension-reduction tree (d >= 3) ----------------------------------------------

class DominanceTree:
    """Balanced tree on the last coordinate; each node lazily holds a
    (k-1)-dimensional tree of its points, bottoming out at staircases.

    ``query_ge`` answers "some p >= q" for a batch in O(log^(k-1) m) per query.
    """

    __slots__ = ("k", "top", "block", "leaf", "xs", "ys", "split", "left", "right", "_proj")

    def __init__(self, pts: np.ndarray, leaf_size: int = LEAF_SIZE, _sorted: bool = False):
        m, k = pts.shape
        self.k = k
        self.top = pts.max(axis=0) if m else None
        self.xs = self.ys = None
        self.left = self.right = self._proj = None
        self.split = None
        self.leaf = True
        if m and k > 2 and not _sorted:
            pts = pts[np.argsort(pts[:, -1], kind="stable")]
        self.block = pts
        if m == 0:
            return
        if k == 2:
            self.xs, self.ys = _staircase_arrays(pts)
            return
        if m <= leaf_size:
            return
        self.leaf = False
        mid = m // 2
        self.split = pts[mid, -1]
        self.left = DominanceTree(pts[:mid], leaf_size, True)
        self.right = DominanceTree(pts[mid:], leaf_size, True)

    def projection(self) -> "DominanceTree":
        if self._proj is None:
            self._proj = DominanceTree(self.block[:, :-1])
        return self._proj

    def query_ge(self, q: np.ndarray) -> np.ndarray:
        ans = np.zeros(q.shape[0], dtype=bool)
        if self.top is None or q.shape[0] == 0:
            return ans
        live = np.flatnonzero(np.all(q <= self.top, axis=1))
        if live.shape[0] == 0:
            return ans
        ql = q[live]
        if self.xs is not None:
            ans[live] = _staircase_ge(self.xs, self.ys, ql)
        elif self.leaf:
            ans[live] = _brute_ge_excl(self.block, ql, exclude_equal=False)
        else:
            low = ql[:, -1] <= self.split
            res = np.zeros(ql.shape[0], dtype=bool)
            hi_idx = np.flatnonzero(~low)
            if hi_idx.shape[0]:
                res[hi_idx] = self.right.query_ge(ql[hi_idx])
            lo_idx = np.flatnonzero(low)
            if lo_idx.shape[0]:
                # the whole right child lies in the query's suffix
                hit = self.right.projection().query_ge(ql[lo_idx, :-1])
                res[lo_idx] = hit
                rest = lo_idx[~hit]
                if rest.shape[0]:
                    res[rest] = self.left.query_ge(ql[rest])
            ans[live] = res
        return ans


# -- grouping -------------------------------------------------------------------------

class GroupedOracle:
    """Points chunked in input order into ceil(n/r) groups of at most r points,
    each indexed by its own sub-oracle; a query consults every group."""

    def __init__(self, points, r: int):
        pts = as_array(points)
        n = pts.shape[0]
        if n == 0:
            raise ValueError("cannot build an oracle over an empty set")
        self.d = pts.shape[1]
        self.r = max(1, min(int(r), n))
        self.points = pts
        self.groups = []
        for a in range(0, n, self.r):
            block = pts[a:a + self.r]
            if self.d == 2:
                self.groups.append(build_staircase_2d(block))
            else:
                self.groups.append(DominanceTree(block))
        self.stats = OracleStats()

    def _ge(self, q: np.ndarray) -> np.ndarray:
        ans = np.zeros(q.shape[0], dtype=bool)
        for g in self.groups:
            if self.d == 2:
                ans |= _staircase_ge(g.xs, g.ys, q)
            else:
                ans |= g.query_ge(q)
        return ans

    def query_batch(self, queries) -> np.ndarray:
        q = as_array(queries)
        if q.size == 0:
            return np.zeros(0, dtype=bool)
        if q.shape[1] != self.d:
            raise DimensionError(f"query dimension {q.shape[1]} != {self.d}")
        self.stats.queries += q.shape[0]
        self.stats.groups_touched += q.shape[0] * len(self.groups)
        return _excl_from_ge(self._ge, self.points, q)

    def __len__(self):
        return len(self.groups)


def build_grouped(points, r: int) -> GroupedOracle:
    return GroupedOracle(points, r)


def grouped_query(oracle: GroupedOracle, q) -> bool:
    return bool(oracle.query_batch(np.asarray([tuple(q)], dtype=np.float64))[0])


# -- dispatcher -----------------------------------------------------------------------

def batch_dominated(points, queries, budget_r: int, stats: Optional[OracleStats] = None) -> List[bool]:
    """Answer a batch of queries with the structure suited to the dimension."""
    pts, q = _prepare(points, queries)
    if q is None:
        return []
    d = q.shape[1]
    n = pts.shape[0]
    if stats is not None:
        stats.queries += q.shape[0]
    if n < BRUTE_CUTOFF:
        if stats is not None:
            stats.groups_touched += q.shape[0]
        return _brute_ge_excl(pts, q).tolist()
    if d == 2:
        if stats is not None:
            stats.groups_touched += q.shape[0]
        return build_staircase_2d(pts).query_batch(q).tolist()
    if d == 3:
        if stats is not None:
            stats.groups_touched += q.shape[0]
        return _excl_from_ge(lambda qq: _sweep3_ge(pts, qq), pts, q).tolist()
    oracle = GroupedOracle(pts, budget_r)
    ans = oracle.query_batch(q)
    if stats is not None:
        stats.groups_touched += oracle.stats.groups_touched
    return ans.tolist()

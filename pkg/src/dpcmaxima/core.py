"""Geometric primitives: points, point sets, axis-aligned boxes and dominance."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np


class DimensionError(ValueError):
    pass


class InvalidCoordinateError(ValueError):
    pass


def _check_coords(coords: np.ndarray) -> None:
    if not np.all(np.isfinite(coords)):
        raise InvalidCoordinateError("coordinates must be finite (no NaN or infinity)")


@dataclass(frozen=True)
class Point:
    coords: Tuple[float, ...]
    index: Optional[int] = None

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        if len(coords) < 2:
            raise DimensionError("points need at least 2 coordinates")
        _check_coords(np.asarray(coords))
        object.__setattr__(self, "coords", coords)

    @property
    def d(self) -> int:
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)


PointLike = Union[Point, Sequence[float], np.ndarray]


class PointSet:
    """Immutable ordered collection of d-dimensional points.

    Coordinates live in a read-only ``(n, d)`` float64 array; ``index`` holds
    the stable input ordinal of every row.
    """

    __slots__ = ("coords", "index")

    def __init__(self, coords, index=None, d: Optional[int] = None):
        if isinstance(coords, PointSet):
            index = coords.index if index is None else index
            coords = coords.coords
        arr = np.array(coords, dtype=np.float64)
        if arr.size == 0:
            if d is None:
                d = arr.shape[1] if arr.ndim == 2 else 2
            arr = arr.reshape(0, d)
        if arr.ndim != 2:
            raise DimensionError("expected a 2-D array of shape (n, d)")
        if d is not None and arr.shape[1] != d:
            raise DimensionError(f"expected dimension {d}, got {arr.shape[1]}")
        if arr.shape[1] < 2:
            raise DimensionError("points need at least 2 coordinates")
        _check_coords(arr)
        if index is None:
            idx = np.arange(arr.shape[0], dtype=np.int64)
        else:
            idx = np.array(index, dtype=np.int64).reshape(-1)
            if idx.shape[0] != arr.shape[0]:
                raise ValueError("index length does not match number of points")
            if np.unique(idx).shape[0] != idx.shape[0]:
                raise ValueError("point indices must be unique")
        arr.setflags(write=False)
        idx.setflags(write=False)
        self.coords = arr
        self.index = idx

    @classmethod
    def from_points(cls, points: Iterable[PointLike], d: Optional[int] = None) -> "PointSet":
        rows, idx = [], []
        have_index = True
        for p in points:
            if isinstance(p, Point):
                rows.append(p.coords)
                idx.append(p.index)
                have_index &= p.index is not None
            else:
                rows.append(tuple(p))
                have_index = False
        return cls(rows, index=idx if (rows and have_index) else None, d=d)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def d(self) -> int:
        return self.coords.shape[1]

    def __len__(self):
        return self.n

    def __getitem__(self, i) -> Point:
        return Point(tuple(self.coords[i]), int(self.index[i]))

    def __iter__(self) -> Iterator[Point]:
        for i in range(self.n):
            yield self[i]

    def take(self, rows) -> "PointSet":
        rows = np.asarray(rows, dtype=np.int64)
        return PointSet(self.coords[rows], self.index[rows], d=self.d)

    def as_set(self) -> set:
        """Coordinate tuples, for order-insensitive comparison."""
        return set(map(tuple, self.coords.tolist()))

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return (self.d == other.d and np.array_equal(self.coords, other.coords)
                and np.array_equal(self.index, other.index))

    def __repr__(self):
        return f"PointSet(n={self.n}, d={self.d})"


@dataclass(frozen=True)
class AxisBox:
    lo: Tuple[float, ...]
    hi: Tuple[float, ...]

    def __post_init__(self):
        lo = tuple(float(c) for c in self.lo)
        hi = tuple(float(c) for c in self.hi)
        if len(lo) != len(hi):
            raise DimensionError("box corners differ in dimension")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"invalid box: lo {lo} exceeds hi {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def d(self) -> int:
        return len(self.lo)

    def contains(self, p: PointLike) -> bool:
        p = _vec(p)
        _same_dim(p, self.lo)
        return bool(np.all(np.asarray(self.lo) <= p) and np.all(p <= np.asarray(self.hi)))


class BoxRelation(enum.Enum):
    DISJOINT = "Disjoint"
    PARTIALLY_INTERSECTS = "PartiallyIntersects"
    CONTAINED_IN = "ContainedIn"


def as_array(points) -> np.ndarray:
    """Coerce a PointSet, list of Points or array-like into an (n, d) array."""
    if isinstance(points, PointSet):
        return points.coords
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=np.float64)
        return arr if arr.ndim == 2 else arr.reshape(-1, arr.shape[-1])
    rows = [p.coords if isinstance(p, Point) else tuple(p) for p in points]
    if not rows:
        return np.empty((0, 0))
    return np.asarray(rows, dtype=np.float64)


def _vec(p: PointLike) -> np.ndarray:
    if isinstance(p, Point):
        return np.asarray(p.coords)
    return np.asarray(p, dtype=np.float64)


def _same_dim(p, q) -> None:
    if len(p) != len(q):
        raise DimensionError(f"dimension mismatch: {len(p)} vs {len(q)}")


def dominates(p: PointLike, q: PointLike) -> bool:
    """Pareto dominance: p >= q everywhere and p > q somewhere."""
    p, q = _vec(p), _vec(q)
    _same_dim(p, q)
    return bool(np.all(p >= q) and np.any(p > q))


def weakly_dominates_excl(p: PointLike, q: PointLike) -> bool:
    """p >= q componentwise and p differs from q."""
    p, q = _vec(p), _vec(q)
    _same_dim(p, q)
    return bool(np.all(p >= q) and not np.array_equal(p, q))


def min_enclosing_box(points) -> AxisBox:
    arr = as_array(points)
    if arr.shape[0] == 0:
        raise ValueError("cannot enclose an empty point set")
    return AxisBox(tuple(arr.min(axis=0)), tuple(arr.max(axis=0)))


def max_corner(box: AxisBox) -> Point:
    return Point(box.hi)


def box_relation(cell: AxisBox, b: AxisBox) -> BoxRelation:
    _same_dim(cell.lo, b.lo)
    clo, chi = np.asarray(cell.lo), np.asarray(cell.hi)
    blo, bhi = np.asarray(b.lo), np.asarray(b.hi)
    if np.any(chi < blo) or np.any(bhi < clo):
        return BoxRelation.DISJOINT
    if np.all(blo <= clo) and np.all(chi <= bhi):
        return BoxRelation.CONTAINED_IN
    return BoxRelation.PARTIALLY_INTERSECTS


def dedupe(points: PointSet) -> Tuple[PointSet, int]:
    """Drop exact coordinate duplicates, keeping first occurrences in input order."""
    if points.n == 0:
        return points, 0
    _, first = np.unique(points.coords, axis=0, return_index=True)
    keep = np.sort(first)
    if keep.shape[0] == points.n:
        return points, 0
    return points.take(keep), points.n - keep.shape[0]

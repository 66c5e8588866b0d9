import pytest
from hypothesis import given, strategies as st

from dpcmaxima.core import (
    AxisBox,
    BoxRelation,
    DimensionError,
    InvalidCoordinateError,
    Point,
    PointSet,
    box_relation,
    dedupe,
    dominates,
    max_corner,
    min_enclosing_box,
    weakly_dominates_excl,
)

from conftest import grid_points


@pytest.mark.parametrize("p, q, expected", [
    ((2, 3), (1, 3), True),
    ((2, 1), (1, 2), False),
    ((5, 5), (5, 5), False),
])
def test_dominates_examples(p, q, expected):
    assert dominates(p, q) is expected


@pytest.mark.parametrize("p, q, expected", [
    ((3, 3), (3, 3), False),
    ((3, 3), (3, 2), True),
    ((3, 2), (2, 3), False),
])
def test_weakly_dominates_excl_examples(p, q, expected):
    assert weakly_dominates_excl(p, q) is expected


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionError):
        dominates((1, 2), (1, 2, 3))
    with pytest.raises(DimensionError):
        weakly_dominates_excl((1, 2, 3), (1, 2))
    with pytest.raises(DimensionError):
        box_relation(AxisBox((0, 0), (1, 1)), AxisBox((0, 0, 0), (1, 1, 1)))


def test_point_and_pointset_validation():
    with pytest.raises(InvalidCoordinateError):
        Point((1.0, float("nan")))
    with pytest.raises(InvalidCoordinateError):
        PointSet([[1.0, float("inf")]])
    with pytest.raises(DimensionError):
        PointSet([[1.0]])
    with pytest.raises(ValueError):
        PointSet([[1, 2], [3, 4]], index=[0, 0])
    S = PointSet([[1, 2], [3, 4]])
    assert S.n == 2 and S.d == 2
    assert S[1] == Point((3.0, 4.0), 1)
    with pytest.raises(ValueError):
        S.coords[0, 0] = 9.0


@pytest.mark.parametrize("rows, lo, hi", [
    ([(0, 5), (3, 1)], (0, 1), (3, 5)),
    ([(1, 1)], (1, 1), (1, 1)),
    ([(0, 0), (1, 2), (2, 1)], (0, 0), (2, 2)),
])
def test_min_enclosing_box(rows, lo, hi):
    box = min_enclosing_box(PointSet(rows))
    assert box.lo == lo and box.hi == hi


def test_min_enclosing_box_empty():
    with pytest.raises(ValueError):
        min_enclosing_box(PointSet([], d=2))


def test_max_corner():
    assert max_corner(AxisBox((0, 1), (3, 5))).coords == (3.0, 5.0)
    assert max_corner(AxisBox((1, 1), (1, 1))).coords == (1.0, 1.0)
    assert max_corner(min_enclosing_box(PointSet([(0, 0), (2, 1)]))).coords == (2.0, 1.0)


def test_axis_box_rejects_inverted_corners():
    with pytest.raises(ValueError):
        AxisBox((1, 0), (0, 1))


@pytest.mark.parametrize("cell, expected", [
    (AxisBox((0, 0), (1, 1)), BoxRelation.CONTAINED_IN),
    (AxisBox((3, 3), (4, 4)), BoxRelation.DISJOINT),
    (AxisBox((1, 1), (3, 3)), BoxRelation.PARTIALLY_INTERSECTS),
])
def test_box_relation(cell, expected):
    assert box_relation(cell, AxisBox((0, 0), (2, 2))) is expected


def test_dedupe_examples():
    S, k = dedupe(PointSet([(1, 1), (1, 1), (2, 2)]))
    assert S.coords.tolist() == [[1, 1], [2, 2]] and k == 1
    assert S.index.tolist() == [0, 2]
    S0 = PointSet([(1, 2), (2, 1)])
    assert dedupe(S0) == (S0, 0)
    E, k = dedupe(PointSet([], d=2))
    assert E.n == 0 and k == 0


@given(grid_points(3, min_size=3, max_size=3))
def test_dominance_is_a_strict_order(rows):
    p, q, r = rows
    assert not dominates(p, p)
    assert not (dominates(p, q) and dominates(q, p))
    if dominates(p, q) and dominates(q, r):
        assert dominates(p, r)


@given(grid_points(4, min_size=2, max_size=2))
def test_predicates_agree_on_every_pair(rows):
    p, q = rows
    assert dominates(p, q) == weakly_dominates_excl(p, q)


@given(grid_points(3, min_size=1, max_size=20), st.tuples(*[st.integers(-2, 7).map(float)] * 3))
def test_enclosing_box_is_monotone(rows, extra):
    before = min_enclosing_box(PointSet(rows))
    after = min_enclosing_box(PointSet(rows + [extra]))
    assert all(a <= b for a, b in zip(after.lo, before.lo))
    assert all(a >= b for a, b in zip(after.hi, before.hi))


@given(grid_points(2, min_size=0, max_size=30))
def test_dedupe_keeps_first_occurrences(rows):
    S, k = dedupe(PointSet(rows, d=2))
    seen = []
    for r in rows:
        if r not in seen:
            seen.append(r)
    assert [tuple(r) for r in S.coords.tolist()] == seen
    assert k == len(rows) - len(seen)

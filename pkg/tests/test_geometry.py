import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from icbounds.geometry import (
    BoundCurve,
    Direction,
    PolyRegion,
    UnboundedRegionError,
    contains,
    direction_grid,
    dual_from_support,
    intersect,
    polyline_csv,
    region_from_points,
    remove_redundant,
    support,
)


def brute_vertices(hp):
    """All pairwise intersections of constraint lines (plus axes) that are feasible."""
    lines = [np.array(h) for h in hp] + [np.array([-1.0, 0, 0]), np.array([0, -1.0, 0])]
    pts = []
    for l1, l2 in itertools.combinations(lines, 2):
        M = np.array([l1[:2], l2[:2]])
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, [l1[2], l2[2]])
        if np.all(x >= -1e-9) and np.all(np.asarray(hp)[:, :2] @ x <= np.asarray(hp)[:, 2] + 1e-9):
            pts.append(x)
    return np.array(pts)


region_rows = st.lists(
    st.tuples(st.floats(0.01, 5), st.floats(0.01, 5), st.floats(0.1, 10)), min_size=1, max_size=8
)
directions = st.tuples(st.floats(0, 10), st.floats(0, 10)).filter(lambda c: c[0] + c[1] > 1e-3)


def test_box_support_and_vertices():
    box = PolyRegion.box(2.0, 3.0)
    assert support(box, (1, 0)) == 2.0
    assert support(box, (0, 1)) == 3.0
    assert len(box.vertices) == 4
    assert contains(box, (0, 0))
    assert not contains(box, (2 + 1e-3, 3 + 1e-3))
    for v in box.vertices:
        assert contains(box, v)


def test_redundant_constraint_is_dropped():
    r = PolyRegion([[1, 0, 1], [0, 1, 1], [1, 1, 5]])
    assert len(remove_redundant(r).halfplanes) == 2
    np.testing.assert_allclose(remove_redundant(r).vertices, r.vertices)


def test_intersection_with_sum_face():
    r = intersect([PolyRegion.box(2, 2), PolyRegion([[1, 1, 3]])])
    assert len(r.halfplanes) == 3
    assert support(r, (1, 1)) == pytest.approx(3.0)


def test_intersect_with_itself():
    r = PolyRegion([[1, 0, 1], [0, 1, 2], [2, 1, 3]])
    s = intersect([r, r])
    for d in direction_grid(9):
        assert support(s, d) == pytest.approx(support(r, d), abs=1e-12)


def test_unbounded_support_raises():
    r = PolyRegion([[1, 0, 1]])
    assert support(r, (1, 0)) == 1
    with pytest.raises(UnboundedRegionError):
        support(r, (0, 1))


def test_direction_validation():
    with pytest.raises(ValueError):
        Direction(0, 0)
    with pytest.raises(ValueError):
        Direction(-1, 1)
    assert Direction.mu_one(3).as_array().tolist() == [3, 1]
    assert Direction.one_mu(3).as_array().tolist() == [1, 3]


def test_default_direction_grid_size():
    g = direction_grid()
    assert len(g) == 3 + 2 * 256
    assert g[-1] == Direction(1.0, 1000.0)


@settings(max_examples=200)
@given(region_rows, directions)
def test_support_matches_brute_force(rows, c):
    region = PolyRegion([[*r] for r in rows] + [[1, 0, 20], [0, 1, 20]])
    V = brute_vertices(region.halfplanes)
    assert support(region, c) == pytest.approx(float(np.max(V @ np.array(c))), abs=1e-9)


@settings(max_examples=200)
@given(region_rows)
def test_vertices_ccw_and_distinct(rows):
    region = PolyRegion([[*r] for r in rows] + [[1, 0, 20], [0, 1, 20]])
    V = region.vertices
    np.testing.assert_array_equal(V[0], [0, 0])
    d = np.diff(np.vstack([V, V[:1]]), axis=0)
    cross = d[:-1, 0] * d[1:, 1] - d[:-1, 1] * d[1:, 0]
    assert np.all(cross >= -1e-9)
    gaps = np.linalg.norm(d, axis=1)
    assert np.all(gaps > 1e-12)
    B = brute_vertices(region.halfplanes)
    for v in V:
        assert np.min(np.linalg.norm(B - v, axis=1)) < 1e-8


@settings(max_examples=200)
@given(region_rows, directions, directions, st.floats(0.1, 10))
def test_support_sublinear(rows, c, d, t):
    region = PolyRegion([[*r] for r in rows] + [[1, 0, 20], [0, 1, 20]])
    s = lambda v: support(region, v)
    both = (c[0] + d[0], c[1] + d[1])
    assert s(both) <= s(c) + s(d) + 1e-9
    assert s((t * c[0], t * c[1])) == pytest.approx(t * s(c), rel=1e-12, abs=1e-12)


@settings(max_examples=100)
@given(region_rows, region_rows)
def test_more_halfplanes_means_smaller_support(rows, extra):
    base = [[*r] for r in rows] + [[1, 0, 20], [0, 1, 20]]
    A = PolyRegion(base + [[*r] for r in extra])
    B = PolyRegion(base)
    for d in direction_grid(9):
        assert support(A, d) <= support(B, d) + 1e-12


@settings(max_examples=100)
@given(region_rows)
def test_dual_round_trip(rows):
    region = PolyRegion([[*r] for r in rows] + [[1, 0, 20], [0, 1, 20]])
    dirs = [Direction(np.cos(t), np.sin(t)) for t in np.linspace(0, np.pi / 2, 64)]
    back = dual_from_support(dirs, [support(region, d) for d in dirs])
    for d in dirs:
        assert support(back, d) == pytest.approx(support(region, d), abs=1e-9)


def test_dual_of_box():
    r = dual_from_support([(1, 0), (0, 1)], [2.0, 5.0])
    np.testing.assert_allclose(r.vertices, [[0, 0], [2, 0], [2, 5], [0, 5]])


def test_region_from_points_is_inner_hull():
    t = np.linspace(0, np.pi / 2, 50)
    pts = np.column_stack([np.cos(t), np.sin(t)])
    r = region_from_points(pts)
    for p in pts:
        assert contains(r, p, 1e-12)
    assert not contains(r, (0.75, 0.75))
    assert support(r, (1, 1)) <= np.sqrt(2) + 1e-12


def test_json_round_trip_and_csv():
    r = PolyRegion([[1, 0, 1.1], [0, 1, 0.7], [1, 1, 1.5], [2, 1, 2.4]])
    back = PolyRegion.from_json(r.to_json())
    for d in direction_grid(17):
        assert support(back, d) == pytest.approx(support(r, d), abs=1e-12)
    text = polyline_csv(r)
    assert text.startswith("r1,r2\n") and text.endswith("\n") and "\r" not in text
    assert len(text.strip().split("\n")) == len(r.vertices) + 1


def test_bound_curve_csv_round_trip():
    c = BoundCurve(np.array([1.0, 2.0, 10.0]), np.array([0.1, 1 / 3, 2.0]), "1_mu")
    text = c.to_csv()
    assert text.split("\n")[0] == "mu,value_bits"
    back = BoundCurve.from_csv(text, "1_mu")
    np.testing.assert_array_equal(back.values, c.values)
    assert [d.as_array().tolist() for d in c.directions()][0] == [1.0, 1.0]


@pytest.mark.parametrize("mus, vals", [([1, 1], [0, 0]), ([0.5, 2], [0, 0]), ([1, 2], [0, np.inf])])
def test_bound_curve_rejects_bad_samples(mus, vals):
    with pytest.raises(ValueError):
        BoundCurve(np.array(mus, float), np.array(vals, float))


def test_region_validation():
    with pytest.raises(ValueError):
        PolyRegion([[-1, 0, 1]])
    with pytest.raises(ValueError):
        PolyRegion([[1, 0, -1]])
    with pytest.raises(ValueError):
        PolyRegion([[0, 0, 1]])

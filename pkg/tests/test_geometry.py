import numpy as np
import pytest
from scipy.spatial import ConvexHull

from numrad.geometry import closest_point_on_hull, convex_hull, convex_hull_indices


def test_square_with_interior_points():
    pts = np.array([0, 1, 1 + 1j, 1j, 0.5 + 0.5j, 0.2 + 0.7j])
    hull = convex_hull(pts)
    assert len(hull) == 4
    assert set(np.round(hull, 12)) == {0, 1, 1 + 1j, 1j}


def test_collinear_and_duplicate_points():
    assert len(convex_hull_indices([0, 1, 2, 3])) == 2
    assert len(convex_hull_indices([1 + 1j] * 5)) == 1


def test_hull_agrees_with_qhull(rng):
    for _ in range(20):
        pts = rng.standard_normal(40) + 1j * rng.standard_normal(40)
        ours = set(convex_hull_indices(pts))
        ref = set(ConvexHull(np.column_stack([pts.real, pts.imag])).vertices)
        assert ours == ref


def test_distance_outside_inside_and_on_boundary():
    sq = convex_hull([1, 2, 2 + 1j, 1 + 1j])
    d, q = closest_point_on_hull(0j, sq)
    assert d == pytest.approx(1.0) and q == pytest.approx(1.0)
    d, _ = closest_point_on_hull(1.5 + 0.5j, sq)
    assert d == 0.0
    d, _ = closest_point_on_hull(1 + 0.5j, sq)
    assert d == pytest.approx(0.0, abs=1e-15)


def test_distance_to_degenerate_hulls():
    d, _ = closest_point_on_hull(0j, convex_hull([3 + 4j]))
    assert d == pytest.approx(5.0)
    d, q = closest_point_on_hull(0j, convex_hull([1 - 1j, 1 + 1j]))
    assert d == pytest.approx(1.0) and q == pytest.approx(1.0)

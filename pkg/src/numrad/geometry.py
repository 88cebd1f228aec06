"""Planar convex hulls and point-to-hull distance for points in the complex plane."""

from __future__ import annotations

import numpy as np


def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def convex_hull_indices(points) -> np.ndarray:
    """Indices of the convex hull vertices, counter-clockwise (monotone chain).

    Collinear and duplicate points are dropped, so collinear input yields
    two vertices and coincident input yields one.
    """
    pts = np.asarray(points, dtype=np.complex128)
    order = np.lexsort((pts.imag, pts.real))
    # drop exact duplicates, keeping the first occurrence in sorted order
    keep = [order[0]]
    for i in order[1:]:
        if pts[i] != pts[keep[-1]]:
            keep.append(i)
    if len(keep) <= 2:
        return np.asarray(keep, dtype=int)
    lower: list[int] = []
    for i in keep:
        while len(lower) >= 2 and _cross(pts[lower[-2]], pts[lower[-1]], pts[i]) <= 0.0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(keep):
        while len(upper) >= 2 and _cross(pts[upper[-2]], pts[upper[-1]], pts[i]) <= 0.0:
            upper.pop()
        upper.append(i)
    return np.asarray(lower[:-1] + upper[:-1], dtype=int)


def convex_hull(points) -> np.ndarray:
    """Hull vertices of ``points`` in counter-clockwise order."""
    pts = np.asarray(points, dtype=np.complex128)
    return pts[convex_hull_indices(pts)]


def closest_point_on_segment(p: complex, a: complex, b: complex) -> complex:
    d = b - a
    dd = d.real * d.real + d.imag * d.imag
    if dd == 0.0:
        return a
    t = ((p - a).real * d.real + (p - a).imag * d.imag) / dd
    t = min(1.0, max(0.0, t))
    return a + t * d


def closest_point_on_hull(p: complex, hull: np.ndarray) -> tuple[float, complex]:
    """Distance from ``p`` to the convex polygon ``hull`` and the nearest point.

    ``hull`` must come from :func:`convex_hull`.  Degenerate hulls (a point or
    a segment) are handled directly; for a proper polygon a point on or
    inside the boundary has distance zero.
    """
    n = len(hull)
    if n == 1:
        return abs(p - hull[0]), complex(hull[0])
    if n == 2:
        q = closest_point_on_segment(p, hull[0], hull[1])
        return abs(p - q), q
    scale = max(float(np.max(np.abs(hull - p))), 1e-300)
    inside = True
    for i in range(n):
        if _cross(hull[i], hull[(i + 1) % n], p) < -1e-15 * scale * scale:
            inside = False
            break
    if inside:
        return 0.0, complex(p)
    best_d, best_q = np.inf, complex(hull[0])
    for i in range(n):
        q = closest_point_on_segment(p, hull[i], hull[(i + 1) % n])
        d = abs(p - q)
        if d < best_d:
            best_d, best_q = d, q
    return float(best_d), best_q

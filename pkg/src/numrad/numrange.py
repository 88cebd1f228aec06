"""Numerical radius, numerical range boundary, and Crawford number.

Every computation here runs through the rotated Hermitian parts of an
element.  For an angle ``t`` the largest eigenvalue of ``Re(e^{it} x)`` is
the support function of the numerical range ``V(x)`` in direction
``e^{-it}``; its maximum over the circle is the numerical radius and the
matching top eigenvector is a vector state attaining it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from .algebra import AlgebraElement, as_element, eigh_batch
from .errors import DimensionMismatch
from .geometry import closest_point_on_hull, convex_hull_indices

__all__ = [
    "StateWitness",
    "SweepResult",
    "RangeSample",
    "state_eval",
    "numerical_radius",
    "numerical_radius_im",
    "radius_alpha_beta",
    "range_boundary",
    "crawford",
    "maximize_periodic",
    "rotated_re",
    "rotated_im",
    "DEFAULT_GRID",
]

DEFAULT_GRID = 512
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class StateWitness:
    """Vector state ``z -> weight * <z_b xi, xi>`` on block ``b`` of a direct sum.

    The vector is normalized on construction.
    """

    vector: np.ndarray
    block: int = 0
    weight: float = 1.0

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=np.complex128).ravel()
        nrm = np.linalg.norm(v)
        if nrm == 0.0 or not np.isfinite(nrm):
            raise ValueError("state vector must be nonzero and finite")
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError("weight must lie in [0, 1]")
        v = v / nrm
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)


def state_eval(x, w: StateWitness) -> complex:
    """Evaluate the vector state ``w`` at ``x``."""
    x = as_element(x)
    if not 0 <= w.block < x.nblocks:
        raise DimensionMismatch(f"block index {w.block} out of range for {x.nblocks} blocks")
    b = x.blocks[w.block]
    if b.shape[0] != w.vector.shape[0]:
        raise DimensionMismatch(
            f"state vector has length {w.vector.shape[0]}, block has size {b.shape[0]}"
        )
    return complex(w.weight * np.vdot(w.vector, b @ w.vector))


@dataclass(frozen=True)
class SweepResult:
    """Maximum of an angle profile together with its maximizer and witness."""

    value: float
    theta: float
    witness: StateWitness | None
    profile: np.ndarray = field(repr=False)

    @property
    def thetas(self) -> np.ndarray:
        return angle_grid(len(self.profile))


@dataclass(frozen=True)
class RangeSample:
    """Support points of ``V(x)`` with their generating angles and vectors."""

    thetas: np.ndarray
    points: np.ndarray
    vectors: tuple[np.ndarray, ...] = field(repr=False)
    blocks: np.ndarray = field(repr=False)
    resolution: int = 0

    def __len__(self) -> int:
        return len(self.points)

    def witness(self, i: int) -> StateWitness:
        return StateWitness(self.vectors[i], int(self.blocks[i]))


def angle_grid(grid: int) -> np.ndarray:
    return TWO_PI * np.arange(grid) / grid


# Hermitian families indexed by angle, built for a whole stack of angles.

def rotated_re(b: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Stack of ``Re(e^{it} b)`` for each ``t`` in ``thetas``."""
    e = np.exp(1j * np.asarray(thetas))[:, None, None]
    return 0.5 * (e * b + np.conj(e) * b.conj().T)


def rotated_im(b: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Stack of ``Im(e^{it} b)`` for each ``t`` in ``thetas``."""
    e = np.exp(1j * np.asarray(thetas))[:, None, None]
    return (e * b - np.conj(e) * b.conj().T) / 2j


def _alpha_beta(b: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    re = 0.5 * (b + b.conj().T)
    im = (b - b.conj().T) / 2j
    t = np.asarray(thetas)[:, None, None]
    return np.cos(t) * re - np.sin(t) * im


Family = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _top_eig(x: AlgebraElement, family: Family, thetas, vectors: bool = False):
    """Largest eigenvalue over all blocks for each angle.

    Ties between blocks go to the lower block index.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    best = np.full(len(thetas), -np.inf)
    blk = np.zeros(len(thetas), dtype=int)
    vecs: list = [None] * len(thetas)
    for k, b in enumerate(x.blocks):
        w, v = eigh_batch(family(b, thetas), vectors)
        lm = w[:, 0]
        better = lm > best
        best = np.where(better, lm, best)
        blk = np.where(better, k, blk)
        if vectors:
            for i in np.flatnonzero(better):
                vecs[i] = v[i, :, 0].copy()
    return best, blk, vecs


def maximize_periodic(f: Callable[[np.ndarray], np.ndarray], grid: int,
                      candidates: int = 3, xatol: float = 1e-11):
    """Maximize a 2*pi-periodic function from a uniform grid plus local refinement.

    ``f`` maps an array of angles to an array of values.  The best
    ``candidates`` local maxima of the grid profile are each refined by
    bounded Brent search (parabolic interpolation with golden-section
    safeguards) inside the bracket formed by their grid neighbours.

    Returns ``(value, theta, profile)``; ``value`` is always an actual
    evaluation of ``f`` and is never below ``profile.max()``.  Ties go to the
    smallest grid angle.
    """
    thetas = angle_grid(grid)
    prof = np.asarray(f(thetas), dtype=float)
    left, right = np.roll(prof, 1), np.roll(prof, -1)
    peaks = np.flatnonzero((prof >= left) & (prof >= right))
    if len(peaks) == 0:
        peaks = np.array([int(np.argmax(prof))])
    # highest first, ties broken by smallest angle
    peaks = peaks[np.lexsort((peaks, -prof[peaks]))][:candidates]
    h = TWO_PI / grid
    best_val, best_t = float(prof[peaks[0]]), float(thetas[peaks[0]])
    for i in peaks:
        t0 = float(thetas[i])
        res = minimize_scalar(
            lambda t: -float(f(np.array([t]))[0]),
            bounds=(t0 - h, t0 + h),
            method="bounded",
            options={"xatol": xatol},
        )
        val, t = -float(res.fun), float(res.x) % TWO_PI
        # rounding-level gains on a flat profile must not override the tie-break
        if val > best_val + 4.0 * np.finfo(float).eps * max(1.0, abs(best_val)):
            best_val, best_t = val, t
    return best_val, best_t, prof


def _sweep(x, grid: int, family: Family) -> SweepResult:
    if grid < 64:
        raise ValueError("grid must be at least 64")
    x = as_element(x)
    val, theta, prof = maximize_periodic(lambda t: _top_eig(x, family, t)[0], grid)
    lm, blk, vecs = _top_eig(x, family, [theta], vectors=True)
    witness = StateWitness(vecs[0], int(blk[0]))
    return SweepResult(value=max(val, float(lm[0])), theta=theta, witness=witness, profile=prof)


def numerical_radius(x, grid: int = DEFAULT_GRID) -> SweepResult:
    """Numerical radius as ``sup_t lambda_max(Re(e^{it} x))``.

    Sweeping the whole circle covers the ``-lambda_min`` branch, so the
    supremum equals ``sup_t ||Re(e^{it} x)||``.
    """
    return _sweep(x, grid, rotated_re)


def numerical_radius_im(x, grid: int = DEFAULT_GRID) -> SweepResult:
    """Numerical radius as ``sup_t lambda_max(Im(e^{it} x))``."""
    return _sweep(x, grid, rotated_im)


def radius_alpha_beta(x, grid: int = DEFAULT_GRID) -> SweepResult:
    """Numerical radius as ``sup ||a Re(x) + b Im(x)||`` over ``a^2 + b^2 = 1``.

    The circle is parametrized by ``(a, b) = (cos t, -sin t)``.
    """
    return _sweep(x, grid, _alpha_beta)


def _support_points(x: AlgebraElement, thetas):
    _, blk, vecs = _top_eig(x, rotated_re, thetas, vectors=True)
    pts = np.array(
        [np.vdot(v, x.blocks[k] @ v) for v, k in zip(vecs, blk)], dtype=np.complex128
    )
    return pts, vecs, blk


def range_boundary(x, grid: int = DEFAULT_GRID) -> RangeSample:
    """Support points of the numerical range, one per grid angle.

    The point for angle ``t`` is ``<x xi, xi>`` with ``xi`` a top eigenvector
    of ``Re(e^{it} x)``; it maximizes ``Re(e^{it} z)`` over ``z`` in ``V(x)``.
    """
    if grid < 64:
        raise ValueError("grid must be at least 64")
    x = as_element(x)
    thetas = angle_grid(grid)
    pts, vecs, blk = _support_points(x, thetas)
    return RangeSample(thetas=thetas, points=pts, vectors=tuple(vecs), blocks=blk,
                       resolution=grid)


def crawford(x, grid: int = DEFAULT_GRID, angle_tol: float = 1e-9) -> float:
    """Crawford number: distance from the origin to ``V(x)``.

    Computed as the distance from 0 to the convex hull of support points.
    The hull of samples lies inside ``V(x)``, so the distance can only be
    too large; samples are added by angular bisection around the nearest
    hull point until the local angular spacing drops below ``angle_tol``.
    """
    if grid < 64:
        raise ValueError("grid must be at least 64")
    x = as_element(x)
    all_t = angle_grid(grid)
    pts, _, _ = _support_points(x, all_t)
    idx = convex_hull_indices(pts)
    hull_t, hull_p = all_t[idx], pts[idx]
    dist, q = closest_point_on_hull(0j, hull_p)
    gap = TWO_PI / grid
    while dist > 0.0 and gap > angle_tol:
        # bisect the angular gaps on both sides of the two samples nearest q
        near = hull_t[np.argsort(np.abs(hull_p - q), kind="stable")[:2]]
        new_t = []
        for t in near:
            j = int(np.searchsorted(all_t, t))
            lo = all_t[j - 1] - (TWO_PI if j == 0 else 0.0)
            hi = all_t[(j + 1) % len(all_t)] + (TWO_PI if j == len(all_t) - 1 else 0.0)
            gap = min(gap, t - lo, hi - t)
            new_t += [0.5 * (lo + t) % TWO_PI, 0.5 * (t + hi) % TWO_PI]
        new_t = np.setdiff1d(np.unique(new_t), all_t)
        if len(new_t) == 0:
            break
        new_p, _, _ = _support_points(x, new_t)
        all_t = np.union1d(all_t, new_t)
        cand_t = np.concatenate([hull_t, new_t])
        cand_p = np.concatenate([hull_p, new_p])
        idx = convex_hull_indices(cand_p)
        hull_t, hull_p = cand_t[idx], cand_p[idx]
        dist, q = closest_point_on_hull(0j, hull_p)
        gap *= 0.5
    return float(dist)

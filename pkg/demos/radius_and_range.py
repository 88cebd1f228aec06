"""A short tour of the numerical range of a few 2x2 and 3x3 matrices."""

import numpy as np

from numrad import (AlgebraElement, crawford, numerical_radius, op_norm, range_boundary,
                    spectral_radius, state_eval)

# The shift N has a disk of radius 1/2 as its numerical range.
N = AlgebraElement([[0, 1], [0, 0]])
res = numerical_radius(N)
print("v(N) =", res.value, " ||N|| =", op_norm(N), " r(N) =", spectral_radius(N))
print("the sweep hands back a unit vector attaining it:", abs(state_eval(N, res.witness)))

# support points trace the boundary circle
pts = range_boundary(N, grid=64).points
print("boundary radii span", np.abs(pts).min(), "to", np.abs(pts).max())

# A diagonal matrix: the range is the segment between the eigenvalues,
# so the Crawford number is the distance from 0 to that segment.
D = AlgebraElement(np.diag([1 + 1j, 2 - 1j]))
print("c(D) =", crawford(D), " by hand:", 3 / np.sqrt(5))

# Direct sums: the range is the hull of the block ranges.
X = AlgebraElement([np.array([[0, 2], [0, 0]]), np.diag([0.3j])])
print("v(N2 + 0.3i) =", numerical_radius(X).value, "(the larger block wins)")

# Random 3x3: v sits between ||x||/2 and ||x||.
rng = np.random.default_rng(0)
G = AlgebraElement(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
v, n = numerical_radius(G).value, op_norm(G)
print(f"||G||/2 = {n / 2:.4f} <= v(G) = {v:.4f} <= ||G|| = {n:.4f}")

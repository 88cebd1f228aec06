"""Reference computations that share no code with the package.

Everything here uses LAPACK through numpy/scipy, brute-force sampling, or
closed forms, so agreement with the package is evidence rather than an
echo.
"""

import numpy as np
from scipy.optimize import minimize_scalar


def blocks_of(x):
    return [np.asarray(b) for b in x.blocks] if hasattr(x, "blocks") else [np.asarray(x)]


def op_norm(x):
    return max(np.linalg.norm(b, 2) for b in blocks_of(x))


def spectral_radius(x):
    return max(np.max(np.abs(np.linalg.eigvals(b))) for b in blocks_of(x))


def sphere(rng, m, n):
    z = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def brute_radius(a, rng, samples=100_000, chunk=50_000):
    """Largest ``|<a z, z>|`` over uniformly sampled unit vectors (a lower bound)."""
    a = np.asarray(a)
    best = 0.0
    for lo in range(0, samples, chunk):
        z = sphere(rng, min(chunk, samples - lo), a.shape[0])
        q = np.einsum("mi,ij,mj->m", z.conj(), a, z)
        best = max(best, float(np.abs(q).max()))
    return best


def _lam_max_re(b, t):
    h = 0.5 * (np.exp(1j * t) * b + np.exp(-1j * t) * b.conj().T)
    return np.linalg.eigvalsh(h)[-1]


def support_max(x, sign=1.0, grid=4096):
    """``max_t sign * lambda_max(Re(e^{it} x))`` by LAPACK on a fine grid plus golden polish."""
    bl = blocks_of(x)

    def f(t):
        return sign * max(_lam_max_re(b, t) for b in bl)

    ts = 2 * np.pi * np.arange(grid) / grid
    vals = np.array([f(t) for t in ts])
    best = vals.max()
    for i in np.argsort(-vals)[:4]:
        h = 2 * np.pi / grid
        r = minimize_scalar(lambda t: -f(t), bracket=None, bounds=(ts[i] - h, ts[i] + h),
                            method="bounded", options={"xatol": 1e-12})
        best = max(best, -r.fun)
    return float(best)


def radius(x, grid=4096):
    return support_max(x, 1.0, grid)


def crawford(x, grid=4096):
    """``max(0, -min_t lambda_max(Re(e^{it} x)))``: distance from 0 to the range."""
    return max(0.0, support_max(x, -1.0, grid))


def charpoly_eigvals(h):
    """Eigenvalues of a small Hermitian matrix as roots of its characteristic polynomial."""
    h = np.asarray(h)
    n = h.shape[0]
    if n == 1:
        return np.array([h[0, 0].real])
    if n == 2:
        a, d = h[0, 0].real, h[1, 1].real
        b2 = abs(h[0, 1]) ** 2
        m, r = 0.5 * (a + d), np.hypot(0.5 * (a - d), np.sqrt(b2))
        return np.array([m + r, m - r])
    if n == 3:
        # trigonometric solution of the depressed cubic
        q = np.trace(h).real / 3.0
        k = h - q * np.eye(3)
        p = np.sqrt(np.trace(k @ k).real / 6.0)
        if p == 0.0:
            return np.array([q, q, q])
        r = np.clip(np.linalg.det(k / p).real / 2.0, -1.0, 1.0)
        phi = np.arccos(r) / 3.0
        e1 = q + 2 * p * np.cos(phi)
        e3 = q + 2 * p * np.cos(phi + 2 * np.pi / 3)
        return np.array([e1, 3 * q - e1 - e3, e3])
    raise ValueError("closed form only up to 3x3")


def ginibre(rng, n):
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)

"""Cyclic complex Jacobi kernels for stacks of small Hermitian matrices."""

import numba
import numpy as np

MAX_SWEEPS = 60
OFF_TOL = 1e-13


@numba.njit(cache=True, nogil=True)
def _jacobi_one(a, v, want_vectors):
    # a is overwritten with the (nearly) diagonal result; v accumulates rotations.
    n = a.shape[0]
    fro2 = 0.0
    for i in range(n):
        for j in range(n):
            fro2 += a[i, j].real ** 2 + a[i, j].imag ** 2
    target = (OFF_TOL * OFF_TOL) * fro2
    for sweep in range(MAX_SWEEPS + 1):
        off2 = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off2 += a[i, j].real ** 2 + a[i, j].imag ** 2
        if off2 <= target:
            return sweep
        if sweep == MAX_SWEEPS:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane
                cph = np.conj(phase)
                upp = c + 0.0j
                upq = s + 0.0j
                uqp = -s * cph
                uqq = c * cph
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * upp + akq * uqp
                    a[k, q] = akp * upq + akq * uqq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(upp) * apk + np.conj(uqp) * aqk
                    a[q, k] = np.conj(upq) * apk + np.conj(uqq) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if want_vectors:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = vkp * upp + vkq * uqp
                        v[k, q] = vkp * upq + vkq * uqq
    return -1


@numba.njit(cache=True, nogil=True)
def jacobi_batch(mats, want_vectors):
    """Diagonalize ``mats[b]`` for every b; returns (w, v, sweeps).

    Eigenvalues are sorted in descending order.  ``sweeps[b] == -1`` flags a
    matrix that hit the sweep cap.
    """
    nb, n, _ = mats.shape
    w = np.empty((nb, n))
    if want_vectors:
        vecs = np.empty((nb, n, n), dtype=np.complex128)
    else:
        vecs = np.empty((nb, 1, 1), dtype=np.complex128)
    sweeps = np.empty(nb, dtype=np.int64)
    a = np.empty((n, n), dtype=np.complex128)
    v = np.empty((n, n), dtype=np.complex128)
    for b in range(nb):
        for i in range(n):
            for j in range(n):
                a[i, j] = mats[b, i, j]
                v[i, j] = 1.0 if i == j else 0.0
        sweeps[b] = _jacobi_one(a, v, want_vectors)
        diag = np.empty(n)
        for i in range(n):
            diag[i] = a[i, i].real
        order = np.argsort(-diag)
        for i in range(n):
            w[b, i] = diag[order[i]]
        if want_vectors:
            for i in range(n):
                for k in range(n):
                    vecs[b, k, i] = v[k, order[i]]
    return w, vecs, sweeps

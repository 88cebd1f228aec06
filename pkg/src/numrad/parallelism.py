"""Norm parallelism and numerical radius parallelism.

``x`` is norm-parallel to ``y`` when ``||x + l y|| = ||x|| + ||y||`` for
some unimodular ``l``, and numerical-radius parallel when
``v(x + l y) = v(x) + v(y)``.  Both are decided by sweeping ``l = e^{ip}``
over the circle and comparing the best value with the target sum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .algebra import AlgebraElement, as_element, eigh_batch, is_central, is_unitary, op_norm
from .errors import InapplicableInput, NotCentral, NotUnitary, ShapeError
from .inequalities import CheckReport, chain_tol, sup_product_norm
from .numrange import (
    DEFAULT_GRID,
    TWO_PI,
    StateWitness,
    _top_eig,
    angle_grid,
    maximize_periodic,
    numerical_radius,
    rotated_re,
    state_eval,
)

__all__ = [
    "ParallelismCertificate",
    "decision_tol",
    "witness_tol",
    "vradius_parallel",
    "norm_parallel",
    "pure_state_witness",
    "check_thm213_equivalence",
    "check_cor212",
    "check_central_invariance",
]


def decision_tol(target: float) -> float:
    return max(1e-8, 1e-6 * target)


def witness_tol(vx: float, vy: float) -> float:
    return 1e-7 * max(1.0, vx * vy)


@dataclass(frozen=True)
class ParallelismCertificate:
    """Result of a parallelism sweep.

    ``achieved`` is the largest value of ``v(x + lam y)`` (or the norm) found
    and ``gap = target - achieved``; the decision is ``gap <= tol``.
    """

    kind: str
    decision: bool
    lam: complex
    achieved: float
    target: float
    gap: float
    tol: float
    witness: StateWitness | None = None

    @property
    def marginal(self) -> bool:
        """Gap within a factor of ten of the tolerance, on either side."""
        return self.tol / 10.0 < self.gap <= 10.0 * self.tol


def _same_shape(x, y) -> tuple[AlgebraElement, AlgebraElement]:
    x, y = as_element(x), as_element(y)
    if x.shape != y.shape:
        raise ShapeError(f"block shapes differ: {x.shape} vs {y.shape}")
    return x, y


def _inner_grid(grid: int) -> int:
    return max(64, grid // 8)


def _coarse_vradius_profile(x: AlgebraElement, y: AlgebraElement, psis: np.ndarray,
                            inner: int) -> np.ndarray:
    """Estimate ``v(x + e^{ip} y)`` for every ``p`` in ``psis``.

    Uses an ``inner``-point angle grid and a parabola through the discrete
    maximum and its two neighbours.  The estimate is only used to rank
    candidate angles; it may fall slightly on either side of the true value.
    """
    th = angle_grid(inner)
    est = np.empty(len(psis))
    # chunk over psi to bound the size of the eigenvalue stacks
    step = max(1, 32768 // inner)
    for lo in range(0, len(psis), step):
        ps = psis[lo:lo + step]
        lm = np.full((len(ps), inner), -np.inf)
        for bx, by in zip(x.blocks, y.blocks):
            rx = rotated_re(bx, th)
            tt = (th[None, :] + ps[:, None]).ravel()
            ry = rotated_re(by, tt).reshape(len(ps), inner, *by.shape)
            w, _ = eigh_batch((rx[None] + ry).reshape(-1, *bx.shape), False)
            lm = np.maximum(lm, w[:, 0].reshape(len(ps), inner))
        rows = np.arange(len(ps))
        i = np.argmax(lm, axis=1)
        a, b, c = lm[rows, i - 1], lm[rows, i], lm[rows, (i + 1) % inner]
        den = a - 2.0 * b + c
        with np.errstate(divide="ignore", invalid="ignore"):
            vertex = b - (a - c) ** 2 / (8.0 * den)
        est[lo:lo + step] = np.where(den < 0, vertex, b)
    return est


def _maximize_lambda(x: AlgebraElement, y: AlgebraElement, grid: int, inner: int,
                     candidates: int = 6) -> tuple[float, float]:
    """Best ``(v(x + e^{ip} y), p)``; the value is always a refined sweep."""
    psis = angle_grid(grid)
    prof = _coarse_vradius_profile(x, y, psis, inner)

    def exact(p: float) -> float:
        return numerical_radius(x + cmath.exp(1j * p) * y, inner).value

    left, right = np.roll(prof, 1), np.roll(prof, -1)
    peaks = np.flatnonzero((prof >= left) & (prof >= right))
    if len(peaks) == 0:
        peaks = np.array([int(np.argmax(prof))])
    peaks = peaks[np.lexsort((peaks, -prof[peaks]))][:candidates]
    h = TWO_PI / grid
    found = []
    for i in peaks:
        p0 = float(psis[i])
        found.append((exact(p0), p0))
        res = minimize_scalar(lambda p: -exact(p), bounds=(p0 - h, p0 + h), method="bounded",
                              options={"xatol": 1e-11})
        found.append((-float(res.fun), float(res.x) % TWO_PI))
    best = max(v for v, _ in found)
    scale = max(1.0, abs(best))
    tie = 1e-12 * scale
    psi = min(p for v, p in found if v >= best - tie)
    # ties on a flat profile go to the smallest grid angle
    for i in np.flatnonzero(prof >= best - 1e-3 * scale)[:16]:
        p = float(psis[i])
        if p >= psi:
            break
        if exact(p) >= best - tie:
            psi = p
            break
    return best, psi


def _validate(x, y, w: StateWitness | None) -> float:
    if w is None:
        return -math.inf
    return abs(state_eval(x, w)) * abs(state_eval(y, w))


def _attaining_states(x: AlgebraElement, y: AlgebraElement, grid: int, vx: float,
                      tol: float) -> tuple[StateWitness | None, float]:
    """Best state for ``|phi(x) phi(y)|`` among states with ``|phi(x)| = v(x)``.

    The states attaining ``v(x)`` are the unit vectors of the top eigenspace
    of ``Re(e^{it} x)`` at the maximizing angles ``t``.  On each such
    eigenspace ``Q`` the best ``|phi(y)|`` is the numerical radius of the
    compression ``Q* y Q``.
    """
    thetas = angle_grid(grid)
    prof = _top_eig(x, rotated_re, thetas)[0]
    cand = set(np.flatnonzero(prof >= vx - tol).tolist())
    # refined local maxima close to the radius
    left, right = np.roll(prof, 1), np.roll(prof, -1)
    peaks = np.flatnonzero((prof >= left) & (prof >= right))
    peaks = peaks[np.argsort(-prof[peaks], kind="stable")][:8]
    angles = [float(thetas[i]) for i in sorted(cand)]
    h = TWO_PI / grid
    for i in peaks:
        if prof[i] < vx - 0.05 * max(vx, 1e-300) - tol:
            continue
        val, t, _ = _refine_at(x, float(thetas[i]), h)
        if val >= vx - tol:
            angles.append(t)
    eig_tol = 1e-8 * max(1.0, vx)
    best_w, best_s = None, -math.inf
    for t in angles:
        for k, (bx, by) in enumerate(zip(x.blocks, y.blocks)):
            w, v = eigh_batch(rotated_re(bx, np.array([t])), True)
            w, v = w[0], v[0]
            if w[0] < vx - tol:
                continue
            q = v[:, w >= w[0] - eig_tol]
            comp = q.conj().T @ by @ q
            if q.shape[1] == 1:
                xi = q[:, 0]
            else:
                xi = q @ numerical_radius(comp, 64).witness.vector
            cand_w = StateWitness(xi, k)
            s = _validate(x, y, cand_w)
            if s > best_s:
                best_w, best_s = cand_w, s
    return best_w, best_s


def _refine_at(x: AlgebraElement, t0: float, h: float):
    res = minimize_scalar(lambda t: -float(_top_eig(x, rotated_re, [t])[0][0]),
                          bounds=(t0 - h, t0 + h), method="bounded",
                          options={"xatol": 1e-11})
    return -float(res.fun), float(res.x) % TWO_PI, None


def _boundary_witness(x, y, grid: int, vx: float, vy: float):
    """Search radius-attaining states of ``x`` against ``y`` and vice versa."""
    tol = witness_tol(vx, vy)
    wx, sx = _attaining_states(x, y, grid, vx, tol)
    wy, sy = _attaining_states(y, x, grid, vy, tol)
    return (wx, sx) if sx >= sy else (wy, sy)


def vradius_parallel(x, y, grid: int = DEFAULT_GRID) -> ParallelismCertificate:
    """Decide ``v(x + l y) = v(x) + v(y)`` for some unimodular ``l``.

    ``l = e^{ip}`` runs over a ``grid``-point circle.  A coarse estimate of
    ``v(x + e^{ip} y)`` ranks the circle; the best candidates are refined in
    ``p`` with a full radius sweep at every evaluation.  On a positive decision the certificate carries a pure state
    ``phi`` with ``|phi(x) phi(y)| = v(x) v(y)``.
    """
    if grid < 256:
        raise ValueError("grid must be at least 256")
    x, y = _same_shape(x, y)
    vx = numerical_radius(x, grid).value
    vy = numerical_radius(y, grid).value
    target = vx + vy
    if x.max_abs() == 0.0 or y.max_abs() == 0.0:
        # v(x + l 0) = v(x) for every l, so the gap vanishes identically
        achieved, psi = target, 0.0
    else:
        achieved, psi = _maximize_lambda(x, y, grid, _inner_grid(grid))
    lam = cmath.exp(1j * psi)
    gap = max(0.0, target - achieved)
    tol = decision_tol(target)
    decision = gap <= tol
    witness = None
    if decision:
        witness = numerical_radius(x + lam * y, grid).witness
        wtol = witness_tol(vx, vy)
        if _validate(x, y, witness) < vx * vy - wtol:
            alt, score = _boundary_witness(x, y, grid, vx, vy)
            if score >= vx * vy - wtol:
                witness = alt
    return ParallelismCertificate("vradius", decision, lam, achieved, target, gap, tol, witness)


def norm_parallel(x, y, grid: int = DEFAULT_GRID) -> ParallelismCertificate:
    """Decide ``||x + l y|| = ||x|| + ||y||`` for some unimodular ``l``.

    On a positive decision the witness is a vector state attaining the
    numerical radius of ``x* y``, which then satisfies
    ``|phi(x* y)| = ||x|| ||y||`` up to tolerance.
    """
    if grid < 64:
        raise ValueError("grid must be at least 64")
    x, y = _same_shape(x, y)
    nx, ny = op_norm(x), op_norm(y)
    target = nx + ny

    def f(psis):
        lam = np.exp(1j * np.asarray(psis))[:, None, None]
        out = np.zeros(len(psis))
        for bx, by in zip(x.blocks, y.blocks):
            s = bx + lam * by
            w, _ = eigh_batch(s.conj().transpose(0, 2, 1) @ s, False)
            out = np.maximum(out, np.sqrt(np.maximum(w[:, 0], 0.0)))
        return out

    achieved, psi, _ = maximize_periodic(f, grid)
    gap = max(0.0, target - achieved)
    tol = decision_tol(target)
    decision = gap <= tol
    witness = numerical_radius(x.H @ y, max(grid, 64)).witness if decision else None
    return ParallelismCertificate("norm", decision, cmath.exp(1j * psi), achieved, target,
                                  gap, tol, witness)


def pure_state_witness(x, y, grid: int = DEFAULT_GRID,
                       certificate: ParallelismCertificate | None = None) -> StateWitness | None:
    """A pure state with ``|phi(x) phi(y)| = v(x) v(y)``, or ``None``.

    Two searches are combined.  The first takes the top eigenvector of the
    maximizing ``Re(e^{it}(x + l* y))`` at the certificate's ``l*``.  The
    second runs over the radius-attaining states of ``x`` (and of ``y``)
    without reference to any ``l``.  A candidate is accepted only if the
    defining equality holds to :func:`witness_tol`.
    """
    x, y = _same_shape(x, y)
    if certificate is None:
        certificate = vradius_parallel(x, y, grid)
    vx = numerical_radius(x, grid).value
    vy = numerical_radius(y, grid).value
    target = vx * vy
    wtol = witness_tol(vx, vy)
    sweep_w = numerical_radius(x + certificate.lam * y, grid).witness
    if _validate(x, y, sweep_w) >= target - wtol:
        return sweep_w
    best_w, best_s = _boundary_witness(x, y, grid, vx, vy)
    return best_w if best_s >= target - wtol else None


def check_thm213_equivalence(x, y, grid: int = DEFAULT_GRID) -> CheckReport:
    """Radius parallelism holds exactly when a pure state gives
    ``|phi(x) phi(y)| = v(x) v(y)``; the two decisions must agree."""
    x, y = _same_shape(x, y)
    cert = vradius_parallel(x, y, grid)
    w = pure_state_witness(x, y, grid, cert)
    vx = numerical_radius(x, grid).value
    vy = numerical_radius(y, grid).value
    wtol = witness_tol(vx, vy)
    rep = CheckReport(name="thm213", inputs=[x.digest(), y.digest()], tol=cert.tol)
    rep.quantities.update({
        "v(x)": vx, "v(y)": vy, "v(x)v(y)": vx * vy,
        "max_l v(x+ly)": cert.achieved, "v(x)+v(y)": cert.target, "gap": cert.gap,
        "arg(l*)": cmath.phase(cert.lam),
    })
    if w is not None:
        px, py = state_eval(x, w), state_eval(y, w)
        rep.quantities.update({"|phi(x)|": abs(px), "|phi(y)|": abs(py),
                               "|phi(x)phi(y)|": abs(px * py)})
        rep.conditions["witness |phi(x)phi(y)| = v(x)v(y)"] = abs(abs(px * py) - vx * vy) <= wtol
    if cert.decision and cert.witness is not None:
        s = _validate(x, y, cert.witness)
        rep.conditions["certificate witness valid"] = abs(s - vx * vy) <= wtol
    rep.flags["(i) x ||_v y"] = cert.decision
    rep.flags["(ii) witness exists"] = w is not None
    rep.flags["marginal"] = cert.marginal
    rep.conditions["(i) <=> (ii)"] = cert.decision == (w is not None)
    return rep.finalize()


def _scalar_sup_product(a: complex, b: complex, part: str) -> float:
    fn = (lambda z: z.real) if part == "re" else (lambda z: z.imag)

    def f(t):
        e = np.exp(1j * np.asarray(t))
        return np.abs(fn(e * a)) * np.abs(fn(e * b))

    return maximize_periodic(f, 256)[0]


def _sup_norm_product(x: AlgebraElement, y: AlgebraElement, grid: int, part: str) -> float:
    """``sup_t ||P(e^{it}x)|| ||P(e^{it}y)||`` with ``P`` = Re or Im."""
    from .numrange import rotated_im

    fam = rotated_re if part == "re" else rotated_im

    def norms(z, t):
        out = np.zeros(len(t))
        for b in z.blocks:
            w, _ = eigh_batch(fam(b, t), False)
            out = np.maximum(out, np.abs(w).max(axis=1))
        return out

    return maximize_periodic(lambda t: norms(x, t) * norms(y, t), grid)[0]


def check_cor212(x, y, grid: int = DEFAULT_GRID) -> CheckReport:
    """Necessary condition for radius parallelism through the refined triangle inequality.

    With ``t0 = arg(l*)``, both ``sup_t ||Re(e^{it}x) Re(e^{i(t+t0)}y)||``
    and the Im analogue must equal ``v(x) v(y)``.  Raises
    :class:`InapplicableInput` unless ``x ||_v y``.

    The scalar sup-products of the pure-state witness are reported as
    extra quantities and flags; they do not affect ``passed``.
    """
    x, y = _same_shape(x, y)
    cert = vradius_parallel(x, y, grid)
    if not cert.decision:
        raise InapplicableInput(f"x is not radius-parallel to y (gap {cert.gap:.3g})")
    vx = numerical_radius(x, grid).value
    vy = numerical_radius(y, grid).value
    target = vx * vy
    t0 = cmath.phase(cert.lam)
    s_re, _ = sup_product_norm(x, y, grid, "re", shift=t0)
    s_im, _ = sup_product_norm(x, y, grid, "im", shift=t0)
    # an inexact decision with gap g only forces s >= v(x)v(y) - g (v(x)+v(y)) / 2
    tol = chain_tol(target, s_re, s_im) + 0.5 * cert.gap * (vx + vy)
    rep = CheckReport(name="cor212", inputs=[x.digest(), y.digest()], tol=tol)
    rep.quantities.update({
        "v(x)v(y)": target, "theta0": t0, "gap": cert.gap,
        "sup||Re Re(t0)||": s_re, "sup||Im Im(t0)||": s_im,
        "sup||Re x|| ||Re y||": _sup_norm_product(x, y, grid, "re"),
        "sup||Im x|| ||Im y||": _sup_norm_product(x, y, grid, "im"),
    })
    rep.slacks["(i) sup||Re Re(t0)|| <= v(x)v(y)"] = target - s_re
    rep.slacks["(i) v(x)v(y) <= sup||Re Re(t0)||"] = s_re - target
    rep.slacks["(ii) sup||Im Im(t0)|| <= v(x)v(y)"] = target - s_im
    rep.slacks["(ii) v(x)v(y) <= sup||Im Im(t0)||"] = s_im - target

    w = pure_state_witness(x, y, grid, cert)
    if w is not None:
        px, py = state_eval(x, w), state_eval(y, w)
        sc_re = _scalar_sup_product(px, py, "re")
        sc_im = _scalar_sup_product(px, py, "im")
        rep.quantities.update({"scalar_sup_re": sc_re, "scalar_sup_im": sc_im})
        ftol = chain_tol(target)
        rep.flags["scalar_sup_re = v(x)v(y)"] = abs(sc_re - target) <= ftol
        rep.flags["scalar_sup_im = v(x)v(y)"] = abs(sc_im - target) <= ftol
        rep.flags["scalar_sup_re = sup||Re x|| ||Re y||"] = (
            abs(sc_re - rep.quantities["sup||Re x|| ||Re y||"]) <= ftol)
        rep.flags["scalar_sup_im = sup||Im x|| ||Im y||"] = (
            abs(sc_im - rep.quantities["sup||Im x|| ||Im y||"]) <= ftol)
    return rep.finalize()


def check_central_invariance(x, y, c, grid: int = DEFAULT_GRID) -> CheckReport:
    """For a central unitary ``c``: ``x ||_v y``, ``cx ||_v cy`` and
    ``xc ||_v yc`` are decided identically, and ``v(cz) = v(z) = v(zc)``.

    Raises :class:`NotUnitary` or :class:`NotCentral` if ``c`` fails the
    hypothesis.  Centrality is tested against the matrix units of every
    block.
    """
    x, y = _same_shape(x, y)
    c = as_element(c)
    if c.shape != x.shape:
        raise ShapeError(f"c has block shape {c.shape}, expected {x.shape}")
    if not is_unitary(c):
        raise NotUnitary("c* c differs from the identity")
    if not is_central(c):
        raise NotCentral("c does not commute with the matrix units")
    certs = {
        "(i) x ||_v y": vradius_parallel(x, y, grid),
        "(ii) cx ||_v cy": vradius_parallel(c @ x, c @ y, grid),
        "(iii) xc ||_v yc": vradius_parallel(x @ c, y @ c, grid),
    }
    decisions = [cert.decision for cert in certs.values()]
    rep = CheckReport(name="central", inputs=[x.digest(), y.digest(), c.digest()])
    for k, cert in certs.items():
        rep.flags[k] = cert.decision
        rep.quantities[f"gap {k[:5].strip()}"] = cert.gap
    rep.conditions["decisions agree"] = len(set(decisions)) == 1
    worst = 0.0
    for label, z in (("x", x), ("y", y), ("x+y", x + y)):
        vz = numerical_radius(z, grid).value
        vcz = numerical_radius(c @ z, grid).value
        vzc = numerical_radius(z @ c, grid).value
        rep.quantities[f"v({label})"] = vz
        rep.quantities[f"|v(c{label}) - v({label})|"] = abs(vcz - vz)
        rep.quantities[f"|v({label}c) - v({label})|"] = abs(vzc - vz)
        worst = max(worst, abs(vcz - vz) / max(1.0, vz), abs(vzc - vz) / max(1.0, vz))
    rep.tol = 1e-8
    rep.slacks["probe v(cz) = v(z) = v(zc)"] = -worst
    rep.flags["marginal"] = any(cert.marginal for cert in certs.values())
    return rep.finalize()

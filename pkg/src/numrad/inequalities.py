"""Verifiers for numerical radius inequalities.

Each ``check_*`` function evaluates one chain of inequalities on concrete
input and returns a :class:`CheckReport`.  A report never raises on a
violated bound; it records the slack of every link instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    AlgebraElement,
    as_element,
    cartesian_parts,
    eigh_batch,
    op_norm,
    spectral_radius,
)
from .errors import InapplicableInput, ShapeError
from .numrange import (
    DEFAULT_GRID,
    angle_grid,
    crawford,
    maximize_periodic,
    numerical_radius,
    rotated_im,
    rotated_re,
)

__all__ = [
    "CheckReport",
    "chain_tol",
    "check_basic_bounds",
    "check_thm23",
    "check_thm29",
    "check_thm28",
    "check_lemma210",
    "check_thm211",
    "check_cor24",
    "check_cor25",
    "sup_product_norm",
]

ABS_TOL = 1e-9
REL_TOL = 1e-7


def chain_tol(*values: float, rel: float = REL_TOL, abs_: float = ABS_TOL) -> float:
    """Scale-aware tolerance ``max(abs_, rel * max|values|)``."""
    scale = max((abs(v) for v in values), default=0.0)
    return max(abs_, rel * scale)


@dataclass
class CheckReport:
    """Outcome of one verifier on one input.

    ``slacks`` maps each link ``a <= b`` to ``b - a``; a link passes when its
    slack is at least ``-tol``.  ``conditions`` holds boolean requirements
    that are not inequalities (agreement of two decisions, an identity
    holding to its own tolerance).  ``passed`` is true exactly when every
    slack and every condition passes.  ``flags`` carries informational
    booleans that do not affect ``passed``.
    """

    name: str
    inputs: list[str]
    quantities: dict[str, float] = field(default_factory=dict)
    slacks: dict[str, float] = field(default_factory=dict)
    conditions: dict[str, bool] = field(default_factory=dict)
    flags: dict[str, bool] = field(default_factory=dict)
    tol: float = ABS_TOL
    passed: bool = False

    def finalize(self) -> "CheckReport":
        for k, v in self.quantities.items():
            if not math.isfinite(v):
                raise ArithmeticError(f"non-finite quantity {k}={v} in {self.name}")
        self.passed = all(s >= -self.tol for s in self.slacks.values()) and all(
            self.conditions.values()
        )
        return self

    def failures(self) -> list[str]:
        out = [k for k, s in self.slacks.items() if s < -self.tol]
        out += [k for k, ok in self.conditions.items() if not ok]
        return out

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": list(self.inputs),
            "quantities": {k: float(v) for k, v in self.quantities.items()},
            "slacks": {k: float(v) for k, v in self.slacks.items()},
            "conditions": {k: bool(v) for k, v in self.conditions.items()},
            "flags": {k: bool(v) for k, v in self.flags.items()},
            "tol": float(self.tol),
            "passed": bool(self.passed),
        }


def _chain(name: str, inputs, labels: list[str], values: list[float], **extra) -> CheckReport:
    """Report for ``values[0] <= values[1] <= ...``."""
    rep = CheckReport(name=name, inputs=[as_element(a).digest() for a in inputs])
    rep.quantities.update(zip(labels, values))
    rep.quantities.update(extra)
    for (la, a), (lb, b) in zip(zip(labels, values), zip(labels[1:], values[1:])):
        rep.slacks[f"{la} <= {lb}"] = b - a
    rep.tol = chain_tol(*values)
    return rep.finalize()


def check_basic_bounds(x, grid: int = DEFAULT_GRID) -> CheckReport:
    """``||x||/2 <= v(x) <= ||x||``."""
    x = as_element(x)
    nx = op_norm(x)
    v = numerical_radius(x, grid).value
    return _chain("eq11", [x], ["||x||/2", "v(x)", "||x||"], [0.5 * nx, v, nx])


def _sym_norm(x: AlgebraElement) -> float:
    return op_norm(x.H @ x + x @ x.H)


def check_thm23(x, grid: int = DEFAULT_GRID) -> CheckReport:
    """Both chains refining ``||x||/2 <= v(x) <= ||x||`` through ``x^2``.

    Lower chain: ``||x||/2 <= sqrt(|| |x|^2 + |x*|^2 || + 2 c(x^2)) / 2 <= v(x)``.
    Upper chain: ``v(x) <= sqrt(|| |x|^2 + |x*|^2 || + 2 v(x^2)) / 2
    <= (||x|| + ||x^2||^(1/2)) / 2 <= ||x||``.

    The quantity ``sqrt(||x||^2 + 3 ||x^2||) / 2`` appears in the usual proof
    of the upper chain; it is reported but not placed in any link.
    """
    x = as_element(x)
    x2 = x @ x
    nx = op_norm(x)
    nx2 = op_norm(x2)
    s = _sym_norm(x)
    v = numerical_radius(x, grid).value
    v2 = numerical_radius(x2, grid).value
    c2 = crawford(x2, grid)
    lower = 0.5 * math.sqrt(s + 2.0 * c2)
    upper = 0.5 * math.sqrt(s + 2.0 * v2)
    mid = 0.5 * (nx + math.sqrt(nx2))
    labels = ["||x||/2", "lower", "v(x)", "upper", "(||x||+||x^2||^1/2)/2", "||x||"]
    values = [0.5 * nx, lower, v, upper, mid, nx]
    return _chain(
        "thm23", [x], labels, values,
        **{
            "|| |x|^2+|x*|^2 ||": s,
            "c(x^2)": c2,
            "v(x^2)": v2,
            "||x^2||": nx2,
            "sqrt(||x||^2+3||x^2||)/2": 0.5 * math.sqrt(nx * nx + 3.0 * nx2),
        },
    )


def check_thm29(x, grid: int = DEFAULT_GRID) -> CheckReport:
    """``||x||/2 <= sqrt(||x*x + xx*||)/2 <= v(x) <= sqrt(||x*x + xx*||/2) <= ||x||``.

    Also checks the identity ``x*x + xx* = 2 Re(x)^2 + 2 Im(x)^2`` entrywise
    to ``1e-12 * (1 + ||x||^2)``.
    """
    x = as_element(x)
    nx = op_norm(x)
    sym = x.H @ x + x @ x.H
    s = op_norm(sym)
    v = numerical_radius(x, grid).value
    re, im = cartesian_parts(x)
    ident = (sym - 2.0 * (re @ re) - 2.0 * (im @ im)).max_abs()
    labels = ["||x||/2", "sqrt(||x*x+xx*||)/2", "v(x)", "sqrt(||x*x+xx*||)/sqrt2", "||x||"]
    values = [0.5 * nx, 0.5 * math.sqrt(s), v, math.sqrt(s / 2.0), nx]
    rep = _chain("thm29", [x], labels, values,
                 **{"||x*x+xx*||": s, "identity_residual": ident})
    rep.conditions["x*x+xx* = 2Re^2+2Im^2"] = ident <= 1e-12 * (1.0 + nx * nx)
    return rep.finalize()


def check_thm28(x, grid: int = DEFAULT_GRID) -> CheckReport:
    """Equivalence of ``v(x) = ||x||/2`` and
    ``||x|| = ||Re(e^{it}x)|| + ||Im(e^{it}x)||`` for all ``t``.

    Statement (ii) is tested on the uniform angle grid.  The report also
    checks that ``Im(Re(e^{it}x) Im(e^{it}x))`` equals ``(xx* - x*x)/4`` at
    every grid angle to ``1e-10``.
    """
    if grid < 256:
        raise ValueError("grid must be at least 256")
    x = as_element(x)
    nx = op_norm(x)
    v = numerical_radius(x, grid).value
    tol = chain_tol(nx, v)
    thetas = angle_grid(grid)
    ident = 0.0
    re_norm = np.zeros(grid)
    im_norm = np.zeros(grid)
    for b in x.blocks:
        re_s = rotated_re(b, thetas)
        im_s = rotated_im(b, thetas)
        wr, _ = eigh_batch(re_s, False)
        wi, _ = eigh_batch(im_s, False)
        re_norm = np.maximum(re_norm, np.abs(wr).max(axis=1))
        im_norm = np.maximum(im_norm, np.abs(wi).max(axis=1))
        prod = re_s @ im_s
        im_prod = (prod - prod.conj().transpose(0, 2, 1)) / 2j
        target = (b @ b.conj().T - b.conj().T @ b) / 4.0
        ident = max(ident, float(np.max(np.abs(im_prod - target))))
    sums = re_norm + im_norm
    dev = float(np.max(np.abs(sums - nx)))
    stmt_i = abs(v - 0.5 * nx) <= tol
    stmt_ii = dev <= tol
    rep = CheckReport(name="thm28", inputs=[x.digest()], tol=tol)
    rep.quantities.update({
        "v(x)": v,
        "||x||/2": 0.5 * nx,
        "||x||": nx,
        "max_t |sum(t) - ||x|||": dev,
        "min_t sum(t)": float(sums.min()),
        "max_t sum(t)": float(sums.max()),
        "identity_residual": ident,
    })
    rep.flags["(i) v(x) = ||x||/2"] = stmt_i
    rep.flags["(ii) ||x|| = ||Re|| + ||Im|| for all t"] = stmt_ii
    rep.conditions["(i) <=> (ii)"] = stmt_i == stmt_ii
    rep.conditions["Im(Re Im) = (xx*-x*x)/4"] = ident <= 1e-10
    return rep.finalize()


def check_lemma210(z, w) -> CheckReport:
    """``r(z+w) <= (||z|| + ||w|| + sqrt((||z||-||w||)^2 + 4 min(||zw||, ||wz||))) / 2``."""
    z, w = as_element(z), as_element(w)
    if z.shape != w.shape:
        raise ShapeError("z and w must have the same block shape")
    nz, nw = op_norm(z), op_norm(w)
    m = min(op_norm(z @ w), op_norm(w @ z))
    bound = 0.5 * (nz + nw + math.sqrt((nz - nw) ** 2 + 4.0 * m))
    r = spectral_radius(z + w)
    return _chain("lem210", [z, w], ["r(z+w)", "bound"], [r, bound],
                  **{"||z||": nz, "||w||": nw, "min(||zw||,||wz||)": m})


def sup_product_norm(x, y, grid: int = DEFAULT_GRID, part: str = "re",
                     shift: float = 0.0) -> tuple[float, float]:
    """``sup_t ||P(e^{it} x) P(e^{i(t+shift)} y)||`` with ``P`` = Re or Im.

    Returns ``(value, argmax)``.
    """
    x, y = as_element(x), as_element(y)
    if x.shape != y.shape:
        raise ShapeError("x and y must have the same block shape")
    fam = {"re": rotated_re, "im": rotated_im}[part]

    def f(t):
        out = np.zeros(len(t))
        for bx, by in zip(x.blocks, y.blocks):
            p = fam(bx, t) @ fam(by, t + shift)
            w, _ = eigh_batch(p.conj().transpose(0, 2, 1) @ p, False)
            out = np.maximum(out, np.sqrt(np.maximum(w[:, 0], 0.0)))
        return out

    val, theta, _ = maximize_periodic(f, grid)
    return val, theta


def check_thm211(x, y, grid: int = DEFAULT_GRID) -> CheckReport:
    """Refined triangle inequality, Re and Im variants.

    ``v(x+y) <= (v(x)+v(y))/2 + sqrt((v(x)-v(y))^2 + 4 s)/2 <= v(x) + v(y)``
    with ``s = sup_t ||Re(e^{it}x) Re(e^{it}y)||`` (resp. Im).
    """
    if grid < 256:
        raise ValueError("grid must be at least 256")
    x, y = as_element(x), as_element(y)
    if x.shape != y.shape:
        raise ShapeError("x and y must have the same block shape")
    vx = numerical_radius(x, grid).value
    vy = numerical_radius(y, grid).value
    vxy = numerical_radius(x + y, grid).value
    s_re, _ = sup_product_norm(x, y, grid, "re")
    s_im, _ = sup_product_norm(x, y, grid, "im")

    def refined(s):
        return 0.5 * (vx + vy) + 0.5 * math.sqrt((vx - vy) ** 2 + 4.0 * s)

    b_re, b_im = refined(s_re), refined(s_im)
    total = vx + vy
    rep = CheckReport(name="thm211", inputs=[x.digest(), y.digest()],
                      tol=chain_tol(vxy, b_re, b_im, total))
    rep.quantities.update({
        "v(x)": vx, "v(y)": vy, "v(x+y)": vxy, "v(x)+v(y)": total,
        "sup||Re Re||": s_re, "sup||Im Im||": s_im,
        "bound_re": b_re, "bound_im": b_im,
    })
    rep.slacks["(i) v(x+y) <= bound_re"] = b_re - vxy
    rep.slacks["(i) bound_re <= v(x)+v(y)"] = total - b_re
    rep.slacks["(ii) v(x+y) <= bound_im"] = b_im - vxy
    rep.slacks["(ii) bound_im <= v(x)+v(y)"] = total - b_im
    return rep.finalize()


def check_cor24(x, grid: int = DEFAULT_GRID) -> CheckReport:
    """If ``x^2 = 0`` then ``v(x) = ||x||/2``.

    Raises :class:`InapplicableInput` when ``||x^2|| > 1e-10 (1 + ||x||^2)``.
    """
    x = as_element(x)
    nx = op_norm(x)
    nx2 = op_norm(x @ x)
    if nx2 > 1e-10 * (1.0 + nx * nx):
        raise InapplicableInput(f"||x^2|| = {nx2:.3g} is not zero")
    v = numerical_radius(x, grid).value
    rep = CheckReport(name="cor24", inputs=[x.digest()], tol=chain_tol(nx, v))
    rep.quantities.update({"v(x)": v, "||x||/2": 0.5 * nx, "||x^2||": nx2})
    rep.slacks["v(x) <= ||x||/2"] = 0.5 * nx - v
    rep.slacks["||x||/2 <= v(x)"] = v - 0.5 * nx
    return rep.finalize()


def check_cor25(x, grid: int = DEFAULT_GRID) -> CheckReport:
    """If ``v(x) = ||x||`` then ``||x^2|| = ||x||^2``.

    Raises :class:`InapplicableInput` when ``v(x)`` differs from ``||x||``
    by more than the chain tolerance.
    """
    x = as_element(x)
    nx = op_norm(x)
    v = numerical_radius(x, grid).value
    tol = chain_tol(nx, v)
    if abs(v - nx) > tol:
        raise InapplicableInput(f"v(x) = {v:.12g} differs from ||x|| = {nx:.12g}")
    nx2 = op_norm(x @ x)
    tol2 = REL_TOL * (1.0 + nx * nx)
    rep = CheckReport(name="cor25", inputs=[x.digest()], tol=tol2)
    rep.quantities.update({"v(x)": v, "||x||": nx, "||x^2||": nx2, "||x||^2": nx * nx})
    rep.slacks["||x^2|| <= ||x||^2"] = nx * nx - nx2
    rep.slacks["||x||^2 <= ||x^2||"] = nx2 - nx * nx
    return rep.finalize()

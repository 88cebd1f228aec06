"""Seeded random ensembles of algebra elements.

Randomness comes from numpy's counter-based Philox bit generator.  The
64-bit seed keys a ``SeedSequence``; sample ``k`` of an ensemble uses the
``k``-th spawned child, so a sample does not depend on how many others are
drawn.  Gaussian variates come from ``Generator.standard_normal``.  A
standard complex Gaussian is ``(a + ib)/sqrt(2)`` with independent real
normals ``a, b``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraElement
from .errors import UnsupportedFamilyDim

__all__ = ["EnsembleSpec", "FAMILIES", "generate", "rng_stream", "haar_unitary"]

FAMILIES = ("ginibre", "hermitian", "normal", "unitary", "nilpotent2", "squarezero", "directsum")


@dataclass(frozen=True)
class EnsembleSpec:
    family: str
    dim: int
    count: int
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedFamilyDim(f"unknown family {self.family!r}")
        if self.dim < 1 or self.count < 1:
            raise UnsupportedFamilyDim("dim and count must be positive")


def rng_stream(seed: int, count: int) -> list[np.random.Generator]:
    """``count`` independent generators keyed by ``seed``."""
    ss = np.random.SeedSequence(int(seed) & (2**64 - 1))
    return [np.random.Generator(np.random.Philox(child)) for child in ss.spawn(count)]


def _cgauss(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(_cgauss(rng, (n, n)))
    d = np.diag(r)
    return q * (d / np.abs(d))


def _sample(family: str, n: int, rng: np.random.Generator) -> AlgebraElement:
    if family == "ginibre":
        return AlgebraElement(_cgauss(rng, (n, n)))
    if family == "hermitian":
        g = _cgauss(rng, (n, n))
        return AlgebraElement(0.5 * (g + g.conj().T))
    if family == "normal":
        u = haar_unitary(rng, n)
        d = _cgauss(rng, n)
        return AlgebraElement((u * d) @ u.conj().T)
    if family == "unitary":
        return AlgebraElement(haar_unitary(rng, n))
    if family == "nilpotent2":
        t = rng.uniform(0.5, 2.0)
        return AlgebraElement(np.array([[0.0, t], [0.0, 0.0]]))
    if family == "squarezero":
        u = _cgauss(rng, n)
        v = _cgauss(rng, n)
        v = v - (np.vdot(u, v) / np.vdot(u, u)) * u
        # x = u v* squares to (v* u) u v* = 0
        return AlgebraElement(np.outer(u, v.conj()))
    # directsum
    return AlgebraElement([_cgauss(rng, (n, n)), _cgauss(rng, (n, n))])


def generate(spec: EnsembleSpec) -> list[AlgebraElement]:
    """Deterministic list of ``spec.count`` samples from ``spec.family``.

    ``nilpotent2`` requires ``dim == 2`` and ``squarezero`` requires
    ``dim >= 2``; other dimensions raise :class:`UnsupportedFamilyDim`.
    """
    if spec.family == "nilpotent2" and spec.dim != 2:
        raise UnsupportedFamilyDim("nilpotent2 is only defined for dim 2")
    if spec.family == "squarezero" and spec.dim < 2:
        raise UnsupportedFamilyDim("squarezero needs dim >= 2")
    return [_sample(spec.family, spec.dim, rng) for rng in rng_stream(spec.seed, spec.count)]

"""Finite-dimensional C*-algebra elements and their basic spectral data.

An element of ``M_{n1} ⊕ ... ⊕ M_{nk}`` is stored as a tuple of square
complex blocks.  A single block models a full matrix algebra ``M_n``.
All arithmetic is blockwise; products, sums and norms never mix blocks.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Sequence

import numpy as np

from ._jacobi import jacobi_batch
from .errors import NoConvergence, NotHermitian, ShapeError

__all__ = [
    "AlgebraElement",
    "EigenDecomposition",
    "as_element",
    "adjoint",
    "cartesian_parts",
    "herm_eig",
    "eigh_batch",
    "op_norm",
    "spectral_radius",
    "is_hermitian",
    "is_normal",
    "is_unitary",
    "is_central",
]

HERMITIAN_TOL = 1e-12


def _as_block(m) -> np.ndarray:
    a = np.array(m, dtype=np.complex128, copy=True)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ShapeError(f"block must be a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("block contains NaN or Inf entries")
    a.setflags(write=False)
    return a


class AlgebraElement:
    """An element of a finite direct sum of full matrix algebras.

    Parameters
    ----------
    blocks : array_like or sequence of array_like
        Either a single square matrix or a sequence of square matrices, one
        per summand.
    """

    __slots__ = ("blocks",)
    __array_priority__ = 1000

    def __init__(self, blocks):
        if isinstance(blocks, AlgebraElement):
            blocks = blocks.blocks
        elif isinstance(blocks, np.ndarray) and blocks.ndim == 2:
            blocks = (blocks,)
        elif isinstance(blocks, (list, tuple)) and blocks and np.ndim(blocks[0]) < 2:
            # a nested list describing one matrix
            blocks = (blocks,)
        blocks = tuple(_as_block(b) for b in blocks)
        if not blocks:
            raise ShapeError("an element needs at least one block")
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    # construction helpers

    @classmethod
    def identity(cls, sizes: int | Sequence[int]) -> "AlgebraElement":
        sizes = (sizes,) if isinstance(sizes, (int, np.integer)) else tuple(sizes)
        return cls([np.eye(n) for n in sizes])

    @classmethod
    def zeros(cls, sizes: int | Sequence[int]) -> "AlgebraElement":
        sizes = (sizes,) if isinstance(sizes, (int, np.integer)) else tuple(sizes)
        return cls([np.zeros((n, n)) for n in sizes])

    @classmethod
    def scalar_blocks(cls, scalars: Iterable[complex], sizes: Sequence[int]) -> "AlgebraElement":
        """Element whose ``k``-th block is ``scalars[k]`` times the identity."""
        return cls([s * np.eye(n) for s, n in zip(scalars, sizes, strict=True)])

    # structure

    @property
    def shape(self) -> tuple[int, ...]:
        """Block sizes ``(n1, ..., nk)``."""
        return tuple(b.shape[0] for b in self.blocks)

    @property
    def nblocks(self) -> int:
        return len(self.blocks)

    @property
    def dim(self) -> int:
        return sum(self.shape)

    def identity_like(self) -> "AlgebraElement":
        return AlgebraElement.identity(self.shape)

    def zeros_like(self) -> "AlgebraElement":
        return AlgebraElement.zeros(self.shape)

    def to_dense(self) -> np.ndarray:
        """Block-diagonal dense matrix of size ``dim``."""
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        k = 0
        for b in self.blocks:
            n = b.shape[0]
            out[k:k + n, k:k + n] = b
            k += n
        return out

    def matrix(self) -> np.ndarray:
        """The single block of an element of ``M_n``."""
        if self.nblocks != 1:
            raise ShapeError("element has more than one block")
        return self.blocks[0]

    # arithmetic

    def _check_same(self, other: "AlgebraElement") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"block shapes differ: {self.shape} vs {other.shape}")

    def _coerce(self, other) -> "AlgebraElement | None":
        if isinstance(other, AlgebraElement):
            self._check_same(other)
            return other
        if isinstance(other, np.ndarray) and other.ndim == 2:
            other = AlgebraElement(other)
            self._check_same(other)
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Number):
                return AlgebraElement([b + other * np.eye(b.shape[0]) for b in self.blocks])
            return NotImplemented
        return AlgebraElement([a + b for a, b in zip(self.blocks, o.blocks)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Number):
                return self + (-other)
            return NotImplemented
        return AlgebraElement([a - b for a, b in zip(self.blocks, o.blocks)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return AlgebraElement([-b for b in self.blocks])

    def __mul__(self, other):
        if isinstance(other, Number):
            return AlgebraElement([other * b for b in self.blocks])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return AlgebraElement([b / other for b in self.blocks])
        return NotImplemented

    def __matmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraElement([a @ b for a, b in zip(self.blocks, o.blocks)])

    def __rmatmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o @ self

    def __pow__(self, k: int):
        if not isinstance(k, (int, np.integer)) or k < 0:
            return NotImplemented
        return AlgebraElement([np.linalg.matrix_power(b, int(k)) for b in self.blocks])

    @property
    def H(self) -> "AlgebraElement":
        """Adjoint (blockwise conjugate transpose)."""
        return AlgebraElement([b.conj().T for b in self.blocks])

    # comparisons

    def allclose(self, other, atol: float = 1e-12, rtol: float = 0.0) -> bool:
        o = as_element(other)
        if o.shape != self.shape:
            return False
        return all(np.allclose(a, b, atol=atol, rtol=rtol) for a, b in zip(self.blocks, o.blocks))

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(b))) for b in self.blocks)

    def fro_norm(self) -> float:
        return math.sqrt(sum(float(np.sum(np.abs(b) ** 2)) for b in self.blocks))

    def digest(self) -> str:
        """Short content hash, stable across runs."""
        h = hashlib.sha256()
        for b in self.blocks:
            h.update(str(b.shape).encode())
            h.update(np.ascontiguousarray(b).tobytes())
        return h.hexdigest()[:16]

    def __repr__(self) -> str:
        if self.nblocks == 1:
            return f"AlgebraElement({np.array2string(self.blocks[0], precision=4)})"
        return f"AlgebraElement(blocks={self.shape})"


def as_element(x) -> AlgebraElement:
    """Coerce a matrix, list of blocks, or element to :class:`AlgebraElement`."""
    return x if isinstance(x, AlgebraElement) else AlgebraElement(x)


def adjoint(x) -> AlgebraElement:
    return as_element(x).H


def cartesian_parts(x) -> tuple[AlgebraElement, AlgebraElement]:
    """Return ``(Re x, Im x)`` with ``Re x = (x + x*)/2`` and ``Im x = (x - x*)/2i``."""
    x = as_element(x)
    re = [0.5 * (b + b.conj().T) for b in x.blocks]
    im = [(b - b.conj().T) / 2j for b in x.blocks]
    return AlgebraElement(re), AlgebraElement(im)


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a Hermitian element, merged over blocks.

    ``eigenvectors[k]`` lives in block ``block_index[k]``; eigenvalues are
    sorted in descending order (ties keep block order).
    """

    eigenvalues: np.ndarray
    eigenvectors: tuple[np.ndarray, ...]
    block_index: np.ndarray
    residual: float

    def __len__(self) -> int:
        return len(self.eigenvalues)


def eigh_batch(mats: np.ndarray, vectors: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Jacobi eigendecomposition of a stack ``(B, n, n)`` of Hermitian matrices.

    Returns ``(w, v)`` with ``w`` of shape ``(B, n)`` sorted descending and,
    if ``vectors``, ``v[b, :, k]`` the eigenvector for ``w[b, k]``.
    """
    mats = np.ascontiguousarray(mats, dtype=np.complex128)
    w, v, sweeps = jacobi_batch(mats, vectors)
    if np.any(sweeps < 0):
        raise NoConvergence("Jacobi sweep cap reached")
    return w, (v if vectors else None)


def is_hermitian(x, tol: float = HERMITIAN_TOL) -> bool:
    x = as_element(x)
    return all(
        np.max(np.abs(b - b.conj().T)) <= tol * (1.0 + np.max(np.abs(b))) for b in x.blocks
    )


def herm_eig(h, tol: float = HERMITIAN_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian element by cyclic complex Jacobi.

    Raises
    ------
    NotHermitian
        If ``max|h - h*| > tol * (1 + max|h|)`` on some block.
    NoConvergence
        If 60 sweeps do not bring the off-diagonal mass below
        ``1e-13 * ||h||_F``.
    """
    h = as_element(h)
    if not is_hermitian(h, tol):
        raise NotHermitian("element is not self-adjoint within tolerance")
    vals, vecs, tags, residual = [], [], [], 0.0
    for k, b in enumerate(h.blocks):
        hb = 0.5 * (b + b.conj().T)
        w, v = eigh_batch(hb[None], vectors=True)
        w, v = w[0], v[0]
        r = np.linalg.norm(hb @ v - v * w, axis=0)
        residual = max(residual, float(np.max(r)))
        vals.extend(w)
        vecs.extend(v[:, i].copy() for i in range(len(w)))
        tags.extend([k] * len(w))
    vals = np.asarray(vals)
    order = np.argsort(-vals, kind="stable")
    return EigenDecomposition(
        eigenvalues=vals[order],
        eigenvectors=tuple(vecs[i] for i in order),
        block_index=np.asarray(tags)[order],
        residual=residual,
    )


def _block_norms(x: AlgebraElement) -> list[float]:
    out = []
    for b in x.blocks:
        w, _ = eigh_batch((b.conj().T @ b)[None], vectors=False)
        out.append(math.sqrt(max(float(w[0, 0]), 0.0)))
    return out


def op_norm(x) -> float:
    """C*-norm: ``sqrt(lambda_max(x* x))``, maximized over blocks."""
    return max(_block_norms(as_element(x)))


def spectral_radius(x, rtol: float = 1e-9, max_squarings: int = 40) -> float:
    """Spectral radius via the Gelfand formula with repeated squaring.

    Each iterate is rescaled to unit norm and the exponent is kept in log
    space, so powers never overflow or underflow.
    """
    x = as_element(x)
    nrm = op_norm(x)
    if nrm == 0.0:
        return 0.0
    y = x / nrm
    log_scale = math.log(nrm)
    estimate = nrm
    # nilpotent parts survive until the power reaches the largest block size
    min_power = 2 * max(x.shape)
    for k in range(1, max_squarings + 1):
        z = y @ y
        nz = op_norm(z)
        if nz == 0.0:
            return 0.0
        y = z / nz
        log_scale = 2.0 * log_scale + math.log(nz)
        new = math.exp(log_scale / 2.0 ** k)
        if 2 ** k >= min_power and abs(new - estimate) <= rtol * estimate:
            return new
        estimate = new
    raise NoConvergence(f"Gelfand iteration did not stabilize after {max_squarings} squarings")


def is_normal(x, tol: float = 1e-10) -> bool:
    x = as_element(x)
    return op_norm(x.H @ x - x @ x.H) <= tol * (1.0 + op_norm(x) ** 2)


def is_unitary(c, tol: float = 1e-10) -> bool:
    c = as_element(c)
    return op_norm(c.H @ c - c.identity_like()) <= tol


def is_central(c, tol: float = 1e-10) -> bool:
    """Check ``c`` commutes with every matrix unit ``E_ij`` of every block."""
    c = as_element(c)
    for b in c.blocks:
        n = b.shape[0]
        scale = 1.0 + np.max(np.abs(b))
        for i in range(n):
            for j in range(n):
                # (b E_ij - E_ij b) has column j = b[:, i] and row i = -b[j, :]
                comm = np.zeros((n, n), dtype=np.complex128)
                comm[:, j] += b[:, i]
                comm[i, :] -= b[j, :]
                if np.max(np.abs(comm)) > tol * scale:
                    return False
    return True

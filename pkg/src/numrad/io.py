"""JSON documents for elements and result objects.

A matrix document is ``{"rows": n, "cols": n, "data": [[re, im], ...]}``
with ``data`` in row-major order.  A direct sum is
``{"blocks": [matrix-document, ...]}``.  NaN and infinities are rejected.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .algebra import AlgebraElement, as_element
from .errors import ParseError, ShapeError

__all__ = [
    "parse_element",
    "element_from_doc",
    "element_to_doc",
    "serialize_element",
    "witness_to_dict",
    "sweep_to_dict",
    "certificate_to_dict",
    "complex_pair",
]


def complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _reject_constant(name: str):
    raise ParseError(f"non-finite number {name} is not allowed")


def _number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{where}: expected a number, got {type(v).__name__}")
    f = float(v)
    if not math.isfinite(f):
        raise ParseError(f"{where}: non-finite value")
    return f


def _int_field(doc: dict, key: str, where: str) -> int:
    if key not in doc:
        raise ParseError(f"{where}: missing field '{key}'")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise ParseError(f"{where}.{key}: expected a positive integer")
    return v


def _matrix_from_doc(doc, where: str) -> np.ndarray:
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    rows = _int_field(doc, "rows", where)
    cols = _int_field(doc, "cols", where)
    if rows != cols:
        raise ShapeError(f"{where}: matrix is {rows}x{cols}, not square")
    data = doc.get("data")
    if not isinstance(data, list):
        raise ParseError(f"{where}.data: expected a list of [re, im] pairs")
    if len(data) != rows * cols:
        raise ShapeError(f"{where}.data: expected {rows * cols} entries, got {len(data)}")
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, pair in enumerate(data):
        loc = f"{where}.data[{i}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"{loc}: expected [re, im]")
        out[i] = complex(_number(pair[0], loc), _number(pair[1], loc))
    return out.reshape(rows, cols)


def element_from_doc(doc) -> AlgebraElement:
    """Build an element from an already-decoded JSON value."""
    if isinstance(doc, dict) and "blocks" in doc:
        blocks = doc["blocks"]
        if not isinstance(blocks, list) or not blocks:
            raise ParseError("blocks: expected a nonempty list")
        return AlgebraElement([_matrix_from_doc(b, f"blocks[{i}]") for i, b in enumerate(blocks)])
    return AlgebraElement(_matrix_from_doc(doc, "$"))


def parse_element(text: bytes | str) -> AlgebraElement:
    """Parse a UTF-8 JSON element document.

    Raises :class:`ParseError` (with line or field location) on malformed
    input and :class:`ShapeError` on non-square data.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return element_from_doc(doc)


def _matrix_doc(b: np.ndarray) -> dict:
    n = b.shape[0]
    return {"rows": n, "cols": n, "data": [complex_pair(z) for z in b.ravel()]}


def element_to_doc(x, force_blocks: bool = False) -> dict:
    x = as_element(x)
    if x.nblocks == 1 and not force_blocks:
        return _matrix_doc(x.blocks[0])
    return {"blocks": [_matrix_doc(b) for b in x.blocks]}


def serialize_element(x, force_blocks: bool = False) -> bytes:
    return json.dumps(element_to_doc(x, force_blocks)).encode("utf-8")


def witness_to_dict(w) -> dict | None:
    if w is None:
        return None
    return {"vector": [complex_pair(z) for z in w.vector], "block": int(w.block),
            "weight": float(w.weight)}


def sweep_to_dict(res) -> dict:
    return {"value": float(res.value), "theta": float(res.theta),
            "witness": witness_to_dict(res.witness), "grid": int(len(res.profile))}


def certificate_to_dict(cert) -> dict:
    return {
        "kind": cert.kind,
        "decision": bool(cert.decision),
        "lambda": complex_pair(cert.lam),
        "achieved": float(cert.achieved),
        "target": float(cert.target),
        "gap": float(cert.gap),
        "tol": float(cert.tol),
        "marginal": bool(cert.marginal),
        "witness": witness_to_dict(cert.witness),
    }

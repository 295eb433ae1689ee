"""Reading and writing matrices, vectors and reports.

Every float is written with 17 significant digits, which round-trips an
IEEE double exactly, and ``-0.0`` is written as ``0`` so that equal matrices
serialize to identical bytes.  Files are JSON.  Matrix files look like::

    {"n": 2, "entries": [[1, 0, 0, 0], [0, 0, 0, 0], ...]}

with ``entries`` listed row-major.  A nested list of rows is accepted on
input as well.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import ParseError
from .qmatrix import QMatrix
from .qspace import QVector
from .quaternion import Quaternion


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return "null"
    if x == 0.0:
        return "0"
    return format(x, ".17g")


def _inline(value) -> bool:
    return isinstance(value, (list, tuple)) and all(
        isinstance(v, (int, float, np.floating, np.integer)) and not isinstance(v, bool) for v in value
    )


def dumps(value, indent: int = 0) -> str:
    """Deterministic JSON text; numeric lists stay on one line."""
    pad = "  " * indent
    inner_pad = "  " * (indent + 1)
    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, Quaternion):
        return dumps(value.to_list(), indent)
    if isinstance(value, np.ndarray):
        return dumps(value.tolist(), indent)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner_pad}{json.dumps(str(k), ensure_ascii=False)}: {dumps(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if _inline(value):
            return "[" + ", ".join(dumps(v) for v in value) + "]"
        items = [inner_pad + dumps(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def write_text(path, text: str):
    if path is None or str(path) == "-":
        import sys

        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def parse_quaternion(obj) -> Quaternion:
    if isinstance(obj, bool):
        raise ParseError(f"expected a quaternion, got {obj!r}")
    if isinstance(obj, (int, float)):
        return Quaternion(float(obj))
    if isinstance(obj, list) and len(obj) == 4 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj
    ):
        return Quaternion(*map(float, obj))
    raise ParseError(f"expected a quaternion 4-array, got {obj!r}")


def matrix_to_obj(a: QMatrix) -> dict:
    return {"n": a.n, "entries": a.array.reshape(-1, 4).tolist()}


def matrix_from_obj(obj) -> QMatrix:
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise ParseError('matrix must be an object with "n" and "entries"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError(f'"n" must be a non-negative integer, got {n!r}')
    entries = obj["entries"]
    if not isinstance(entries, list):
        raise ParseError('"entries" must be a list')
    if len(entries) == n and n and all(isinstance(r, list) and len(r) == n and isinstance(r[0], list) for r in entries):
        flat = [e for row in entries for e in row]
    else:
        flat = entries
    if len(flat) != n * n:
        raise ParseError(f"expected {n * n} entries, got {len(flat)}")
    arr = np.array([parse_quaternion(e).to_array() for e in flat], dtype=float).reshape(n, n, 4)
    if not np.all(np.isfinite(arr)):
        raise ParseError("matrix entries must be finite")
    return QMatrix(arr)


def dumps_matrix(a: QMatrix) -> str:
    return dumps(matrix_to_obj(a)) + "\n"


def read_matrix(path) -> QMatrix:
    return matrix_from_obj(_load(path))


def write_matrix(path, a: QMatrix):
    write_text(path, dumps_matrix(a))


def read_vector(path) -> QVector:
    obj = _load(path)
    if not isinstance(obj, list):
        raise ParseError("vector file must be an array of quaternion 4-arrays")
    return QVector(np.array([parse_quaternion(e).to_array() for e in obj], dtype=float).reshape(-1, 4))


def write_vector(path, v: QVector):
    write_text(path, dumps(v.array.tolist()) + "\n")


def read_report(path) -> dict:
    obj = _load(path)
    if not isinstance(obj, dict):
        raise ParseError("report must be a JSON object")
    return obj


def write_report(path, report: dict):
    write_text(path, dumps(report) + "\n")


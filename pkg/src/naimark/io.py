"""Matrix, fusion frame and report files.

Matrix files are JSON objects ``{"field", "rows", "cols", "data"}`` with
``data`` in row-major order and complex entries written as ``[re, im]``.
Real matrices may also be given as CSV. Serialization uses the shortest
round-trip decimal form of each float, so parse followed by serialize
reproduces a file written by this module byte for byte.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
from pathlib import Path

import numpy as np

from .errors import InvalidInput, ParseError
from .fusion import FusionFrame
from .numkernel import COMPLEX, REAL, as_matrix, field_of


def _reject_constant(name):
    raise ValueError(f"non-finite value {name}")


def _load_json(text: str):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: expected a number, got {x!r}")
    v = float(x)
    if not math.isfinite(v):
        raise ParseError(f"{where}: non-finite value")
    return v


def matrix_from_object(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ParseError("matrix must be a JSON object")
    missing = [k for k in ("field", "rows", "cols", "data") if k not in obj]
    if missing:
        raise ParseError(f"matrix object is missing keys {missing}")
    field = obj["field"]
    if field not in (REAL, COMPLEX):
        raise ParseError(f"unknown field {field!r}")
    rows, cols = obj["rows"], obj["cols"]
    if not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in (rows, cols)):
        raise ParseError("rows and cols must be non-negative integers")
    data = obj["data"]
    if not isinstance(data, list):
        raise ParseError("data must be a list")
    if len(data) != rows * cols:
        raise ParseError(f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(data)}")
    if field == REAL:
        vals = [_number(x, f"entry {i}") for i, x in enumerate(data)]
        arr = np.array(vals, dtype=np.float64)
    else:
        vals = []
        for i, x in enumerate(data):
            if isinstance(x, list):
                if len(x) != 2:
                    raise ParseError(f"entry {i}: complex entries are [re, im] pairs")
                vals.append(complex(_number(x[0], f"entry {i}"), _number(x[1], f"entry {i}")))
            else:
                vals.append(complex(_number(x, f"entry {i}"), 0.0))
        arr = np.array(vals, dtype=np.complex128)
    return arr.reshape(rows, cols)


def _parse_csv(text: str) -> np.ndarray:
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        vals = []
        for col, cell in enumerate(row, start=1):
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(f"not a number: {cell.strip()!r}", lineno, col) from None
            if not math.isfinite(v):
                raise ParseError("non-finite value", lineno, col)
            vals.append(v)
        if rows and len(vals) != len(rows[0]):
            raise ParseError(f"row has {len(vals)} entries, expected {len(rows[0])}", lineno)
        rows.append(vals)
    if not rows:
        raise ParseError("empty CSV matrix")
    return np.array(rows, dtype=np.float64)


def _read_source(source) -> str:
    if isinstance(source, Path):
        return source.read_text()
    if isinstance(source, str) and "\n" not in source and os.path.isfile(source):
        return Path(source).read_text()
    return str(source)


def parse_matrix(source) -> np.ndarray:
    """Parse a matrix from a path or from file contents (JSON or CSV)."""
    text = _read_source(source)
    if text.lstrip().startswith("{"):
        return matrix_from_object(_load_json(text))
    return _parse_csv(text)


def _canonical(x: float) -> float:
    # json writes repr(float): shortest round-trip decimal
    return float(x) + 0.0


def matrix_to_object(a) -> dict:
    a = np.asarray(a)
    if a.ndim != 2:
        raise InvalidInput("only 2-D matrices can be serialized")
    if a.size:
        a = as_matrix(a)
    field = field_of(a)
    flat = a.reshape(-1)
    if field == REAL:
        data = [_canonical(x) for x in flat]
    else:
        data = [[_canonical(x.real), _canonical(x.imag)] for x in flat]
    return {"field": field, "rows": int(a.shape[0]), "cols": int(a.shape[1]), "data": data}


def serialize_matrix(a) -> str:
    return json.dumps(matrix_to_object(a)) + "\n"


def write_matrix(path, a) -> None:
    Path(path).write_text(serialize_matrix(a))


def fusion_from_object(obj) -> FusionFrame:
    if not isinstance(obj, dict) or "blocks" not in obj or "ambient_dim" not in obj:
        raise ParseError("fusion frame file needs keys ambient_dim and blocks")
    blocks = obj["blocks"]
    if not isinstance(blocks, list):
        raise ParseError("blocks must be a list")
    bases, weights = [], []
    for i, b in enumerate(blocks):
        if not isinstance(b, dict) or "weight" not in b or "basis" not in b:
            raise ParseError(f"block {i} needs keys weight and basis")
        weights.append(_number(b["weight"], f"block {i} weight"))
        bases.append(matrix_from_object(b["basis"]))
    try:
        return FusionFrame(tuple(bases), tuple(weights), int(obj["ambient_dim"]))
    except InvalidInput as exc:
        raise ParseError(str(exc)) from None


def parse_fusion(source) -> FusionFrame:
    return fusion_from_object(_load_json(_read_source(source)))


def fusion_to_object(ff: FusionFrame) -> dict:
    return {
        "ambient_dim": int(ff.ambient_dim),
        "blocks": [{"weight": _canonical(w), "basis": matrix_to_object(q)} for q, w in zip(ff.bases, ff.weights)],
    }


def serialize_fusion(ff: FusionFrame) -> str:
    return json.dumps(fusion_to_object(ff)) + "\n"


def write_fusion(path, ff: FusionFrame) -> None:
    Path(path).write_text(serialize_fusion(ff))


def is_fusion_file(path) -> bool:
    text = Path(path).read_text()
    if not text.lstrip().startswith("{"):
        return False
    obj = _load_json(text)
    return isinstance(obj, dict) and "blocks" in obj


def file_digest(path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def to_jsonable(x):
    """Convert numpy scalars/arrays and tuples into JSON-ready values."""
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        if x.ndim == 2:
            return matrix_to_object(x)
        return [to_jsonable(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return _canonical(x)
    if isinstance(x, complex):
        return [_canonical(x.real), _canonical(x.imag)]
    return x


def serialize_report(report: dict) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2) + "\n"

"""Matrix files and deterministic JSON reports for the command line.

A matrix file is strict JSON with keys ``n`` (dimension), ``re`` (n x n
array of reals) and optionally ``im`` (same shape, defaults to zero).
Vectors use the same keys with flat arrays. Reports are serialized with
a fixed key order and 17-significant-digit floats, so identical inputs
produce byte-identical output and every written float reloads to the
same double. +inf is encoded as the string "+inf" to stay inside strict
JSON.
"""

import hashlib
import json
import math

import numpy as np

from .errors import InputError, NumericError

INF_SENTINEL = "+inf"


def _shape_check(data, key, shape):
    arr = np.asarray(data.get(key), dtype=np.float64)
    if arr.shape != shape:
        raise InputError(
            f"field {key!r} must have shape {shape}, got {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise InputError(f"field {key!r} contains non-finite entries")
    return arr


def _load_json(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise InputError(f"{path} must contain a JSON object")
    return data


def _dimension(data, path) -> int:
    n = data.get("n")
    if not isinstance(n, int) or n < 0:
        raise InputError(f"{path}: field 'n' must be a nonnegative integer")
    return n


def load_matrix(path: str) -> np.ndarray:
    """Read a complex matrix from a matrix file."""
    data = _load_json(path)
    n = _dimension(data, path)
    re = _shape_check(data, "re", (n, n))
    if data.get("im") is None:
        return re.astype(np.complex128)
    im = _shape_check(data, "im", (n, n))
    return re + 1j * im


def load_vector(path: str) -> np.ndarray:
    """Read a complex vector from a vector file (flat ``re``/``im``)."""
    data = _load_json(path)
    n = _dimension(data, path)
    re = _shape_check(data, "re", (n,))
    if data.get("im") is None:
        return re.astype(np.complex128)
    im = _shape_check(data, "im", (n,))
    return re + 1j * im


def matrix_payload(m: np.ndarray) -> dict:
    """Matrix-file representation of a complex matrix, ``im`` always present."""
    m = np.asarray(m, dtype=np.complex128)
    return {
        "n": int(m.shape[0]),
        "re": [[float(v) for v in row] for row in m.real],
        "im": [[float(v) for v in row] for row in m.imag],
    }


def sha256_file(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        raise NumericError("NaN is not representable in a report")
    if math.isinf(x):
        if x > 0:
            return json.dumps(INF_SENTINEL)
        raise NumericError("-inf is not representable in a report")
    return format(float(x), ".17g")


def dumps_report(obj) -> str:
    """Serialize a report deterministically (fixed order, 17 digits)."""
    pieces: list[str] = []
    _write(obj, pieces)
    return "".join(pieces) + "\n"


def _write(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt_float(float(obj)))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(",")
            out.append(json.dumps(str(key)))
            out.append(":")
            _write(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(",")
            _write(value, out)
        out.append("]")
    else:
        raise NumericError(f"cannot serialize object of type {type(obj)!r}")

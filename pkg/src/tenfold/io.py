"""File formats: matrices (JSON and CSV), SymmetryData documents, run manifests.

A JSON matrix is a row-major array of rows of ``[re, im]`` pairs.  A CSV
matrix starts with a ``# schema_version=N`` comment, then the header
``i,j,re,im`` and one entry per line.  Floats are written in shortest
round-trip form, so reading back is bit-exact.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io as _io
import json
import os
import platform

import jsonschema
import numpy as np

from .classifier import SymmetryData
from .errors import InputError, SpecInvalid
from .linalg import AntiUnitaryOp, RngStream

__all__ = [
    "SCHEMA_VERSION", "SYMMETRY_DATA_SCHEMA", "matrix_to_json", "matrix_from_json",
    "matrix_to_csv", "matrix_from_csv", "symmetry_data_to_json", "symmetry_data_from_json",
    "load_symmetry_data", "dump_json", "write_text", "build_manifest",
]

SCHEMA_VERSION = 1

_MATRIX = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "array",
        "minItems": 1,
        "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
    },
}
_OPERATOR = {
    "oneOf": [
        {"type": "null"},
        {
            "type": "object",
            "properties": {"present": {"type": "boolean"}, "w": {"oneOf": [_MATRIX, {"type": "null"}]}},
            "required": ["present"],
            "additionalProperties": False,
        },
    ]
}
SYMMETRY_DATA_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SymmetryData",
    "type": "object",
    "properties": {
        "schema_version": {"type": "integer"},
        "dim": {"type": "integer", "minimum": 1},
        "g0_generators": {"type": "array", "items": _MATRIX},
        "t": _OPERATOR,
        "c": _OPERATOR,
        "chirality": {"oneOf": [_MATRIX, {"type": "null"}]},
        "nambu": {"type": "boolean"},
    },
    "required": ["dim"],
    "additionalProperties": False,
}


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(obj) -> np.ndarray:
    try:
        a = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix: {exc}") from None
    if a.ndim != 3 or a.shape[2] != 2:
        raise InputError(f"matrix must be rows of [re, im] pairs, got array of shape {a.shape}")
    return a[..., 0] + 1j * a[..., 1]


def matrix_to_csv(m) -> str:
    m = np.asarray(m, dtype=complex)
    buf = _io.StringIO()
    buf.write(f"# schema_version={SCHEMA_VERSION}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "re", "im"])
    for (i, j), z in np.ndenumerate(m):
        w.writerow([i, j, repr(float(z.real)), repr(float(z.imag))])
    return buf.getvalue()


def matrix_from_csv(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    rows = list(csv.reader(lines))
    if not rows or rows[0] != ["i", "j", "re", "im"]:
        raise InputError("CSV matrix must start with the header i,j,re,im")
    try:
        entries = [(int(i), int(j), float(re), float(im)) for i, j, re, im in rows[1:]]
    except ValueError as exc:
        raise InputError(f"malformed CSV row: {exc}") from None
    if not entries:
        raise InputError("CSV matrix has no entries")
    n = max(e[0] for e in entries) + 1
    k = max(e[1] for e in entries) + 1
    m = np.zeros((n, k), dtype=complex)
    seen = np.zeros((n, k), dtype=bool)
    for i, j, re, im in entries:
        m[i, j] = complex(re, im)
        seen[i, j] = True
    if not seen.all():
        raise InputError("CSV matrix has missing entries")
    return m


def _op_to_json(op):
    if op is None:
        return {"present": False, "w": None}
    return {"present": True, "w": matrix_to_json(op.w)}


def symmetry_data_to_json(data: SymmetryData) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "dim": data.dim,
        "g0_generators": [matrix_to_json(g) for g in data.g0_generators],
        "t": _op_to_json(data.t_op),
        "c": _op_to_json(data.c_op),
        "chirality": None if data.chirality is None else matrix_to_json(data.chirality),
        "nambu": bool(data.nambu),
    }


def symmetry_data_from_json(doc) -> SymmetryData:
    try:
        jsonschema.validate(doc, SYMMETRY_DATA_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SpecInvalid(f"SymmetryData schema violation: {exc.message}") from None

    def op(key):
        o = doc.get(key)
        if not o or not o.get("present"):
            return None
        if o.get("w") is None:
            raise SpecInvalid(f"'{key}' is present but has no matrix")
        return AntiUnitaryOp(matrix_from_json(o["w"]))

    chir = doc.get("chirality")
    return SymmetryData(
        dim=doc["dim"],
        g0_generators=[matrix_from_json(g) for g in doc.get("g0_generators", [])],
        t_op=op("t"),
        c_op=op("c"),
        chirality=None if chir is None else matrix_from_json(chir),
        nambu=bool(doc.get("nambu", False)),
    )


def load_symmetry_data(path) -> SymmetryData:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecInvalid(f"malformed JSON in {path}: {exc}") from None
    return symmetry_data_from_json(doc)


def dump_json(obj) -> str:
    """Deterministic JSON text (sorted keys, shortest round-trip floats)."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def write_text(path, text):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def build_manifest(command, config: dict, seed, stream_ids, version, threads=None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "tenfold",
        "version": version,
        "command": command,
        "config": config,
        "seed": seed,
        "rng_algorithm": RngStream.algorithm,
        "stream_ids": list(stream_ids),
        "threads": threads,
        "numpy": np.__version__,
        "python": platform.python_version(),
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }

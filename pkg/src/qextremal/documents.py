"""JSON channel documents.

A channel document looks like::

    {"format_version": 1, "dim_in": 2, "dim_out": 2,
     "kraus": [[[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]],
     "name": "id:2", "provenance": "identity map"}

``kraus`` is a list of matrices, each a list of rows, each entry a
``[real, imag]`` pair.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .channel import KrausSet
from .choi import ChoiMatrix
from .matcore import InputError

FORMAT_VERSION = 1


def _encode_matrix(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _decode_matrix(rows, where: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise InputError(f"{where}: expected a non-empty list of rows")
    width = None
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not row:
            raise InputError(f"{where}[{i}]: expected a non-empty list of entries")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError(f"{where}: ragged rows ({len(row)} vs {width} entries)")
        vals = []
        for j, z in enumerate(row):
            if (not isinstance(z, list) or len(z) != 2
                    or not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                               for x in z)):
                raise InputError(f"{where}[{i}][{j}]: expected [real, imag]")
            if not all(math.isfinite(x) for x in z):
                raise InputError(f"{where}[{i}][{j}]: non-finite value")
            vals.append(complex(z[0], z[1]))
        out.append(vals)
    return np.array(out, dtype=np.complex128)


def channel_to_dict(k: KrausSet, name: str | None = None,
                    provenance: str | None = None) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "dim_in": k.dim_in,
        "dim_out": k.dim_out,
        "kraus": [_encode_matrix(e) for e in k.ops],
    }
    if name is not None:
        doc["name"] = name
    if provenance is not None:
        doc["provenance"] = provenance
    return doc


def channel_from_dict(doc) -> tuple[KrausSet, dict]:
    """Validate a channel document; returns the Kraus set and its metadata."""
    if not isinstance(doc, dict):
        raise InputError("channel document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise InputError(f"unsupported format_version {doc.get('format_version')!r}")
    try:
        dim_in, dim_out, kraus = doc["dim_in"], doc["dim_out"], doc["kraus"]
    except KeyError as exc:
        raise InputError(f"missing field {exc.args[0]!r}") from None
    for key, val in (("dim_in", dim_in), ("dim_out", dim_out)):
        if not isinstance(val, int) or isinstance(val, bool) or val < 1:
            raise InputError(f"{key} must be a positive integer")
    if not isinstance(kraus, list) or not kraus:
        raise InputError("kraus must be a non-empty list of matrices")
    ops = [_decode_matrix(m, f"kraus[{i}]") for i, m in enumerate(kraus)]
    for i, e in enumerate(ops):
        if e.shape != (dim_out, dim_in):
            raise InputError(
                f"kraus[{i}] has shape {e.shape}, expected ({dim_out}, {dim_in})")
    meta = {key: doc[key] for key in ("name", "provenance") if key in doc}
    for key, val in meta.items():
        if not isinstance(val, str):
            raise InputError(f"{key} must be a string")
    return KrausSet.from_ops(ops), meta


def choi_to_dict(c: ChoiMatrix) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "dim_in": c.dim_in,
        "dim_out": c.dim_out,
        "matrix": _encode_matrix(c.matrix),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def save_channel(path, k: KrausSet, name=None, provenance=None):
    Path(path).write_text(dumps(channel_to_dict(k, name, provenance)), encoding="utf-8")


def load_channel(path) -> tuple[KrausSet, dict]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return channel_from_dict(doc)

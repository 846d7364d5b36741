"""JSON scene files.

Schema::

    {
      "n": 2,
      "units": "chern",                 # or "raw"; optional, default chern
      "bulk_samples": [
        {"weight": 0.5, "theta": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}
      ],
      "boundary_samples": [
        {"weight": 1.0, "theta_tan": [[[3, 0]]], "levi": [[[-2, 0]]]}
      ]
    }

Matrices are row-major nested lists of ``[re, im]`` pairs.  A bare number
is accepted as a real entry.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import DimensionMismatch, NegativeWeight, NonHermitian, ParseError
from .integrals import BoundarySample, BulkBatch, Scene, Units
from .pencil import HermitianMatrix

__all__ = ["parse_scene", "loads_scene", "dumps_scene", "scene_from_dict", "scene_to_dict",
           "write_scene", "parse_matrix"]


def _number(x, field):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"expected a number, got {x!r}", field=field)
    return float(x)


def parse_matrix(rows, field="matrix") -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ParseError("matrix must be a non-empty list of rows", field=field)
    m = len(rows)
    out = np.zeros((m, m), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != m:
            raise DimensionMismatch(f"row {i} must have {m} entries", field=field)
        for j, entry in enumerate(row):
            where = f"{field}[{i}][{j}]"
            if isinstance(entry, list):
                if len(entry) != 2:
                    raise ParseError("complex entry must be [re, im]", field=where)
                out[i, j] = complex(_number(entry[0], where), _number(entry[1], where))
            else:
                out[i, j] = _number(entry, where)
    return out


def _hermitian(rows, field):
    a = parse_matrix(rows, field)
    try:
        return HermitianMatrix(a)
    except NonHermitian as exc:
        raise NonHermitian(exc.i, exc.j, field=field) from None


def _weight(item, index, field):
    if "weight" not in item:
        raise ParseError("missing weight", field=field)
    w = _number(item["weight"], f"{field}.weight")
    if w < 0:
        raise NegativeWeight(index, w, field=f"{field}.weight")
    return w


def _require(item, key, field):
    if not isinstance(item, dict):
        raise ParseError("sample must be an object", field=field)
    if key not in item:
        raise ParseError(f"missing {key}", field=field)
    return item[key]


def scene_from_dict(doc) -> Scene:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if "n" not in doc or isinstance(doc["n"], bool) or not isinstance(doc["n"], int):
        raise ParseError("n must be an integer", field="n")
    n = doc["n"]
    if n < 1:
        raise DimensionMismatch("n must be positive", field="n")
    try:
        units = Units(doc.get("units", "chern"))
    except ValueError:
        raise ParseError(f"unknown units {doc.get('units')!r}", field="units") from None

    weights, thetas = [], []
    for i, item in enumerate(doc.get("bulk_samples", [])):
        field = f"bulk_samples[{i}]"
        theta = _hermitian(_require(item, "theta", field), f"{field}.theta")
        if theta.dim != n:
            raise DimensionMismatch(f"theta has size {theta.dim}, expected {n}",
                                    field=f"{field}.theta")
        weights.append(_weight(item, i, field))
        thetas.append(theta.entries)
    bulk = BulkBatch(weights, thetas if thetas else np.zeros((0, n, n)), n)

    boundary = []
    for i, item in enumerate(doc.get("boundary_samples", [])):
        field = f"boundary_samples[{i}]"
        theta = _hermitian(_require(item, "theta_tan", field), f"{field}.theta_tan")
        levi = _hermitian(_require(item, "levi", field), f"{field}.levi")
        for name, h in (("theta_tan", theta), ("levi", levi)):
            if h.dim != n - 1:
                raise DimensionMismatch(f"{name} has size {h.dim}, expected {n - 1}",
                                        field=f"{field}.{name}")
        boundary.append(BoundarySample(_weight(item, i, field), theta, levi))
    return Scene(n, bulk, tuple(boundary), units)


def loads_scene(text: str) -> Scene:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return scene_from_dict(doc)


def parse_scene(path) -> Scene:
    """Read and validate a scene file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read scene file: {exc}") from None
    return loads_scene(text)


def _matrix_rows(h: HermitianMatrix):
    return [[[float(z.real), float(z.imag)] for z in row] for row in h.entries]


def scene_to_dict(scene: Scene) -> dict:
    return {
        "n": scene.n,
        "units": scene.units.value,
        "bulk_samples": [{"weight": float(w), "theta": _matrix_rows(HermitianMatrix(th))}
                         for w, th in zip(scene.bulk.weights, scene.bulk.thetas)],
        "boundary_samples": [{"weight": s.weight, "theta_tan": _matrix_rows(s.theta_tan),
                              "levi": _matrix_rows(s.levi)} for s in scene.boundary],
    }


def dumps_scene(scene: Scene) -> str:
    # json writes floats with repr, which round-trips exactly
    return json.dumps(scene_to_dict(scene), indent=1) + "\n"


def write_scene(scene: Scene, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_scene(scene))


"""JSON diagram files.

Two formats share an envelope ``{"format": ..., "version": 1, ...}``:

``venn-map``
    darts as integer permutations (``edge_pairing`` is alpha, ``rotation``
    is sigma), ``curve_of`` per dart, ``outer_dart`` and ``free_curves``.
``venn-grid``
    ``shape`` and ``scope`` plus the cells run-length encoded as
    ``[sign, count]`` pairs, first axis varying fastest (``"order": "F"``).
    The lift axes are short and come last, so runs follow the long base
    axes instead and stay an order of magnitude fewer than in C order.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .cmap import CombinatorialMap, FreeCurve
from .errors import FormatError
from .grid import GridDiagram
from .signs import dtype_for, from_sign, to_sign

VERSION = 1


def map_to_dict(cmap: CombinatorialMap) -> dict:
    return {
        "format": "venn-map",
        "version": VERSION,
        "name": cmap.name,
        "curves": list(cmap.curves),
        "curve_of": list(cmap.curve_of),
        "edge_pairing": list(cmap.alpha),
        "rotation": list(cmap.sigma),
        "outer_dart": cmap.outer_dart,
        "free_curves": [
            {"curve": f.curve, "host_sign": f.host_sign, "parent": f.parent} for f in cmap.free_curves
        ],
    }


def map_from_dict(data: dict) -> CombinatorialMap:
    _check_envelope(data, "venn-map")
    try:
        return CombinatorialMap(
            curves=tuple(data["curves"]),
            curve_of=tuple(data["curve_of"]),
            alpha=tuple(data["edge_pairing"]),
            sigma=tuple(data["rotation"]),
            outer_dart=data.get("outer_dart"),
            free_curves=tuple(FreeCurve(f["curve"], f["host_sign"], f.get("parent")) for f in data.get("free_curves", [])),
            name=data.get("name", ""),
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed venn-map: {exc}") from exc


def _runs(flat: np.ndarray):
    if len(flat) == 0:
        return [], []
    starts = np.flatnonzero(np.r_[True, flat[1:] != flat[:-1]])
    counts = np.diff(np.r_[starts, len(flat)])
    return flat[starts], counts


def grid_to_dict(g: GridDiagram) -> dict:
    values, counts = _runs(g.cells.ravel(order="F"))
    return {
        "format": "venn-grid",
        "version": VERSION,
        "name": g.name,
        "shape": list(g.shape),
        "scope": list(g.scope),
        "order": "F",
        "cells": [[to_sign(int(v), g.scope), int(c)] for v, c in zip(values, counts)],
    }


def grid_from_dict(data: dict) -> GridDiagram:
    _check_envelope(data, "venn-grid")
    try:
        shape = tuple(int(s) for s in data["shape"])
        scope = tuple(data["scope"])
        runs = data["cells"]
        dtype = dtype_for(max(scope, default=1))
        values = np.array([from_sign(s, scope) for s, _ in runs], dtype=dtype)
        counts = np.array([c for _, c in runs], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed venn-grid: {exc}") from exc
    if counts.sum() != int(np.prod(shape)):
        raise FormatError(f"run lengths cover {counts.sum()} cells, shape {shape} needs {int(np.prod(shape))}")
    order = data.get("order", "F")
    if order not in ("C", "F"):
        raise FormatError(f"unknown cell order {order!r}")
    cells = np.ascontiguousarray(np.repeat(values, counts).reshape(shape, order=order))
    return GridDiagram(cells, scope, data.get("name", ""))


def _check_envelope(data, fmt: str):
    if not isinstance(data, dict):
        raise FormatError("diagram file must hold a JSON object")
    if data.get("format") != fmt:
        raise FormatError(f"expected format {fmt!r}, found {data.get('format')!r}")
    if "version" not in data:
        raise FormatError("missing version field")
    if data["version"] != VERSION:
        raise FormatError(f"unsupported version {data['version']}")


def to_dict(d) -> dict:
    if isinstance(d, CombinatorialMap):
        return map_to_dict(d)
    if isinstance(d, GridDiagram):
        return grid_to_dict(d)
    raise TypeError(f"cannot serialise {type(d).__name__}")


def from_dict(data: dict):
    fmt = data.get("format") if isinstance(data, dict) else None
    if fmt == "venn-map":
        return map_from_dict(data)
    if fmt == "venn-grid":
        return grid_from_dict(data)
    raise FormatError(f"unknown diagram format {fmt!r}")


def dumps(d) -> str:
    return json.dumps(to_dict(d), separators=(",", ":"))


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not JSON: {exc}") from exc
    return from_dict(data)


def save(d, path) -> None:
    Path(path).write_text(dumps(d) + "\n")


def load(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return loads(text)

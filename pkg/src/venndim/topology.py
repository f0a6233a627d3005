"""Euler-characteristic screens for grid diagrams.

Component counts cannot tell a ball from a solid torus, or a sphere from a
torus.  These checks add the cheapest invariant that can: the Euler
characteristic of closed cubical sets, computed on the grid with repeated
slices removed (which leaves every local pattern, and so the topology,
unchanged).

Expected values in an m-dimensional box:

* the closure of a bounded region, or of a surface interior, is a ball: 1;
* the outer region is a ball minus an open ball: ``1 + (-1)^(m-1)``;
* each piece of a k-fold intersection is an (m-k)-sphere:
  ``1 + (-1)^(m-k)``, or 1 for the isolated points of ``k = m``.

Passing is necessary, not sufficient, for the real topological conditions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .grid import GridDiagram, intersection_locus


def compress(g: GridDiagram) -> GridDiagram:
    """Drop every slice equal to its predecessor, along each axis."""
    cells = g.cells
    for a in range(g.m):
        x = np.moveaxis(cells, a, 0)
        keep = np.ones(x.shape[0], dtype=bool)
        keep[1:] = (x[1:] != x[:-1]).reshape(x.shape[0] - 1, -1).any(axis=1)
        cells = np.moveaxis(x[keep], 0, a)
    return GridDiagram(np.ascontiguousarray(cells), g.scope, g.name)


def closure_euler(mask: np.ndarray) -> int:
    """Euler characteristic of the union of the closed unit cubes in ``mask``.

    Sweeps the axes one at a time, splitting each partial array into its
    cell positions and its boundary positions (a boundary position is in the
    closure when either neighbouring cell is).
    """
    m = mask.ndim
    parts = [(np.pad(mask, 1), 0)]
    for a in range(m):
        nxt = []
        for arr, k in parts:
            inner = [slice(None)] * arr.ndim
            lo, hi = list(inner), list(inner)
            inner[a] = slice(1, -1)
            lo[a], hi[a] = slice(0, -1), slice(1, None)
            nxt.append((arr[tuple(inner)], k))
            nxt.append((arr[tuple(lo)] | arr[tuple(hi)], k + 1))
        parts = nxt
    # k boundary coordinates -> an (m-k)-dimensional face
    return sum((-1) ** (m - k) * int(arr.sum()) for arr, k in parts)


def region_eulers(g: GridDiagram) -> dict[int, int]:
    return {int(v): closure_euler(g.cells == v) for v in np.unique(g.cells)}


def interior_eulers(g: GridDiagram) -> dict[int, int]:
    return {s: closure_euler((g.cells >> (s - 1) & 1) == 0) for s in g.scope}


def _parity(shape, axis):
    view = [1] * len(shape)
    view[axis] = shape[axis]
    return (np.arange(shape[axis]) % 2 == 1).reshape(view)


def locus_eulers(g: GridDiagram, surfaces) -> list[int]:
    """Euler characteristic of each connected piece of a surface intersection."""
    keys = intersection_locus(g, surfaces).meta.get("face_keys")
    if keys is None or len(keys) == 0:
        return []
    dshape = tuple(2 * d + 1 for d in g.shape)
    lat = np.zeros(int(np.prod(dshape)), dtype=bool)
    lat[keys] = True
    lat = lat.reshape(dshape)
    # close under faces: an odd coordinate may step to either even neighbour
    for a in range(g.m):
        src = lat & _parity(dshape, a)
        lo, hi = [slice(None)] * g.m, [slice(None)] * g.m
        lo[a], hi[a] = slice(0, -1), slice(1, None)
        lat[tuple(lo)] |= src[tuple(hi)]
        lat[tuple(hi)] |= src[tuple(lo)]
    pieces, count = ndimage.label(lat)
    dims = sum(_parity(dshape, a).astype(np.int8) for a in range(g.m))
    sign = np.where(dims % 2 == 0, 1, -1)
    sums = ndimage.sum_labels(np.broadcast_to(sign, dshape), pieces, index=np.arange(1, count + 1))
    return [int(round(s)) for s in np.atleast_1d(sums)]


@dataclass
class TopologyReport:
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def topology_screen(g: GridDiagram, max_k: int | None = None) -> TopologyReport:
    """Compare every Euler characteristic above with its expected value."""
    g = compress(g)
    m = g.m
    rep = TopologyReport()
    outer = int(g.cells[(0,) * m])
    for label, chi in region_eulers(g).items():
        want = 1 + (-1) ** (m - 1) if label == outer else 1
        if chi != want:
            rep.failures.append(("region", label, chi, want))
    for s, chi in interior_eulers(g).items():
        if chi != 1:
            rep.failures.append(("interior", s, chi, 1))
    top = min(m, g.n) if max_k is None else min(max_k, m, g.n)
    for k in range(2, top + 1):
        want = 1 + (-1) ** (m - k) if k < m else 1
        for subset in itertools.combinations(g.scope, k):
            for chi in locus_eulers(g, subset):
                if chi != want:
                    rep.failures.append(("locus", subset, chi, want))
    return rep

"""Concrete diagrams: classical circle maps, an Edwards-style family on grids,
and a tracer turning a simple 2D grid back into a combinatorial map.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy import ndimage

from .cmap import CombinatorialMap, FreeCurve, _parent, map_from_arcs, validate_map
from .errors import InvalidDiagram, PreconditionError
from .grid import GridDiagram, _block_views, _popcount, is_simple_grid, surface_edge_labels, validate_grid
from .signs import scope_mask, to_sign

BOX = 12.0
DEFAULT_RESOLUTION = 1024
MAX_REFINEMENTS = 2

# ---------------------------------------------------------------- circle maps


def _circle_points(c1, c2):
    (x1, y1, r1), (x2, y2, r2) = c1, c2
    dx, dy = x2 - x1, y2 - y1
    d = math.hypot(dx, dy)
    if d >= r1 + r2 or d <= abs(r1 - r2):
        if math.isclose(d, r1 + r2) or math.isclose(d, abs(r1 - r2)):
            raise InvalidDiagram("tangent circles are not supported")
        return []
    a = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
    h = math.sqrt(r1 * r1 - a * a)
    mx, my = x1 + a * dx / d, y1 + a * dy / d
    return [(mx + h * dy / d, my - h * dx / d), (mx - h * dy / d, my + h * dx / d)]


def map_from_circles(circles: Sequence[tuple[float, float, float]], name: str = "") -> CombinatorialMap:
    """Arrangement of circles ``(cx, cy, r)``; circle k becomes curve k+1."""
    points = []
    on_circle = [[] for _ in circles]
    for i in range(len(circles)):
        for j in range(i + 1, len(circles)):
            for p in _circle_points(circles[i], circles[j]):
                v = len(points)
                points.append(p)
                on_circle[i].append(v)
                on_circle[j].append(v)
    arcs = []
    outer = None
    leftmost = min(range(len(circles)), key=lambda k: circles[k][0] - circles[k][2], default=None)
    free = {}
    for k, (cx, cy, r) in enumerate(circles):
        curve = k + 1
        if not on_circle[k]:
            inside = 0
            px, py = cx + r, cy
            for j, (ox, oy, orad) in enumerate(circles):
                if j != k and math.hypot(px - ox, py - oy) < orad:
                    inside |= 1 << j
            free[curve] = scope_mask(range(1, len(circles) + 1)) & ~inside & ~(1 << k)
            continue
        angled = sorted((math.atan2(points[v][1] - cy, points[v][0] - cx) % (2 * math.pi), v) for v in on_circle[k])
        for idx, (phi, v) in enumerate(angled):
            phi2, w = angled[(idx + 1) % len(angled)]
            if k == leftmost:
                lo, hi = phi, phi2 if phi2 > phi else phi2 + 2 * math.pi
                if lo < math.pi < hi or lo < 3 * math.pi < hi:
                    outer = (len(arcs), 1)
            arcs.append((curve, (v, phi + math.pi / 2), (w, phi2 - math.pi / 2)))
    scope = tuple(range(1, len(circles) + 1))
    free_curves = []
    for c, host in free.items():
        others = tuple(s for s in scope if s != c)
        free_curves.append(FreeCurve(c, to_sign(host, others), _parent(c, host, free)))
    return map_from_arcs(arcs, outer if arcs else None, scope, free_curves, name)


_BUILTIN_CIRCLES = {
    1: [(0.0, 0.0, 1.0)],
    2: [(-0.5, 0.0, 1.0), (0.5, 0.0, 1.0)],
    3: [(0.6 * math.cos(a), 0.6 * math.sin(a), 1.0) for a in (math.pi / 2, 7 * math.pi / 6, 11 * math.pi / 6)],
}


def builtin_map(n: int) -> CombinatorialMap:
    """The classical one-, two- and three-circle diagrams."""
    if n not in _BUILTIN_CIRCLES:
        raise PreconditionError(f"builtin maps exist for n in 1..3, not {n}")
    return map_from_circles(_BUILTIN_CIRCLES[n], name=f"circles{n}")


# ---------------------------------------------------------------- Edwards family

R0 = 3.0
CORNER_FRACTION = 1.0 / 3.0  # corners of the square sit at non-dyadic quarter-turn fractions
CLAMP = 2.25  # inner edge of the widest cogwheel band


def amplitude(k: int) -> float:
    return 3.0 / 2 ** (k - 2)


def _rect_interior(k, x, y):
    if k == 1:
        return (-10 < x) & (x < 0) & (-9 < y) & (y < 9)
    return (-9 < x) & (x < 9) & (-10 < y) & (y < 0)


def _square_turn(x, y):
    """Quarter-turn coordinate F on the square r0 ring.

    On each side of the square the position ``t`` along the side (counter-
    clockwise) maps piecewise linearly to ``F``: side centres (the axes) sit
    at integers and corners at ``j + 1/3``.  ``F`` is clamped for
    ``|t| >= 2.25`` so it is continuous across the diagonals inside every
    cogwheel band, and each level set ``F = const`` is a segment
    perpendicular to its side.
    """
    ax, ay = np.abs(x), np.abs(y)
    side = np.where(x >= ay, 0, np.where(y > ax, 1, np.where(-x >= ay, 2, 3)))
    t = np.choose(side, [y, -x, -y, x])
    t = np.clip(t, -CLAMP, CLAMP)
    frac = np.where(t >= 0, t / CLAMP * CORNER_FRACTION, t / CLAMP * (1 - CORNER_FRACTION))
    return side + frac


def edwards_interior(k: int, p, shape: str = "square"):
    """Whether point(s) ``p = (x, y)`` lie inside curve ``k`` of the Edwards family.

    c1 and c2 are the rectangles [-10,0]x[-9,9] and [-9,9]x[-10,0].  c3 is the
    ring of radius 3 and c_k (k >= 4) a cogwheel whose radius is
    ``3 + A_k * sign(cos(2^(k-3) * angle))`` with ``A_k = 3 / 2^(k-2)``.

    ``shape="round"`` uses Euclidean circles and polar angle.  ``shape="square"``
    (what :func:`edwards_grid` rasterises) uses the L-infinity ring and the
    quarter-turn coordinate of :func:`_square_turn`: it is the same
    arrangement up to a homeomorphism, with every crossing axis-aligned so
    that point sampling is in clean position at any resolution.
    """
    if k < 1:
        raise PreconditionError("curve ids start at 1")
    x, y = (np.asarray(v, dtype=float) for v in p)
    if k <= 2:
        res = _rect_interior(k, x, y)
    else:
        if shape == "round":
            rho = np.hypot(x, y)
            theta = np.arctan2(y, x)
        elif shape == "square":
            rho = np.maximum(np.abs(x), np.abs(y))
            theta = _square_turn(x, y) * (np.pi / 2)
        else:
            raise ValueError(f"unknown shape {shape!r}")
        if k == 3:
            res = rho < R0
        else:
            s = np.where(np.cos(2 ** (k - 3) * theta) >= 0, 1.0, -1.0)
            res = rho < R0 + amplitude(k) * s
    return bool(res) if res.ndim == 0 else res


def _raster(n: int, resolution: int, shape: str) -> np.ndarray:
    h = 2 * BOX / resolution
    xs = -BOX + (np.arange(resolution) + 0.5) * h
    x, y = np.meshgrid(xs, xs, indexing="ij")
    cells = np.full(x.shape, scope_mask(range(1, n + 1)), dtype=np.uint64)
    for k in range(1, n + 1):
        cells[edwards_interior(k, (x, y), shape)] &= ~np.uint64(1 << (k - 1))
    return cells


@lru_cache(maxsize=16)
def edwards_grid(n: int, resolution: int = DEFAULT_RESOLUTION, shape: str = "square") -> GridDiagram:
    """Rasterised Edwards n-Venn diagram on ``[-12, 12]^2``.

    On a cleanliness failure the resolution is doubled, at most twice.
    """
    if n < 1:
        raise PreconditionError("n must be at least 1")
    res = resolution
    for attempt in range(MAX_REFINEMENTS + 1):
        g = GridDiagram(_raster(n, res, shape), range(1, n + 1), f"edwards{n}")
        rep = validate_grid(g)
        if rep.ok:
            return g
        res *= 2
    raise InvalidDiagram(f"Edwards grid n={n} not clean after {MAX_REFINEMENTS} refinements: {rep.failures[0][1]}")


# ---------------------------------------------------------------- tracing

# darts at a grid vertex, counter-clockwise: east, north, west, south
_DIRS = ("E", "N", "W", "S")


def trace_map(g: GridDiagram) -> CombinatorialMap:
    """Combinatorial map of a simple 2D grid diagram.

    Vertices are the crossing faces; arcs are edge components of each
    surface; the rotation at a crossing follows the four pixel edges leaving
    the grid vertex.
    """
    if g.m != 2:
        raise PreconditionError("trace_map needs a 2D grid")
    rep = validate_grid(g)
    if not rep.ok or not is_simple_grid(g):
        raise PreconditionError("trace_map needs a clean, simple grid")
    c = g.cells
    (_, p00), (_, p01), (_, p10), (_, p11) = _block_views(c, (0, 1))
    diff = (p00 ^ p01) | (p00 ^ p10) | (p00 ^ p11)
    verts = np.argwhere(_popcount(diff) == 2)  # transversal by simplicity
    nx, ny = g.shape

    # facet lookup: (axis, lower cell flat index) -> (surface, component)
    facet_info = {}
    free = {}
    for s in g.scope:
        flat, axis, _, comp, ncomp = surface_edge_labels(g, s)
        facet_info[s] = dict(zip(zip(axis.tolist(), flat.tolist()), comp.tolist()))
    bit_of = {1 << (s - 1): s for s in g.scope}

    def facet(axis, x, y):
        lo = c[x, y]
        hi = c[x + 1, y] if axis == 0 else c[x, y + 1]
        s = bit_of.get(int(lo ^ hi))
        if s is None:
            raise InvalidDiagram(f"pixel edge at {(x, y)} axis {axis} is not on exactly one surface")
        return s, facet_info[s][(axis, x * ny + y)]

    curve_of, sigma = [], []
    arc_darts: dict[tuple[int, int], list[int]] = {}
    left_cell = []
    for v, (x, y) in enumerate(verts.tolist()):
        spokes = [
            (facet(1, x + 1, y), (x + 1, y + 1)),  # E: between P10 and P11, left cell P11
            (facet(0, x, y + 1), (x, y + 1)),  # N: between P01 and P11, left cell P01
            (facet(1, x, y), (x, y)),  # W: between P00 and P01, left cell P00
            (facet(0, x, y), (x + 1, y)),  # S: between P00 and P10, left cell P10
        ]
        for k, ((s, comp), cell) in enumerate(spokes):
            d = 4 * v + k
            curve_of.append(s)
            sigma.append(4 * v + (k + 1) % 4)
            arc_darts.setdefault((s, comp), []).append(d)
            left_cell.append(cell)
    alpha = [0] * len(curve_of)
    for (s, comp), darts in arc_darts.items():
        if len(darts) != 2:
            raise InvalidDiagram(f"edge {comp} of surface {s} meets {len(darts)} dart ends, expected 2")
        a, b = darts
        alpha[a], alpha[b] = b, a
    crossing_surfaces = {s for s, _ in arc_darts}
    for s in g.scope:
        if s in crossing_surfaces:
            continue
        flat, axis, _, comp, ncomp = surface_edge_labels(g, s)
        if ncomp != 1:
            raise InvalidDiagram(f"surface {s} has no crossings but {ncomp} components")
        cell = np.unravel_index(flat[0], g.shape)
        lo = int(c[cell])
        other = list(cell)
        other[axis[0]] += 1
        hi = int(c[tuple(other)])
        outside = lo if lo >> (s - 1) & 1 else hi
        free[s] = outside & ~(1 << (s - 1))
    outer = None
    if curve_of:
        border = c[0, 0]
        lab, _ = ndimage.label(c == border, structure=ndimage.generate_binary_structure(2, 1))
        outer_id = lab[0, 0]
        outer = next((d for d, cell in enumerate(left_cell) if lab[cell] == outer_id), None)
        if outer is None:
            raise InvalidDiagram("no dart borders the unbounded region")
        for s, host in free.items():
            if any(not c[x, y] >> (s - 1) & 1 for x, y in verts.tolist()):
                raise InvalidDiagram(f"free surface {s} encloses crossings")
    free_curves = []
    for s, host in free.items():
        others = tuple(t for t in g.scope if t != s)
        free_curves.append(FreeCurve(s, to_sign(host, others), _parent(s, host, free)))
    cmap = CombinatorialMap(g.scope, curve_of, alpha, sigma, outer, tuple(free_curves), g.name)
    rep = validate_map(cmap)
    if not rep.ok:
        raise InvalidDiagram(f"traced map invalid: {rep.failures[0]}")
    return cmap

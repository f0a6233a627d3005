"""Deterministic SVG drawings of 2D diagrams.

Grids are drawn by tracing, for every surface, the cell facets where its bit
flips and chaining them into closed contours.  Maps have no coordinates, so
they are laid out by a Tutte (barycentric) embedding of their barycentric
subdivision: vertices, arc midpoints and face centres, with the outer face's
boundary pinned to a circle.
"""
from __future__ import annotations

import math
from collections import defaultdict

import numpy as np
from scipy.sparse import lil_matrix
from scipy.sparse.linalg import spsolve

from .cmap import CombinatorialMap, faces_with_signs
from .errors import PreconditionError
from .grid import GridDiagram, slice_grid

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
SIZE = 480


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def _svg(paths, labels, title: str) -> str:
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{title}</title>",
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for curve, d in paths:
        colour = PALETTE[(curve - 1) % len(PALETTE)]
        out.append(f'<path class="surface" data-surface="{curve}" d="{d}" fill="none" stroke="{colour}" stroke-width="2"/>')
    for (x, y), text in labels:
        out.append(
            f'<text class="region" x="{_fmt(x)}" y="{_fmt(y)}" font-size="10" text-anchor="middle">{text}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _contours(bits: np.ndarray):
    """Closed lattice polygons bounding the True cells of a 2D boolean array."""
    p = np.pad(bits, 1)
    nbr = defaultdict(list)
    # vertical facets between (i-1, j) and (i, j) run from (i, j) to (i, j+1)
    for i, j in zip(*np.nonzero(p[1:, :] != p[:-1, :])):
        a, b = (i + 1, j), (i + 1, j + 1)
        nbr[a].append(b)
        nbr[b].append(a)
    for i, j in zip(*np.nonzero(p[:, 1:] != p[:, :-1])):
        a, b = (i, j + 1), (i + 1, j + 1)
        nbr[a].append(b)
        nbr[b].append(a)
    used = set()
    loops = []
    for start in sorted(nbr):
        for first in sorted(nbr[start]):
            if frozenset((start, first)) in used:
                continue
            loop = [start]
            prev, cur = start, first
            used.add(frozenset((start, first)))
            while cur != start:
                loop.append(cur)
                nxt = next(q for q in sorted(nbr[cur]) if q != prev and frozenset((cur, q)) not in used)
                used.add(frozenset((cur, nxt)))
                prev, cur = cur, nxt
            loops.append(loop)
    return loops


def _simplify(loop):
    """Drop collinear interior points of a closed lattice polygon."""
    out = []
    k = len(loop)
    for idx, pt in enumerate(loop):
        a, c = loop[idx - 1], loop[(idx + 1) % k]
        if (pt[0] - a[0]) * (c[1] - pt[1]) != (pt[1] - a[1]) * (c[0] - pt[0]):
            out.append(pt)
    return out or loop


def render_grid(g: GridDiagram, slice_spec: tuple[int, int] | None = None, labels: bool = True) -> str:
    """SVG of a 2D grid, or of an axis-aligned section of a higher one.

    ``slice_spec`` is ``(axis, index)`` with 0-based axis, applied repeatedly
    is not supported: the section must leave exactly two axes.
    """
    if slice_spec is not None:
        g = slice_grid(g, *slice_spec)
    if g.m != 2:
        raise PreconditionError(f"cannot draw a {g.m}-dimensional grid; slice it down to 2D first")
    h, w = g.shape
    scale = (SIZE - 20) / max(h, w)

    def xy(pt):
        return 10 + pt[0] * scale, 10 + (w - pt[1]) * scale

    paths = []
    for s in g.scope:
        bits = (g.cells >> (s - 1) & 1) == 0
        parts = []
        for loop in _contours(bits):
            pts = [xy(p) for p in _simplify(loop)]
            parts.append("M" + " L".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts) + " Z")
        paths.append((s, " ".join(parts)))
    marks = []
    if labels:
        comp = g.region_complex.meta["component_of_cell"]
        c = g.region_complex
        for r in range(c.n_cells):
            idx = np.argwhere(comp == r)
            i, j = idx[len(idx) // 2]
            marks.append((xy((i + 0.5, j + 0.5)), _sign(int(c.labels[r]), g.scope)))
    return _svg(paths, marks, g.name or "grid")


def _sign(mask: int, scope) -> str:
    return "".join("1" if mask >> (s - 1) & 1 else "0" for s in scope)


def map_layout(cmap: CombinatorialMap):
    """Positions of vertices, arc midpoints and faces from a Tutte embedding."""
    vert_of = {}
    for v, orbit in enumerate(cmap.vertices()):
        for d in orbit:
            vert_of[d] = v
    faces = cmap.face_cycles()
    face_of = {d: i for i, f in enumerate(faces) for d in f}
    nv = len(cmap.vertices())
    edge_ids = {}
    for d in range(cmap.n_darts):
        edge_ids.setdefault(min(d, cmap.alpha[d]), len(edge_ids))
    ne = len(edge_ids)

    def node_v(v):
        return v

    def node_e(d):
        return nv + edge_ids[min(d, cmap.alpha[d])]

    def node_f(f):
        return nv + ne + f

    total = nv + ne + len(faces)
    adj = defaultdict(set)
    for d in range(cmap.n_darts):
        v, e, f = node_v(vert_of[d]), node_e(d), node_f(face_of[d])
        # the face left of d touches d's arc, its origin, and the far end
        w = node_v(vert_of[cmap.alpha[d]])
        for a, b in ((v, e), (v, f), (e, f), (w, f)):
            adj[a].add(b)
            adj[b].add(a)
    outer = face_of[cmap.outer_dart]
    ring = []
    for d in faces[outer]:
        ring += [node_v(vert_of[d]), node_e(d)]
    pos = np.zeros((total, 2))
    fixed = {}
    for k, node in enumerate(ring):
        if node not in fixed:
            t = -2 * math.pi * k / len(ring)
            fixed[node] = (math.cos(t), math.sin(t))
    fixed[node_f(outer)] = (0.0, 0.0)  # never drawn; excluded from averaging below
    free = [u for u in range(total) if u not in fixed]
    index = {u: i for i, u in enumerate(free)}
    lap = lil_matrix((len(free), len(free)))
    rhs = np.zeros((len(free), 2))
    for u in free:
        nb = [x for x in adj[u] if x != node_f(outer)]
        lap[index[u], index[u]] = len(nb)
        for x in nb:
            if x in index:
                lap[index[u], index[x]] -= 1
            else:
                rhs[index[u]] += fixed[x]
    if free:
        sol = spsolve(lap.tocsr(), rhs)
        pos[free] = np.asarray(sol).reshape(-1, 2)
    for u, p in fixed.items():
        pos[u] = p
    return pos, vert_of, node_e, node_f, outer


def render_map(cmap: CombinatorialMap, labels: bool = True) -> str:
    def xy(p):
        return SIZE / 2 + p[0] * (SIZE / 2 - 30), SIZE / 2 - p[1] * (SIZE / 2 - 30)

    paths, marks = [], []
    regions = faces_with_signs(cmap)
    if cmap.n_darts:
        pos, vert_of, node_e, node_f, outer = map_layout(cmap)
        done = set()
        for c in cmap.curves:
            parts = []
            for start in range(cmap.n_darts):
                if cmap.curve_of[start] != c or start in done:
                    continue
                pts, d = [], start
                while d not in done:
                    done.add(d)
                    done.add(cmap.alpha[d])
                    pts += [xy(pos[vert_of[d]]), xy(pos[node_e(d)])]
                    d = cmap.along_curve(d)
                parts.append("M" + " L".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts) + " Z")
            if parts:
                paths.append((c, " ".join(parts)))
        face_ids = {d: i for i, f in enumerate(cmap.face_cycles()) for d in f}
        for face, sign in regions:
            if face.free_curve is not None:
                continue
            i = face_ids[face.darts[0]]
            marks.append(((20.0, 20.0), sign) if i == outer else (xy(pos[node_f(i)]), sign))
    else:
        marks.append(((20.0, 20.0), regions[0][1]))
    # crossing-free curves become circles around the centre of their host
    # face, shrinking with nesting depth
    depth = {}
    for f in cmap.free_curves:
        depth[f.curve] = 1 + depth.get(f.parent, 0) if f.parent is not None else 1
    for f in cmap.free_curves:
        cx, cy = SIZE / 2, SIZE / 2
        r = (SIZE / 2 - 40) / (1 + depth[f.curve]) if cmap.n_darts else (SIZE / 2 - 40) / depth[f.curve]
        d = f"M{_fmt(cx - r)} {_fmt(cy)} A{_fmt(r)} {_fmt(r)} 0 1 0 {_fmt(cx + r)} {_fmt(cy)} A{_fmt(r)} {_fmt(r)} 0 1 0 {_fmt(cx - r)} {_fmt(cy)} Z"
        paths.append((f.curve, d))
    for face, sign in regions:
        if face.free_curve is not None:
            marks.append(((SIZE / 2, SIZE / 2 + 4), sign))
    return _svg(sorted(paths), marks if labels else [], cmap.name or "map")


def render(d, slice_spec=None, labels: bool = True) -> str:
    if isinstance(d, CombinatorialMap):
        if slice_spec is not None:
            raise PreconditionError("maps are already two-dimensional; --slice applies to grids")
        return render_map(d, labels)
    if isinstance(d, GridDiagram):
        return render_grid(d, slice_spec, labels)
    raise TypeError(f"cannot render {type(d).__name__}")

"""Diagrams on m-dimensional cell grids.

Each cell of an m-dimensional array carries a label bit mask; surface ``s``
is the set of facets between cells whose labels differ in bit ``s - 1``.
Grid faces are addressed in *doubled coordinates*: cell ``x`` sits at
``2x + 1`` and a face shared by the cells of a ``2^k`` block spanning axes
``K`` sits at ``2x + 2`` along ``K``.  Two faces of the same codimension are
adjacent when both border a common face of codimension one higher, which in
doubled coordinates means they differ by a unit step along an odd axis.
"""
from __future__ import annotations

import itertools
import os
from functools import cached_property

import numpy as np
from scipy import ndimage

from .cmap import ValidationReport
from .complex import LabeledComplex, active_windows, component_labels, pairs_within_groups
from .errors import BudgetExceeded, InvalidDiagram, PreconditionError
from .signs import dtype_for, scope_mask

DEFAULT_MAX_CELLS = 64_000_000


def max_cells() -> int:
    return int(os.environ.get("VENN_MAX_CELLS", DEFAULT_MAX_CELLS))


def _check_budget(shape) -> None:
    total = int(np.prod(shape, dtype=np.int64))
    if total > max_cells():
        raise BudgetExceeded(f"grid of shape {tuple(shape)} has {total} cells, above VENN_MAX_CELLS={max_cells()}")


class GridDiagram:
    """An m-dimensional array of labelled cells over a tuple of surface ids."""

    def __init__(self, cells: np.ndarray, scope, name: str = ""):
        scope = tuple(sorted(scope))
        cells = np.asarray(cells)
        if cells.ndim < 1:
            raise InvalidDiagram("grid needs at least one axis")
        dtype = dtype_for(max(scope, default=1))
        cells = (cells.astype(np.uint64) & np.uint64(scope_mask(scope))).astype(dtype)
        cells.setflags(write=False)
        self.cells = cells
        self.scope = scope
        self.name = name

    @property
    def m(self) -> int:
        return self.cells.ndim

    @property
    def n(self) -> int:
        return len(self.scope)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.cells.shape

    @property
    def full(self) -> int:
        return scope_mask(self.scope)

    def __repr__(self):
        return f"GridDiagram(name={self.name!r}, m={self.m}, scope={self.scope}, shape={self.shape})"

    def __eq__(self, other):
        return (
            isinstance(other, GridDiagram)
            and self.scope == other.scope
            and self.shape == other.shape
            and np.array_equal(self.cells, other.cells)
        )

    __hash__ = object.__hash__

    def strides(self) -> np.ndarray:
        """Strides of the doubled-coordinate lattice (shape ``2d + 1``)."""
        dshape = [2 * d + 1 for d in self.shape]
        return np.array([int(np.prod(dshape[a + 1 :], dtype=np.int64)) for a in range(self.m)], dtype=np.int64)

    @cached_property
    def region_complex(self) -> LabeledComplex:
        """Connected regions of equally labelled cells, adjacent across facets."""
        comp = np.zeros(self.shape, dtype=np.int64)
        structure = ndimage.generate_binary_structure(self.m, 1)
        labels = []
        offset = 0
        for value in np.unique(self.cells):
            lab, count = ndimage.label(self.cells == value, structure=structure)
            mask = lab > 0
            comp[mask] = lab[mask] + offset - 1
            labels += [int(value)] * count
            offset += count
        pairs = []
        for a in range(self.m):
            lo = comp[_slc(self.m, a, 0, -1)].ravel()
            hi = comp[_slc(self.m, a, 1, None)].ravel()
            diff = lo != hi
            pairs.append(np.stack([lo[diff], hi[diff]], 1))
        edges = np.unique(np.sort(np.concatenate(pairs), axis=1), axis=0) if pairs else np.zeros((0, 2))
        cx = LabeledComplex(offset, edges, np.array(labels, dtype=np.int64), self.scope)
        cx.meta["component_of_cell"] = comp
        return cx


def _slc(m: int, axis: int, start, stop) -> tuple:
    s = [slice(None)] * m
    s[axis] = slice(start, stop)
    return tuple(s)


def _block_views(a: np.ndarray, axes) -> list[tuple[tuple[int, ...], np.ndarray]]:
    """Views of the corner cells of every 2^k block spanning ``axes``."""
    out = []
    for offs in itertools.product((0, 1), repeat=len(axes)):
        s = [slice(None)] * a.ndim
        for ax, o in zip(axes, offs):
            s[ax] = slice(o, a.shape[ax] - 1 + o)
        out.append((offs, a[tuple(s)]))
    return out


def _popcount(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x)


def _block_keys(g: GridDiagram, base_idx: np.ndarray, axes) -> np.ndarray:
    """Doubled-coordinate keys of the faces at the centre of blocks with base cells ``base_idx``."""
    strides = g.strides()
    coords = np.unravel_index(base_idx, g.shape) if len(base_idx) else [np.zeros(0, np.int64)] * g.m
    key = np.zeros(len(base_idx), dtype=np.int64)
    for a in range(g.m):
        key += (2 * coords[a].astype(np.int64) + (2 if a in axes else 1)) * strides[a]
    return key


def _block_base_flat(g: GridDiagram, mask: np.ndarray, axes) -> np.ndarray:
    """Flat cell indices of block bases where ``mask`` (block-shaped) holds."""
    where = np.nonzero(mask)
    return np.ravel_multi_index(where, g.shape) if len(where[0]) else np.zeros(0, dtype=np.int64)


# ---------------------------------------------------------------- validation


def validate_grid(g: GridDiagram) -> ValidationReport:
    """Border-exterior and clean-position checks, reporting the first offender."""
    fails = []
    if g.m < 2:
        fails.append(("shape", f"dimension {g.m} < 2"))
    if min(g.shape) < 3:
        fails.append(("shape", f"shape {g.shape} too small to have an interior"))
    if fails:
        return ValidationReport(False, fails)
    full = g.full
    for a in range(g.m):
        for end in (0, -1):
            face = np.take(g.cells, end, axis=a)
            bad = np.argwhere(face != full)
            if len(bad):
                loc = list(bad[0])
                loc.insert(a, end if end == 0 else g.shape[a] - 1)
                fails.append(("border", f"border cell {tuple(int(v) for v in loc)} is not all-exterior"))
                break
        if fails:
            break
    c = g.cells
    for k in range(1, g.m + 1):
        for axes in itertools.combinations(range(g.m), k):
            views = _block_views(c, axes)
            base = views[0][1]
            diff = np.zeros_like(base)
            for _, v in views[1:]:
                diff |= v ^ base
            bad = np.argwhere(_popcount(diff) > k)
            if len(bad):
                fails.append(("clean", f"block at {tuple(int(v) for v in bad[0])} on axes {axes} differs in more than {k} bits"))
                break
        if fails and fails[-1][0] == "clean":
            break
    for axes in itertools.combinations(range(g.m), 2):
        (_, p00), (_, p01), (_, p10), (_, p11) = _block_views(c, axes)
        checker = ~(p00 ^ p11) & ~(p01 ^ p10) & (p00 ^ p01)
        bad = np.argwhere(checker != 0)
        if len(bad):
            fails.append(("ambiguous", f"checkerboard block at {tuple(int(v) for v in bad[0])} on axes {axes}"))
            break
    stats = {"m": g.m, "n": g.n, "shape": g.shape}
    return ValidationReport(not fails, fails, stats)


def _require_valid(g: GridDiagram) -> None:
    rep = validate_grid(g)
    if not rep.ok:
        raise InvalidDiagram(f"invalid grid: {rep.failures[0][0]}: {rep.failures[0][1]}")


def is_simple_grid(g: GridDiagram) -> bool:
    """Clean position plus strict transversality of every pairwise crossing."""
    if not validate_grid(g).ok:
        return False
    for axes in itertools.combinations(range(g.m), 2):
        corners = [v for _, v in _block_views(g.cells, axes)]
        base = corners[0]
        diff = np.zeros_like(base)
        for v in corners[1:]:
            diff |= v ^ base
        two = _popcount(diff) == 2
        if not two.any():
            continue
        codes = [v[two] & diff[two] for v in corners]
        distinct = np.ones(codes[0].shape, dtype=bool)
        for x, y in itertools.combinations(range(4), 2):
            distinct &= codes[x] != codes[y]
        if not distinct.all():
            return False
    return True


# ---------------------------------------------------------------- operations


def restrict(g: GridDiagram, subset) -> GridDiagram:
    """Forget every surface outside ``subset``; the shape is unchanged."""
    subset = tuple(sorted(set(subset)))
    if not set(subset) <= set(g.scope):
        raise PreconditionError(f"{subset} is not a subset of {g.scope}")
    if subset == g.scope:
        return g
    return GridDiagram(g.cells, subset, g.name)


def _locus_faces(g: GridDiagram, surfaces, axes):
    """Base cells of blocks on ``axes`` realising every combination of ``surfaces``."""
    k = len(surfaces)
    views = [v for _, v in _block_views(g.cells, axes)]
    base = views[0]
    diff = np.zeros_like(base)
    for v in views[1:]:
        diff |= v ^ base
    want = scope_mask(surfaces)
    cand = diff == want
    if not cand.any():
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    seen = np.zeros(cand.sum(), dtype=np.int64)
    for v in views:
        code = np.zeros(seen.shape, dtype=np.int64)
        vv = v[cand].astype(np.int64)
        for pos, s in enumerate(surfaces):
            code |= ((vv >> (s - 1)) & 1) << pos
        seen |= np.int64(1) << code
    full = seen == (1 << (1 << k)) - 1
    flat = _block_base_flat(g, cand, axes)[full]
    labels = base[cand][full].astype(np.int64) & ~want
    return flat, labels


def intersection_locus(g: GridDiagram, surfaces) -> LabeledComplex:
    """Faces where the given surfaces cross transversally, as a complex.

    Cells are codimension-k grid faces whose ``2^k`` surrounding cells realise
    all sign combinations of the k surfaces; each is labelled by the remaining
    surfaces.  Adjacency is sharing a codimension-(k+1) face, so the
    complex's component count is the number of pieces of the intersection.
    """
    surfaces = tuple(sorted(set(surfaces)))
    k = len(surfaces)
    if not set(surfaces) <= set(g.scope):
        raise PreconditionError(f"{surfaces} is not a subset of {g.scope}")
    if k < 2:
        raise PreconditionError("an intersection locus needs at least two surfaces")
    rest = tuple(s for s in g.scope if s not in surfaces)
    if k > g.m:
        return LabeledComplex(0, np.zeros((0, 2)), np.zeros(0), rest, {"k": k, "note": "k exceeds dimension"})
    keys, labels, axes_of = [], [], []
    for axes in itertools.combinations(range(g.m), k):
        flat, lab = _locus_faces(g, surfaces, axes)
        keys.append(_block_keys(g, flat, axes))
        labels.append(lab)
        axes_of += [axes] * len(flat)
    keys = np.concatenate(keys)
    labels = np.concatenate(labels)
    strides = g.strides()
    nb_keys, nb_members = [], []
    for idx, axes in enumerate(sorted(set(axes_of))):
        members = np.array([i for i, ax in enumerate(axes_of) if ax == axes], dtype=np.int64)
        for b in range(g.m):
            if b in axes:
                continue
            for sgn in (-1, 1):
                nb_keys.append(keys[members] + sgn * strides[b])
                nb_members.append(members)
    if nb_keys:
        edges = pairs_within_groups(np.concatenate(nb_keys), np.concatenate(nb_members))
    else:
        edges = np.zeros((0, 2), dtype=np.int64)
    return LabeledComplex(len(keys), edges, labels, rest, {"k": k, "surfaces": surfaces, "face_keys": keys})


def _surface_facets(g: GridDiagram, i: int):
    """Facets of surface ``i``: per-facet lower-cell flat index, axis and doubled key."""
    bit = 1 << (i - 1)
    flats, axes = [], []
    for a in range(g.m):
        lo = g.cells[_slc(g.m, a, 0, -1)]
        hi = g.cells[_slc(g.m, a, 1, None)]
        where = np.nonzero((lo ^ hi) == bit)
        flats.append(np.ravel_multi_index(where, g.shape) if len(where[0]) else np.zeros(0, np.int64))
        axes.append(np.full(len(flats[-1]), a, dtype=np.int64))
    flat = np.concatenate(flats)
    axis = np.concatenate(axes)
    strides = g.strides()
    coords = np.unravel_index(flat, g.shape)
    key = np.zeros(len(flat), dtype=np.int64)
    for b in range(g.m):
        key += (2 * coords[b].astype(np.int64) + 1 + (axis == b)) * strides[b]
    return flat, axis, key


def _facet_neighbour_keys(g: GridDiagram, axis: np.ndarray, key: np.ndarray):
    """Codimension-2 faces bordering each facet, as (facet index, face key) pairs."""
    strides = g.strides()
    members, keys = [], []
    idx = np.arange(len(key), dtype=np.int64)
    for b in range(g.m):
        sel = axis != b
        for sgn in (-1, 1):
            members.append(idx[sel])
            keys.append(key[sel] + sgn * strides[b])
    if not members:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    return np.concatenate(members), np.concatenate(keys)


def _crossing_keys(g: GridDiagram, i: int) -> np.ndarray:
    """Doubled keys of codimension-2 faces where surface ``i`` crosses another surface."""
    out = []
    for j in g.scope:
        if j == i:
            continue
        pair = tuple(sorted((i, j)))
        for axes in itertools.combinations(range(g.m), 2):
            flat, _ = _locus_faces(g, pair, axes)
            out.append(_block_keys(g, flat, axes))
    return np.concatenate(out) if out else np.zeros(0, np.int64)


def surface_edge_labels(g: GridDiagram, i: int):
    """Edge component of every facet of surface ``i`` (severed at crossings)."""
    if i not in g.scope:
        raise PreconditionError(f"surface {i} not in {g.scope}")
    flat, axis, key = _surface_facets(g, i)
    members, nkeys = _facet_neighbour_keys(g, axis, key)
    cut = np.isin(nkeys, _crossing_keys(g, i))
    members, nkeys = members[~cut], nkeys[~cut]
    uniq, inv = np.unique(nkeys, return_inverse=True)
    nf = len(flat)
    edges = np.stack([members, nf + inv.ravel()], 1)
    _, lab = component_labels(nf + len(uniq), edges)
    facet_lab = lab[:nf]
    _, dense = np.unique(facet_lab, return_inverse=True)
    return flat, axis, key, dense.ravel(), int(dense.max() + 1) if nf else 0


def edge_components(g: GridDiagram, i: int) -> int:
    """Number of edges of surface ``i``: facet components cut along crossings."""
    _require_valid(g)
    return surface_edge_labels(g, i)[4]


def project_onto_surface(g: GridDiagram, i: int) -> LabeledComplex:
    """Facets of surface ``i`` labelled by the other surfaces.

    By clean position the two cells of a facet agree on every bit but ``i``;
    facets are adjacent through shared codimension-2 faces.
    """
    _require_valid(g)
    if g.n < 2:
        raise PreconditionError("projection needs at least two surfaces")
    if i not in g.scope:
        raise PreconditionError(f"surface {i} not in {g.scope}")
    flat, axis, key = _surface_facets(g, i)
    members, nkeys = _facet_neighbour_keys(g, axis, key)
    edges = pairs_within_groups(nkeys, members)
    labels = g.cells.ravel()[flat].astype(np.int64) & ~(1 << (i - 1))
    rest = tuple(s for s in g.scope if s != i)
    return LabeledComplex(len(flat), edges, labels, rest, {"projected_onto": i})


def lift_prism(g: GridDiagram, enter=None, leave=None) -> GridDiagram:
    """Prism lift to dimension m+1.

    The new last axis has ``2n + 2`` cells; each surface becomes the boundary
    of (its closed interior) x (its window), windows as in
    :func:`active_windows`.  Both orders default to id order, which is the
    plain staggered construction; it is not Venn for every input, see
    :func:`venndim.constructors.choose_lift_orders`.
    """
    _require_valid(g)
    windows = active_windows(g.scope, enter, leave)
    length = 2 * g.n + 2
    _check_budget(g.shape + (length,))
    dt = g.cells.dtype.type
    full = dt(g.full)
    inside = (~g.cells) & full
    out = np.empty(g.shape + (length,), dtype=g.cells.dtype)
    for t in range(length):
        active = scope_mask(s for s, (a, b) in windows.items() if a <= t <= b)
        out[..., t] = full & ~(inside & dt(active))
    lifted = GridDiagram(out, g.scope, f"lift({g.name})" if g.name else "lift")
    rep = validate_grid(lifted)
    if not rep.ok:
        raise InvalidDiagram(f"lift failed validation ({rep.failures[0][1]}); refine the input and retry")
    return lifted


def refine(g: GridDiagram) -> GridDiagram:
    """Double the resolution along every axis by cell replication."""
    _check_budget(tuple(2 * d for d in g.shape))
    cells = g.cells
    for a in range(g.m):
        cells = np.repeat(cells, 2, axis=a)
    return GridDiagram(cells, g.scope, g.name)


def slice_grid(g: GridDiagram, axis: int, index: int) -> GridDiagram:
    """Axis-aligned hyperplane section (axis is 0-based)."""
    if not 0 <= axis < g.m or not 0 <= index < g.shape[axis]:
        raise PreconditionError(f"slice {axis}={index} outside grid of shape {g.shape}")
    return GridDiagram(np.take(g.cells, index, axis=axis), g.scope, f"{g.name}[{axis}={index}]")

"""Labelled cell complexes.

A :class:`LabeledComplex` is the common currency of region analysis: a set of
cells, a symmetric adjacency relation and a sign-vector label per cell.
Region census, restriction and component counting are defined once here and
reused for grids (via their region adjacency complex), combinatorial maps
(faces across arcs) and surface projections.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .signs import SignVector, scope_mask, to_sign


def component_labels(n_nodes: int, edges: np.ndarray) -> tuple[int, np.ndarray]:
    """Connected components of an undirected graph given as an (E, 2) edge array."""
    if n_nodes == 0:
        return 0, np.zeros(0, dtype=np.int64)
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    data = np.ones(len(edges), dtype=np.int8)
    graph = coo_matrix((data, (edges[:, 0], edges[:, 1])), shape=(n_nodes, n_nodes))
    return connected_components(graph, directed=False)


def pairs_within_groups(keys: np.ndarray, members: np.ndarray) -> np.ndarray:
    """All unordered member pairs that share a key.

    Groups are expected to be small (a handful of faces around a grid face),
    so pairs are produced by comparing sorted neighbours at growing offsets.
    """
    keys = np.asarray(keys)
    members = np.asarray(members, dtype=np.int64)
    if len(keys) == 0:
        return np.zeros((0, 2), dtype=np.int64)
    order = np.argsort(keys, kind="stable")
    k = keys[order]
    m = members[order]
    out = []
    offset = 1
    while offset < len(k):
        same = k[offset:] == k[:-offset]
        if not same.any():
            break
        out.append(np.stack([m[:-offset][same], m[offset:][same]], axis=1))
        offset += 1
    if not out:
        return np.zeros((0, 2), dtype=np.int64)
    pairs = np.concatenate(out)
    return pairs[pairs[:, 0] != pairs[:, 1]]


@dataclass(eq=False)
class LabeledComplex:
    """Cells ``0..n_cells-1`` with an adjacency edge list and integer labels.

    ``labels[c]`` is a bit mask (surface ``s`` on bit ``s-1``); only the bits
    of surfaces in ``scope`` are meaningful.
    """

    n_cells: int
    edges: np.ndarray
    labels: np.ndarray
    scope: tuple[int, ...]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        self.scope = tuple(sorted(self.scope))
        if len(self.labels) != self.n_cells:
            raise ValueError("one label per cell required")

    @property
    def n(self) -> int:
        return len(self.scope)

    def masked_labels(self) -> np.ndarray:
        return self.labels & scope_mask(self.scope)

    def restrict(self, subset) -> "LabeledComplex":
        subset = tuple(sorted(set(subset)))
        if not set(subset) <= set(self.scope):
            raise ValueError(f"{subset} is not a subset of {self.scope}")
        return LabeledComplex(self.n_cells, self.edges, self.labels, subset, dict(self.meta))

    def validate(self) -> list[str]:
        problems = []
        e = self.edges
        if len(e) and ((e < 0).any() or (e >= self.n_cells).any()):
            problems.append("edge endpoint out of range")
        if len(e) and (e[:, 0] == e[:, 1]).any():
            problems.append("adjacency is not irreflexive")
        return problems

    def component_count(self) -> int:
        """Components of the adjacency graph, ignoring labels."""
        return component_labels(self.n_cells, self.edges)[0]

    def label_components(self) -> np.ndarray:
        """Component id per cell, where only equally labelled neighbours connect."""
        lab = self.masked_labels()
        e = self.edges
        keep = lab[e[:, 0]] == lab[e[:, 1]] if len(e) else np.zeros(0, dtype=bool)
        return component_labels(self.n_cells, e[keep])[1]

    def census(self) -> Counter:
        """Map from sign vector to number of connected components carrying it."""
        if self.n_cells == 0:
            return Counter()
        comp = self.label_components()
        lab = self.masked_labels()
        first = np.unique(comp, return_index=True)[1]
        return Counter(to_sign(int(v), self.scope) for v in lab[first])


def region_census(c: LabeledComplex) -> dict[SignVector, int]:
    """Connected components of cells per identical label."""
    return dict(sorted(c.census().items()))


def check_order(order, scope) -> tuple[int, ...]:
    order = tuple(scope) if order is None else tuple(order)
    if sorted(order) != sorted(scope):
        raise ValueError(f"order {order} is not a permutation of {tuple(scope)}")
    return order


def active_windows(scope, enter=None, leave=None) -> dict[int, tuple[int, int]]:
    """Prism-axis window ``(first, last)`` of each surface.

    The surface entered ``r``-th (1-based) becomes active at ``t = r + 1``;
    the one leaving ``r``-th stays active up to ``t = n + r``.  Every window
    contains ``t = n + 1``, so all surfaces overlap there, and the axis has
    ``2n + 2`` slots with empty ends.
    """
    enter = check_order(enter, scope)
    leave = check_order(leave, scope)
    n = len(enter)
    first = {s: r + 1 for r, s in enumerate(enter, start=1)}
    last = {s: n + r for r, s in enumerate(leave, start=1)}
    return {s: (first[s], last[s]) for s in scope}


def lift_complex(c: LabeledComplex, enter=None, leave=None) -> LabeledComplex:
    """Region complex of the prism lift of a diagram given by its region complex.

    Cells are (region, t) for ``t`` in ``0..2n+1`` with the windows of
    :func:`active_windows`.  Cells of one region share their inside-set, so
    the product complex has exactly the lifted regions' connectivity.
    """
    windows = active_windows(c.scope, enter, leave)
    n = c.n
    length = 2 * n + 2
    full = scope_mask(c.scope)
    inside = ~c.masked_labels() & full
    labels, edges = [], []
    ids = np.arange(c.n_cells, dtype=np.int64)
    for t in range(length):
        active = scope_mask(s for s, (a, b) in windows.items() if a <= t <= b)
        labels.append(full & ~(inside & active))
        edges.append(c.edges + t * c.n_cells)
        if t:
            edges.append(np.stack([ids + (t - 1) * c.n_cells, ids + t * c.n_cells], 1))
    meta = {"enter": check_order(enter, c.scope), "leave": check_order(leave, c.scope)}
    return LabeledComplex(c.n_cells * length, np.concatenate(edges), np.concatenate(labels), c.scope, meta)

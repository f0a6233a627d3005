"""Combinatorial maps of closed-curve arrangements in the plane.

Darts are half-arcs leaving a vertex.  ``alpha`` pairs the two darts of an
arc, ``sigma`` sends a dart to the next dart counter-clockwise around its
vertex.  The face to the left of dart ``d`` is the orbit of ``d`` under
``phi = sigma^-1 . alpha``; the outer (unbounded) face is the orbit of
``outer_dart``.  Curves without any crossing carry no darts and are kept as
:class:`FreeCurve` records.
"""
from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .complex import LabeledComplex, component_labels
from .errors import InvalidDiagram, PreconditionError
from .signs import SignVector, from_sign, scope_mask, to_sign


class FreeCurve(NamedTuple):
    curve: int
    host_sign: SignVector  # over the other curves of the map, in id order
    parent: Optional[int] = None


class Face(NamedTuple):
    darts: tuple[int, ...]
    free_curve: Optional[int] = None  # set for the interior of a free curve


@dataclass(frozen=True)
class CombinatorialMap:
    curves: tuple[int, ...]
    curve_of: tuple[int, ...]
    alpha: tuple[int, ...]
    sigma: tuple[int, ...]
    outer_dart: Optional[int] = None
    free_curves: tuple[FreeCurve, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(sorted(self.curves)))
        object.__setattr__(self, "curve_of", tuple(self.curve_of))
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "free_curves", tuple(sorted(FreeCurve(*f) for f in self.free_curves)))

    @property
    def n(self) -> int:
        return len(self.curves)

    @property
    def m(self) -> int:
        return 2

    @property
    def n_darts(self) -> int:
        return len(self.curve_of)

    def others(self, c: int) -> tuple[int, ...]:
        return tuple(s for s in self.curves if s != c)

    def sigma_inv(self) -> list[int]:
        inv = [0] * self.n_darts
        for d, s in enumerate(self.sigma):
            inv[s] = d
        return inv

    def vertices(self) -> list[tuple[int, ...]]:
        return _orbits(self.sigma)

    def face_cycles(self) -> list[tuple[int, ...]]:
        inv = self.sigma_inv()
        return _orbits([inv[a] for a in self.alpha])

    def degree(self, d: int) -> int:
        k, e = 1, self.sigma[d]
        while e != d:
            k += 1
            e = self.sigma[e]
        return k

    def along_curve(self, d: int) -> int:
        """Dart continuing the curve of ``d`` through the far end of its arc."""
        e = self.alpha[d]
        for _ in range(self.degree(e) // 2):
            e = self.sigma[e]
        return e


def _orbits(perm) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        orbit = []
        d = start
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = perm[d]
        out.append(tuple(orbit))
    return out


def map_from_arcs(arcs, outer=None, curves=None, free_curves=(), name="") -> CombinatorialMap:
    """Build a map from arcs given with their departure angles.

    ``arcs`` is a sequence of ``(curve, (u, angle_u), (v, angle_v))``: the arc
    leaves vertex ``u`` in direction ``angle_u`` and vertex ``v`` in direction
    ``angle_v``.  Arc ``k`` yields dart ``2k`` at ``u`` and ``2k+1`` at ``v``;
    the rotation at each vertex sorts its darts by angle.  ``outer`` is
    ``(arc index, end)`` naming a dart whose left face is unbounded.
    """
    curve_of, alpha = [], []
    at_vertex = defaultdict(list)
    for k, (c, (u, au), (v, av)) in enumerate(arcs):
        curve_of += [c, c]
        alpha += [2 * k + 1, 2 * k]
        at_vertex[u].append((au % (2 * math.pi), 2 * k))
        at_vertex[v].append((av % (2 * math.pi), 2 * k + 1))
    sigma = [0] * len(curve_of)
    for darts in at_vertex.values():
        darts.sort()
        for i, (_, d) in enumerate(darts):
            sigma[d] = darts[(i + 1) % len(darts)][1]
    if curves is None:
        curves = sorted(set(curve_of) | {f[0] for f in free_curves})
    outer_dart = None if outer is None else 2 * outer[0] + outer[1]
    return CombinatorialMap(tuple(curves), curve_of, alpha, sigma, outer_dart, tuple(free_curves), name)


# ---------------------------------------------------------------- validation


@dataclass
class ValidationReport:
    ok: bool
    failures: list = field(default_factory=list)  # (check, detail)
    stats: dict = field(default_factory=dict)

    def failed(self, check: str) -> bool:
        return any(f[0] == check for f in self.failures)

    def __bool__(self):
        return self.ok


def _pieces(cmap: CombinatorialMap) -> tuple[int, np.ndarray]:
    d = np.arange(cmap.n_darts)
    edges = np.concatenate([np.stack([d, np.asarray(cmap.alpha)], 1), np.stack([d, np.asarray(cmap.sigma)], 1)])
    return component_labels(cmap.n_darts, edges)


def validate_map(cmap: CombinatorialMap) -> ValidationReport:
    fails = []
    nd = cmap.n_darts
    if len(cmap.alpha) != nd or len(cmap.sigma) != nd:
        return ValidationReport(False, [("shape", "curve_of, alpha and sigma lengths differ")])
    for d, c in enumerate(cmap.curve_of):
        if c not in cmap.curves:
            fails.append(("curves", f"dart {d} carries unknown curve {c}"))
    for d, a in enumerate(cmap.alpha):
        if not 0 <= a < nd:
            fails.append(("involution", f"alpha({d}) = {a} out of range"))
        elif a == d:
            fails.append(("involution", f"dart {d} is a fixed point of alpha"))
        elif cmap.alpha[a] != d:
            fails.append(("involution", f"alpha(alpha({d})) != {d}"))
        elif cmap.curve_of[a] != cmap.curve_of[d]:
            fails.append(("curves", f"arc of dart {d} changes curve"))
    if sorted(cmap.sigma) != list(range(nd)):
        fails.append(("permutation", "rotation is not a permutation of the darts"))
    if fails:
        return ValidationReport(False, fails)

    verts = cmap.vertices()
    faces = cmap.face_cycles()
    for v in verts:
        if len(v) % 2:
            fails.append(("degree", f"vertex at dart {v[0]} has odd degree {len(v)}"))
    n_pieces, piece_of = _pieces(cmap)
    for p in range(n_pieces):
        nv = sum(1 for v in verts if piece_of[v[0]] == p)
        nf = sum(1 for f in faces if piece_of[f[0]] == p)
        ne = int(np.sum(piece_of == p)) // 2
        if nv - ne + nf != 2:
            fails.append(("euler", f"piece {p}: V-E+F = {nv}-{ne}+{nf} != 2"))
    if n_pieces > 1:
        fails.append(("nesting", f"{n_pieces} crossing pieces; relative nesting is not recorded"))
    if nd and (cmap.outer_dart is None or not 0 <= cmap.outer_dart < nd):
        fails.append(("outer", "outer_dart missing or out of range"))
    if not fails and nd:
        # each curve must be traversed as one closed walk passing straight through vertices
        for c in set(cmap.curve_of):
            darts_c = [d for d in range(nd) if cmap.curve_of[d] == c]
            start = darts_c[0]
            walk, d = 0, start
            while True:
                walk += 1
                d = cmap.along_curve(d)
                if cmap.curve_of[d] != c:
                    fails.append(("curves", f"curve {c} does not pass straight through the vertex of dart {d}"))
                    break
                if d == start:
                    break
                if walk > nd:
                    fails.append(("curves", f"curve {c} walk does not close"))
                    break
            if not fails and walk != len(darts_c) // 2:
                fails.append(("curves", f"curve {c} splits into several closed walks"))
    dart_curves = set(cmap.curve_of)
    free_ids = [f.curve for f in cmap.free_curves]
    for f in cmap.free_curves:
        if f.curve in dart_curves or f.curve not in cmap.curves:
            fails.append(("free", f"free curve {f.curve} also has darts or is unknown"))
        if len(f.host_sign) != cmap.n - 1:
            fails.append(("free", f"free curve {f.curve} host sign has wrong length"))
        if f.parent is not None and f.parent not in free_ids:
            fails.append(("free", f"free curve {f.curve} has unknown parent {f.parent}"))
    if len(free_ids) != len(set(free_ids)):
        fails.append(("free", "duplicate free curve"))
    if set(cmap.curves) != dart_curves | set(free_ids):
        fails.append(("curves", "some curve has neither darts nor a free-curve record"))
    if not fails:
        try:
            _face_labels(cmap)
        except InvalidDiagram as exc:
            fails.append(("signs", str(exc)))
    stats = {"V": len(verts), "E": nd // 2, "F": len(faces) if nd else 1, "pieces": n_pieces}
    return ValidationReport(not fails, fails, stats)


def _require_valid(cmap: CombinatorialMap) -> None:
    rep = validate_map(cmap)
    if not rep.ok:
        raise InvalidDiagram(f"invalid map: {rep.failures[0][0]}: {rep.failures[0][1]}")


# ---------------------------------------------------------------- faces and signs


def _face_labels(cmap: CombinatorialMap):
    """Face index per dart, list of face cycles and their label masks."""
    faces = cmap.face_cycles()
    face_of = [0] * cmap.n_darts
    for i, f in enumerate(faces):
        for d in f:
            face_of[d] = i
    full = scope_mask(cmap.curves)
    labels: list[Optional[int]] = [None] * len(faces)
    if faces:
        root = face_of[cmap.outer_dart]
        labels[root] = full
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for d in faces[f]:
                g = face_of[cmap.alpha[d]]
                want = labels[f] ^ (1 << (cmap.curve_of[d] - 1))
                if labels[g] is None:
                    labels[g] = want
                    queue.append(g)
                elif labels[g] != want:
                    raise InvalidDiagram(f"odd flip cycle: face {g} reached with two different signs")
        if any(lab is None for lab in labels):
            raise InvalidDiagram("some faces are unreachable from the outer face")
    return face_of, faces, labels


def _free_interior_mask(cmap: CombinatorialMap, f: FreeCurve) -> int:
    host = from_sign(f.host_sign, cmap.others(f.curve))
    return host  # bit of f.curve stays 0: inside


def faces_with_signs(cmap: CombinatorialMap) -> list[tuple[Face, SignVector]]:
    """Every region of the map with its sign vector.

    Faces of the crossing piece come first (in face-cycle order), then the
    interior of each free curve.  With no crossing piece the plane itself is a
    single face with no darts.
    """
    _require_valid(cmap)
    _, faces, labels = _face_labels(cmap)
    out = [(Face(tuple(f)), to_sign(lab, cmap.curves)) for f, lab in zip(faces, labels)]
    if not faces:
        out.append((Face(()), to_sign(scope_mask(cmap.curves), cmap.curves)))
    for f in cmap.free_curves:
        out.append((Face((), f.curve), to_sign(_free_interior_mask(cmap, f), cmap.curves)))
    return out


class EdgeCounts(NamedTuple):
    per_curve: dict
    total: int
    regions: int


def edge_counts(cmap: CombinatorialMap) -> EdgeCounts:
    """Arcs per curve (a crossing-free curve is one edge), their sum, and r(V)."""
    _require_valid(cmap)
    per = {c: 0 for c in cmap.curves}
    for d in range(cmap.n_darts):
        if d < cmap.alpha[d]:
            per[cmap.curve_of[d]] += 1
    for f in cmap.free_curves:
        per[f.curve] = 1
    n_faces = len(cmap.face_cycles()) if cmap.n_darts else 1
    return EdgeCounts(per, sum(per.values()), n_faces + len(cmap.free_curves))


def check_lemma3(cmap: CombinatorialMap) -> Optional[Face]:
    """First face whose boundary has two arcs of one curve, or ``None``."""
    for f in cmap.face_cycles():
        seen = set()
        for d in f:
            c = cmap.curve_of[d]
            if c in seen:
                return Face(tuple(f))
            seen.add(c)
    return None


def is_simple_map(cmap: CombinatorialMap) -> bool:
    """Every vertex is a transversal crossing of exactly two distinct curves."""
    for v in cmap.vertices():
        if len(v) != 4:
            return False
        a, b, c, d = (cmap.curve_of[x] for x in v)
        if not (a == c and b == d and a != b):
            return False
    return True


# ---------------------------------------------------------------- deletion


def delete_curves(cmap: CombinatorialMap, subset: Iterable[int]) -> CombinatorialMap:
    """Remove the curves in ``subset`` and dissolve vertices left with degree 2."""
    subset = set(subset)
    if not subset <= set(cmap.curves):
        raise PreconditionError(f"{sorted(subset)} is not a subset of the curves {cmap.curves}")
    _require_valid(cmap)
    face_of, faces, labels = _face_labels(cmap)
    keep_curves = tuple(c for c in cmap.curves if c not in subset)
    kept = [d for d in range(cmap.n_darts) if cmap.curve_of[d] not in subset]
    kept_set = set(kept)

    sigma = {}
    for v in cmap.vertices():
        live = [d for d in v if d in kept_set]
        for i, d in enumerate(live):
            sigma[d] = live[(i + 1) % len(live)]
    alpha = {d: cmap.alpha[d] for d in kept}

    # dissolve degree-2 vertices by splicing their two arcs together
    for v in cmap.vertices():
        live = [d for d in v if d in kept_set]
        if len(live) != 2:
            continue
        a, b = live
        if cmap.curve_of[a] != cmap.curve_of[b]:
            raise InvalidDiagram(f"degree-2 vertex joins two curves at dart {a}")
        a2, b2 = alpha.pop(a), alpha.pop(b)
        sigma.pop(a), sigma.pop(b)
        kept_set -= {a, b}
        if a2 != b:
            alpha[a2] = b2
            alpha[b2] = a2

    remaining = sorted(kept_set)
    renum = {d: i for i, d in enumerate(remaining)}
    new_alpha = [renum[alpha[d]] for d in remaining]
    new_sigma = [renum[sigma[d]] for d in remaining]
    new_curve_of = [cmap.curve_of[d] for d in remaining]
    if remaining:
        n_pieces, _ = component_labels(
            len(remaining),
            np.array([(i, a) for i, a in enumerate(new_alpha)] + [(i, s) for i, s in enumerate(new_sigma)]),
        )
        if n_pieces > 1:
            raise PreconditionError(
                f"deleting {sorted(subset)} splits the arrangement into {n_pieces} separate pieces"
            )

    # free curves: inherited ones keep their host sign, new ones read it from a face
    host_masks = {}
    old_free = {f.curve: f for f in cmap.free_curves}
    live_dart_curves = set(new_curve_of)
    for c in keep_curves:
        if c in old_free:
            host_masks[c] = from_sign(old_free[c].host_sign, cmap.others(c))
        elif c not in live_dart_curves:
            d = next(x for x in range(cmap.n_darts) if cmap.curve_of[x] == c)
            host_masks[c] = labels[face_of[d]] & ~(1 << (c - 1))
            if remaining and not labels[face_of[remaining[0]]] >> (c - 1) & 1:
                raise PreconditionError(f"curve {c} would become a free curve enclosing the remaining arrangement")
    free = []
    for c, host in host_masks.items():
        others = tuple(s for s in keep_curves if s != c)
        free.append(FreeCurve(c, to_sign(host, others), _parent(c, host, host_masks)))

    outer = None
    if remaining:
        # old faces merge across deleted arcs; the new outer face contains the old one
        pairs = [(face_of[d], face_of[cmap.alpha[d]]) for d in range(cmap.n_darts) if cmap.curve_of[d] in subset]
        _, cls = component_labels(len(faces), np.array(pairs).reshape(-1, 2))
        root = cls[face_of[cmap.outer_dart]]
        outer = next((renum[d] for d in remaining if cls[face_of[d]] == root), None)
        if outer is None:
            raise InvalidDiagram("could not locate the outer face after deletion")
    return CombinatorialMap(keep_curves, new_curve_of, new_alpha, new_sigma, outer, tuple(free), cmap.name)


def _parent(c: int, host: int, host_masks: dict) -> Optional[int]:
    """Innermost free curve containing free curve ``c``."""
    enclosing = [p for p in host_masks if p != c and not host >> (p - 1) & 1]
    if not enclosing:
        return None

    def depth(p):
        return sum(1 for q in host_masks if q != p and not host_masks[p] >> (q - 1) & 1)

    return max(enclosing, key=lambda p: (depth(p), -p))


# ---------------------------------------------------------------- complexes


def region_complex(cmap: CombinatorialMap) -> LabeledComplex:
    """Regions of the map as cells, adjacent when they share an arc."""
    face_of, faces, labels = _face_labels(cmap)
    full = scope_mask(cmap.curves)
    cell_labels = list(labels) if faces else [full]
    edges = [(face_of[d], face_of[cmap.alpha[d]]) for d in range(cmap.n_darts)]
    interior_of = {}
    for f in cmap.free_curves:
        interior_of[f.curve] = len(cell_labels)
        cell_labels.append(_free_interior_mask(cmap, f))
    for f in cmap.free_curves:
        outside = from_sign(f.host_sign, cmap.others(f.curve)) | (1 << (f.curve - 1))
        if f.parent is not None:
            host = interior_of[f.parent]
        else:
            host = next((i for i in range(max(len(faces), 1)) if cell_labels[i] == outside), 0)
        edges.append((interior_of[f.curve], host))
    edges = [e for e in edges if e[0] != e[1]]
    return LabeledComplex(len(cell_labels), np.array(edges).reshape(-1, 2), np.array(cell_labels), cmap.curves)


def project_map_onto_curve(cmap: CombinatorialMap, i: int) -> LabeledComplex:
    """Arcs of curve ``i`` labelled by the other curves; consecutive arcs are adjacent."""
    if i not in cmap.curves:
        raise PreconditionError(f"unknown curve {i}")
    others = cmap.others(i)
    bit = 1 << (i - 1)
    free = {f.curve: f for f in cmap.free_curves}
    if i in free:
        return LabeledComplex(1, np.zeros((0, 2)), np.array([from_sign(free[i].host_sign, others)]), others)
    face_of, _, labels = _face_labels(cmap)
    arcs = [d for d in range(cmap.n_darts) if cmap.curve_of[d] == i and d < cmap.alpha[d]]
    index = {}
    for k, d in enumerate(arcs):
        index[d] = index[cmap.alpha[d]] = k
    edges = [(index[d], index[cmap.along_curve(d)]) for d in arcs]
    edges = [e for e in edges if e[0] != e[1]]
    labs = [labels[face_of[d]] & ~bit for d in arcs]
    return LabeledComplex(len(arcs), np.array(edges).reshape(-1, 2), np.array(labs), others)


# ---------------------------------------------------------------- isomorphism


def canonical_form(cmap: CombinatorialMap) -> tuple:
    """Isomorphism-invariant encoding via breadth-first dart relabelling.

    Every dart of the lowest curve id is tried as the start; neighbours are
    visited in the order alpha, sigma, sigma^-1 and the lexicographically
    smallest encoding wins.
    """
    free = tuple(sorted(cmap.free_curves))
    if not cmap.n_darts:
        return (cmap.curves, (), (), free)
    inv = cmap.sigma_inv()
    outer_face = None
    for f in cmap.face_cycles():
        if cmap.outer_dart in f:
            outer_face = set(f)
    c0 = min(cmap.curve_of)
    best = None
    for s in range(cmap.n_darts):
        if cmap.curve_of[s] != c0:
            continue
        new = {s: 0}
        order = [s]
        queue = deque([s])
        while queue:
            d = queue.popleft()
            for e in (cmap.alpha[d], cmap.sigma[d], inv[d]):
                if e not in new:
                    new[e] = len(order)
                    order.append(e)
                    queue.append(e)
        code = tuple((cmap.curve_of[d], new[cmap.alpha[d]], new[cmap.sigma[d]]) for d in order)
        outer = tuple(sorted(new[d] for d in outer_face if d in new))
        key = (code, outer)
        if best is None or key < best:
            best = key
    return (cmap.curves, best[0], best[1], free)


def isomorphic(a: CombinatorialMap, b: CombinatorialMap) -> bool:
    return canonical_form(a) == canonical_form(b)

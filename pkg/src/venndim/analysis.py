"""Venn, simplicity and reducibility decisions plus theorem checkers.

Every operation accepts a :class:`~venndim.cmap.CombinatorialMap`, a
:class:`~venndim.grid.GridDiagram` or a bare
:class:`~venndim.complex.LabeledComplex`.  Region questions go through the
region complex; edge counts need a map or a grid.

Subsets are swept by size and, within a size, in colexicographic order of
their bit masks over the scope, so reported witnesses are deterministic and
of minimal size.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

from .cmap import CombinatorialMap, edge_counts, is_simple_map, project_map_onto_curve, region_complex as map_regions
from .complex import LabeledComplex
from .errors import BudgetExceeded, PreconditionError
from .grid import GridDiagram, edge_components, is_simple_grid, project_onto_surface

MAX_BRUTE_FORCE_N = 20


def as_complex(d) -> LabeledComplex:
    if isinstance(d, LabeledComplex):
        return d
    if isinstance(d, CombinatorialMap):
        return map_regions(d)
    if isinstance(d, GridDiagram):
        return d.region_complex
    raise TypeError(f"not a diagram: {type(d).__name__}")


def dimension(d) -> int | None:
    if isinstance(d, CombinatorialMap):
        return 2
    if isinstance(d, GridDiagram):
        return d.m
    return d.meta.get("m")


def scope_of(d) -> tuple[int, ...]:
    if isinstance(d, CombinatorialMap):
        return tuple(d.curves)
    return tuple(d.scope)


def region_count(d) -> int:
    """r(V): number of connected regions."""
    return sum(as_complex(d).census().values())


def surface_edges(d) -> dict[int, int]:
    """e_V(S) for every surface S."""
    if isinstance(d, CombinatorialMap):
        return dict(edge_counts(d).per_curve)
    if isinstance(d, GridDiagram):
        return {s: edge_components(d, s) for s in d.scope}
    raise PreconditionError("edge counts need a map or a grid, not a bare complex")


def _is_venn_complex(c: LabeledComplex) -> bool:
    census = c.census()
    return len(census) == 2**c.n and all(v == 1 for v in census.values())


def is_venn(d) -> bool:
    """Exactly 2^n labels, each carried by one connected region."""
    return _is_venn_complex(as_complex(d))


def is_simple(d) -> bool:
    if isinstance(d, CombinatorialMap):
        return is_simple_map(d)
    if isinstance(d, GridDiagram):
        return is_simple_grid(d)
    raise PreconditionError("simplicity is not defined for a bare complex")


def check_lemma1(d, subset) -> bool:
    """All 2^k labels of a k-subset occur, connected or not."""
    c = as_complex(d).restrict(subset)
    return len(c.census()) == 2**c.n


def colex_subsets(scope, size=None):
    """Subsets of ``scope`` by increasing size, colex within a size."""
    scope = tuple(scope)
    sizes = range(len(scope) + 1) if size is None else (size,)
    for k in sizes:
        # itertools yields lex order on positions; reversing each tuple and
        # sorting gives colex (compare largest element first)
        combos = sorted(itertools.combinations(range(len(scope)), k), key=lambda t: t[::-1])
        for combo in combos:
            yield tuple(scope[i] for i in combo)


def non_venn_subsets(d, size=None, first_only=False):
    """Subsets whose restriction is not Venn, in sweep order."""
    c = as_complex(d)
    if c.n > MAX_BRUTE_FORCE_N:
        raise BudgetExceeded(f"{2**c.n} subsets exceed the brute-force limit (n <= {MAX_BRUTE_FORCE_N})")
    out = []
    for w in colex_subsets(c.scope, size):
        if not _is_venn_complex(c.restrict(w)):
            out.append(w)
            if first_only:
                break
    return out


def _require_venn(d, simple: bool = False):
    if not is_venn(d):
        raise PreconditionError("diagram is not Venn")
    if simple and not is_simple(d):
        raise PreconditionError("diagram is not simple")


def is_fully_reducible_bruteforce(d) -> tuple[bool, tuple[int, ...] | None]:
    """Every restriction Venn?  Returns ``(ok, smallest failing subset)``."""
    _require_venn(d)
    bad = non_venn_subsets(d, first_only=True)
    return (not bad, bad[0] if bad else None)


def is_reducible(d) -> bool:
    """Some (n-1)-subset is Venn."""
    c = as_complex(d)
    if c.n == 0:
        return False
    return any(_is_venn_complex(c.restrict(w)) for w in colex_subsets(c.scope, c.n - 1))


def fully_reducible_via_r(d, r: int) -> bool:
    """Shortcut test: every size-r restriction is Venn."""
    c = as_complex(d)
    if not 1 < r < c.n:
        raise PreconditionError(f"r must satisfy 1 < r < n = {c.n}, got {r}")
    _require_venn(d, simple=not isinstance(d, LabeledComplex))
    return not non_venn_subsets(c, size=r, first_only=True)


def corollary1_witnesses(d) -> dict[int, tuple[int, ...]]:
    """For each 1 < r < n a size-r subset with a disconnected label."""
    _require_venn(d, simple=True)
    c = as_complex(d)
    if is_fully_reducible_bruteforce(c)[0]:
        raise PreconditionError("diagram is fully reducible; there is nothing to witness")
    out = {}
    for r in range(2, c.n):
        for w in colex_subsets(c.scope, r):
            census = c.restrict(w).census()
            if sum(census.values()) > 2**r and max(census.values()) >= 2:
                out[r] = w
                break
        else:
            raise AssertionError(f"no disconnected {r}-subset found in a non-fully-reducible simple Venn diagram")
    return out


def deletion_identity(d) -> dict[int, tuple[int, int]]:
    """Per surface, ``(r(V) - r(V minus S), e_V(S))``; the two should agree."""
    c = as_complex(d)
    total = sum(c.census().values())
    edges = surface_edges(d)
    out = {}
    for s in c.scope:
        rest = c.restrict([t for t in c.scope if t != s])
        out[s] = (total - sum(rest.census().values()), edges[s])
    return out


def projection(d, surface: int) -> LabeledComplex:
    if isinstance(d, CombinatorialMap):
        return project_map_onto_curve(d, surface)
    if isinstance(d, GridDiagram):
        return project_onto_surface(d, surface)
    raise PreconditionError("projection needs a map or a grid")


@dataclass
class Theorem3Result:
    e: int
    bound: int
    equality: bool
    fully_reducible: bool
    consistent: bool


def theorem3_check(d) -> Theorem3Result:
    _require_venn(d, simple=True)
    n = len(scope_of(d))
    if n < 2:
        raise PreconditionError("edge bound needs n >= 2")
    e = sum(surface_edges(d).values())
    bound = n * 2 ** (n - 1)
    full = is_fully_reducible_bruteforce(d)[0]
    return Theorem3Result(e, bound, e == bound, full, e <= bound and (e == bound) == full)


@dataclass
class Theorem4Result:
    fully_reducible: bool
    n: int
    m: int
    implication_holds: bool


def theorem4_check(d) -> Theorem4Result:
    _require_venn(d, simple=True)
    n, m = len(scope_of(d)), dimension(d)
    full = is_fully_reducible_bruteforce(d)[0]
    return Theorem4Result(full, n, m, (not full) or n <= m + 1)


@dataclass
class AnalysisReport:
    diagram: str
    m: int | None
    n: int
    regions: int
    edges: int | None
    edges_per_surface: dict
    is_venn: bool
    is_simple: bool | None
    is_reducible: bool
    is_fully_reducible: bool | None
    witnesses: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["edges_per_surface"] = {str(k): v for k, v in self.edges_per_surface.items()}
        out["witnesses"] = [list(w) for w in self.witnesses]
        return out


def analyze(d, name: str | None = None) -> AnalysisReport:
    """All metrics and theorem flags that apply to ``d``."""
    c = as_complex(d)
    bare = isinstance(d, LabeledComplex)
    edges = {} if bare else surface_edges(d)
    venn = _is_venn_complex(c)
    simple = None if bare else is_simple(d)
    witnesses = non_venn_subsets(c) if venn and c.n <= MAX_BRUTE_FORCE_N else []
    full = (not witnesses) if venn else None
    flags = {}
    if venn and simple and c.n >= 2:
        t3 = theorem3_check(d)
        flags["theorem3"] = t3.consistent
        flags["theorem4"] = theorem4_check(d).implication_holds
        flags["deletion_identity"] = all(a == b for a, b in deletion_identity(d).values())
    return AnalysisReport(
        diagram=name or getattr(d, "name", None) or "diagram",
        m=dimension(d),
        n=c.n,
        regions=sum(c.census().values()),
        edges=sum(edges.values()) if edges else None,
        edges_per_surface=edges,
        is_venn=venn,
        is_simple=simple,
        is_reducible=is_reducible(c),
        is_fully_reducible=full,
        witnesses=witnesses,
        flags=flags,
    )

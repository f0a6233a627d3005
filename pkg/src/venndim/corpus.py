"""The standard set of constructed diagrams that checks are run against."""
from __future__ import annotations

from functools import lru_cache

from .constructors import builtin_map, edwards_grid
from .lifting import lift_times

LIFT_BASE_RESOLUTION = 128


@lru_cache(maxsize=None)
def lifted(n: int, m: int, resolution: int = LIFT_BASE_RESOLUTION):
    """Edwards n-Venn lifted from the plane to dimension m."""
    g, _ = lift_times(edwards_grid(n, resolution), m - 2)
    return g


def corpus(max_dim: int = 4):
    """``(name, diagram)`` pairs: circle maps, Edwards grids, lifted grids."""
    out = [(f"circles{n}", builtin_map(n)) for n in (1, 2, 3)]
    out += [(f"edwards{n}", edwards_grid(n)) for n in range(2, 7)]
    lifts = [(3, 3), (3, 4), (3, 5), (4, 4), (4, 5)]
    out += [(f"V{m}{n}", lifted(n, m)) for m, n in lifts if m <= max_dim]
    return out

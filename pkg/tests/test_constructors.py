import numpy as np
import pytest

from venndim import builtin_map, edwards_grid, edwards_interior, trace_map
from venndim.cmap import edge_counts, validate_map
from venndim.complex import region_census
from venndim.constructors import amplitude, map_from_circles
from venndim.errors import InvalidDiagram, PreconditionError
from venndim.grid import edge_components, is_simple_grid, refine, validate_grid


@pytest.mark.parametrize("n", range(1, 7))
def test_edwards_grid_is_simple_venn(edwards, n):
    g = edwards[n]
    assert validate_grid(g).ok and is_simple_grid(g)
    counts = region_census(g.region_complex)
    assert len(counts) == 2**n and set(counts.values()) == {1}


def test_edwards_edge_counts(edwards):
    # 2^(n+1) - 4 for n >= 2; per-surface values pinned from the 1024 raster
    per = {n: [edge_components(edwards[n], s) for s in edwards[n].scope] for n in range(2, 7)}
    assert {n: sum(v) for n, v in per.items()} == {2: 4, 3: 12, 4: 28, 5: 60, 6: 124}
    assert per[4] == [6, 6, 8, 8]
    assert per[6] == [10, 10, 32, 16, 24, 32]


@pytest.mark.parametrize("n", range(2, 6))
def test_trace_map_agrees_with_grid(edwards, n):
    g = edwards[n]
    m = trace_map(g)
    rep = validate_map(m)
    assert rep.ok
    assert rep.stats["V"] == 2**n - 2 and rep.stats["F"] == 2**n
    e = edge_counts(m)
    assert e.per_curve == {s: edge_components(g, s) for s in g.scope}
    assert e.regions == sum(region_census(g.region_complex).values())


def test_trace_map_of_lone_surface(edwards):
    m = trace_map(edwards[1])
    assert m.n_darts == 0 and [f.curve for f in m.free_curves] == [1]


def test_refine_keeps_edwards_census(small_edwards):
    g = small_edwards[4]
    assert region_census(refine(g).region_complex) == region_census(g.region_complex)


def test_low_resolution_is_doubled():
    g = edwards_grid(5, 24)
    assert g.shape[0] in (48, 96) and validate_grid(g).ok


def test_round_geometry_never_cleans_up():
    with pytest.raises(InvalidDiagram):
        edwards_grid(4, 64, shape="round")


def test_edwards_membership_points():
    assert edwards_interior(1, (-5, 0)) and not edwards_interior(1, (5, 0))
    assert edwards_interior(2, (0, -5)) and not edwards_interior(2, (0, 5))
    assert edwards_interior(3, (0, 0)) and not edwards_interior(3, (4, 0))
    # c4 has amplitude 3/4: out to 3.75 along the x axis, in to 2.25 along y
    assert amplitude(4) == 0.75
    for shape in ("round", "square"):
        assert edwards_interior(4, (3.5, 0), shape)
        assert not edwards_interior(4, (0, 2.5), shape)
        assert edwards_interior(3, (0, 2.5), shape)
    with pytest.raises(PreconditionError):
        edwards_interior(0, (0, 0))
    with pytest.raises(ValueError):
        edwards_interior(3, (0, 0), "hexagonal")


def test_edwards_membership_vectorised():
    pts = np.array([[0.0, 4.0], [0.0, 0.0]])
    assert edwards_interior(3, pts).tolist() == [True, False]


def test_builtin_range():
    with pytest.raises(PreconditionError):
        builtin_map(4)
    with pytest.raises(PreconditionError):
        edwards_grid(0)


def test_map_from_circles_nested():
    m = map_from_circles([(0, 0, 3), (0, 0, 1)])
    assert validate_map(m).ok
    assert sorted(f.curve for f in m.free_curves) == [1, 2]
    parent = {f.curve: f.parent for f in m.free_curves}
    assert parent == {1: None, 2: 1}

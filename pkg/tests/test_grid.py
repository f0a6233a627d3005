import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from venndim import edwards_grid
from venndim.complex import region_census
from venndim.errors import BudgetExceeded, InvalidDiagram, PreconditionError
from venndim.grid import (
    GridDiagram,
    edge_components,
    intersection_locus,
    is_simple_grid,
    lift_prism,
    project_onto_surface,
    refine,
    restrict,
    slice_grid,
    validate_grid,
)


def box_grid(boxes, extent=22, scale=3):
    """Rasterise half-open boxes ``(x0, y0, x1, y1)`` in units of ``scale`` cells.

    Surface k bounds box k.  Box corners never coincide, so every crossing is
    a transversal "+" on the grid.
    """
    size = extent * scale
    cells = np.zeros((size, size), dtype=np.uint8)
    for k, (x0, y0, x1, y1) in enumerate(boxes):
        inside = np.zeros((size, size), dtype=bool)
        inside[(x0 + 2) * scale : (x1 + 2) * scale, (y0 + 2) * scale : (y1 + 2) * scale] = True
        cells |= (~inside).astype(np.uint8) << k
    return GridDiagram(cells, tuple(range(1, len(boxes) + 1)), "boxes")


TWO = [(2, 2, 8, 6), (5, 3, 11, 7)]
THREE = [(0, 0, 12, 8), (6, 1, 18, 7), (3, 4, 15, 12)]


def census(g):
    return region_census(g.region_complex)


def test_two_discs():
    g = box_grid(TWO)
    assert validate_grid(g).ok
    assert census(g) == {"00": 1, "01": 1, "10": 1, "11": 1}
    assert intersection_locus(g, (1, 2)).component_count() == 2
    assert [edge_components(g, s) for s in (1, 2)] == [2, 2]


def test_three_discs_edges():
    g = box_grid(THREE)
    assert validate_grid(g).ok and is_simple_grid(g)
    assert [edge_components(g, s) for s in (1, 2, 3)] == [4, 4, 4]


def test_single_surface_is_one_edge():
    g = box_grid([(0, 0, 4, 4)], 8)
    assert edge_components(g, 1) == 1


def test_border_violation():
    g = box_grid(TWO)
    cells = g.cells.copy()
    cells[0, 5] = 0
    rep = validate_grid(GridDiagram(cells, g.scope))
    assert rep.failed("border")


def test_diagonal_double_flip_fails_clean():
    cells = np.full((6, 6), 0b11, dtype=np.uint8)
    cells[2:4, 2:4] = 0b00  # one facet flips both bits at once
    cells[2, 2] = 0b11
    assert validate_grid(GridDiagram(cells, (1, 2))).failed("clean")


def test_checkerboard_touch_is_ambiguous():
    cells = np.full((6, 6), 0b11, dtype=np.uint8)
    cells[2, 2] = cells[3, 3] = 0b10
    cells[2, 3] = cells[3, 2] = 0b01
    assert validate_grid(GridDiagram(cells, (1, 2))).failed("ambiguous")


def test_shape_checks():
    assert validate_grid(GridDiagram(np.zeros((2, 2), np.uint8), (1,))).failed("shape")


def test_restrict(edwards):
    g = edwards[4]
    assert restrict(g, g.scope) is g
    assert sum(census(restrict(edwards[3], [1])).values()) == 2
    sub = census(restrict(g, [1, 2, 3]))
    assert len(sub) == 8 and set(sub.values()) == {1}
    pair = census(restrict(g, [3, 4]))
    assert len(pair) == 4 and max(pair.values()) == 2
    assert census(restrict(g, [])) == {"": 1}
    with pytest.raises(PreconditionError):
        restrict(g, [7])


def test_edwards_four_locus(edwards):
    assert intersection_locus(edwards[4], (3, 4)).component_count() == 4
    assert intersection_locus(edwards[4], (1, 2, 3)).meta["note"] == "k exceeds dimension"


def test_lemma1_on_all_subsets(edwards):
    g = edwards[5]
    for k in range(6):
        for w in itertools.combinations(g.scope, k):
            counts = census(restrict(g, w))
            assert len(counts) == 2**k
            assert sum(counts.values()) >= 2**k


def test_lift_two_discs():
    lifted = lift_prism(box_grid(TWO))
    assert lifted.m == 3 and lifted.shape[-1] == 6
    assert census(lifted) == {"00": 1, "01": 1, "10": 1, "11": 1}
    assert is_simple_grid(lifted)


def test_plain_stagger_is_not_venn_for_four(small_edwards):
    # the id-order windows expose the suffix {3, 4} near the closing end
    counts = census(lift_prism(small_edwards[4]))
    assert max(counts.values()) >= 2


def test_lift_with_orders(small_edwards):
    lifted = lift_prism(small_edwards[4], (1, 2, 3, 4), (1, 3, 2, 4))
    counts = census(lifted)
    assert len(counts) == 16 and set(counts.values()) == {1}
    with pytest.raises(ValueError):
        lift_prism(small_edwards[4], (1, 2, 3), None)


def test_lifted_locus_is_closed_curve(lifts):
    g = lifts[3, 3]
    for pair in itertools.combinations(g.scope, 2):
        assert intersection_locus(g, pair).component_count() == 1


def test_projection_two_discs():
    counts = region_census(project_onto_surface(box_grid(TWO), 2))
    assert counts == {"0": 1, "1": 1}


def test_projection_of_fully_reducible_lifts(lifts):
    for key in ((3, 3), (3, 4)):
        g = lifts[key]
        for s in g.scope:
            counts = region_census(project_onto_surface(g, s))
            assert len(counts) == 2 ** (g.n - 1) and set(counts.values()) == {1}


def test_refine_keeps_census_and_cleanliness(lifts):
    g = box_grid(THREE)
    r = refine(g)
    assert r.shape == tuple(2 * d for d in g.shape)
    assert census(r) == census(g) and validate_grid(r).ok
    small = lift_prism(box_grid(TWO, 14, 2))
    assert census(refine(small)) == census(small)


def test_budget(monkeypatch):
    monkeypatch.setenv("VENN_MAX_CELLS", "1000")
    with pytest.raises(BudgetExceeded):
        refine(box_grid(TWO, 14, 2))


def test_slice(lifts):
    g = lifts[3, 3]
    mid = slice_grid(g, 2, 4)
    assert mid.m == 2 and validate_grid(mid).ok
    with pytest.raises(PreconditionError):
        slice_grid(g, 5, 0)


def test_lift_rejects_invalid_input():
    cells = np.full((6, 6), 0b11, dtype=np.uint8)
    cells[0, 0] = 0
    with pytest.raises(InvalidDiagram):
        lift_prism(GridDiagram(cells, (1, 2)))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 14), st.integers(1, 14), st.integers(1, 4), st.integers(1, 4)), min_size=1, max_size=3))
def test_random_rectangles(rects):
    """Axis-aligned boxes: census invariants hold whenever the grid validates."""
    cells = np.zeros((16, 16), dtype=np.uint8)
    for k, (x, y, w, h) in enumerate(rects):
        inside = np.zeros((16, 16), dtype=bool)
        inside[x : min(x + w, 15), y : min(y + h, 15)] = True
        cells |= (~inside).astype(np.uint8) << k
    g = GridDiagram(cells, tuple(range(1, len(rects) + 1)))
    if not validate_grid(g).ok:
        return
    total = sum(census(g).values())
    assert total >= len(census(g))
    assert census(refine(g)) == census(g)
    for s in g.scope:
        rest = restrict(g, [t for t in g.scope if t != s])
        assert sum(census(rest).values()) <= total

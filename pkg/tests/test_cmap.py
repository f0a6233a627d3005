import itertools
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from venndim import builtin_map, trace_map
from venndim.cmap import (
    CombinatorialMap,
    canonical_form,
    check_lemma3,
    delete_curves,
    edge_counts,
    faces_with_signs,
    is_simple_map,
    isomorphic,
    map_from_arcs,
    project_map_onto_curve,
    region_complex,
    validate_map,
)
from venndim.complex import region_census
from venndim.constructors import map_from_circles
from venndim.errors import InvalidDiagram, PreconditionError
from venndim.grid import GridDiagram


def triple_point_map():
    """Three curves, each a left and a right arc joining P (top) and Q (bottom).

    Bulges -3..+3 order the arcs left to right, so all three curves meet at
    both P and Q: two degree-6 vertices.
    """
    bulges = {1: (-3, 1), 2: (-2, 2), 3: (-1, 3)}
    arcs = []
    for c, pair in bulges.items():
        for b in pair:
            arcs.append((c, ("P", math.atan2(-1, b)), ("Q", math.atan2(1, b))))
    # the sector above P, between the rightmost and leftmost arcs, is unbounded
    return map_from_arcs(arcs, outer=(5, 0), name="triple")


def crossed_bars():
    """A vertical and a horizontal bar crossing four times, traced from a grid."""
    cells = np.full((8, 8), 0b11, dtype=np.uint8)
    cells[1:7, 3:5] &= ~np.uint8(0b01)
    cells[3:5, 1:7] &= ~np.uint8(0b10)
    return trace_map(GridDiagram(cells, (1, 2), "bars"))


def test_builtin_maps_shape(circles):
    stats = {n: validate_map(m).stats for n, m in circles.items()}
    assert (stats[1]["V"], stats[1]["E"], stats[1]["F"]) == (0, 0, 1)
    assert (stats[2]["V"], stats[2]["E"], stats[2]["F"]) == (2, 4, 4)
    assert (stats[3]["V"], stats[3]["E"], stats[3]["F"]) == (6, 12, 8)
    assert all(validate_map(m).ok for m in circles.values())


def test_builtin_three_has_all_signs(circles):
    signs = sorted(s for _, s in faces_with_signs(circles[3]))
    assert signs == sorted(format(i, "03b") for i in range(8))
    assert edge_counts(circles[3]).per_curve == {1: 4, 2: 4, 3: 4}


def test_lone_curve_counts_one_edge(circles):
    e = edge_counts(circles[1])
    assert e.per_curve == {1: 1} and e.regions == 2


def test_alpha_fixed_point_rejected(circles):
    m = circles[2]
    alpha = list(m.alpha)
    alpha[0] = 0
    bad = CombinatorialMap(m.curves, m.curve_of, alpha, m.sigma, m.outer_dart)
    rep = validate_map(bad)
    assert not rep.ok and rep.failed("involution")


def test_rotation_must_be_permutation(circles):
    m = circles[2]
    sigma = list(m.sigma)
    sigma[0] = sigma[1]
    rep = validate_map(CombinatorialMap(m.curves, m.curve_of, m.alpha, sigma, m.outer_dart))
    assert rep.failed("permutation")


def test_odd_degree_rejected():
    arcs = [(1, ("u", 0.0), ("v", math.pi)), (1, ("v", 0.0), ("u", math.pi)), (2, ("u", 1.0), ("w", 0.0))]
    assert validate_map(map_from_arcs(arcs, outer=(0, 0))).failed("degree")


def test_degree_six_map_is_valid_but_not_simple():
    m = triple_point_map()
    rep = validate_map(m)
    assert rep.ok, rep.failures
    assert sorted(len(v) for v in m.vertices()) == [6, 6]
    assert not is_simple_map(m)
    # six vertical strips, not a Venn diagram
    assert len(faces_with_signs(m)) == 6


def test_four_crossings_give_lemma3_witness():
    m = crossed_bars()
    assert validate_map(m).ok
    assert is_simple_map(m)
    assert validate_map(m).stats["V"] == 4
    face = check_lemma3(m)
    assert face is not None
    curves = [m.curve_of[d] for d in face.darts]
    assert len(curves) != len(set(curves))


def test_simple_venn_maps_satisfy_lemma3(circles, edwards):
    for m in list(circles.values()) + [trace_map(edwards[n]) for n in (2, 3, 4)]:
        assert check_lemma3(m) is None


def test_delete_curve_from_three_circles(circles):
    two = delete_curves(circles[3], [3])
    assert validate_map(two).ok
    assert isomorphic(two, circles[2])
    assert region_census(region_complex(two)) == {"00": 1, "01": 1, "10": 1, "11": 1}


def test_deletion_composes(circles, edwards):
    m = trace_map(edwards[4])
    for a, b in itertools.combinations(m.curves, 2):
        one_by_one = delete_curves(delete_curves(m, [a]), [b])
        assert isomorphic(one_by_one, delete_curves(m, [a, b]))
        assert isomorphic(one_by_one, delete_curves(delete_curves(m, [b]), [a]))
    assert isomorphic(delete_curves(m, []), m)


def test_deleting_to_a_single_curve_leaves_a_free_curve(circles):
    one = delete_curves(circles[3], [2, 3])
    assert validate_map(one).ok
    assert one.n_darts == 0 and [f.curve for f in one.free_curves] == [1]


def test_deletion_of_disconnecting_curve_refused():
    # two crossing pairs held together by a middle circle; without it the
    # pairs become separate pieces whose relative position is lost
    m = map_from_circles([(-2.2, 0.3, 1), (-2.2, -0.3, 1), (0, 0, 1.5), (2.2, 0.3, 1), (2.2, -0.3, 1)])
    assert validate_map(m).ok
    with pytest.raises(PreconditionError):
        delete_curves(m, [3])


def test_canonical_form_ignores_dart_numbering(circles):
    m = circles[3]
    perm = list(reversed(range(m.n_darts)))
    inv = {p: i for i, p in enumerate(perm)}
    relabel = CombinatorialMap(
        m.curves,
        [m.curve_of[perm[i]] for i in range(m.n_darts)],
        [inv[m.alpha[perm[i]]] for i in range(m.n_darts)],
        [inv[m.sigma[perm[i]]] for i in range(m.n_darts)],
        inv[m.outer_dart],
    )
    assert canonical_form(relabel) == canonical_form(m)
    assert not isomorphic(m, triple_point_map())


def test_projection_onto_curve_is_venn_for_three_circles(circles):
    for c in (1, 2, 3):
        census = region_census(project_map_onto_curve(circles[3], c))
        assert len(census) == 4 and set(census.values()) == {1}


def test_trace_map_rejects_nothing_valid(edwards):
    m = trace_map(edwards[5])
    assert validate_map(m).stats == {"V": 30, "E": 60, "F": 32, "pieces": 1}


circle = st.tuples(
    st.floats(-1, 1, allow_nan=False), st.floats(-1, 1, allow_nan=False), st.floats(1.5, 2.5, allow_nan=False)
)


@settings(max_examples=40, deadline=None)
@given(st.lists(circle, min_size=2, max_size=4))
def test_pairwise_crossing_circles(circles_):
    for (x1, y1, r1), (x2, y2, r2) in itertools.combinations(circles_, 2):
        d = math.hypot(x1 - x2, y1 - y2)
        assume(abs(r1 - r2) + 0.05 < d < r1 + r2 - 0.05)
    try:
        m = map_from_circles(circles_)
    except InvalidDiagram:
        assume(False)  # three circles through one point (measure zero)
    rep = validate_map(m)
    assert rep.ok, rep.failures
    n = len(circles_)
    v, e, f = rep.stats["V"], rep.stats["E"], rep.stats["F"]
    if is_simple_map(m):
        assert v == n * (n - 1) and e == 2 * v
    assert v - e + f == 2
    assert sum(region_census(region_complex(m)).values()) == f
    # removing any curve keeps a valid arrangement with one fewer surface
    for c in m.curves:
        rest = delete_curves(m, [c])
        assert validate_map(rest).ok
        assert rest.n == n - 1

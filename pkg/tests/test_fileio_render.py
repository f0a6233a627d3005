import json
import re

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from venndim import fileio
from venndim.cmap import canonical_form
from venndim.errors import FormatError, PreconditionError
from venndim.grid import GridDiagram
from venndim.render import render


def test_map_round_trip(circles, edwards):
    from venndim import trace_map

    for m in list(circles.values()) + [trace_map(edwards[4])]:
        back = fileio.loads(fileio.dumps(m))
        assert back == m and canonical_form(back) == canonical_form(m)


def test_grid_round_trip(edwards, lifts, tmp_path):
    for g in (edwards[5], lifts[3, 4]):
        path = tmp_path / "g.json"
        fileio.save(g, path)
        back = fileio.load(path)
        assert back == g and back.name == g.name


@settings(max_examples=30)
@given(st.integers(1, 4), st.data())
def test_grid_rle_any_content(n, data):
    shape = data.draw(st.tuples(st.integers(1, 5), st.integers(1, 5), st.integers(1, 3)))
    raw = data.draw(st.lists(st.integers(0, 2**n - 1), min_size=int(np.prod(shape)), max_size=int(np.prod(shape))))
    g = GridDiagram(np.array(raw, dtype=np.uint8).reshape(shape), tuple(range(1, n + 1)))
    d = fileio.grid_to_dict(g)
    assert sum(c for _, c in d["cells"]) == g.cells.size
    assert fileio.grid_from_dict(json.loads(json.dumps(d))) == g


def test_c_order_files_are_read(edwards):
    d = fileio.grid_to_dict(edwards[2])
    g = edwards[2]
    flat = g.cells.ravel()
    starts = np.flatnonzero(np.r_[True, flat[1:] != flat[:-1]])
    counts = np.diff(np.r_[starts, len(flat)])
    from venndim.signs import to_sign

    d["order"] = "C"
    d["cells"] = [[to_sign(int(flat[s]), g.scope), int(c)] for s, c in zip(starts, counts)]
    assert fileio.grid_from_dict(d) == g


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        '{"format": "venn-grid"}',
        '{"format": "venn-grid", "version": 9}',
        '{"format": "venn-cube", "version": 1}',
        '{"format": "venn-grid", "version": 1, "shape": [2, 2], "scope": [1], "cells": [["1", 3]]}',
        '{"format": "venn-grid", "version": 1, "shape": [2, 2], "scope": [1], "cells": [["12", 4]]}',
        '{"format": "venn-map", "version": 1, "curves": [1]}',
    ],
)
def test_bad_files(text):
    with pytest.raises(FormatError):
        fileio.loads(text)


def test_render_three_circles(circles):
    svg = render(circles[3])
    assert svg.count('class="surface"') == 3
    assert sorted(re.findall(r'class="region"[^>]*>(\d+)<', svg)) == sorted(format(i, "03b") for i in range(8))
    assert render(circles[3]) == svg  # deterministic


def test_render_lone_and_nested_curves(circles):
    from venndim.constructors import map_from_circles

    assert render(circles[1]).count('class="surface"') == 1
    svg = render(map_from_circles([(0, 0, 3), (0, 0, 1)]))
    assert svg.count('class="surface"') == 2 and svg.count('class="region"') == 3


def test_render_grid_contours(edwards):
    svg = render(edwards[5])
    assert svg.count('class="surface"') == 5
    # every surface of the Edwards family is a single closed contour
    for d in re.findall(r' d="([^"]+)"', svg):
        assert d.count("M") == 1 and d.endswith("Z")
    assert svg.count('class="region"') == 32


def test_render_slice(lifts):
    g = lifts[3, 3]
    svg = render(g, (2, 4))
    assert svg.count('class="surface"') == 3
    with pytest.raises(PreconditionError):
        render(g)


def test_render_traced_map(edwards):
    from venndim import trace_map

    svg = render(trace_map(edwards[4]))
    assert svg.count('class="surface"') == 4 and svg.count('class="region"') == 16
    assert "nan" not in svg

import re

import pytest

from epglab.grid import parse_representation
from epglab.render import claw_centers, render, render_ascii, render_svg
from test_grid import CLAW_CLIQUE, TRUE_PIE


def test_single_straight_path_ascii():
    r = parse_representation("grid 4 3\n0 : (0,1)-(3,1)\n")
    art = render_ascii(r)
    grid_rows = art.splitlines()[: 2 * r.height - 1]
    rows_with_glyph = [row for row in grid_rows if "a" in row]
    assert len(rows_with_glyph) == 1
    assert "a 0 : (0,1)-(3,1)" in art


def test_single_straight_path_svg():
    svg = render_svg(parse_representation("grid 4 3\n0 : (0,1)-(3,1)\n"))
    assert svg.count("<polyline") == 1


def test_true_pie_svg_has_four_polylines_through_center():
    r = parse_representation(TRUE_PIE)
    svg = render_svg(r, scale=40)
    lines = re.findall(r'points="([^"]+)"', svg)
    assert len(lines) == 4
    # every path is drawn with its bend, and all bends are the grid centre
    for pts in lines:
        assert len(pts.split()) == 3


def test_claw_center_annotated():
    r = parse_representation(CLAW_CLIQUE)
    assert [tuple(c) for c in claw_centers(r)] == [(1, 0)]
    art = render(r, "ascii")
    assert "@" in "".join(art.splitlines()[: 2 * r.height - 1])
    assert "@ claw center (1,0)" in art
    assert '<circle class="claw"' in render(r, "svg")


def test_render_is_deterministic_and_validates_format():
    r = parse_representation(TRUE_PIE)
    assert render(r, "ascii") == render(r, "ascii")
    assert render(r, "svg") == render(r, "svg")
    with pytest.raises(ValueError):
        render(r, "png")

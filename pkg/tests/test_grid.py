import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from epglab.errors import DegeneratePath, OutOfBounds, ParseError
from epglab.grid import (
    EpgRepresentation,
    GridEdge,
    GridPath,
    GridPoint,
    classify_clique,
    edges_in_order,
    find_pies,
    format_representation,
    intersection_graph,
    is_helly,
    is_helly_bruteforce,
    parse_representation,
)

TRUE_PIE = """grid 3 3
0 : (0,1)-(1,1)-(1,0)
1 : (1,0)-(1,1)-(2,1)
2 : (1,2)-(1,1)-(2,1)
3 : (0,1)-(1,1)-(1,2)
"""

FALSE_PIE = """grid 3 3
0 : (0,1)-(2,1)
1 : (1,0)-(1,2)
2 : (0,1)-(1,1)-(1,2)
3 : (1,0)-(1,1)-(2,1)
"""

EDGE_CLIQUE = """grid 3 2
0 : (0,0)-(1,0)
1 : (0,0)-(2,0)
2 : (0,1)-(0,0)-(1,0)
"""

CLAW_CLIQUE = """grid 3 2
0 : (0,0)-(1,0)-(1,1)
1 : (2,0)-(1,0)-(1,1)
2 : (0,0)-(2,0)
"""


def rep(text):
    return parse_representation(text)


# ---------------------------------------------------------------- paths


def test_path_parse_examples():
    p = rep("grid 3 3\n0 : (0,0)-(2,0)\n").paths[0]
    assert p.straight and len(p.edges) == 2
    q = rep("grid 3 3\n0 : (0,0)-(1,0)-(1,2)\n").paths[0]
    assert q.bend == GridPoint(1, 0) and len(q.edges) == 3
    with pytest.raises(DegeneratePath):
        rep("grid 3 3\n0 : (0,0)-(0,0)\n")


def test_collinear_bend_is_canonicalised():
    p = GridPath.make((0, 0), (3, 0), (1, 0))
    assert p.straight and str(p) == "(0,0)-(3,0)"
    with pytest.raises(DegeneratePath):
        GridPath.make((0, 0), (2, 0), (3, 0))


def test_start_is_the_smaller_endpoint():
    p = GridPath.make((2, 2), (0, 1), (0, 2))
    assert p.start == GridPoint(0, 1)
    assert p.points[0] == p.start and p.points[-1] == p.end


@pytest.mark.parametrize(
    "text, error",
    [
        ("grid 3 3\n0 : (0,0)-(1,1)\n", ParseError),
        ("grid 3 3\n0 : (0,0)-(1,2)-(2,0)\n", ParseError),
        ("grid 3 3\n0 : (0,0)-(3,0)\n", OutOfBounds),
        ("grid 1 3\n", ParseError),
        ("0 : (0,0)-(1,0)\n", ParseError),
        ("grid 3 3\n1 : (0,0)-(1,0)\n", ParseError),
        ("grid 3 3\n0 : (0,0)-(1,0)\n0 : (0,0)-(1,0)\n", ParseError),
        ("grid 3 3\n0 : banana\n", ParseError),
    ],
)
def test_representation_parse_errors(text, error):
    with pytest.raises(error):
        rep(text)


def test_parse_error_line_number():
    with pytest.raises(ParseError) as info:
        rep("# header comment\ngrid 3 3\n0 : (0,0)-(1,0)\n1 : nope\n")
    assert info.value.line == 4


def test_edges_in_order_examples():
    assert edges_in_order(GridPath.make((0, 0), (3, 0))) == [
        GridEdge.of((0, 0), (1, 0)),
        GridEdge.of((1, 0), (2, 0)),
        GridEdge.of((2, 0), (3, 0)),
    ]
    bent = edges_in_order(GridPath.make((0, 0), (2, 2), (2, 0)))
    assert [e.horizontal for e in bent] == [True, True, False, False]
    assert len(edges_in_order(GridPath.make((1, 1), (1, 2)))) == 1


# ---------------------------------------------------------------- hypothesis strategies


@st.composite
def one_bend_paths(draw, w=6, h=6):
    x1, x2 = draw(st.integers(0, w - 1)), draw(st.integers(0, w - 1))
    y1, y2 = draw(st.integers(0, h - 1)), draw(st.integers(0, h - 1))
    if (x1, y1) == (x2, y2):
        x2 = (x1 + 1) % w
    p, q = (x1, y1), (x2, y2)
    if x1 == x2 or y1 == y2:
        return GridPath.make(p, q)
    bend = (x2, y1) if draw(st.booleans()) else (x1, y2)
    return GridPath.make(p, q, bend)


@st.composite
def representations(draw, max_n=5, w=5, h=5):
    n = draw(st.integers(0, max_n))
    return EpgRepresentation(w, h, tuple(draw(one_bend_paths(w, h)) for _ in range(n)))


@given(representations(max_n=6))
def test_representation_format_round_trips(r):
    text = format_representation(r)
    again = parse_representation(text)
    assert again == r
    assert format_representation(again) == text


# ---------------------------------------------------------------- intersection graph


def test_intersection_examples():
    share = rep("grid 3 3\n0 : (0,0)-(1,0)\n1 : (0,0)-(2,0)\n")
    assert intersection_graph(share).edges() == [(0, 1)]
    cross = rep("grid 3 3\n0 : (0,1)-(2,1)\n1 : (1,0)-(1,2)\n")
    assert intersection_graph(cross).m == 0
    for text in (TRUE_PIE, FALSE_PIE):
        g = intersection_graph(rep(text))
        assert g.m == 4 and all(g.degree(v) == 2 for v in range(4))


@given(representations(max_n=6, w=4, h=4), st.integers(0, 3), st.integers(0, 3))
def test_intersection_graph_translation_invariant(r, dx, dy):
    assert intersection_graph(r.translate(dx, dy)) == intersection_graph(r)


@given(representations(max_n=6, w=4, h=5), st.integers(0, 7))
def test_intersection_graph_symmetry_invariant(r, sym):
    t = r.transform(sym)
    assert intersection_graph(t) == intersection_graph(r)
    assert is_helly(t).helly == is_helly(r).helly


# ---------------------------------------------------------------- cliques


def test_classify_clique_examples():
    e = classify_clique(rep(EDGE_CLIQUE), (0, 1, 2))
    assert e.kind == "edge" and e.edge == GridEdge.of((0, 0), (1, 0))
    c = classify_clique(rep(CLAW_CLIQUE), (0, 1, 2))
    assert c.kind == "claw" and c.center == GridPoint(1, 0) and c.base_horizontal
    assert classify_clique(rep(TRUE_PIE), (0, 2)).kind == "not-clique"


def test_claw_clique_invariant():
    r = rep(CLAW_CLIQUE)
    c = classify_clique(r, (0, 1, 2))
    claw = set(c.base) | {c.stem}
    assert all(len(r.paths[v].edges & claw) == 2 for v in range(3))


# ---------------------------------------------------------------- pies


def test_find_pies_examples():
    pies = find_pies(rep(TRUE_PIE))
    assert [(p.kind, p.center, p.vertices) for p in pies] == [("true", GridPoint(1, 1), (0, 1, 2, 3))]
    pies = find_pies(rep(FALSE_PIE))
    assert [(p.kind, p.center) for p in pies] == [("false", GridPoint(1, 1))]
    disjoint = rep("grid 4 4\n0 : (0,0)-(3,0)\n1 : (0,2)-(0,3)-(3,3)\n")
    assert find_pies(disjoint) == []


def test_pie_invariants():
    for text, bends in ((TRUE_PIE, 4), (FALSE_PIE, 2)):
        r = rep(text)
        (pie,) = find_pies(r)
        center_bends = [v for v in pie.vertices if r.paths[v].bend == pie.center]
        assert len(center_bends) == bends
        if bends == 2:
            a, b = center_bends
            assert not r.paths[a].edges & r.paths[b].edges


# ---------------------------------------------------------------- Helly


def test_helly_examples():
    res = is_helly(rep(CLAW_CLIQUE))
    assert not res and res.witness == (0, 1, 2)
    assert is_helly(rep(EDGE_CLIQUE))
    assert is_helly(EpgRepresentation(2, 2, ()))


@settings(max_examples=300)
@given(representations(max_n=5, w=4, h=4))
def test_helly_matches_definition(r):
    assert is_helly(r).helly == is_helly_bruteforce(r)


# ---------------------------------------------------------------- observations


def _segment_between(path, q, e):
    pts = path.points
    j = pts.index(q)
    i = path.ordered_edges.index(e)
    return path.ordered_edges[j : i + 1] if j <= i else path.ordered_edges[i:j]


@settings(max_examples=400)
@given(one_bend_paths(), one_bend_paths(), one_bend_paths())
def test_observation_between_edge_is_covered(p, pl, pr):
    """e_m between e_l and e_r on P, e_l in P_l, e_r in P_r, P_l meets P_r => e_m in P_l or P_r."""
    assume(pl.edges & pr.edges)
    order = p.ordered_edges
    for i, j, k in itertools.combinations(range(len(order)), 3):
        for lo, hi in ((i, k), (k, i)):
            el, em, er = order[lo], order[j], order[hi]
            if el in pl.edges and er in pr.edges:
                assert em in pl.edges or em in pr.edges


@settings(max_examples=400)
@given(one_bend_paths(), one_bend_paths())
def test_observation_segment_is_contained(p, q):
    """A one-bend path holding an edge e of P and a point of P holds P's segment between them."""
    for e in p.edges & q.edges:
        for pt in p.point_set & q.point_set:
            assert set(_segment_between(p, pt, e)) <= q.edges

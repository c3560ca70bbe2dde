import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epglab.classes import FamilySpec, generate, is_block_graph, is_cactus
from epglab.construct import DiamondWitness, construct_block, construct_cactus, hellify
from epglab.errors import NotBlockGraph, NotCactus
from epglab.graph import Graph, maximal_cliques
from epglab.grid import (
    EdgeClique,
    classify_clique,
    intersection_graph,
    is_helly,
    is_helly_bruteforce,
    parse_representation,
)

from test_grid import CLAW_CLIQUE


def fam(name, *params):
    return generate(FamilySpec(name, params))


def random_block_graph(rng: random.Random, steps: int) -> Graph:
    n, edges = 1, []
    for _ in range(steps):
        anchor = rng.randrange(n)
        size = rng.randint(1, 3)
        members = [anchor] + list(range(n, n + size))
        edges += list(itertools.combinations(members, 2))
        n += size
    return Graph.from_edges(n, edges)


def random_cactus(rng: random.Random, steps: int) -> Graph:
    n, edges = 1, []
    for _ in range(steps):
        anchor = rng.randrange(n)
        length = rng.choice([2, 3, 4, 5, 6])
        ring = [anchor] + list(range(n, n + length - 1))
        if length == 2:
            edges.append(tuple(ring))
        else:
            edges += [(ring[i], ring[(i + 1) % length]) for i in range(length)]
        n += length - 1
    return Graph.from_edges(n, edges)


def assert_helly_b1(rep, g):
    assert intersection_graph(rep) == g
    assert is_helly(rep)


# ---------------------------------------------------------------- block graphs


def test_k4_shares_one_edge():
    rep = construct_block(fam("complete", 4))
    assert_helly_b1(rep, fam("complete", 4))
    assert rep.common_edges(range(4))


@pytest.mark.parametrize(
    "g",
    [
        fam("complete", 2),
        fam("complete", 1),
        fam("path", 4),
        Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]),
        Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]),
        fam("star", 5),
    ],
    ids=["edge", "vertex", "P4", "bowtie", "paw", "star"],
)
def test_block_examples(g):
    rep = construct_block(g)
    assert_helly_b1(rep, g)
    for c in maximal_cliques(g):
        assert isinstance(classify_clique(rep, c), EdgeClique)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 7))
def test_random_block_graphs(seed, steps):
    g = random_block_graph(random.Random(seed), steps)
    assert is_block_graph(g)
    assert_helly_b1(construct_block(g), g)


def test_disconnected_block_graph():
    g = Graph.from_edges(5, [(0, 1), (2, 3), (3, 4), (2, 4)])
    assert_helly_b1(construct_block(g), g)


@pytest.mark.parametrize("g", [fam("cycle", 4), fam("diamond"), Graph.empty(0)])
def test_not_block(g):
    with pytest.raises(NotBlockGraph):
        construct_block(g)


# ---------------------------------------------------------------- cacti


@pytest.mark.parametrize("g", [fam("cycle", 3), fam("cycle", 4), fam("cycle", 5), fam("cycle", 9), fam("path", 4)])
def test_cactus_examples(g):
    rep = construct_cactus(g)
    assert_helly_b1(rep, g)
    assert all(p.is_monotone() for p in rep.paths)


def test_triangle_with_pendant():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    rep = construct_cactus(g)
    assert_helly_b1(rep, g)
    assert is_helly_bruteforce(rep)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 6))
def test_random_cacti(seed, steps):
    g = random_cactus(random.Random(seed), steps)
    assert is_cactus(g)
    rep = construct_cactus(g)
    assert_helly_b1(rep, g)
    assert all(p.is_monotone() for p in rep.paths)


@pytest.mark.parametrize(
    "g",
    [fam("diamond"), fam("complete", 4), Graph.from_edges(4, [(0, 1), (2, 3)]), Graph.empty(0)],
    ids=["diamond", "K4", "disconnected", "empty"],
)
def test_not_cactus(g):
    with pytest.raises(NotCactus):
        construct_cactus(g)


# ---------------------------------------------------------------- hellify


def test_hellify_claw_clique_with_free_column():
    rep = parse_representation(CLAW_CLIQUE.replace("grid 3 2", "grid 3 3"))
    assert not is_helly(rep)
    out = hellify(rep)
    assert intersection_graph(out) == intersection_graph(rep)
    assert is_helly(out) and is_helly_bruteforce(out)
    assert out.common_edges(range(3))


def test_hellify_keeps_helly_input():
    rep = construct_block(fam("path", 4))
    assert hellify(rep) == rep


# claw at (2,2) with the stem pointing up; path 3 sits on the stem above the
# centre, meeting 0 and 1 but not 2, so the three only share the centre point
BLOCKED = """grid 5 6
0 : (0,2)-(2,2)-(2,4)
1 : (4,2)-(2,2)-(2,4)
2 : (0,2)-(4,2)
3 : (2,3)-(2,5)
"""


def test_hellify_blocked_by_diamond():
    rep = parse_representation(BLOCKED)
    g = intersection_graph(rep)
    assert g.m == 5 and not g.has_edge(2, 3)
    with pytest.raises(DiamondWitness) as info:
        hellify(rep)
    a, b, w, t = info.value.vertices
    sub, _ = g.induced([a, b, w, t])
    assert sub.m == 5 and not g.has_edge(w, t)

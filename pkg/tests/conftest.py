import itertools
import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from epglab._accel import HAVE_NUMBA, use_numba
from epglab.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    ids = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph.from_edges(len(ids), [(ids[u], ids[v]) for u, v in h.edges])


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    if request.param == "numba" and not HAVE_NUMBA:
        pytest.skip("numba not installed")
    previous = use_numba(request.param == "numba")
    yield request.param
    use_numba(previous)

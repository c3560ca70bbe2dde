"""Exact bounded-grid B1-EPG search and representation enumeration."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .graph import Graph
from .grid import EpgRepresentation, intersection_graph, path_table
from .kernels import SearchProblem, Solver

DEFAULT_MAX_NODES = 200_000_000


def _env_max_nodes() -> int:
    raw = os.environ.get("EPGLAB_MAX_NODES")
    return int(raw) if raw else DEFAULT_MAX_NODES


@dataclass(frozen=True)
class SearchBudget:
    """Grid bounds (points per side) and caps for one search.

    ``width``/``height`` of ``None`` mean the default ``3n x 3n`` bound.
    """

    width: int | None = None
    height: int | None = None
    max_nodes: int | None = None
    max_seconds: float | None = None
    require_helly: bool = False

    def __post_init__(self) -> None:
        for side in (self.width, self.height):
            if side is not None and side < 2:
                raise ValueError("grid bounds need at least 2 points per side")
        if self.max_nodes is not None and self.max_nodes <= 0:
            raise ValueError("max_nodes must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise ValueError("max_seconds must be positive")

    def grid_for(self, g: Graph) -> tuple[int, int]:
        side = max(2, 3 * g.n)
        return (self.width or side, self.height or side)

    def node_cap(self) -> int:
        return self.max_nodes if self.max_nodes is not None else _env_max_nodes()


@dataclass(frozen=True)
class Found:
    rep: EpgRepresentation
    nodes: int
    kind = "found"


@dataclass(frozen=True)
class ExhaustedAtBound:
    """No representation exists on this grid; evidence, not proof, of non-membership."""

    width: int
    height: int
    nodes: int
    kind = "exhausted"


@dataclass(frozen=True)
class BudgetExceeded:
    nodes: int
    reason: str
    kind = "budget"


SearchOutcome = Found | ExhaustedAtBound | BudgetExceeded


def search_order(g: Graph) -> list[int]:
    """Descending degree, ties broken by vertex id."""
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


def _twins(g: Graph, order: list[int]) -> tuple[np.ndarray, np.ndarray]:
    """Twin classes (equal neighbourhoods outside the pair) per search position."""
    n = max(g.n, 1)
    klass = np.arange(n, dtype=np.int32)
    strict = np.zeros(n, np.int8)
    for i, v in enumerate(order):
        for j in range(i):
            u = order[j]
            if g.adj[u] & ~(1 << v) == g.adj[v] & ~(1 << u):
                klass[i] = klass[j]
                strict[i] = strict[j] = 0 if g.has_edge(u, v) else 1
                break
    return klass, strict


def build_problem(
    g: Graph,
    width: int,
    height: int,
    *,
    helly: bool = False,
    break_twins: bool = True,
    canonical_only: bool = False,
) -> tuple[SearchProblem, list[int]]:
    table = path_table(width, height)
    order = search_order(g)
    n = g.n
    adjacency = np.zeros((max(n, 1), max(n, 1)), np.int8)
    for i, u in enumerate(order):
        for j, v in enumerate(order):
            if i != j and g.has_edge(u, v):
                adjacency[i, j] = 1
    if break_twins:
        klass, strict = _twins(g, order)
    else:
        klass = np.arange(max(n, 1), dtype=np.int32)
        strict = np.zeros(max(n, 1), np.int8)
    prob = SearchProblem(
        masks=table.masks,
        adjacency=adjacency[:n, :n] if n else adjacency[:0, :0],
        first=table.canonical_first(),
        twin_class=klass,
        twin_strict=strict,
        symmetry=table.symmetry,
        helly=helly,
        canonical_only=canonical_only,
    )
    return prob, order


def _to_rep(row: np.ndarray, order: list[int], width: int, height: int) -> EpgRepresentation:
    table = path_table(width, height)
    by_vertex = [0] * len(order)
    for pos, v in enumerate(order):
        by_vertex[v] = int(row[pos])
    return table.representation(by_vertex)


def search_b1(g: Graph, budget: SearchBudget | None = None) -> SearchOutcome:
    """Depth-first search for a (Helly-)B1-EPG representation on a bounded grid."""
    budget = budget or SearchBudget()
    if g.n == 0:
        raise ValueError("search_b1 needs at least one vertex")
    width, height = budget.grid_for(g)
    prob, order = build_problem(g, width, height, helly=budget.require_helly)
    deadline = time.monotonic() + budget.max_seconds if budget.max_seconds else None
    solver = Solver(prob, budget.node_cap(), deadline, buffer=1)
    for row in solver:
        rep = _to_rep(row, order, width, height)
        assert intersection_graph(rep) == g, "search returned an unsound representation"
        return Found(rep, solver.nodes)
    if solver.complete:
        return ExhaustedAtBound(width, height, solver.nodes)
    reason = "deadline" if deadline is not None and time.monotonic() > deadline else "max_nodes"
    return BudgetExceeded(solver.nodes, reason)


@dataclass
class Enumeration:
    """Lazy stream of representations; ``complete`` turns true after full exhaustion."""

    solver: Solver
    order: list[int]
    width: int
    height: int

    def __iter__(self) -> Iterator[EpgRepresentation]:
        for row in self.solver:
            yield _to_rep(row, self.order, self.width, self.height)

    def rows(self) -> Iterator[np.ndarray]:
        """Raw candidate-index rows in vertex order (fast path for bulk checks)."""
        inverse = np.argsort(np.asarray(self.order))
        for row in self.solver:
            yield row[inverse]

    def row_blocks(self) -> Iterator[np.ndarray]:
        """Like :meth:`rows` but in 2-D arrays, one row per representation."""
        inverse = np.argsort(np.asarray(self.order))
        for block in self.solver.blocks():
            yield block[:, inverse]

    @property
    def complete(self) -> bool:
        return self.solver.complete

    @property
    def nodes(self) -> int:
        return self.solver.nodes


def enumerate_reps(
    g: Graph,
    budget: SearchBudget | None = None,
    *,
    up_to_twins: bool = False,
) -> Enumeration:
    """All representations of ``g`` on the budget's grid, one per grid-symmetry orbit.

    With ``up_to_twins`` the orbits also absorb permutations of twin vertices
    (same neighbourhood), which is sound for any property invariant under
    graph automorphisms.
    """
    budget = budget or SearchBudget()
    width, height = budget.grid_for(g)
    prob, order = build_problem(
        g, width, height, helly=budget.require_helly, break_twins=up_to_twins, canonical_only=True
    )
    deadline = time.monotonic() + budget.max_seconds if budget.max_seconds else None
    return Enumeration(Solver(prob, budget.node_cap(), deadline), order, width, height)

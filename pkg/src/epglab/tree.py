"""Paths on a host tree: vertex (VPT) and edge (EPT) intersection models and a bounded search."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import ParseError
from .graph import Graph, format_graph, is_connected, parse_graph, shortest_path


@dataclass(frozen=True)
class HostTree:
    graph: Graph

    def __post_init__(self) -> None:
        g = self.graph
        if g.n == 0 or g.m != g.n - 1 or not is_connected(g):
            raise ValueError("host must be a non-empty tree")

    @property
    def n(self) -> int:
        return self.graph.n

    def path(self, a: int, b: int) -> "TreePath":
        return TreePath(tuple(shortest_path(self.graph, a, b)))


@dataclass(frozen=True)
class TreePath:
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("a tree path needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("tree path repeats a vertex")

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        vs = self.vertices
        return frozenset((min(a, b), max(a, b)) for a, b in zip(vs, vs[1:]))


@dataclass(frozen=True)
class TreeRepresentation:
    host: HostTree
    paths: tuple[TreePath, ...]

    def __post_init__(self) -> None:
        g = self.host.graph
        for v, p in enumerate(self.paths):
            if any(not 0 <= u < g.n for u in p.vertices):
                raise ValueError(f"path of vertex {v} leaves the host")
            if any(not g.has_edge(a, b) for a, b in zip(p.vertices, p.vertices[1:])):
                raise ValueError(f"path of vertex {v} is not a host path")


def _graph_from(masks: Sequence[int]) -> Graph:
    rows = []
    for v, mv in enumerate(masks):
        rows.append(sum(1 << u for u, mu in enumerate(masks) if u != v and mu & mv))
    return Graph(len(masks), tuple(rows))


def vpt_graph(rep: TreeRepresentation) -> Graph:
    return _graph_from([sum(1 << u for u in p.vertices) for p in rep.paths])


def ept_graph(rep: TreeRepresentation) -> Graph:
    index = {e: i for i, e in enumerate(rep.host.graph.edges())}
    return _graph_from([sum(1 << index[e] for e in p.edges) for p in rep.paths])


def host_max_degree(rep: TreeRepresentation) -> int:
    g = rep.host.graph
    return max(g.degree(v) for v in range(g.n))


# --------------------------------------------------------------------------
# host trees up to isomorphism
# --------------------------------------------------------------------------


def _rooted_code(g: Graph, root: int, parent: int = -1) -> str:
    kids = sorted(_rooted_code(g, c, root) for c in g.neighbors(root) if c != parent)
    return "(" + "".join(kids) + ")"


def _centers(g: Graph) -> list[int]:
    alive = set(range(g.n))
    deg = {v: g.degree(v) for v in alive}
    while len(alive) > 2:
        leaves = [v for v in alive if deg[v] <= 1]
        for v in leaves:
            alive.remove(v)
            for u in g.neighbors(v):
                if u in alive:
                    deg[u] -= 1
    return sorted(alive)


def tree_code(g: Graph) -> str:
    """Canonical code of a free tree: least nested-parenthesis code over its centers."""
    return min(_rooted_code(g, c) for c in _centers(g))


@lru_cache(maxsize=None)
def free_trees(n: int) -> tuple[Graph, ...]:
    """Trees on ``n`` vertices up to isomorphism, ordered by code; grown leaf by leaf."""
    if n <= 0:
        return ()
    if n == 1:
        return (Graph.empty(1),)
    seen: dict[str, Graph] = {}
    for t in free_trees(n - 1):
        for v in range(t.n):
            g = t.add_vertex([v])
            seen.setdefault(tree_code(g), g)
    return tuple(seen[k] for k in sorted(seen))


# --------------------------------------------------------------------------
# search
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TreeFound:
    rep: TreeRepresentation
    nodes: int
    kind = "found"


@dataclass(frozen=True)
class TreeExhausted:
    host_bound: int
    nodes: int
    kind = "exhausted"


def _candidate_paths(host: Graph, mode: str) -> list[tuple[int, int, TreePath]]:
    index = {e: i for i, e in enumerate(host.edges())}
    out = []
    for a in range(host.n):
        for b in range(a, host.n):
            if mode == "ept" and a == b:
                continue
            p = TreePath(tuple(shortest_path(host, a, b)))
            vmask = sum(1 << u for u in p.vertices)
            emask = sum(1 << index[e] for e in p.edges)
            out.append((vmask if mode == "vpt" else emask, len(p.vertices), p))
    return out


def _assign(g: Graph, host: Graph, mode: str, counter: list[int], node_cap: int | None):
    cands = _candidate_paths(host, mode)
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    chosen: list[int] = [0] * g.n
    masks = [c[0] for c in cands]

    def go(i: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        for k, m in enumerate(masks):
            counter[0] += 1
            if node_cap is not None and counter[0] > node_cap:
                raise _Budget
            ok = True
            for j in range(i):
                u = order[j]
                if bool(masks[chosen[u]] & m) != g.has_edge(u, v):
                    ok = False
                    break
            if ok:
                chosen[v] = k
                if go(i + 1):
                    return True
        return False

    if go(0):
        return tuple(cands[chosen[v]][2] for v in range(g.n))
    return None


@dataclass(frozen=True)
class TreeBudgetExceeded:
    host_size: int
    nodes: int
    kind = "budget"


class _Budget(Exception):
    pass


def search_tree_rep(
    g: Graph,
    mode: str = "vpt",
    host_size_bound: int | None = None,
    degree_bound: int | None = None,
    max_nodes: int | None = None,
):
    """Smallest-host-first search over host trees (up to isomorphism) and path assignments."""
    if mode not in ("vpt", "ept"):
        raise ValueError("mode must be vpt or ept")
    if g.n == 0:
        raise ValueError("search_tree_rep needs at least one vertex")
    bound = host_size_bound if host_size_bound is not None else g.n + 3
    counter = [0]
    start = 2 if mode == "ept" else 1
    for size in range(start, bound + 1):
        for host in free_trees(size):
            if degree_bound is not None and max(host.degree(v) for v in range(host.n)) > degree_bound:
                continue
            try:
                paths = _assign(g, host, mode, counter, max_nodes)
            except _Budget:
                return TreeBudgetExceeded(size, counter[0])
            if paths is not None:
                rep = TreeRepresentation(HostTree(host), paths)
                check = vpt_graph(rep) if mode == "vpt" else ept_graph(rep)
                assert check == g, "tree search returned an unsound representation"
                return TreeFound(rep, counter[0])
    return TreeExhausted(bound, counter[0])


# --------------------------------------------------------------------------
# file format
# --------------------------------------------------------------------------


def format_tree_rep(rep: TreeRepresentation) -> str:
    lines = ["host", format_graph(rep.host.graph).rstrip("\n")]
    for v, p in enumerate(rep.paths):
        lines.append(f"{v} : {' '.join(map(str, p.vertices))}")
    return "\n".join(lines) + "\n"


def parse_tree_rep(text: str) -> TreeRepresentation:
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].split("#", 1)[0].strip():
        idx += 1
    if idx == len(lines) or lines[idx].split("#", 1)[0].strip() != "host":
        raise ParseError("expected a 'host' line", idx + 1)
    first_path = next((i for i in range(idx + 1, len(lines)) if ":" in lines[i].split("#", 1)[0]), len(lines))
    try:
        host = parse_graph("\n".join(lines[idx + 1 : first_path]))
    except ParseError as exc:
        raise ParseError(exc.message, idx + 1 + (exc.line or 1)) from None
    try:
        tree = HostTree(host)
    except ValueError as exc:
        raise ParseError(str(exc), idx + 1) from None
    paths: dict[int, TreePath] = {}
    for lineno in range(first_path, len(lines)):
        raw = lines[lineno].split("#", 1)[0].strip()
        if not raw:
            continue
        left, _, right = raw.partition(":")
        try:
            v = int(left)
            verts = tuple(int(x) for x in right.split())
            path = TreePath(verts)
        except ValueError as exc:
            raise ParseError(f"bad path line: {exc}", lineno + 1) from None
        if v in paths:
            raise ParseError(f"vertex {v} listed twice", lineno + 1)
        if any(not (0 <= u < host.n) for u in verts) or any(
            not host.has_edge(a, b) for a, b in zip(verts, verts[1:])
        ):
            raise ParseError(f"vertex {v}: not a path of the host", lineno + 1)
        paths[v] = path
    if sorted(paths) != list(range(len(paths))):
        raise ParseError("path vertex ids must be 0..n-1")
    return TreeRepresentation(tree, tuple(paths[v] for v in range(len(paths))))


__all__ = [
    "HostTree",
    "TreePath",
    "TreeRepresentation",
    "TreeFound",
    "TreeExhausted",
    "TreeBudgetExceeded",
    "vpt_graph",
    "ept_graph",
    "host_max_degree",
    "free_trees",
    "tree_code",
    "search_tree_rep",
    "format_tree_rep",
    "parse_tree_rep",
]

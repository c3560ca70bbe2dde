"""Simple undirected graphs on dense vertex ids and the exact algorithms built on them.

Adjacency is stored as one Python ``int`` bitmask per vertex, which keeps the
desk-scale exact searches (cliques, colorings, embeddings) cheap without a
dependency on a graph library.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import GraphTooLarge, NotAClique, ParseError

VertexSet = tuple[int, ...]

#: Exact algorithms refuse graphs above this order unless a larger ``limit`` is passed.
EXACT_LIMIT = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _guard(g: "Graph", limit: int | None) -> None:
    limit = EXACT_LIMIT if limit is None else limit
    if g.n > limit:
        raise GraphTooLarge(f"graph has {g.n} vertices; exact algorithms are capped at {limit}")


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length must equal vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency is not symmetric at {u},{v}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("one label per vertex is required")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None
    ) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        mask = to_mask(vs)
        return all((self.adj[v] | 1 << v) & mask == mask for v in vs)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        mask = to_mask(vs)
        return all(self.adj[v] & mask == 0 for v in vs)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", VertexSet]:
        """Return ``G[S]`` relabelled to ``0..|S|-1`` and the id map back into ``self``."""
        ids = tuple(sorted(set(vertices)))
        pos = {v: i for i, v in enumerate(ids)}
        rows = []
        for v in ids:
            rows.append(to_mask(pos[u] for u in bits(self.adj[v]) if u in pos))
        labels = tuple(self.labels[v] for v in ids) if self.labels else None
        return Graph(len(ids), tuple(rows), labels), ids

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``v`` of ``self`` becomes ``perm[v]`` in the result."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def add_vertex(self, neighbors: Iterable[int]) -> "Graph":
        nb = to_mask(neighbors)
        rows = [row | ((nb >> v & 1) << self.n) for v, row in enumerate(self.adj)]
        rows.append(nb)
        return Graph(self.n + 1, tuple(rows))

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# --------------------------------------------------------------------------
# text format
# --------------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Read the ``n m`` / ``u v`` edge-list format; ``#`` starts a comment line."""
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"expected two non-negative integers, got {raw!r}", lineno)
        a, b = int(parts[0]), int(parts[1])
        if header is None:
            header = (a, b)
            continue
        n = header[0]
        if not a < b:
            raise ParseError(f"edge must satisfy u < v, got {a} {b}", lineno)
        if b >= n:
            raise ParseError(f"vertex {b} out of range for n={n}", lineno)
        if (a, b) in seen:
            raise ParseError(f"duplicate edge {a} {b}", lineno)
        seen.add((a, b))
        edges.append((a, b))
    if header is None:
        raise ParseError("missing 'n m' header line", 1)
    if len(edges) != header[1]:
        raise ParseError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def format_graph(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# traversal helpers
# --------------------------------------------------------------------------


def shortest_path(g: Graph, source: int, target: int, allowed: int | None = None) -> list[int] | None:
    """BFS path from ``source`` to ``target`` using only vertices in ``allowed``."""
    allowed = g.full_mask if allowed is None else allowed
    if not (allowed >> source & 1 and allowed >> target & 1):
        return None
    parent = {source: source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if v == target:
            path = [v]
            while v != source:
                v = parent[v]
                path.append(v)
            return path[::-1]
        for u in bits(g.adj[v] & allowed):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    return None


def component_labels(g: Graph, allowed: int | None = None) -> list[int]:
    """Component index per vertex inside ``allowed``; ``-1`` for excluded vertices."""
    allowed = g.full_mask if allowed is None else allowed
    label = [-1] * g.n
    c = 0
    for s in bits(allowed):
        if label[s] >= 0:
            continue
        label[s] = c
        frontier = 1 << s
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= allowed
            fresh = 0
            for u in bits(nxt):
                if label[u] < 0:
                    label[u] = c
                    fresh |= 1 << u
            frontier = fresh
        c += 1
    return label


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return max(component_labels(g)) == 0


def connected_components(g: Graph) -> list[VertexSet]:
    label = component_labels(g)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(label):
        groups.setdefault(c, []).append(v)
    return [tuple(vs) for _, vs in sorted(groups.items())]


def two_coloring(g: Graph) -> list[int] | None:
    """A proper 2-coloring, or ``None`` when the graph has an odd cycle."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in bits(g.adj[v]):
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


# --------------------------------------------------------------------------
# cliques and coloring
# --------------------------------------------------------------------------


def maximal_cliques(g: Graph, limit: int | None = None) -> list[VertexSet]:
    """All inclusion-maximal cliques, each sorted, in lexicographic order.

    Bron-Kerbosch with Tomita pivoting over bitmasks.
    """
    _guard(g, limit)
    adj = g.adj
    out: list[VertexSet] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(tuple(bits(r)))
            return
        pivot = max(bits(p | x), key=lambda u: (adj[u] & p).bit_count())
        for v in bits(p & ~adj[pivot]):
            expand(r | 1 << v, p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        expand(0, g.full_mask, 0)
    out.sort()
    return out


def clique_number(g: Graph) -> int:
    return max((len(c) for c in maximal_cliques(g)), default=0)


def optimal_coloring(g: Graph, limit: int | None = None) -> list[int]:
    """Exact minimum coloring by DSATUR branch-and-bound.

    Returns one color index per vertex; colors are ``0..chi-1``.
    """
    _guard(g, limit)
    n = g.n
    if n == 0:
        return []
    adj = g.adj
    cliques = maximal_cliques(g, limit=max(n, EXACT_LIMIT))
    big = max(cliques, key=len)
    lower = len(big)

    colors = [-1] * n
    # seed with a largest clique: its vertices need pairwise distinct colors anyway
    for i, v in enumerate(big):
        colors[v] = i

    def neighbor_colors(v: int) -> int:
        used = 0
        for u in bits(adj[v]):
            if colors[u] >= 0:
                used |= 1 << colors[u]
        return used

    greedy = colors[:]
    for v in sorted(range(n), key=lambda v: -g.degree(v)):
        if greedy[v] < 0:
            used = 0
            for u in bits(adj[v]):
                if greedy[u] >= 0:
                    used |= 1 << greedy[u]
            c = 0
            while used >> c & 1:
                c += 1
            greedy[v] = c
    best = greedy
    best_k = max(greedy) + 1
    if best_k == lower:
        return best

    def search(done: int, k: int) -> bool:
        nonlocal best, best_k
        if k >= best_k:
            return False
        if done == n:
            best, best_k = colors[:], k
            return best_k == lower
        v, key = -1, (-1, -1)
        for u in range(n):
            if colors[u] < 0:
                cand = (neighbor_colors(u).bit_count(), g.degree(u))
                if cand > key:
                    key, v = cand, u
        used = neighbor_colors(v)
        for c in range(k + 1):
            if c + 1 >= best_k:
                break
            if used >> c & 1:
                continue
            colors[v] = c
            if search(done + 1, max(k, c + 1)):
                return True
            colors[v] = -1
        return False

    search(lower, lower)
    return best


def chromatic_number(g: Graph, limit: int | None = None) -> int:
    if g.n == 0:
        return 0
    return max(optimal_coloring(g, limit)) + 1


# --------------------------------------------------------------------------
# induced subgraph search
# --------------------------------------------------------------------------


def iter_induced_embeddings(host: Graph, pattern: Graph, limit: int | None = None) -> Iterator[VertexSet]:
    """Yield every injective map pattern -> host preserving adjacency and non-adjacency.

    Maps are tuples indexed by pattern vertex and come out in lexicographic order.
    """
    _guard(host, limit)
    k = pattern.n
    if k > host.n:
        return
    if k == 0:
        yield ()
        return
    hadj, padj = host.adj, pattern.adj
    hdeg = [host.degree(v) for v in range(host.n)]
    pdeg = [pattern.degree(v) for v in range(k)]
    full = host.full_mask
    image = [0] * k

    def candidates(i: int, used: int) -> int:
        m = full & ~used
        for j in range(i):
            m &= hadj[image[j]] if padj[i] >> j & 1 else ~hadj[image[j]]
        return m

    def extend(i: int, used: int) -> Iterator[VertexSet]:
        for h in bits(candidates(i, used)):
            if hdeg[h] < pdeg[i]:
                continue
            image[i] = h
            if i + 1 == k:
                yield tuple(image)
            else:
                yield from extend(i + 1, used | 1 << h)

    yield from extend(0, 0)


def induced_subgraph_search(host: Graph, pattern: Graph, limit: int | None = None) -> VertexSet | None:
    """Lexicographically least induced embedding of ``pattern`` into ``host``, if any."""
    return next(iter_induced_embeddings(host, pattern, limit), None)


def verify_embedding(host: Graph, pattern: Graph, image: Sequence[int]) -> bool:
    if len(image) != pattern.n or len(set(image)) != pattern.n:
        return False
    for i in range(pattern.n):
        for j in range(i + 1, pattern.n):
            if pattern.has_edge(i, j) != host.has_edge(image[i], image[j]):
                return False
    return True


# --------------------------------------------------------------------------
# chordality
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Chordality:
    chordal: bool
    elimination_order: VertexSet | None = None
    chordless_cycle: VertexSet | None = None

    def __bool__(self) -> bool:
        return self.chordal


def _mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search; the reverse visit order is a PEO iff g is chordal."""
    weight = [0] * g.n
    visited = 0
    order = []
    for _ in range(g.n):
        v = max((u for u in range(g.n) if not visited >> u & 1), key=lambda u: (weight[u], -u))
        order.append(v)
        visited |= 1 << v
        for u in bits(g.adj[v] & ~visited):
            weight[u] += 1
    return order[::-1]


def is_perfect_elimination_order(g: Graph, order: Sequence[int]) -> bool:
    later = g.full_mask
    for v in order:
        later &= ~(1 << v)
        nb = g.adj[v] & later
        if not g.is_clique(bits(nb)):
            return False
    return True


def find_chordless_cycle(g: Graph) -> VertexSet | None:
    """A chordless cycle of length >= 4, or ``None`` if the graph is chordal."""
    for v in range(g.n):
        nb = g.neighbors(v)
        closed = g.adj[v] | 1 << v
        for i, x in enumerate(nb):
            for y in nb[i + 1 :]:
                if g.has_edge(x, y):
                    continue
                allowed = g.full_mask & ~closed | 1 << x | 1 << y
                path = shortest_path(g, x, y, allowed)
                if path is not None:
                    return (v, *path)
    return None


def is_chordal(g: Graph) -> Chordality:
    order = _mcs_order(g)
    if is_perfect_elimination_order(g, order):
        return Chordality(True, elimination_order=tuple(order))
    cycle = find_chordless_cycle(g)
    assert cycle is not None
    return Chordality(False, chordless_cycle=cycle)


# --------------------------------------------------------------------------
# asteroidal triples
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AsteroidalTriple:
    """Three pairwise non-adjacent vertices with a witness path for each pair.

    ``paths[i]`` joins the two vertices other than ``vertices[i]`` and avoids
    the closed neighbourhood of ``vertices[i]``.
    """

    vertices: tuple[int, int, int]
    paths: tuple[VertexSet, VertexSet, VertexSet]


def find_asteroidal_triple(g: Graph) -> AsteroidalTriple | None:
    n = g.n
    labels = []
    for v in range(n):
        labels.append(component_labels(g, g.full_mask & ~(g.adj[v] | 1 << v)))
    for a in range(n):
        for b in range(a + 1, n):
            if g.has_edge(a, b):
                continue
            for c in range(b + 1, n):
                if g.has_edge(a, c) or g.has_edge(b, c):
                    continue
                if labels[c][a] == labels[c][b] and labels[b][a] == labels[b][c] and labels[a][b] == labels[a][c]:
                    paths = []
                    for z, (s, t) in ((a, (b, c)), (b, (a, c)), (c, (a, b))):
                        allowed = g.full_mask & ~(g.adj[z] | 1 << z)
                        paths.append(tuple(shortest_path(g, s, t, allowed)))
                    return AsteroidalTriple((a, b, c), tuple(paths))
    return None


def verify_asteroidal_triple(g: Graph, at: AsteroidalTriple) -> bool:
    a, b, c = at.vertices
    if len({a, b, c}) != 3 or not g.is_independent((a, b, c)):
        return False
    for z, path, ends in zip((a, b, c), at.paths, ((b, c), (a, c), (a, b))):
        if (path[0], path[-1]) != ends:
            return False
        if any(v == z or g.has_edge(v, z) for v in path):
            return False
        if any(not g.has_edge(p, q) for p, q in zip(path, path[1:])):
            return False
    return True


# --------------------------------------------------------------------------
# branch graphs
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BranchGraph:
    base: Graph
    clique: VertexSet
    derived: Graph
    ids: VertexSet  # derived vertex i is base vertex ids[i]


def branch_graph(g: Graph, clique: Iterable[int]) -> BranchGraph:
    """The branch graph of ``g`` over a clique.

    Vertices are the outside neighbours of the clique; two of them are joined
    when they are non-adjacent, share a neighbour in the clique and have
    incomparable neighbourhoods inside it.
    """
    c = tuple(sorted(set(clique)))
    if not g.is_clique(c):
        raise NotAClique(f"{list(c)} is not a clique")
    cmask = to_mask(c)
    outside = 0
    for v in c:
        outside |= g.adj[v]
    outside &= ~cmask
    ids = tuple(bits(outside))
    trace = [g.adj[v] & cmask for v in ids]
    edges = []
    for i, x in enumerate(ids):
        for j in range(i + 1, len(ids)):
            y = ids[j]
            if g.has_edge(x, y):
                continue
            tx, ty = trace[i], trace[j]
            if tx & ty and tx & ~ty and ty & ~tx:
                edges.append((i, j))
    return BranchGraph(g, c, Graph.from_edges(len(ids), edges), ids)


# --------------------------------------------------------------------------
# blocks
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[tuple[int, int], ...], ...]
    cut_vertices: VertexSet

    def block_vertices(self) -> list[VertexSet]:
        return [tuple(sorted({v for e in b for v in e})) for b in self.blocks]


def biconnected_components(g: Graph) -> BlockDecomposition:
    """Hopcroft-Tarjan block decomposition (iterative)."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cuts: set[int] = set()
    blocks: list[tuple[tuple[int, int], ...]] = []
    t = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if disc[u] < 0:
                    edge_stack.append((v, u))
                    disc[u] = low[u] = t
                    t += 1
                    if v == root:
                        root_children += 1
                    stack.append((u, v, iter(g.neighbors(u))))
                    advanced = True
                    break
                if u != parent and disc[u] < disc[v]:
                    edge_stack.append((v, u))
                    low[v] = min(low[v], disc[u])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    if parent != root:
                        cuts.add(parent)
                    block = []
                    while True:
                        e = edge_stack.pop()
                        block.append((min(e), max(e)))
                        if e == (parent, v):
                            break
                    blocks.append(tuple(sorted(block)))
        if root_children > 1:
            cuts.add(root)
    blocks.sort()
    return BlockDecomposition(tuple(blocks), tuple(sorted(cuts)))

"""Helly straightening and direct Helly-B1 layouts for block graphs and cacti."""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .errors import EpglabError, NotBlockGraph, NotCactus
from .graph import Graph, biconnected_components, connected_components, is_connected, maximal_cliques
from .grid import (
    ClawClique,
    EpgRepresentation,
    GridPath,
    find_claw,
    intersection_graph,
    is_helly,
)


class DiamondWitness(EpglabError):
    """Straightening got stuck; ``vertices`` induce a diamond (a, b, w, t with w, t non-adjacent)."""

    def __init__(self, vertices: Sequence[int]):
        self.vertices = tuple(vertices)
        super().__init__("diamond " + " ".join(map(str, self.vertices)))


# --------------------------------------------------------------------------
# straightening
# --------------------------------------------------------------------------


def _inverse_symmetry(sym: int) -> int:
    if not sym & 4:
        return sym
    return 4 | (1 if sym & 2 else 0) | (2 if sym & 1 else 0)


def _claw_cliques(rep: EpgRepresentation) -> list[tuple[ClawClique, tuple[int, ...]]]:
    g = intersection_graph(rep)
    masks = rep.edge_masks
    out = []
    for clique in maximal_cliques(g):
        common = -1
        for v in clique:
            common &= masks[v]
        if common:
            continue
        claw = find_claw(rep, clique)
        if claw is None:
            raise ValueError(f"clique {clique} is neither an edge-clique nor a claw-clique")
        out.append((claw, tuple(clique)))
    out.sort(key=lambda item: (item[0].center, item[1]))
    return out


def _upright(rep: EpgRepresentation, clique: tuple[int, ...]) -> tuple[int, EpgRepresentation, ClawClique]:
    """A grid symmetry putting the claw base on a row with the stem pointing up."""
    for sym in range(8):
        img = rep.transform(sym)
        claw = find_claw(img, clique)
        if claw is not None and claw.base_horizontal and claw.stem.a == claw.center:
            return sym, img, claw
    raise AssertionError("no symmetry puts the claw upright")


def _straighten_once(rep: EpgRepresentation, clique: tuple[int, ...]) -> EpgRepresentation:
    sym, img, claw = _upright(rep, clique)
    c = claw.center
    members = set(clique)
    left, right, stem = claw.base[0], claw.base[1], claw.stem
    outside = [v for v in range(img.n) if v not in members]
    for e in (left, right, stem):
        for x in outside:
            if e in img.paths[x].edges:
                raise _claw_edge_witness(img, clique, x)
    paths = list(img.paths)
    arm_edges = {}
    lefts, rights = [], []
    for v in clique:
        p = paths[v]
        if stem not in p.edges:
            continue
        arm = {e for e in p.edges if not e.horizontal and e.a.x == c.x and e.a.y >= c.y}
        arm_edges[v] = arm
        (lefts if left in p.edges else rights).append(v)
    blocked = {}
    for v, arm in arm_edges.items():
        hits = [x for x in outside if arm & img.paths[x].edges]
        if hits:
            blocked[v] = hits
            continue
        p = paths[v]
        far = p.start if p.start.y == c.y else p.end
        if v in lefts:
            paths[v] = GridPath.make(far, (c.x + 1, c.y))
        else:
            paths[v] = GridPath.make((c.x - 1, c.y), far)
    if any(v in blocked for v in lefts) and any(v in blocked for v in rights):
        shortest = min(blocked, key=lambda v: (len(arm_edges[v]), v))
        t = blocked[shortest][0]
        other = rights if shortest in lefts else lefts
        partner = min(
            (v for v in other if v in blocked and arm_edges[v] & img.paths[t].edges),
            key=lambda v: v,
        )
        nt = {v for v in clique if img.paths[v].edges & img.paths[t].edges}
        base_members = [v for v in clique if v not in arm_edges and v not in nt]
        rest = [v for v in clique if v not in nt]
        w = (base_members or rest)[0]
        pair = sorted((shortest, partner))
        raise DiamondWitness((pair[0], pair[1], w, t))
    fixed = EpgRepresentation(img.width, img.height, tuple(paths))
    return fixed.transform(_inverse_symmetry(sym))


def _claw_edge_witness(rep: EpgRepresentation, clique: tuple[int, ...], x: int) -> DiamondWitness:
    # x holds a claw edge, so it meets two members of different shapes but misses some other member
    masks = rep.edge_masks
    near = [v for v in clique if masks[v] & masks[x]]
    far = [v for v in clique if not masks[v] & masks[x]]
    return DiamondWitness((near[0], near[1], far[0], x))


def hellify(rep: EpgRepresentation) -> EpgRepresentation:
    """Straighten claw-cliques until every maximal clique is an edge-clique.

    The intersection graph never changes.  Raises :class:`DiamondWitness`
    when an outside path blocks the straightening, which only happens if the
    graph contains a diamond.
    """
    target = intersection_graph(rep)
    while True:
        cliques = _claw_cliques(rep)
        if not cliques:
            return rep
        rep = _straighten_once(rep, cliques[0][1])
        assert intersection_graph(rep) == target, "straightening changed the graph"


# --------------------------------------------------------------------------
# direct layouts
# --------------------------------------------------------------------------


class _Canvas:
    """Unbounded grid of polylines; inserting empty lines stretches whatever crosses them."""

    def __init__(self) -> None:
        self.paths: dict[int, list[list[int]]] = {}

    def insert(self, axis: int, at: int, count: int) -> None:
        for pts in self.paths.values():
            for p in pts:
                if p[axis] >= at:
                    p[axis] += count

    def _segments(self, v: int):
        pts = self.paths[v]
        for p, q in zip(pts, pts[1:]):
            axis = 0 if p[1] == q[1] else 1
            lo, hi = sorted((p[axis], q[axis]))
            yield axis, p[1 - axis], lo, hi

    def private_edge(self, v: int) -> tuple[int, int, int] | None:
        """(axis, line, pos): the unit edge from pos to pos+1 along a line, used by ``v`` alone."""
        others: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for u in self.paths:
            if u != v:
                for axis, line, lo, hi in self._segments(u):
                    others.setdefault((axis, line), []).append((lo, hi))
        best = None
        for axis, line, lo, hi in self._segments(v):
            covered = sorted(others.get((axis, line), []))
            pos = lo
            for a, b in covered:
                if a > pos and pos < hi:
                    break
                pos = max(pos, b)
            if pos < hi:
                best = (axis, line, pos)
        return best

    def open_space(self, v: int, room: int) -> tuple[int, int, int, int]:
        """Clear a ``room``-wide box around a private edge of ``v``.

        Returns ``(axis, line, pos, mid)``: local ``(u, w)`` maps to the point
        with coordinate ``pos + u`` along ``axis`` and ``mid + w`` across it,
        and ``v`` covers the local line ``w = 0`` for ``0 <= u <= room + 1``.
        """
        found = self.private_edge(v)
        if found is None:
            raise AssertionError(f"vertex {v} lost its private edge")
        axis, line, pos = found
        self.insert(axis, pos + 1, room)
        self.insert(1 - axis, line + 1, room)
        self.insert(1 - axis, line, room)
        return axis, line, pos, line + room

    def place(self, frame: tuple[int, int, int, int], v: int, local: Sequence[tuple[int, int]]) -> None:
        axis, _, pos, mid = frame
        pts = []
        for u, w in local:
            p = [0, 0]
            p[axis] = pos + u
            p[1 - axis] = mid + w
            pts.append(p)
        self.paths[v] = pts

    def representation(self, n: int) -> EpgRepresentation:
        """Drop coordinates no corner uses; edge overlaps survive order-preserving compression."""
        xs = sorted({p[0] for pts in self.paths.values() for p in pts})
        ys = sorted({p[1] for pts in self.paths.values() for p in pts})
        cx = {x: i for i, x in enumerate(xs)}
        cy = {y: i for i, y in enumerate(ys)}
        paths = []
        for v in range(n):
            pts = [(cx[p[0]], cy[p[1]]) for p in self.paths[v]]
            paths.append(GridPath.make(pts[0], pts[-1], pts[1] if len(pts) == 3 else None))
        return EpgRepresentation(max(2, len(xs)), max(2, len(ys)), tuple(paths))


def _clique_gadget(members: Sequence[int]) -> tuple[int, dict[int, list[tuple[int, int]]]]:
    # everyone shares the line edge [1, 2]; distinct up-arms keep a private edge each
    return len(members) + 2, {m: [(1, 0), (2 + i, 0), (2 + i, 1)] for i, m in enumerate(members)}


def _cycle_gadget(ring: Sequence[int]) -> tuple[int, dict[int, list[tuple[int, int]]]]:
    """Paths for the cycle ``parent, ring[0], ..., ring[-1]`` hanging off the parent's line."""
    k = len(ring) + 1
    if k == 4:
        w1, w2, w3 = ring
        return 3, {
            w1: [(1, 0), (2, 0), (2, 2)],
            w2: [(2, -1), (2, 1), (3, 1)],
            w3: [(2, -2), (2, 0), (3, 0)],
        }
    a2 = 2 * k - 3
    out = {ring[0]: [(1, 0), (2, 0), (2, 2)], ring[1]: [(2, 1), (2, 3), (5, 3)]}
    for j in range(3, k - 2):
        out[ring[j - 1]] = [(2 * j - 2, 3), (2 * j + 1, 3)]
    out[ring[k - 3]] = [(2 * k - 6, 3), (a2, 3), (a2, 5)]
    out[ring[k - 2]] = [(a2 - 1, 0), (a2, 0), (a2, 4)]
    return a2 + 1, out


def _cycle_order(g: Graph, block: Sequence[int], start: int) -> list[int]:
    inside = set(block)
    ring = [start]
    prev = -1
    cur = start
    while True:
        nxt = min(u for u in g.neighbors(cur) if u in inside and u != prev and (u != start or len(ring) == len(block)))
        if nxt == start:
            return ring[1:]
        ring.append(nxt)
        prev, cur = cur, nxt


def _layout(g: Graph, blocks: list[tuple[int, ...]], gadget) -> EpgRepresentation:
    canvas = _Canvas()
    placed = [False] * len(blocks)
    by_vertex: dict[int, list[int]] = {}
    for i, b in enumerate(blocks):
        for v in b:
            by_vertex.setdefault(v, []).append(i)
    offset = 0
    for comp in connected_components(g):
        root = comp[0]
        canvas.paths[root] = [[offset, 0], [offset + 1, 0]]
        queue = deque([root])
        while queue:
            c = queue.popleft()
            for i in by_vertex.get(c, []):
                if placed[i]:
                    continue
                placed[i] = True
                width, local = gadget(g, blocks[i], c)
                frame = canvas.open_space(c, max(width + 2, 6))
                for v in sorted(local):
                    canvas.place(frame, v, local[v])
                    queue.append(v)
        offset = 1 + max(p[0] for pts in canvas.paths.values() for p in pts)
    return canvas.representation(g.n)


def construct_block(g: Graph) -> EpgRepresentation:
    """Helly-B1 representation of a block graph: every block becomes an edge-clique."""
    if g.n == 0:
        raise NotBlockGraph("empty graph")
    blocks = biconnected_components(g).block_vertices()
    for b in blocks:
        if not g.is_clique(b):
            raise NotBlockGraph(f"block {list(b)} is not a clique")

    def gadget(g: Graph, block: tuple[int, ...], c: int):
        return _clique_gadget([v for v in block if v != c])

    rep = _layout(g, blocks, gadget)
    assert intersection_graph(rep) == g and is_helly(rep)
    return rep


def construct_cactus(g: Graph) -> EpgRepresentation:
    """Monotone Helly-B1 representation of a cactus."""
    if g.n == 0 or not is_connected(g):
        raise NotCactus("a cactus is connected and non-empty")
    blocks = biconnected_components(g).block_vertices()
    for b in blocks:
        edges = sum(1 for i, u in enumerate(b) for v in b[i + 1 :] if g.has_edge(u, v))
        if len(b) > 2 and (edges != len(b) or any(sum(g.has_edge(u, v) for v in b) != 2 for u in b)):
            raise NotCactus(f"block {list(b)} is neither an edge nor a cycle")

    def gadget(g: Graph, block: tuple[int, ...], c: int):
        if len(block) <= 3:
            return _clique_gadget([v for v in block if v != c])
        return _cycle_gadget(_cycle_order(g, block, c))

    rep = _layout(g, blocks, gadget)
    assert intersection_graph(rep) == g and is_helly(rep)
    assert all(p.is_monotone() for p in rep.paths)
    return rep


__all__ = ["DiamondWitness", "hellify", "construct_block", "construct_cactus"]

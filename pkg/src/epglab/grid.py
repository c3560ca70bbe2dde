"""Single-bend paths on a rectangular grid and their edge-intersection models."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DegeneratePath, OutOfBounds, ParseError
from .graph import Graph, VertexSet, maximal_cliques


class GridPoint(NamedTuple):
    x: int
    y: int


class GridEdge(NamedTuple):
    """Unit grid edge, stored with the lexicographically smaller endpoint first."""

    a: GridPoint
    b: GridPoint

    @classmethod
    def of(cls, p: Sequence[int], q: Sequence[int]) -> "GridEdge":
        p, q = GridPoint(*p), GridPoint(*q)
        if abs(p.x - q.x) + abs(p.y - q.y) != 1:
            raise ValueError(f"{p} and {q} are not grid neighbours")
        return cls(p, q) if p < q else cls(q, p)

    @property
    def horizontal(self) -> bool:
        return self.a.y == self.b.y

    def __str__(self) -> str:
        return f"({self.a.x},{self.a.y})-({self.b.x},{self.b.y})"


def _segment_points(p: GridPoint, q: GridPoint) -> list[GridPoint]:
    if p.x == q.x:
        step = 1 if q.y >= p.y else -1
        return [GridPoint(p.x, y) for y in range(p.y, q.y + step, step)]
    step = 1 if q.x >= p.x else -1
    return [GridPoint(x, p.y) for x in range(p.x, q.x + step, step)]


@dataclass(frozen=True)
class GridPath:
    """A grid path with at most one bend.

    ``start`` is the lexicographically smaller endpoint; ``bend`` is ``None``
    for straight paths.  Use :meth:`make` to build from arbitrary input.
    """

    start: GridPoint
    end: GridPoint
    bend: GridPoint | None = None

    @classmethod
    def make(cls, p: Sequence[int], q: Sequence[int], bend: Sequence[int] | None = None) -> "GridPath":
        p, q = GridPoint(*p), GridPoint(*q)
        b = GridPoint(*bend) if bend is not None else None
        if b is not None and (b == p or b == q):
            b = None
        if b is not None:
            if (b.x == p.x == q.x) or (b.y == p.y == q.y):
                # collinear bend: straight only if it lies between the endpoints
                lo, hi = min(p, q), max(p, q)
                if not lo <= b <= hi:
                    raise DegeneratePath(f"path {p}-{b}-{q} folds back on itself")
                b = None
            elif not ((b.y == p.y and b.x == q.x) or (b.x == p.x and b.y == q.y)):
                raise ParseError(f"{p}-{b}-{q} is not an axis-parallel one-bend path")
        if b is None and p.x != q.x and p.y != q.y:
            raise ParseError(f"{p}-{q} is not axis-parallel; give a bend point")
        if p == q:
            raise DegeneratePath(f"zero-length path at {p}")
        if q < p:
            p, q = q, p
        return cls(p, q, b)

    @property
    def straight(self) -> bool:
        return self.bend is None

    @cached_property
    def points(self) -> tuple[GridPoint, ...]:
        """Points in traversal order from ``start``."""
        if self.bend is None:
            return tuple(_segment_points(self.start, self.end))
        first = _segment_points(self.start, self.bend)
        second = _segment_points(self.bend, self.end)
        return tuple(first + second[1:])

    @cached_property
    def ordered_edges(self) -> tuple[GridEdge, ...]:
        pts = self.points
        return tuple(GridEdge.of(p, q) for p, q in zip(pts, pts[1:]))

    @cached_property
    def edges(self) -> frozenset[GridEdge]:
        return frozenset(self.ordered_edges)

    @cached_property
    def point_set(self) -> frozenset[GridPoint]:
        return frozenset(self.points)

    def corners(self) -> tuple[GridPoint, ...]:
        return (self.start, self.end) if self.bend is None else (self.start, self.bend, self.end)

    def is_monotone(self) -> bool:
        """Ascending in both rows and columns when walked from ``start``."""
        return self.end.y >= self.start.y

    def translate(self, dx: int, dy: int) -> "GridPath":
        mv = lambda p: GridPoint(p.x + dx, p.y + dy)  # noqa: E731
        return GridPath.make(mv(self.start), mv(self.end), mv(self.bend) if self.bend else None)

    def __str__(self) -> str:
        return "-".join(f"({p.x},{p.y})" for p in self.corners())


def edges_in_order(path: GridPath) -> list[GridEdge]:
    """Unit edges in traversal order from the lexicographically smaller endpoint."""
    return list(path.ordered_edges)


# --------------------------------------------------------------------------
# representations
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EpgRepresentation:
    """Vertex ``v`` is represented by ``paths[v]`` on a ``width x height`` point grid."""

    width: int
    height: int
    paths: tuple[GridPath, ...]

    def __post_init__(self) -> None:
        for v, p in enumerate(self.paths):
            for q in p.corners():
                if not (0 <= q.x < self.width and 0 <= q.y < self.height):
                    raise OutOfBounds(f"path of vertex {v} leaves the {self.width}x{self.height} grid at {q}")

    @property
    def n(self) -> int:
        return len(self.paths)

    def edge_index(self, e: GridEdge) -> int:
        w, h = self.width, self.height
        if e.horizontal:
            return e.a.y * (w - 1) + e.a.x
        return h * (w - 1) + e.a.x * (h - 1) + e.a.y

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << self.edge_index(e) for e in p.edges) for p in self.paths)

    def common_edges(self, vertices: Iterable[int]) -> frozenset[GridEdge]:
        vs = list(vertices)
        if not vs:
            return frozenset()
        out = self.paths[vs[0]].edges
        for v in vs[1:]:
            out = out & self.paths[v].edges
        return out

    def translate(self, dx: int, dy: int, width: int | None = None, height: int | None = None) -> "EpgRepresentation":
        return EpgRepresentation(
            self.width + dx if width is None else width,
            self.height + dy if height is None else height,
            tuple(p.translate(dx, dy) for p in self.paths),
        )

    def transform(self, sym: int) -> "EpgRepresentation":
        """Apply one of the 8 grid symmetries (0 is the identity)."""
        w, h = self.width, self.height
        f = lambda p: _apply_symmetry(sym, p, w, h)  # noqa: E731
        nw, nh = (h, w) if sym >= 4 else (w, h)
        paths = tuple(GridPath.make(f(p.start), f(p.end), f(p.bend) if p.bend else None) for p in self.paths)
        return EpgRepresentation(nw, nh, paths)


def _apply_symmetry(sym: int, p: GridPoint, w: int, h: int) -> GridPoint:
    x, y = p
    if sym & 4:  # transpose first
        x, y, w, h = y, x, h, w
    if sym & 1:
        x = w - 1 - x
    if sym & 2:
        y = h - 1 - y
    return GridPoint(x, y)


_PATH_RE = re.compile(r"^\s*(\d+)\s*:\s*(\(\s*\d+\s*,\s*\d+\s*\)(?:\s*-\s*\(\s*\d+\s*,\s*\d+\s*\)){1,2})\s*$")
_POINT_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_representation(text: str) -> EpgRepresentation:
    """Parse ``grid W H`` followed by ``v : (x,y)-(x,y)[-(x,y)]`` lines."""
    size: tuple[int, int] | None = None
    paths: dict[int, GridPath] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if size is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "grid" or not (parts[1].isdigit() and parts[2].isdigit()):
                raise ParseError(f"expected 'grid W H', got {raw!r}", lineno)
            size = (int(parts[1]), int(parts[2]))
            if min(size) < 2:
                raise ParseError("grid needs at least 2 points per side", lineno)
            continue
        m = _PATH_RE.match(line)
        if not m:
            raise ParseError(f"cannot parse path line {raw!r}", lineno)
        v = int(m.group(1))
        if v in paths:
            raise ParseError(f"vertex {v} given twice", lineno)
        pts = [(int(a), int(b)) for a, b in _POINT_RE.findall(m.group(2))]
        try:
            path = GridPath.make(pts[0], pts[-1], pts[1] if len(pts) == 3 else None)
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
        except DegeneratePath as exc:
            raise DegeneratePath(f"line {lineno}: {exc}") from None
        for q in path.corners():
            if not (0 <= q.x < size[0] and 0 <= q.y < size[1]):
                raise OutOfBounds(f"line {lineno}: point {tuple(q)} outside the {size[0]}x{size[1]} grid")
        paths[v] = path
    if size is None:
        raise ParseError("missing 'grid W H' header", 1)
    if sorted(paths) != list(range(len(paths))):
        raise ParseError(f"vertex ids must be 0..{len(paths) - 1}")
    return EpgRepresentation(size[0], size[1], tuple(paths[v] for v in range(len(paths))))


def format_representation(rep: EpgRepresentation) -> str:
    lines = [f"grid {rep.width} {rep.height}"]
    lines += [f"{v} : {p}" for v, p in enumerate(rep.paths)]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# intersection graph, cliques, pies, Helly
# --------------------------------------------------------------------------


def intersection_graph(rep: EpgRepresentation) -> Graph:
    masks = rep.edge_masks
    rows = []
    for v, mv in enumerate(masks):
        row = 0
        for u, mu in enumerate(masks):
            if u != v and mv & mu:
                row |= 1 << u
        rows.append(row)
    return Graph(rep.n, tuple(rows))


@dataclass(frozen=True)
class EdgeClique:
    edge: GridEdge
    kind = "edge"


@dataclass(frozen=True)
class ClawClique:
    center: GridPoint
    base_horizontal: bool
    base: tuple[GridEdge, GridEdge]
    stem: GridEdge
    kind = "claw"


@dataclass(frozen=True)
class NotClique:
    kind = "not-clique"


@dataclass(frozen=True)
class Neither:
    kind = "neither"


CliqueClass = EdgeClique | ClawClique | NotClique | Neither


def star_edges(p: GridPoint, width: int, height: int) -> dict[str, GridEdge]:
    """The grid edges at ``p`` keyed by direction (L, R, D, U)."""
    out = {}
    if p.x > 0:
        out["L"] = GridEdge.of((p.x - 1, p.y), p)
    if p.x < width - 1:
        out["R"] = GridEdge.of(p, (p.x + 1, p.y))
    if p.y > 0:
        out["D"] = GridEdge.of((p.x, p.y - 1), p)
    if p.y < height - 1:
        out["U"] = GridEdge.of(p, (p.x, p.y + 1))
    return out


def find_claw(rep: EpgRepresentation, vertices: Sequence[int]) -> ClawClique | None:
    """The claw on which every given path holds exactly two of its three edges."""
    if len(vertices) < 2:
        return None
    shared = frozenset.intersection(*(rep.paths[v].point_set for v in vertices))
    for q in sorted(shared):
        star = star_edges(q, rep.width, rep.height)
        if len(star) < 3:
            continue
        for omit in ("D", "U", "L", "R"):
            claw = {k: e for k, e in star.items() if k != omit}
            if len(claw) != 3:
                continue
            edges = set(claw.values())
            if all(len(rep.paths[v].edges & edges) == 2 for v in vertices):
                base_h = omit in ("D", "U")
                base = (claw["L"], claw["R"]) if base_h else (claw["D"], claw["U"])
                stem = next(e for k, e in claw.items() if k in (("U", "D") if base_h else ("L", "R")))
                return ClawClique(q, base_h, base, stem)
    return None


def classify_clique(rep: EpgRepresentation, vertices: Iterable[int]) -> CliqueClass:
    vs = sorted(set(vertices))
    masks = rep.edge_masks
    for i, u in enumerate(vs):
        for v in vs[i + 1 :]:
            if not masks[u] & masks[v]:
                return NotClique()
    common = rep.common_edges(vs)
    if common:
        return EdgeClique(min(common))
    claw = find_claw(rep, vs)
    return claw if claw is not None else Neither()


@dataclass(frozen=True)
class Pie:
    center: GridPoint
    vertices: tuple[int, int, int, int]
    kind: str  # "true" or "false"


_TRUE_PIE = frozenset({"DL", "DR", "LU", "RU"})
_FALSE_PIES = (frozenset({"LR", "DU", "LU", "DR"}), frozenset({"LR", "DU", "DL", "RU"}))


def _star_pair(path: GridPath, star: dict[str, GridEdge]) -> str | None:
    keys = "".join(sorted(k for k, e in star.items() if e in path.edges))
    return keys if len(keys) == 2 else None


def find_pies(rep: EpgRepresentation) -> list[Pie]:
    """Every true and false pie, scanning interior grid points in (x, y) order."""
    pies = []
    for x in range(1, rep.width - 1):
        for y in range(1, rep.height - 1):
            center = GridPoint(x, y)
            star = star_edges(center, rep.width, rep.height)
            by_pair: dict[str, list[int]] = {}
            for v, p in enumerate(rep.paths):
                if center in p.point_set:
                    pair = _star_pair(p, star)
                    if pair:
                        by_pair.setdefault(pair, []).append(v)
            for kind, patterns in (("true", (_TRUE_PIE,)), ("false", _FALSE_PIES)):
                for pattern in patterns:
                    if not all(k in by_pair for k in pattern):
                        continue
                    for combo in itertools.product(*(by_pair[k] for k in sorted(pattern))):
                        pies.append(Pie(center, tuple(sorted(combo)), kind))
    return pies


@dataclass(frozen=True)
class HellyResult:
    helly: bool
    witness: VertexSet | None = None

    def __bool__(self) -> bool:
        return self.helly


def is_helly(rep: EpgRepresentation) -> HellyResult:
    """Helly check through maximal cliques.

    Pairwise edge-intersecting subfamilies are exactly the cliques of the
    intersection graph, and a common edge of a maximal clique is common to
    every subfamily inside it, so it suffices that every maximal clique is an
    edge-clique.
    """
    g = intersection_graph(rep)
    masks = rep.edge_masks
    for clique in maximal_cliques(g):
        common = -1
        for v in clique:
            common &= masks[v]
        if not common:
            return HellyResult(False, clique)
    return HellyResult(True)


def is_helly_bruteforce(rep: EpgRepresentation) -> bool:
    """Definition check over every pairwise-intersecting subfamily (small n only)."""
    masks = rep.edge_masks
    n = rep.n
    for r in range(2, n + 1):
        for family in itertools.combinations(range(n), r):
            if all(masks[u] & masks[v] for u, v in itertools.combinations(family, 2)):
                common = -1
                for v in family:
                    common &= masks[v]
                if not common:
                    return False
    return True


# --------------------------------------------------------------------------
# candidate path tables for the search kernels
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PathTable:
    """Every straight or one-bend path of a ``width x height`` grid.

    ``coords[i]`` is ``(sx, sy, ex, ey, bx, by)`` for path i (bend ``-1, -1``
    when straight), rows sorted lexicographically.  ``masks[i]`` is its edge
    bitmask split into 64-bit words; ``symmetry[s, i]`` is the index of the
    image of path i under grid symmetry ``s`` (only square grids get the four
    transposing symmetries).
    """

    width: int
    height: int
    coords: np.ndarray
    masks: np.ndarray
    symmetry: np.ndarray

    @property
    def size(self) -> int:
        return self.coords.shape[0]

    def path(self, i: int) -> GridPath:
        sx, sy, ex, ey, bx, by = (int(c) for c in self.coords[i])
        return GridPath(GridPoint(sx, sy), GridPoint(ex, ey), GridPoint(bx, by) if bx >= 0 else None)

    @property
    def paths(self) -> tuple[GridPath, ...]:
        return tuple(self.path(i) for i in range(self.size))

    def canonical_first(self) -> np.ndarray:
        """Indices that are the smallest member of their symmetry orbit."""
        return np.flatnonzero(self.symmetry.min(axis=0) == np.arange(self.size)).astype(np.int32)

    def representation(self, assignment: Sequence[int]) -> EpgRepresentation:
        return EpgRepresentation(self.width, self.height, tuple(self.path(i) for i in assignment))

    def index(self, path: GridPath) -> int:
        b = path.bend or GridPoint(-1, -1)
        row = np.array([[path.start.x, path.start.y, path.end.x, path.end.y, b.x, b.y]])
        key = _path_keys(row, self.width, self.height)[0]
        i = int(np.searchsorted(self._keys, key))
        if i >= self.size or self._keys[i] != key:
            raise KeyError(str(path))
        return i

    @cached_property
    def _keys(self) -> np.ndarray:
        return _path_keys(self.coords, self.width, self.height)


def _path_keys(coords: np.ndarray, w: int, h: int) -> np.ndarray:
    """Mixed-radix key preserving the lexicographic order of coordinate rows."""
    c = coords.astype(np.int64)
    key = c[:, 0]
    for col, radix in ((1, h), (2, w), (3, h), (4, w + 1), (5, h + 1)):
        key = key * radix + c[:, col] + (1 if col >= 4 else 0)
    return key


def _canonical_rows(p: np.ndarray, q: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Rows (start, end, bend) with the lexicographically smaller endpoint first."""
    swap = (q[:, 0] < p[:, 0]) | ((q[:, 0] == p[:, 0]) & (q[:, 1] < p[:, 1]))
    start = np.where(swap[:, None], q, p)
    end = np.where(swap[:, None], p, q)
    return np.concatenate([start, end, b], axis=1)


def _all_path_coords(width: int, height: int) -> np.ndarray:
    rows = []
    xs, ys = np.arange(width), np.arange(height)
    # horizontal and vertical straight segments
    y, x1, x2 = np.meshgrid(ys, xs, xs, indexing="ij")
    keep = x1 < x2
    y, x1, x2 = y[keep], x1[keep], x2[keep]
    none = -np.ones((y.size, 2), np.int64)
    rows.append(np.column_stack([x1, y, x2, y, none]))
    x, y1, y2 = np.meshgrid(xs, ys, ys, indexing="ij")
    keep = y1 < y2
    x, y1, y2 = x[keep], y1[keep], y2[keep]
    none = -np.ones((x.size, 2), np.int64)
    rows.append(np.column_stack([x, y1, x, y2, none]))
    # one bend at (bx, by): horizontal arm to hx, vertical arm to vy
    bx, by, hx, vy = np.meshgrid(xs, ys, xs, ys, indexing="ij")
    keep = (hx != bx) & (vy != by)
    bx, by, hx, vy = bx[keep], by[keep], hx[keep], vy[keep]
    rows.append(_canonical_rows(np.column_stack([hx, by]), np.column_stack([bx, vy]), np.column_stack([bx, by])))
    coords = np.concatenate(rows).astype(np.int64)
    order = np.argsort(_path_keys(coords, width, height), kind="stable")
    return coords[order]


def _range_bits(lo: np.ndarray, hi: np.ndarray, words: int) -> np.ndarray:
    """Bitmask words with bits ``lo <= k < hi`` set, one row per range."""
    out = np.zeros((lo.size, words), np.uint64)
    for w in range(words):
        a = np.clip(lo - 64 * w, 0, 64)
        b = np.clip(hi - 64 * w, 0, 64)
        width = (b - a).astype(np.uint64)
        full = width == 64
        body = np.where(full, np.uint64(0), (np.uint64(1) << np.where(full, 0, width).astype(np.uint64)) - np.uint64(1))
        body = np.where(full, ~np.uint64(0), body)
        out[:, w] = np.where(b > a, body << a.astype(np.uint64), np.uint64(0))
    return out


def _path_masks(coords: np.ndarray, width: int, height: int) -> np.ndarray:
    n_edges = height * (width - 1) + width * (height - 1)
    words = (n_edges + 63) // 64
    sx, sy, ex, ey, bx, by = coords.T
    straight = bx < 0
    # split every path into its horizontal run (row hy, x in [h0, h1)) and
    # vertical run (column vx, y in [v0, v1)); empty runs have h0 == h1
    hy = np.where(straight, sy, by)
    hx_a = np.where(straight, sx, np.where(sy == by, sx, ex))
    hx_b = np.where(straight, np.where(sy == ey, ex, sx), bx)
    h0, h1 = np.minimum(hx_a, hx_b), np.maximum(hx_a, hx_b)
    vx = np.where(straight, sx, bx)
    vy_a = np.where(straight, np.where(sx == ex, sy, sy), np.where(sx == bx, sy, ey))
    vy_b = np.where(straight, np.where(sx == ex, ey, sy), by)
    v0, v1 = np.minimum(vy_a, vy_b), np.maximum(vy_a, vy_b)
    hbase = hy * (width - 1)
    vbase = height * (width - 1) + vx * (height - 1)
    return _range_bits(hbase + h0, hbase + h1, words) | _range_bits(vbase + v0, vbase + v1, words)


@lru_cache(maxsize=16)
def path_table(width: int, height: int) -> PathTable:
    if width < 2 or height < 2:
        raise ValueError("grid needs at least 2 points per side")
    coords = _all_path_coords(width, height)
    masks = _path_masks(coords, width, height)
    keys = _path_keys(coords, width, height)
    syms = range(8) if width == height else range(4)
    symmetry = np.empty((len(syms), coords.shape[0]), dtype=np.int32)
    for s in syms:
        pts = [coords[:, 2 * i : 2 * i + 2].copy() for i in range(3)]
        for i, pt in enumerate(pts):
            x, y = pt[:, 0].copy(), pt[:, 1].copy()
            if s & 4:
                x, y = y, x
            if s & 1:
                x = width - 1 - x
            if s & 2:
                y = height - 1 - y
            if i == 2:
                x = np.where(coords[:, 4] < 0, -1, x)
                y = np.where(coords[:, 4] < 0, -1, y)
            pts[i] = np.column_stack([x, y])
        img = _canonical_rows(pts[0], pts[1], pts[2])
        symmetry[s] = np.searchsorted(keys, _path_keys(img, width, height))
    table = PathTable(width, height, coords, masks, symmetry)
    return table

"""Named graph families, class recognizers, the class-diagram region map and the catalog."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from .errors import BadParameter, ParseError, RangeError
from .graph import (
    Graph,
    bits,
    biconnected_components,
    induced_subgraph_search,
    is_bipartite,
    is_chordal,
    is_connected,
    parse_graph,
)

# --------------------------------------------------------------------------
# families
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple[int, ...] = ()


def _cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def _sun(k: int) -> Graph:
    # x_1..x_k are 0..k-1, y_1..y_k are k..2k-1
    edges = [(i, k + i) for i in range(k)] + [(i, k + (i - 1) % k) for i in range(k)]
    edges += [(k + i, k + j) for i in range(k) for j in range(i + 1, k)]
    labels = [f"x{i + 1}" for i in range(k)] + [f"y{i + 1}" for i in range(k)]
    return Graph.from_edges(2 * k, edges, labels)


def _wheel(n: int) -> Graph:
    rim = n - 1
    return Graph.from_edges(n, [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)])


# name -> (arity, minimum per parameter, builder, range text)
_FAMILIES = {
    "cycle": (1, (3,), _cycle, "n >= 3"),
    "complete": (1, (1,), _complete, "n >= 1"),
    "complete_bipartite": (
        2,
        (1, 1),
        lambda a, b: Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)]),
        "a >= 1, b >= 1",
    ),
    "wheel": (1, (4,), _wheel, "n >= 4 (rim of n - 1 plus hub)"),
    "sun": (1, (3,), _sun, "k >= 3"),
    "diamond": (0, (), lambda: Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]), "no parameters"),
    "bull": (0, (), lambda: Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)]), "no parameters"),
    "claw": (0, (), lambda: Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]), "no parameters"),
    "path": (1, (1,), lambda n: Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)]), "n >= 1"),
    "star": (1, (1,), lambda k: Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)]), "k >= 1 leaves"),
}

FAMILY_NAMES = tuple(_FAMILIES) + ("catalog:<name>",)


def generate(spec: FamilySpec, catalog: "Catalog | None" = None) -> Graph:
    if spec.name.startswith("catalog:"):
        cat = catalog if catalog is not None else default_catalog()
        name = spec.name.split(":", 1)[1]
        return cat.instance(name, *spec.params)
    if spec.name not in _FAMILIES:
        raise BadParameter(f"unknown family {spec.name!r}; known: {', '.join(FAMILY_NAMES)}")
    arity, lows, build, text = _FAMILIES[spec.name]
    if len(spec.params) != arity or any(p < lo for p, lo in zip(spec.params, lows)):
        raise BadParameter(f"{spec.name} takes {text}, got {list(spec.params)}")
    return build(*spec.params)


# --------------------------------------------------------------------------
# recognizers
# --------------------------------------------------------------------------


def is_block_graph(g: Graph) -> bool:
    return all(g.is_clique(b) for b in biconnected_components(g).block_vertices())


def is_cactus(g: Graph) -> bool:
    if g.n == 0 or not is_connected(g):
        return False
    for b in biconnected_components(g).block_vertices():
        if len(b) > 2:
            mask = sum(1 << v for v in b)
            if any((g.adj[v] & mask).bit_count() != 2 for v in b):
                return False
    return True


def _has_odd_hole(g: Graph) -> bool:
    for k in range(5, g.n + 1, 2):
        if induced_subgraph_search(g, _cycle(k)) is not None:
            return True
    return False


def is_line_of_bipartite(g: Graph) -> bool:
    """Claw-free, diamond-free and free of induced odd cycles of length at least 5."""
    for pattern in ("claw", "diamond"):
        if induced_subgraph_search(g, generate(FamilySpec(pattern))) is not None:
            return False
    return not _has_odd_hole(g)


YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class ClassMembership:
    """Membership vector; ``b1_epg``/``helly_b1_epg`` are yes/no/unknown with a note on the evidence."""

    bipartite: bool
    block: bool
    cactus: bool
    line_of_bipartite: bool
    diamond_free: bool
    chordal: bool
    s3_family_c4_free: bool
    b1_epg: str = UNKNOWN
    helly_b1_epg: str = UNKNOWN
    b1_evidence: str = ""
    helly_evidence: str = ""

    def report(self) -> list[str]:
        flag = lambda b: YES if b else NO  # noqa: E731
        lines = [
            f"BIPARTITE {flag(self.bipartite)}",
            f"BLOCK {flag(self.block)}",
            f"CACTUS {flag(self.cactus)}",
            f"LINE_OF_BIPARTITE {flag(self.line_of_bipartite)}",
            f"DIAMOND_FREE {flag(self.diamond_free)}",
            f"CHORDAL {flag(self.chordal)}",
            f"S3_FAMILY_C4_FREE {flag(self.s3_family_c4_free)}",
            f"B1_EPG {self.b1_epg}" + (f" {self.b1_evidence}" if self.b1_evidence else ""),
            f"HELLY_B1_EPG {self.helly_b1_epg}" + (f" {self.helly_evidence}" if self.helly_evidence else ""),
        ]
        return lines


def _outcome_note(outcome) -> tuple[str, str]:
    kind = getattr(outcome, "kind", None)
    if kind == "found":
        return YES, f"found on {outcome.rep.width}x{outcome.rep.height}"
    if kind == "exhausted":
        return NO, f"evidence: exhausted at {outcome.width}x{outcome.height}"
    return UNKNOWN, "budget exceeded" if kind == "budget" else ""


def classify(g: Graph, search=None, helly_search=None, certified_not_b1: bool = False, catalog=None) -> ClassMembership:
    """Class membership of ``g``.

    ``search``/``helly_search`` are optional search outcomes; without them the
    two EPG fields stay unknown unless a certificate or a theorem settles them.
    """
    cat = catalog if catalog is not None else default_catalog()
    diamond_free = induced_subgraph_search(g, generate(FamilySpec("diamond"))) is None
    obstruction_free = all(induced_subgraph_search(g, h) is None for _, h in cat.helly_patterns())
    b1, b1_note = _outcome_note(search) if search is not None else (UNKNOWN, "")
    helly, helly_note = _outcome_note(helly_search) if helly_search is not None else (UNKNOWN, "")
    if certified_not_b1:
        b1, b1_note = NO, "certified"
    if helly == YES and b1 != YES:
        b1, b1_note = YES, helly_note
    if b1 == NO and helly == UNKNOWN:
        helly, helly_note = NO, "not B1-EPG"
    if b1 == YES and helly == UNKNOWN and (diamond_free or obstruction_free):
        helly = YES
        helly_note = "B1-EPG and " + ("diamond-free" if diamond_free else "free of the S3 family and C4")
    return ClassMembership(
        bipartite=is_bipartite(g),
        block=is_block_graph(g),
        cactus=is_cactus(g),
        line_of_bipartite=is_line_of_bipartite(g),
        diamond_free=diamond_free,
        chordal=bool(is_chordal(g)),
        s3_family_c4_free=obstruction_free,
        b1_epg=b1,
        helly_b1_epg=helly,
        b1_evidence=b1_note,
        helly_evidence=helly_note,
    )


# --------------------------------------------------------------------------
# class-diagram regions
# --------------------------------------------------------------------------

# (bipartite, line_of_bipartite, cactus, block) -> region, for Helly-B1 graphs
_HELLY_REGIONS = {
    (False, True, False, False): 2,
    (False, False, False, False): 3,
    (False, True, False, True): 4,
    (False, True, True, True): 5,
    (False, True, True, False): 6,
    (True, True, False, False): 7,
    (True, True, True, False): 8,
    (True, True, True, True): 9,
    (True, False, True, True): 10,
    (True, False, True, False): 11,
    (True, False, False, False): 12,
    (False, False, False, True): 14,
    (False, False, True, True): 15,
    (False, False, True, False): 16,
}

EMPTY_REGIONS = frozenset({6})


class Ambiguous(Exception):
    """The evidence fits several regions; ``candidates`` lists them."""

    def __init__(self, candidates: Iterable[int | str]):
        self.candidates = tuple(candidates)
        super().__init__("ambiguous region: " + " ".join(map(str, self.candidates)))


def _region(m: ClassMembership, b1: bool, helly: bool) -> int | str:
    base = (m.bipartite, m.line_of_bipartite, m.cactus, m.block)
    if not b1:
        return 13 if m.bipartite else 17
    if not helly:
        return "outside" if any(base) else 1
    return _HELLY_REGIONS.get(base, "outside")


def venn_region(g: Graph, evidence: ClassMembership) -> int | str:
    """Region number of the class diagram, or ``"outside"``; raises :class:`Ambiguous`."""
    m = evidence
    helly_by_class = m.block or m.cactus or m.line_of_bipartite
    options = []
    for b1 in (True, False):
        for helly in (True, False):
            if helly and not b1:
                continue
            if m.b1_epg != UNKNOWN and b1 != (m.b1_epg == YES):
                continue
            if m.helly_b1_epg != UNKNOWN and helly != (m.helly_b1_epg == YES):
                continue
            if helly_by_class and not helly:
                continue
            if b1 and not helly and (m.diamond_free or m.s3_family_c4_free):
                continue
            options.append((b1, helly))
    regions = sorted({_region(m, b1, h) for b1, h in options}, key=str)
    if len(regions) != 1:
        raise Ambiguous(regions)
    region = regions[0]
    if region in EMPTY_REGIONS:
        raise AssertionError("the cactus, line-of-bipartite, non-bipartite region has no members")
    return region


# --------------------------------------------------------------------------
# canonical forms and exhaustive generation
# --------------------------------------------------------------------------


def _refine(g: Graph, cells: list[int]) -> list[int]:
    """Equitable refinement of an ordered partition (cells are vertex masks)."""
    changed = True
    while changed:
        changed = False
        out = []
        for cell in cells:
            if cell & (cell - 1) == 0:
                out.append(cell)
                continue
            keys: dict[tuple[int, ...], int] = {}
            for v in bits(cell):
                key = tuple((g.adj[v] & c).bit_count() for c in cells)
                keys[key] = keys.get(key, 0) | 1 << v
            if len(keys) > 1:
                changed = True
            out.extend(keys[k] for k in sorted(keys))
        cells = out
    return cells


def canonical_form(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Isomorphism invariant that separates non-isomorphic graphs (desk scale).

    Search over individualisations of a refined partition; the certificate is
    the least adjacency code over all discrete leaves.
    """
    if g.n == 0:
        return (0, ())
    best: tuple[int, ...] | None = None

    def leaf_code(order: list[int]) -> tuple[int, ...]:
        pos = {v: i for i, v in enumerate(order)}
        return tuple(sum(1 << pos[u] for u in bits(g.adj[v])) for v in order)

    def search(cells: list[int]) -> None:
        nonlocal best
        cells = _refine(g, cells)
        if all(c & (c - 1) == 0 for c in cells):
            code = leaf_code([c.bit_length() - 1 for c in cells])
            if best is None or code < best:
                best = code
            return
        i = next(i for i, c in enumerate(cells) if c & (c - 1))
        for v in bits(cells[i]):
            search(cells[:i] + [1 << v, cells[i] & ~(1 << v)] + cells[i + 1 :])

    search([g.full_mask])
    return (g.n, best)


def connected_graphs(n: int) -> Iterator[Graph]:
    """All connected graphs on ``n`` vertices up to isomorphism.

    Every connected graph has a vertex whose removal keeps it connected, so
    the order-``n`` list comes from the order-``n - 1`` list by adding one
    vertex with a non-empty neighbourhood and discarding isomorphic copies.
    """
    yield from _connected_layer(n)


@lru_cache(maxsize=None)
def _connected_layer(n: int) -> tuple[Graph, ...]:
    if n <= 0:
        return ()
    if n == 1:
        return (Graph.empty(1),)
    seen: dict[tuple, Graph] = {}
    for h in _connected_layer(n - 1):
        for nb in range(1, 1 << (n - 1)):
            g = h.add_vertex(bits(nb))
            key = canonical_form(g)
            if key not in seen:
                seen[key] = g
    return tuple(seen.values())


# --------------------------------------------------------------------------
# catalog of named graphs
# --------------------------------------------------------------------------

# caption ranges for the parameterized forbidden families
_RANGES = {
    "F5": ("n>=7", lambda n: n >= 7),
    "F10": ("n>=8", lambda n: n >= 8),
    "F11": ("n=4k,k>=2", lambda n: n % 4 == 0 and n >= 8),
    "F12": ("n=4k,k>=2", lambda n: n % 4 == 0 and n >= 8),
    "F13": ("n=4k+1,k>=2", lambda n: n % 4 == 1 and n >= 9),
    "F14": ("n=4k+1,k>=2", lambda n: n % 4 == 1 and n >= 9),
    "F15": ("n=4k+2,k>=2", lambda n: n % 4 == 2 and n >= 10),
    "F16": ("n=4k+3,k>=2", lambda n: n % 4 == 3 and n >= 11),
}

_RULE_RE = re.compile(r"^n\s*(?:>=\s*(\d+)|=\s*(\d+)k(?:\s*\+\s*(\d+))?\s*,\s*k\s*>=\s*(\d+))$")
_NAME_RE = re.compile(r"^([A-Za-z0-9_']+)(?:\((\d+)\))?$")

HELLY_PATTERNS = ("S3", "S3'", "S3''", "C4")


def parse_rule(text: str):
    """``n>=a`` or ``n=mk+r,k>=b`` as a predicate on n."""
    m = _RULE_RE.match(text.replace(" ", ""))
    if not m:
        raise ParseError(f"unknown parameter rule {text!r}")
    if m.group(1):
        lo = int(m.group(1))
        return lambda n: n >= lo
    mod, rem, kmin = int(m.group(2)), int(m.group(3) or 0), int(m.group(4))
    return lambda n: n % mod == rem and (n - rem) // mod >= kmin


@dataclass
class Catalog:
    """Named graphs; a family ``F(n)`` is stored as its instances plus a range rule."""

    entries: list[tuple[str, Graph]] = field(default_factory=list)
    rules: dict[str, tuple[str, object]] = field(default_factory=lambda: dict(_RANGES))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def names(self) -> list[str]:
        return [name for name, _ in self.entries]

    def get(self, name: str) -> Graph | None:
        return next((g for n, g in self.entries if n == name), None)

    def check_param(self, family: str, n: int) -> None:
        if family in self.rules:
            text, ok = self.rules[family]
            if not ok(n):
                raise RangeError(f"{family}({n}) is outside the family range {text}")

    def instance(self, name: str, *params: int) -> Graph:
        if params:
            self.check_param(name, params[0])
            key = f"{name}({params[0]})"
        else:
            key = name
        g = self.get(key)
        if g is None:
            raise BadParameter(f"catalog has no entry {key!r}")
        return g

    def helly_patterns(self) -> list[tuple[str, Graph]]:
        return [(n, g) for n, g in self.entries if n in HELLY_PATTERNS]

    def forbidden(self) -> list[tuple[str, Graph]]:
        return [(n, g) for n, g in self.entries if n not in HELLY_PATTERNS]


def parse_catalog(text: str) -> Catalog:
    cat = Catalog()
    name: str | None = None
    start = 0
    body: list[str] = []

    def flush() -> None:
        if name is None:
            if any(line.split("#", 1)[0].strip() for line in body):
                raise ParseError("graph data before any '# name:' header", start)
            return
        m = _NAME_RE.match(name)
        if not m:
            raise ParseError(f"bad entry name {name!r}", start)
        if m.group(2) is not None:
            cat.check_param(m.group(1), int(m.group(2)))
        try:
            g = parse_graph("\n".join(body))
        except ParseError as exc:
            raise ParseError(exc.message, start + (exc.line or 1)) from None
        if m.group(2) is not None and g.n != int(m.group(2)):
            raise ParseError(f"{name} must have {m.group(2)} vertices, found {g.n}", start)
        cat.entries.append((name, g))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("# name:"):
            flush()
            name, start, body = stripped.split(":", 1)[1].strip(), lineno, []
            continue
        if stripped.startswith("# param:"):
            rule = stripped.split(":", 1)[1].strip()
            if name is None:
                raise ParseError("'# param:' needs a preceding '# name:'", lineno)
            family = _NAME_RE.match(name).group(1) if _NAME_RE.match(name) else name
            try:
                cat.rules[family] = (rule, parse_rule(rule))
            except ParseError as exc:
                raise ParseError(exc.message, lineno) from None
            body.append("")
            continue
        body.append(raw)
    flush()
    return cat


def load_catalog(path: str | Path, validate: bool = True) -> Catalog:
    """Read a catalog file; forbidden entries are checked against their designated certificate."""
    cat = parse_catalog(Path(path).read_text())
    if validate:
        from .certificates import validate_catalog

        validate_catalog(cat)
    return cat


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    text = resources.files("epglab").joinpath("data/catalog.txt").read_text()
    cat = parse_catalog(text)
    from .certificates import validate_catalog

    validate_catalog(cat)
    return cat


def default_catalog_path() -> Path:
    return Path(str(resources.files("epglab").joinpath("data/catalog.txt")))

"""Checkable reasons a graph is not B1-EPG, and obstructions to the Helly argument."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CatalogMissing, ParseError
from .graph import (
    AsteroidalTriple,
    Graph,
    branch_graph,
    chromatic_number,
    find_asteroidal_triple,
    induced_subgraph_search,
    iter_induced_embeddings,
    maximal_cliques,
    shortest_path,
    verify_asteroidal_triple,
    verify_embedding,
)

AT_NEIGHBORHOOD = "AT_NEIGHBORHOOD"
BRANCH_CHROMATIC = "BRANCH_CHROMATIC"
BRANCH_FORBIDDEN = "BRANCH_FORBIDDEN"
FORBIDDEN_INDUCED = "FORBIDDEN_INDUCED"
HELLY_OBSTRUCTION = "HELLY_OBSTRUCTION"


@dataclass(frozen=True)
class Certificate:
    """``embedding`` lists host vertex ids; its meaning depends on ``kind``.

    AT_NEIGHBORHOOD: (v, a, b, c) with a, b, c an asteroidal triple of G[N(v)].
    BRANCH_*: the clique followed by the branch-graph vertices involved.
    FORBIDDEN_INDUCED / HELLY_OBSTRUCTION: the image of each pattern vertex.
    """

    kind: str
    params: tuple[tuple[str, str], ...]
    embedding: tuple[int, ...]

    def param(self, key: str) -> str:
        return dict(self.params)[key]

    @property
    def proves_not_b1(self) -> bool:
        # branch violations are reported but do not prove anything: a claw-clique
        # of a representable 7-vertex graph can have an induced C4 branch graph
        return self.kind in (AT_NEIGHBORHOOD, FORBIDDEN_INDUCED)

    def line(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params)
        tag = "NOTE" if self.kind in (BRANCH_CHROMATIC, BRANCH_FORBIDDEN) else "CERT"
        return f"{tag} {self.kind} {params} EMBEDDING {' '.join(map(str, self.embedding))}"


def _ids(vs) -> str:
    return ",".join(map(str, vs))


def _cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def check_neighborhood_at(g: Graph) -> list[Certificate]:
    """Every vertex whose neighbourhood holds an asteroidal triple."""
    out = []
    for v in range(g.n):
        sub, ids = g.induced(g.neighbors(v))
        at = find_asteroidal_triple(sub)
        if at is not None:
            triple = tuple(ids[i] for i in at.vertices)
            out.append(Certificate(AT_NEIGHBORHOOD, (("vertex", str(v)),), (v, *triple)))
    return out


def branch_violations(g: Graph, clique) -> list[Certificate]:
    bg = branch_graph(g, clique)
    d = bg.derived
    out = []
    patterns = [("P6", _path(6))] + [(f"C{k}", _cycle(k)) for k in range(4, d.n + 1)]
    for name, pattern in patterns:
        image = induced_subgraph_search(d, pattern)
        if image is not None:
            emb = tuple(bg.ids[i] for i in image)
            out.append(
                Certificate(BRANCH_FORBIDDEN, (("clique", _ids(bg.clique)), ("pattern", name)), bg.clique + emb)
            )
    if d.n >= 4:
        chi = chromatic_number(d)
        if chi > 3:
            out.append(
                Certificate(
                    BRANCH_CHROMATIC,
                    (("clique", _ids(bg.clique)), ("chi", str(chi))),
                    bg.clique + bg.ids,
                )
            )
    return out


def check_branch_conditions(g: Graph) -> list[Certificate]:
    """Branch-graph violations over every maximal clique."""
    out = []
    for clique in maximal_cliques(g):
        out.extend(branch_violations(g, clique))
    return out


def _require(catalog) -> None:
    if catalog is None:
        raise CatalogMissing("a catalog is required; pass --catalog or load the packaged one")


def scan_forbidden(g: Graph, catalog) -> list[Certificate]:
    """Induced copies of catalog graphs known not to be B1-EPG."""
    _require(catalog)
    out = []
    for name, pattern in catalog.forbidden():
        if pattern.n > g.n:
            continue
        image = induced_subgraph_search(g, pattern)
        if image is not None:
            out.append(Certificate(FORBIDDEN_INDUCED, (("name", name),), image))
    return out


def helly_obstructions(g: Graph, catalog) -> list[Certificate]:
    """Induced S3, S3', S3'' and C4, one per vertex set."""
    _require(catalog)
    patterns = catalog.helly_patterns()
    missing = {"S3", "S3'", "S3''", "C4"} - {n for n, _ in patterns}
    if missing:
        raise CatalogMissing(f"catalog lacks {', '.join(sorted(missing))}")
    out = []
    for name, pattern in patterns:
        seen = set()
        for image in iter_induced_embeddings(g, pattern):
            key = frozenset(image)
            if key not in seen:
                seen.add(key)
                out.append(Certificate(HELLY_OBSTRUCTION, (("pattern", name),), image))
    return out


@dataclass(frozen=True)
class CertificationReport:
    certificates: tuple[Certificate, ...]

    @property
    def certified(self) -> bool:
        return any(c.proves_not_b1 for c in self.certificates)

    @property
    def verdict(self) -> str:
        if self.certified:
            return "not B1-EPG (certified)"
        if self.certificates:
            return "branch violations only (inconclusive)"
        return "no obstruction found (inconclusive)"

    @property
    def exit_code(self) -> int:
        return 10 if self.certified else 0

    def lines(self) -> list[str]:
        return [c.line() for c in self.certificates] + [f"VERDICT {self.verdict}"]


def certify_not_b1(g: Graph, catalog=None) -> CertificationReport:
    certs = check_neighborhood_at(g) + check_branch_conditions(g)
    if catalog is not None:
        certs += scan_forbidden(g, catalog)
    return CertificationReport(tuple(certs))


def verify_certificate(g: Graph, cert: Certificate, catalog=None) -> bool:
    """Re-check one certificate from scratch."""
    if cert.kind == AT_NEIGHBORHOOD:
        v, *triple = cert.embedding
        sub, ids = g.induced(g.neighbors(v))
        if not all(t in ids for t in triple):
            return False
        local = tuple(ids.index(t) for t in triple)
        paths = []
        for z, (s, t) in ((local[0], local[1:]), (local[1], (local[0], local[2])), (local[2], local[:2])):
            allowed = sub.full_mask & ~(sub.adj[z] | 1 << z)
            p = shortest_path(sub, s, t, allowed)
            if p is None:
                return False
            paths.append(tuple(p))
        return verify_asteroidal_triple(sub, AsteroidalTriple(local, tuple(paths)))
    if cert.kind in (BRANCH_FORBIDDEN, BRANCH_CHROMATIC):
        clique = tuple(int(x) for x in cert.param("clique").split(","))
        return any(c == cert for c in branch_violations(g, clique))
    if cert.kind in (FORBIDDEN_INDUCED, HELLY_OBSTRUCTION):
        name = cert.param("name" if cert.kind == FORBIDDEN_INDUCED else "pattern")
        pattern = catalog.get(name) if catalog is not None else None
        return pattern is not None and verify_embedding(g, pattern, cert.embedding)
    return False


# which check each forbidden entry must trip at load time
_DESIGNATED = {f"F{i}": "at" for i in range(1, 6)} | {f"F{i}": "branch" for i in range(11, 17)}


def validate_catalog(catalog) -> None:
    """Reject transcriptions that fail the check their non-membership proof relies on."""
    for name, g in catalog.entries:
        family = name.split("(", 1)[0]
        check = _DESIGNATED.get(family)
        if check == "at" and not check_neighborhood_at(g):
            raise ParseError(f"catalog entry {name}: no neighbourhood holds an asteroidal triple")
        if check == "branch" and not check_branch_conditions(g):
            raise ParseError(f"catalog entry {name}: no branch graph violation")


__all__ = [
    "Certificate",
    "CertificationReport",
    "check_neighborhood_at",
    "check_branch_conditions",
    "scan_forbidden",
    "helly_obstructions",
    "certify_not_b1",
    "verify_certificate",
    "validate_catalog",
]

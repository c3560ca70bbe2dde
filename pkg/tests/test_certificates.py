import itertools
import random

import pytest

from conftest import random_graph
from epglab.certificates import (
    AT_NEIGHBORHOOD,
    BRANCH_FORBIDDEN,
    Certificate,
    certify_not_b1,
    check_branch_conditions,
    check_neighborhood_at,
    helly_obstructions,
    scan_forbidden,
    verify_certificate,
)
from epglab.classes import FamilySpec, connected_graphs, default_catalog, generate, parse_catalog
from epglab.errors import CatalogMissing
from epglab.graph import induced_subgraph_search, parse_graph
from epglab.grid import intersection_graph, parse_representation

from test_classes import APEX_SUBDIVIDED_CLAW


def fam(name, *params):
    return generate(FamilySpec(name, params))


# 0 universal; 1,2 hang on 5 and 3,4 hang on 6; branch graph over {0,5,6} is 1-3-2-4
BRANCH_COUNTEREXAMPLE = "7 11\n0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n1 5\n2 5\n3 6\n4 6\n5 6\n"
BRANCH_COUNTEREXAMPLE_REP = """grid 7 7
0 : (0,0)-(0,4)
1 : (0,0)-(0,1)
2 : (0,1)-(0,2)
3 : (0,2)-(0,3)
4 : (0,3)-(0,4)
5 : (0,0)-(0,2)-(1,2)
6 : (0,4)-(0,2)-(1,2)
"""


@pytest.mark.parametrize("n", [1, 3, 6])
def test_complete_graphs_have_no_certificates(n):
    assert certify_not_b1(fam("complete", n)).certificates == ()


def test_apex_over_subdivided_claw():
    g = parse_graph(APEX_SUBDIVIDED_CLAW)
    report = certify_not_b1(g)
    assert report.certified and report.exit_code == 10
    (cert,) = report.certificates
    assert cert.kind == AT_NEIGHBORHOOD and cert.embedding == (7, 4, 5, 6)
    assert verify_certificate(g, cert)


def test_c6_neighbourhoods_are_at_free():
    assert check_neighborhood_at(fam("cycle", 6)) == []


@pytest.mark.parametrize("g", [fam("path", 6), fam("star", 5), fam("cycle", 4), fam("complete_bipartite", 3, 3)])
def test_no_branch_violation(g):
    assert check_branch_conditions(g) == []


def test_k33_is_not_certified():
    # K3,3 is not B1-EPG, but none of the local checks see it
    report = certify_not_b1(fam("complete_bipartite", 3, 3))
    assert not report.certified and report.exit_code == 0


def test_p4_inconclusive():
    report = certify_not_b1(fam("path", 4))
    assert report.lines() == ["VERDICT no obstruction found (inconclusive)"]


def test_helly_obstructions_on_c4_and_trees():
    cat = default_catalog()
    (c4,) = helly_obstructions(fam("cycle", 4), cat)
    assert c4.param("pattern") == "C4" and sorted(c4.embedding) == [0, 1, 2, 3]
    assert verify_certificate(fam("cycle", 4), c4, cat)
    for g in (fam("path", 7), fam("star", 4)):
        assert helly_obstructions(g, cat) == []


def test_s3_family_hits_need_a_bull():
    cat = default_catalog()
    bull = fam("bull")
    rng = random.Random(5)
    for _ in range(150):
        g = random_graph(rng, rng.randint(4, 8), 0.5)
        hits = [c for c in helly_obstructions(g, cat) if c.param("pattern") != "C4"]
        if induced_subgraph_search(g, bull) is None:
            assert hits == []
        for c in hits:
            assert verify_certificate(g, c, cat)


def test_missing_catalog():
    with pytest.raises(CatalogMissing):
        scan_forbidden(fam("cycle", 4), None)
    with pytest.raises(CatalogMissing):
        helly_obstructions(fam("cycle", 4), None)
    with pytest.raises(CatalogMissing):
        helly_obstructions(fam("cycle", 4), parse_catalog("# name: C4\n4 4\n0 1\n1 2\n2 3\n0 3\n"))


def test_scan_forbidden_uses_catalog_entries():
    cat = parse_catalog(f"# name: F1\n{APEX_SUBDIVIDED_CLAW}")
    g = parse_graph(APEX_SUBDIVIDED_CLAW).add_vertex([0])
    hits = scan_forbidden(g, cat)
    assert [c.param("name") for c in hits] == ["F1"]
    assert verify_certificate(g, hits[0], cat)
    assert certify_not_b1(g, cat).certified


def test_verify_rejects_tampering():
    g = parse_graph(APEX_SUBDIVIDED_CLAW)
    (cert,) = check_neighborhood_at(g)
    assert not verify_certificate(g, Certificate(cert.kind, cert.params, (7, 4, 5, 1)))
    assert not verify_certificate(fam("cycle", 4), Certificate("BOGUS", (), ()))


def test_no_certificate_on_small_connected_graphs():
    # every connected graph on at most 6 vertices is silent, representable or not
    for n in range(1, 7):
        for g in connected_graphs(n):
            assert certify_not_b1(g).certificates == (), g


def test_branch_violation_on_representable_graph():
    g = parse_graph(BRANCH_COUNTEREXAMPLE)
    rep = parse_representation(BRANCH_COUNTEREXAMPLE_REP)
    # checked edge by edge, without the library's own intersection code
    units = [{frozenset(pq) for pq in zip(p.points, p.points[1:])} for p in rep.paths]
    for u, v in itertools.combinations(range(g.n), 2):
        assert bool(units[u] & units[v]) == g.has_edge(u, v)
    assert intersection_graph(rep) == g
    (note,) = check_branch_conditions(g)
    assert note.kind == BRANCH_FORBIDDEN and note.param("pattern") == "C4"
    assert not note.proves_not_b1 and note.line().startswith("NOTE ")
    report = certify_not_b1(g)
    assert not report.certified and report.exit_code == 0
    assert report.verdict == "branch violations only (inconclusive)"


def test_certified_7_vertex_graphs_rest_on_neighbourhood_at():
    kinds = set()
    for g in connected_graphs(7):
        report = certify_not_b1(g)
        for c in report.certificates:
            assert verify_certificate(g, c)
            kinds.add(c.kind)
        if report.certified:
            assert any(c.kind == AT_NEIGHBORHOOD for c in report.certificates)
    assert kinds == {AT_NEIGHBORHOOD, BRANCH_FORBIDDEN}

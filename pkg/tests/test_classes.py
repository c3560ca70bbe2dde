import random

import networkx as nx
import pytest

from conftest import random_graph, to_nx
from epglab.classes import (
    EMPTY_REGIONS,
    NO,
    UNKNOWN,
    YES,
    Ambiguous,
    ClassMembership,
    FamilySpec,
    canonical_form,
    classify,
    connected_graphs,
    default_catalog,
    generate,
    is_block_graph,
    is_cactus,
    is_line_of_bipartite,
    load_catalog,
    parse_catalog,
    venn_region,
)
from epglab.errors import BadParameter, ParseError, RangeError
from epglab.graph import Graph, induced_subgraph_search, is_chordal
from epglab.search import ExhaustedAtBound, search_b1


def fam(name, *params):
    return generate(FamilySpec(name, params))


# ---------------------------------------------------------------- families


def test_family_examples():
    s3 = fam("sun", 3)
    outer = [e for e in s3.edges() if e[0] < 3]
    inner = [e for e in s3.edges() if e[0] >= 3]
    assert s3.n == 6 and len(outer) == 6 and len(inner) == 3
    assert s3.labels == ("x1", "x2", "x3", "y1", "y2", "y3")
    w = fam("wheel", 5)
    assert (w.n, w.m) == (5, 8) and w.degree(4) == 4
    assert fam("complete_bipartite", 3, 3).m == 9


@pytest.mark.parametrize(
    "name,params",
    [("sun", (2,)), ("cycle", (2,)), ("wheel", (3,)), ("complete", ()), ("diamond", (1,)), ("nope", ())],
)
def test_family_bad_parameters(name, params):
    with pytest.raises(BadParameter):
        generate(FamilySpec(name, params))


def test_families_injective_up_to_isomorphism():
    for name, ranges in (
        ("cycle", [(n,) for n in range(3, 9)]),
        ("complete", [(n,) for n in range(1, 8)]),
        ("sun", [(k,) for k in range(3, 7)]),
        ("wheel", [(n,) for n in range(4, 9)]),
        ("path", [(n,) for n in range(1, 8)]),
        ("star", [(k,) for k in range(1, 7)]),
        ("complete_bipartite", [(a, b) for a in range(1, 4) for b in range(a, 4)]),
    ):
        forms = [canonical_form(generate(FamilySpec(name, p))) for p in ranges]
        assert len(set(forms)) == len(forms), name


# ---------------------------------------------------------------- canonical forms


def test_canonical_form_is_invariant_and_complete():
    rng = random.Random(3)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 8), 0.4)
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert canonical_form(g.relabel(perm)) == canonical_form(g)
        h = random_graph(rng, g.n, 0.4)
        same = nx.is_isomorphic(to_nx(g), to_nx(h))
        assert (canonical_form(g) == canonical_form(h)) == same


def test_connected_graph_counts():
    # OEIS A001349
    assert [sum(1 for _ in connected_graphs(n)) for n in range(1, 7)] == [1, 1, 2, 6, 21, 112]
    for g in connected_graphs(5):
        assert nx.is_connected(to_nx(g))


# ---------------------------------------------------------------- recognizers


def nx_block(h):
    return all(
        h.subgraph(c).number_of_edges() == len(c) * (len(c) - 1) // 2 for c in nx.biconnected_components(h)
    )


def nx_cactus(h):
    if h.number_of_nodes() == 0 or not nx.is_connected(h):
        return False
    return all(
        len(c) == 2 or h.subgraph(c).number_of_edges() == len(c) for c in nx.biconnected_components(h)
    )


def nx_line_of_bipartite(h):
    for comp in nx.connected_components(h):
        sub = h.subgraph(comp).copy()
        if sub.number_of_nodes() == 1:
            continue
        if sub.number_of_nodes() == 3 and sub.number_of_edges() == 3:
            continue  # K3 = L(K1,3)
        try:
            root = nx.inverse_line_graph(sub)
        except nx.NetworkXError:
            return False
        if not nx.is_bipartite(root):
            return False
    return True


def test_recognizers_match_networkx_on_all_small_connected_graphs():
    for n in range(1, 7):
        for g in connected_graphs(n):
            h = to_nx(g)
            assert is_block_graph(g) == nx_block(h), g
            assert is_cactus(g) == nx_cactus(h), g
            assert is_line_of_bipartite(g) == nx_line_of_bipartite(h), g


def test_recognizers_on_random_disconnected_graphs():
    rng = random.Random(5)
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 9), 0.25)
        h = to_nx(g)
        assert is_block_graph(g) == nx_block(h)
        assert is_cactus(g) == nx_cactus(h)
        assert is_line_of_bipartite(g) == nx_line_of_bipartite(h)


def test_block_iff_chordal_and_diamond_free():
    diamond = fam("diamond")
    for n in range(1, 8):
        for g in connected_graphs(n):
            expected = bool(is_chordal(g)) and induced_subgraph_search(g, diamond) is None
            assert is_block_graph(g) == expected


def test_membership_invariants():
    for n in range(1, 7):
        for g in connected_graphs(n):
            m = classify(g)
            if m.line_of_bipartite:
                assert m.diamond_free
            if m.block:
                assert m.chordal and m.diamond_free


# ---------------------------------------------------------------- classify


def test_classify_examples():
    m = classify(fam("complete_bipartite", 2, 5))
    assert (m.bipartite, m.diamond_free, m.block, m.cactus) == (True, True, False, False)
    assert m.b1_epg == UNKNOWN and m.helly_b1_epg == UNKNOWN
    tree = Graph.from_edges(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)])
    m = classify(tree)
    assert (m.bipartite, m.block, m.cactus) == (True, True, True)
    m = classify(fam("diamond"))
    assert (m.diamond_free, m.chordal, m.block) == (False, True, False)


def test_tree_is_line_of_bipartite_only_without_claws():
    assert classify(fam("path", 5)).line_of_bipartite
    assert not classify(fam("star", 3)).line_of_bipartite


def test_classify_uses_search_evidence():
    g = fam("complete_bipartite", 3, 3)
    m = classify(g, search=ExhaustedAtBound(6, 6, 10))
    assert m.b1_epg == NO and "evidence" in m.b1_evidence
    assert m.helly_b1_epg == NO
    c5 = fam("cycle", 5)
    found = search_b1(c5)
    m = classify(c5, search=found)
    assert m.b1_epg == YES and m.helly_b1_epg == YES  # diamond-free B1 graphs are Helly
    assert classify(c5, certified_not_b1=True).b1_epg == NO


# ---------------------------------------------------------------- regions


def evidence(g, b1=None, helly=None):
    m = classify(g)
    fields = dict(m.__dict__)
    if b1 is not None:
        fields["b1_epg"] = YES if b1 else NO
    if helly is not None:
        fields["helly_b1_epg"] = YES if helly else NO
    return ClassMembership(**fields)


def test_region_examples():
    assert venn_region(fam("cycle", 5), evidence(fam("cycle", 5), b1=True)) == 16
    tree = fam("path", 4)
    assert venn_region(tree, evidence(tree, b1=True)) == 9
    k33 = fam("complete_bipartite", 3, 3)
    assert venn_region(k33, evidence(k33, b1=False)) == 13
    k5 = fam("complete", 5)
    assert venn_region(k5, evidence(k5, b1=True)) == 4


def test_region_ambiguous_without_evidence():
    with pytest.raises(Ambiguous) as info:
        venn_region(fam("complete_bipartite", 3, 3), classify(fam("complete_bipartite", 3, 3)))
    assert set(info.value.candidates) == {12, 13}


def test_region_six_is_never_emitted():
    assert EMPTY_REGIONS == {6}
    fake = ClassMembership(
        bipartite=False,
        block=False,
        cactus=True,
        line_of_bipartite=True,
        diamond_free=True,
        chordal=False,
        s3_family_c4_free=True,
        b1_epg=YES,
        helly_b1_epg=YES,
    )
    with pytest.raises(AssertionError):
        venn_region(Graph.empty(1), fake)


def test_region_six_empty_up_to_six_vertices():
    for n in range(1, 7):
        for g in connected_graphs(n):
            if is_cactus(g) and is_line_of_bipartite(g) and not is_block_graph(g):
                assert classify(g).bipartite


def test_triangle_is_cactus_line_of_bipartite_and_not_bipartite():
    # the region excludes block graphs; without that clause K3 = L(K1,3) would sit in it
    k3 = fam("complete", 3)
    m = classify(k3)
    assert (m.cactus, m.line_of_bipartite, m.bipartite, m.block) == (True, True, False, True)
    assert venn_region(k3, evidence(k3, b1=True)) == 5


# ---------------------------------------------------------------- catalog

APEX_SUBDIVIDED_CLAW = "8 13\n0 1\n0 2\n0 3\n1 4\n2 5\n3 6\n0 7\n1 7\n2 7\n3 7\n4 7\n5 7\n6 7\n"
# clique 0..3, outside x_i on c_i and c_{i+1}: the branch graph is a 4-cycle
BRANCH_C4 = "8 14\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n0 4\n1 4\n1 5\n2 5\n2 6\n3 6\n0 7\n3 7\n"


def test_empty_catalog():
    assert len(parse_catalog("")) == 0


def test_catalog_c4_entry_and_default():
    cat = default_catalog()
    c4 = cat.get("C4")
    assert c4 is not None and c4.n == 4 and c4.m == 4
    assert sorted(cat.names()) == ["C4", "S3", "S3'", "S3''"]
    assert canonical_form(cat.get("S3")) == canonical_form(fam("sun", 3))
    assert generate(FamilySpec("catalog:C4")) == c4


def test_s3_family_contains_a_bull():
    bull = fam("bull")
    for name in ("S3", "S3'", "S3''"):
        assert induced_subgraph_search(default_catalog().get(name), bull) is not None


def test_catalog_range_errors():
    with pytest.raises(RangeError):
        parse_catalog("# name: F10(7)\n7 0\n")
    with pytest.raises(RangeError):
        default_catalog().check_param("F11", 9)
    with pytest.raises(ParseError) as info:
        parse_catalog("# name: F5(7)\n6 0\n")
    assert "7 vertices" in str(info.value)


def test_catalog_parse_error_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_catalog("# name: X\n3 1\n0 1\n\n# name: Y\n3 1\n2 1\n")
    assert info.value.line == 7
    with pytest.raises(ParseError):
        parse_catalog("3 0\n")
    with pytest.raises(ParseError):
        parse_catalog("# name: X\n# param: n=banana\n1 0\n")


def test_catalog_param_rule_header():
    cat = parse_catalog("# name: G(5)\n# param: n=2k+1,k>=2\n5 0\n")
    with pytest.raises(RangeError):
        cat.check_param("G", 7 - 1)
    cat.check_param("G", 7)


def test_catalog_validation_accepts_real_and_rejects_fake(tmp_path):
    good = tmp_path / "good.txt"
    good.write_text(f"# name: F1\n{APEX_SUBDIVIDED_CLAW}\n# name: F11(8)\n{BRANCH_C4}")
    cat = load_catalog(good)
    assert cat.names() == ["F1", "F11(8)"]
    fake_at = tmp_path / "fake_at.txt"
    fake_at.write_text("# name: F2\n4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    with pytest.raises(ParseError):
        load_catalog(fake_at)
    fake_branch = tmp_path / "fake_branch.txt"
    fake_branch.write_text("# name: F12(8)\n8 7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n")
    with pytest.raises(ParseError):
        load_catalog(fake_branch)
    assert load_catalog(fake_branch, validate=False).names() == ["F12(8)"]

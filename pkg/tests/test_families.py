from itertools import product

import networkx as nx
import pytest
from conftest import built

from kautzlab import digraph as dg
from kautzlab import families as fm
from kautzlab.words import Family, FamilySpec, InvalidInput, enumerate_brute_force, is_valid_vertex

GRID = [(d, l) for d in (2, 3, 4) for l in (2, 3, 4)]


def w(text):
    return tuple(int(c) for c in text)


def test_build_examples():
    sk = built("sK,3,2")
    assert (sk.n, sk.m, sk.regularity()) == (12, 24, 2)
    ck = built("CK,3,3")
    assert (ck.n, ck.m) == (24, 48)
    k = built("K,2,2")
    assert k.n == 6 and set(k.out_degrees()) == {2}


@pytest.mark.parametrize("fam", list(Family))
@pytest.mark.parametrize("d,l", GRID)
def test_arcs_follow_the_shift_rule(fam, d, l):
    spec = FamilySpec(fam, d, l)
    g = fm.build(spec)
    for a, b in g.label_arcs():
        assert a[1:] == b[:-1] or fam is Family.MCK
        assert is_valid_vertex(a, spec) and is_valid_vertex(b, spec)
    # brute force over every vertex pair for the plain rule
    if fam is not Family.MCK:
        verts = enumerate_brute_force(spec)
        rule = {(a, b) for a, b in product(verts, verts) if a[1:] == b[:-1] and b[-1] in fm.successor_symbols(a, spec)}
        assert g.label_arcs() == rule


def test_known_disconnected_build_is_tagged(caplog):
    g = fm.build(FamilySpec(Family.CK, 2, 3))
    assert g.meta["disconnected"]
    assert not dg.is_strongly_connected(g)
    assert "not strongly connected" in caplog.text
    assert dg.is_strongly_connected(fm.build(FamilySpec(Family.CK, 2, 4)))


def test_order_examples():
    assert [fm.order_formula(FamilySpec(Family.CK, 3, l)) for l in range(2, 7)] == [12, 24, 84, 240, 732]
    assert [fm.order_formula(FamilySpec(Family.CK, 2, l)) for l in range(2, 7)] == [6, 6, 18, 30, 66]
    spec = FamilySpec(Family.SK, 4, 4)
    assert fm.order_formula(spec) == 320 == len(enumerate_brute_force(spec))
    assert fm.cyclic_order(3, 1) == fm.cyclic_order_recurrence(3, 1) == 4


@pytest.mark.parametrize("d", range(2, 7))
def test_recurrence_matches_closed_form(d):
    for l in range(2, 10):
        assert fm.cyclic_order_recurrence(d, l) == fm.cyclic_order(d, l)


def test_line_digraph_examples():
    assert fm.line_digraph(built("sK,3,2")) == built("CK,3,3")
    assert fm.line_digraph(built("sK,3,3")) == built("CK,3,4")
    c3 = dg.cycle_digraph(3)
    lc = fm.line_digraph(c3)
    assert lc.n == 3 and lc.regularity() == 1 and dg.girth_bfs(lc) == 3


@pytest.mark.parametrize("d,l", [(3, 3), (4, 3), (3, 4)])
def test_line_digraph_matches_networkx(d, l):
    g = fm.build(FamilySpec(Family.SK, d, l - 1))
    h = nx.DiGraph(g.label_arcs())
    lg = nx.line_graph(h)
    merged = {(a + b[-1:], c + dd[-1:]) for (a, b), (c, dd) in lg.edges()}
    assert merged == built(f"CK,{d},{l}").label_arcs()


def test_partial_line_digraph_examples():
    k, kept = fm.subkautz_arcs_in_kautz(3, 3)
    assert fm.partial_line_digraph(k, kept) == built("MCK,3,4")
    g = built("sK,3,2")
    assert fm.partial_line_digraph(g, g.arcs()) == fm.line_digraph(g)
    starved = [(u, v) for u, v in g.arcs() if v != 0]
    with pytest.raises(InvalidInput):
        fm.partial_line_digraph(g, starved)


def test_mck_contains_ck():
    for d, l in ((3, 3), (3, 4), (4, 3), (4, 4)):
        ck, mck = built(f"CK,{d},{l}"), built(f"MCK,{d},{l}")
        assert ck.labels == mck.labels
        assert ck.label_arcs() <= mck.label_arcs()
        assert max(mck.out_degrees()) <= d


def test_repaired_successor():
    # 0120 -> append a_2 = 1 clashes; head becomes a_2' 2 0 1 with a_2' not in {2, 1}
    assert fm.repaired_successor(w("0120"), 3) == w("0201")
    assert fm.repaired_successor(w("0121"), 3) is None


def test_converse_examples():
    assert fm.reversal_is_isomorphism(FamilySpec(Family.CK, 3, 4))
    assert fm.reversal_is_isomorphism(FamilySpec(Family.SK, 4, 3))
    g = built("CK,3,3")
    assert g.converse().converse() == g
    with pytest.raises(InvalidInput):
        fm.reversal_is_isomorphism(FamilySpec(Family.MCK, 3, 4))


def test_converse_matches_networkx_reverse():
    g = built("sK,3,3")
    rev = nx.DiGraph(g.label_arcs()).reverse()
    assert set(rev.edges()) == g.converse().label_arcs()


def test_closed_walk_removal():
    assert fm.verify_subkautz_removal(3, 3)
    assert len(fm.closed_walk_arcs(2, 2)) == 6
    assert (w("01"), w("10")) in fm.closed_walk_arcs(2, 2)


@pytest.mark.parametrize("d,l", GRID)
def test_closed_walk_removal_grid(d, l):
    assert fm.verify_subkautz_removal(d, l)


def test_degree_examples():
    spec = FamilySpec(Family.SK, 3, 3)
    assert fm.degree_formula(spec, w("010"))[0] == 3
    assert fm.degree_formula(spec, w("012"))[0] == 2
    g = built("CK,4,3")
    assert set(g.out_degrees()) == {3}


@pytest.mark.parametrize("fam", list(Family))
@pytest.mark.parametrize("d,l", GRID)
def test_degree_formula_matches_build(fam, d, l):
    spec = FamilySpec(fam, d, l)
    g = fm.build(spec)
    outs, ins = g.out_degrees(), g.in_degrees()
    for v, x in enumerate(g.labels):
        o, i = fm.degree_formula(spec, x)
        assert outs[v] == o
        if i is not None:
            assert ins[v] == i


@pytest.mark.parametrize("d,l", [(3, 3), (3, 4), (4, 3), (2, 4)])
def test_subdigraph_relations(d, l):
    k, sk, ck = (fm.build(FamilySpec(f, d, l)) for f in (Family.K, Family.SK, Family.CK))
    assert sk.label_arcs() < k.label_arcs()
    assert set(ck.labels) < set(k.labels)
    assert ck.n == fm.build(FamilySpec(Family.SK, d, l - 1)).m

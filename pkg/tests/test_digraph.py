from fractions import Fraction
from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from conftest import built
from hypothesis import given, settings, strategies as st

from kautzlab import digraph as dg
from kautzlab.digraph import Antipodality, Diagonal, Digraph


def to_nx(g: Digraph) -> nx.DiGraph:
    h = nx.DiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.arcs())
    return h


@st.composite
def strong_digraphs(draw, max_n=7):
    """Random strongly connected digraphs: a Hamiltonian cycle plus extra arcs."""
    n = draw(st.integers(2, max_n))
    perm = draw(st.permutations(range(n)))
    arcs = {(perm[i], perm[(i + 1) % n]) for i in range(n)}
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=2 * n))
    return Digraph(range(n), arcs | set(extra))


def w(text):
    return tuple(int(c) for c in text)


# ------------------------------------------------------------------ container

def test_container_invariants():
    g = built("sK,3,3")
    assert g.m == sum(g.out_degrees()) == sum(g.in_degrees())
    for u in range(g.n):
        assert list(g.forward[u]) == sorted(g.forward[u])
        for v in g.forward[u]:
            assert u in g.reverse[v]
    assert g.converse().converse() == g


def test_loops_rejected():
    with pytest.raises(ValueError):
        Digraph([0, 1], [(0, 0)])


# ------------------------------------------------------------------ distances

def test_bfs_examples():
    assert dg.bfs(dg.cycle_digraph(3), 0).dist == (0, 1, 2)
    g = built("CK,3,3")
    field = dg.bfs(g, g.index(w("012")))
    top = max(field.dist)
    assert top == 5
    assert {g.labels[v] for v, k in enumerate(field.dist) if k == top} == {w("210"), w("213")}
    sk = built("sK,3,2")
    assert dg.bfs(sk, sk.index(w("01"))).layers() == [1, 2, 4, 4, 1]


def test_bfs_parent_property():
    g = built("CK,3,4")
    field = dg.bfs(g, 5)
    for v, k in enumerate(field.dist):
        if k:
            assert any(field.dist[u] == k - 1 for u in g.reverse[v])


def test_metric_examples():
    assert dg.diameter(built("CK,3,4")) == 6
    assert dg.diameter(built("sK,3,3")) == 5
    assert dg.mean_distance(built("CK,3,3")) == Fraction(73, 24)


def test_metrics_match_networkx():
    for spec in ("sK,3,2", "CK,3,3", "CK,4,3"):
        g = built(spec)
        h = to_nx(g)
        lengths = dict(nx.all_pairs_shortest_path_length(h))
        total = sum(lengths[u][v] for u in h for v in h)
        assert dg.mean_distance(g) * g.n**2 == total
        assert dg.diameter(g) == nx.diameter(h)


def test_disconnected_metrics_name_a_pair():
    g = built("CK,2,3")
    with pytest.raises(dg.NotStronglyConnected) as info:
        dg.diameter(g)
    x, y = info.value.pair
    assert x in g and y in g
    assert not dg.is_strongly_connected(g)


# ---------------------------------------------------------------------- girth

def test_girth_examples():
    assert dg.girth_bfs(dg.cycle_digraph(4)) == 4
    assert dg.girth_bfs(built("CK,3,3")) == 3
    assert dg.girth_bfs(built("CK,3,4")) == 2
    with pytest.raises(dg.NoCycle):
        dg.girth_bfs(Digraph(range(3), [(0, 1), (1, 2)]))


@pytest.mark.parametrize("spec", ["sK,3,2", "sK,3,3", "CK,3,3", "CK,3,4", "CK,4,3", "K,2,3"])
def test_girth_oracles_agree(spec):
    g = built(spec)
    shortest = min(len(c) for c in nx.simple_cycles(to_nx(g), length_bound=6))
    assert dg.girth_bfs(g) == dg.girth_walk_counts(g) == shortest


@settings(max_examples=60, deadline=None)
@given(strong_digraphs())
def test_girth_random(g):
    assert dg.girth_bfs(g) == dg.girth_walk_counts(g)


# ------------------------------------------------------------------ semigirth

def test_semigirth_examples():
    assert dg.semigirth(built("K,2,2")).gamma == 2
    assert dg.semigirth(built("K,3,3")).gamma == 3
    for n in (3, 5, 8):
        res = dg.semigirth(dg.cycle_digraph(n))
        assert res.gamma == res.diameter == n - 1


@pytest.mark.parametrize("spec", ["K,2,2", "K,2,3", "K,3,2", "sK,3,2", "CK,3,3", "sK,3,3", "CK,3,2", "K,3,3"])
@pytest.mark.parametrize("diagonal", list(Diagonal))
def test_semigirth_matches_path_enumeration(spec, diagonal):
    g = built(spec)
    assert g.n <= 40
    assert dg.semigirth(g, diagonal).gamma == dg.semigirth_by_paths(g, diagonal)


@settings(max_examples=40, deadline=None)
@given(strong_digraphs(max_n=6), st.sampled_from(list(Diagonal)))
def test_semigirth_random(g, diagonal):
    res = dg.semigirth(g, diagonal)
    assert 1 <= res.gamma <= res.diameter
    assert res.gamma == dg.semigirth_by_paths(g, diagonal)


def test_semigirth_witness_explains_the_bound():
    res = dg.semigirth(built("CK,3,3"))
    assert res.gamma < res.diameter
    x, y, reason = res.witness_pair
    assert reason


def test_semigirth_rejects_loops():
    g = Digraph.__new__(Digraph)
    g.labels, g.forward, g.reverse, g.meta = (0,), ((0,),), ((0,),), {}
    g._index = {0: 0}
    with pytest.raises(ValueError):
        dg.semigirth(g)


# --------------------------------------------------------------- connectivity

def test_connectivity_examples():
    k4 = dg.complete_symmetric_digraph(4)
    assert dg.vertex_connectivity(k4) == dg.arc_connectivity(k4) == 3
    ck = built("CK,4,3")
    assert dg.vertex_connectivity(ck) == dg.arc_connectivity(ck) == ck.min_degree() == 3
    sk = built("sK,3,2")
    assert dg.arc_connectivity(sk) == sk.min_degree() == 2


@pytest.mark.parametrize("spec", ["sK,3,2", "CK,3,3", "sK,3,3", "CK,4,3", "K,3,2"])
def test_connectivity_matches_networkx(spec):
    g = built(spec)
    h = to_nx(g)
    kappa, lam = dg.vertex_connectivity(g), dg.arc_connectivity(g)
    assert kappa == nx.node_connectivity(h)
    assert lam == nx.edge_connectivity(h)
    assert kappa <= lam <= g.min_degree()


def removal_kappa(g: Digraph) -> int:
    """Smallest vertex set whose removal leaves a non-strong or one-vertex digraph."""
    for k in range(g.n):
        for cut in combinations(range(g.n), k):
            h = to_nx(g)
            h.remove_nodes_from(cut)
            if len(h) <= 1 or not nx.is_strongly_connected(h):
                return k
    return g.n - 1


def removal_lambda(g: Digraph) -> int:
    arcs = g.arcs()
    for k in range(len(arcs) + 1):
        for cut in combinations(arcs, k):
            h = to_nx(g)
            h.remove_edges_from(cut)
            if not nx.is_strongly_connected(h):
                return k
    raise AssertionError("unreachable")


@settings(max_examples=80, deadline=None)
@given(strong_digraphs(max_n=6))
def test_connectivity_random(g):
    # networkx's node_connectivity shortcut is unreliable on tiny digraphs,
    # so the oracle here is plain removal
    kappa = dg.vertex_connectivity(g)
    assert kappa == dg.vertex_connectivity(g, exhaustive=True) == removal_kappa(g)
    lam = dg.arc_connectivity(g)
    assert lam == dg.arc_connectivity(g, exhaustive=True) == removal_lambda(g) == nx.edge_connectivity(to_nx(g))
    assert kappa <= lam <= g.min_degree()


# ---------------------------------------------------------- superconnectivity

def naive_super_lambda(g: Digraph) -> bool:
    lam = removal_lambda(g) if g.m <= 16 else nx.edge_connectivity(to_nx(g))
    if lam != g.min_degree():
        return False
    arcs = g.arcs()
    trivial = {frozenset((v, x) for x in g.forward[v]) for v in range(g.n)}
    trivial |= {frozenset((u, v) for u in g.reverse[v]) for v in range(g.n)}
    for cut in combinations(arcs, lam):
        h = to_nx(g)
        h.remove_edges_from(cut)
        if not nx.is_strongly_connected(h) and frozenset(cut) not in trivial:
            return False
    return True


def naive_super_kappa(g: Digraph) -> bool:
    kappa = removal_kappa(g) if g.n <= 8 else dg.vertex_connectivity(g, exhaustive=True)
    if kappa != g.min_degree():
        return False
    trivial = {frozenset(g.forward[v]) for v in range(g.n)} | {frozenset(g.reverse[v]) for v in range(g.n)}
    for cut in combinations(range(g.n), kappa):
        h = to_nx(g)
        h.remove_nodes_from(cut)
        if len(h) > 1 and not nx.is_strongly_connected(h) and frozenset(cut) not in trivial:
            return False
    return True


def test_super_examples():
    assert dg.is_super_lambda(built("CK,3,3")).holds
    for n in (4, 6):
        assert dg.is_super_lambda(dg.cycle_digraph(n)).holds


@pytest.mark.parametrize("spec", ["sK,3,2", "CK,3,3"])
def test_super_matches_naive(spec):
    g = built(spec)
    assert dg.is_super_lambda(g).holds == naive_super_lambda(g)
    assert dg.is_super_kappa(g).holds == naive_super_kappa(g)


@settings(max_examples=80, deadline=None)
@given(strong_digraphs(max_n=6))
def test_super_random(g):
    lam_res = dg.is_super_lambda(g)
    kap_res = dg.is_super_kappa(g)
    assert lam_res.holds == naive_super_lambda(g)
    assert kap_res.holds == naive_super_kappa(g)
    if not lam_res.holds and lam_res.checked:
        assert lam_res.witness is not None


def test_super_lambda_witness_is_a_real_cut():
    # two triangles joined both ways through a single pair of arcs
    arcs = [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2),
            (3, 4), (4, 5), (5, 3), (4, 3), (5, 4), (3, 5), (0, 3), (3, 0), (1, 4), (4, 1)]
    g = Digraph(range(6), arcs)
    res = dg.is_super_lambda(g)
    if g.min_degree() == dg.arc_connectivity(g):
        assert res.holds == naive_super_lambda(g)
        if not res.holds:
            h = to_nx(g)
            h.remove_edges_from(res.witness)
            assert not nx.is_strongly_connected(h)


def test_super_guard():
    with pytest.raises(dg.GuardExceeded):
        dg.is_super_lambda(built("CK,4,3"), max_subsets=1000)
    with pytest.raises(dg.GuardExceeded):
        dg.is_super_kappa(built("CK,4,3"), max_subsets=1000)


def test_connectivity_report_invariants():
    rep = dg.connectivity_report(built("CK,3,3"), superconnectivity=True)
    assert rep.kappa <= rep.lam <= rep.delta
    assert not rep.super_kappa or rep.kappa == rep.delta
    assert not rep.super_lambda or rep.lam == rep.delta


# ------------------------------------------------------ Euler, Hamilton, antipodes

def test_euler_hamilton_examples():
    g = built("CK,3,3")
    assert dg.is_eulerian(g)
    res = dg.find_hamiltonian_cycle(g)
    assert res.found and len(res.cycle) == 24 and dg.replay_cycle(g, res.cycle)
    c3 = dg.cycle_digraph(3)
    assert dg.is_eulerian(c3)
    assert dg.find_hamiltonian_cycle(c3).cycle == (0, 1, 2)


def test_hamilton_budget_is_indeterminate():
    res = dg.find_hamiltonian_cycle(built("CK,4,3"), budget=3)
    assert not res.found and res.exhausted


def test_hamilton_exhausts_on_non_hamiltonian():
    # two triangles sharing vertex 0
    g = Digraph(range(5), [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    res = dg.find_hamiltonian_cycle(g)
    assert not res.found and not res.exhausted


@settings(max_examples=60, deadline=None)
@given(strong_digraphs(max_n=7))
def test_hamilton_random(g):
    res = dg.find_hamiltonian_cycle(g)
    if res.found:
        assert dg.replay_cycle(g, res.cycle)
    else:
        h = to_nx(g)
        assert not any(len(c) == g.n for c in nx.simple_cycles(h))


def test_antipodality_examples():
    assert dg.antipodality_class(dg.cycle_digraph(5)) is Antipodality.WEAKLY_ANTIPODAL
    assert dg.antipodality_class(built("sK,3,2")) is Antipodality.ANTIPODAL
    assert dg.antipodality_class(dg.complete_symmetric_digraph(3)) is Antipodality.NEITHER


def test_walk_count_table_saturates():
    g = dg.complete_symmetric_digraph(4)
    table = dg.walk_count_table(g, 4)
    assert table.max() == 2
    assert np.array_equal(table[1], dg.adjacency_matrix(g))

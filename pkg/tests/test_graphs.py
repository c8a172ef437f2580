import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import digraphs, graphs, oriented_graphs
from dichro.constructions import (
    blowup_pack,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    d25,
    directed_cycle,
    grotzsch,
    paley_tournament,
    path_graph,
    random_oriented_graph,
    transitive_tournament,
)
from dichro.graphs import (
    BudgetExceeded,
    Digraph,
    UndirectedGraph,
    acyclic_number,
    arboricity_at_most,
    bits,
    degree_profile,
    independence_number,
    is_acyclic,
    is_acyclic_induced,
    is_biconnected,
    is_connected,
    is_forest,
    is_triangle_free,
    min_feedback_vertex_set,
    orient,
    popcount,
    to_mask,
    topological_order,
    underlying_graph,
)


def test_bit_helpers():
    assert list(bits(0b101001)) == [0, 3, 5]
    assert to_mask([0, 3, 5]) == 0b101001
    assert popcount(0b1011) == 3


def test_undirected_graph_validation():
    with pytest.raises(ValueError):
        UndirectedGraph(2, (2, 0))  # asymmetric
    with pytest.raises(ValueError):
        UndirectedGraph(2, (1, 0))  # self-loop at 0
    with pytest.raises(ValueError):
        UndirectedGraph.from_edges(3, [(0, 3)])
    with pytest.raises(ValueError):
        UndirectedGraph.from_edges(3, [(1, 1)])


def test_digraph_validation_and_orientedness():
    with pytest.raises(ValueError):
        Digraph.from_arcs(2, [(0, 0)])
    digon = Digraph.from_arcs(2, [(0, 1), (1, 0)])
    assert not digon.oriented
    with pytest.raises(ValueError):
        Digraph.from_arcs(2, [(0, 1), (1, 0)], require_oriented=True)
    assert directed_cycle(3).oriented


def test_digraph_operations():
    d = Digraph.from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert d.m == 4 and d.has_arc(3, 0) and not d.has_arc(0, 3)
    r = d.remove_vertex(1)
    assert r.n == 3 and sorted(r.arcs()) == [(1, 2), (2, 0)]
    assert not d.remove_arc(0, 1).has_arc(0, 1)
    assert d.reverse().has_arc(0, 3)
    assert d.add_vertices(2).n == 6
    assert d.induced([0, 1, 2]).arcs() == [(0, 1), (1, 2)]


def test_underlying_graph_examples():
    k3 = underlying_graph(directed_cycle(3))
    assert k3.m == 3 and not is_triangle_free(k3)
    assert underlying_graph(Digraph.from_arcs(4, [])).m == 0
    g = underlying_graph(d25())
    assert g.n == 25 and g.m == 125


def test_triangle_free_examples():
    assert is_triangle_free(cycle_graph(5))
    assert not is_triangle_free(complete_graph(3))
    assert is_triangle_free(underlying_graph(d25()))


@given(graphs(max_n=8))
def test_triangle_free_matches_oracle(g):
    assert is_triangle_free(g) == oracles.triangle_free(g.n, oracles.edges_of(g))


def test_acyclic_induced_examples():
    c3 = directed_cycle(3)
    assert not is_acyclic_induced(c3, [0, 1, 2])
    assert is_acyclic_induced(c3, [])
    d = d25()
    for v in range(5):
        assert is_acyclic_induced(d, blowup_pack(v, 5))


@given(digraphs(max_n=7), st.data())
def test_acyclic_induced_matches_dfs(d, data):
    s = data.draw(st.integers(0, (1 << d.n) - 1))
    members = [v for v in range(d.n) if s >> v & 1]
    assert is_acyclic_induced(d, members) == (not oracles.has_cycle(d.n, oracles.arcs_of(d), members))


@given(digraphs(max_n=7))
def test_topological_order_is_valid(d):
    if is_acyclic(d):
        order = topological_order(d)
        pos = {v: i for i, v in enumerate(order)}
        assert all(pos[u] < pos[v] for u, v in d.arcs())


def test_acyclic_number_examples():
    assert acyclic_number(directed_cycle(3))[0] == 2
    assert acyclic_number(paley_tournament(7))[0] == 3
    for n in range(1, 9):
        assert acyclic_number(transitive_tournament(n))[0] == n


@given(digraphs(max_n=8))
def test_acyclic_number_matches_subset_oracle(d):
    value, witness = acyclic_number(d)
    assert value == oracles.acyclic_number(d.n, oracles.arcs_of(d))
    assert len(witness) == value and is_acyclic_induced(d, witness)


@pytest.mark.parametrize("seed", range(6))
def test_acyclic_number_oracle_at_n14(seed):
    d = random_oriented_graph(14, seed)
    acyclic = oracles.acyclic_subsets(d.n, oracles.arcs_of(d))
    assert acyclic_number(d)[0] == max(popcount(m) for m in acyclic)


@given(oriented_graphs(max_n=8))
def test_acyclic_number_at_least_independence(d):
    assert acyclic_number(d)[0] >= independence_number(underlying_graph(d))[0]


def test_feedback_vertex_set_complements_acyclic_set():
    d = paley_tournament(7)
    fvs = min_feedback_vertex_set(d)
    assert len(fvs) == 4
    assert is_acyclic_induced(d, set(range(7)) - fvs)


def test_acyclic_number_budget():
    with pytest.raises(BudgetExceeded):
        acyclic_number(paley_tournament(11), budget=3)


def test_independence_examples():
    assert independence_number(cycle_graph(5))[0] == 2
    value, witness = independence_number(grotzsch())
    assert value == 5
    g = grotzsch()
    assert all(not g.has_edge(u, v) for u in witness for v in witness)
    assert independence_number(UndirectedGraph.empty(6))[0] == 6


@given(graphs(max_n=8))
def test_independence_matches_oracle(g):
    assert independence_number(g)[0] == oracles.independence(g.n, oracles.edges_of(g))


def _check_forests(g, k, forests):
    assert len(forests) <= k
    used = sorted(e for f in forests for e in f)
    assert used == sorted(g.edges())
    assert all(is_forest(g.n, f) for f in forests)


def test_arboricity_examples():
    tree = UndirectedGraph.from_edges(5, [(0, 1), (0, 2), (2, 3), (2, 4)])
    ok, forests = arboricity_at_most(tree, 1)
    assert ok
    _check_forests(tree, 1, forests)
    k4 = complete_graph(4)
    assert not arboricity_at_most(k4, 1)[0]
    ok, forests = arboricity_at_most(k4, 2)
    assert ok
    _check_forests(k4, 2, forests)


def test_grotzsch_arboricity_two():
    # Nash-Williams gives 2 as a lower bound, and an explicit partition into two
    # spanning trees exists, so the exact answer for k=2 is yes.
    g = grotzsch()
    assert oracles.nash_williams(g.n, oracles.edges_of(g)) == 2
    ok, forests = arboricity_at_most(g, 2)
    assert ok
    _check_forests(g, 2, forests)
    assert not arboricity_at_most(g, 1)[0]


@settings(max_examples=40)
@given(graphs(max_n=7))
def test_arboricity_matches_nash_williams(g):
    target = oracles.nash_williams(g.n, oracles.edges_of(g))
    for k in range(0, 4):
        ok, forests = arboricity_at_most(g, k)
        assert ok == (k >= target)
        if ok:
            _check_forests(g, k, forests)


def test_biconnected_examples():
    assert is_biconnected(cycle_graph(5))
    assert not is_biconnected(path_graph(4))
    two_c4 = UndirectedGraph.from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)])
    assert not is_biconnected(two_c4)


@given(graphs(max_n=8))
def test_biconnected_and_connected_match_networkx(g):
    h = g.to_networkx()
    if g.n >= 3:
        assert is_biconnected(g) == nx.is_biconnected(h)
    if g.n >= 1:
        assert is_connected(g) == nx.is_connected(h)


def test_degree_profile_examples():
    assert degree_profile(directed_cycle(3)) == [(2, 1, 1)] * 3
    assert degree_profile(complete_bipartite(4, 4)) == [(4, 4, 4)] * 8
    assert all(total == 10 for total, _, _ in degree_profile(d25()))


@given(graphs(max_n=6), st.data())
def test_orient_round_trip(g, data):
    mask = data.draw(st.integers(0, (1 << g.m) - 1)) if g.m else 0
    d = orient(g, mask)
    assert d.oriented and underlying_graph(d) == g
    for i, (u, v) in enumerate(g.edges()):
        assert d.has_arc(v, u) if mask >> i & 1 else d.has_arc(u, v)


def test_relabel_and_induced():
    g = path_graph(4)
    h = g.relabel([3, 2, 1, 0])
    assert h == g
    assert g.induced([0, 1, 3]).edges() == [(0, 1)]

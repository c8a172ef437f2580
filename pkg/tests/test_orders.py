from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import digraphs, graphs, oriented_graphs
from dichro.constructions import (
    cycle_graph,
    directed_cycle,
    directed_path,
    grotzsch,
    linear_forest_orientation,
    make_rng,
    paley_tournament,
    random_oriented_graph,
    transitive_tournament,
)
from dichro.graphs import Digraph, UndirectedGraph, independence_number, underlying_graph
from dichro.orders import (
    MAX_ORDER_ENUMERATION,
    LinearForest,
    SizeLimitError,
    backedge_degrees,
    backedge_graph,
    dichromatic_via_orders,
    halve_degree_order,
    max_directed_linear_forest,
    min_orientation_linear_forest,
)
from dichro.solver import chromatic_number, dichromatic_number


def _halving_holds(d: Digraph, order) -> bool:
    degrees = backedge_degrees(d, order)
    total = [bin(d.out[v]).count("1") + bin(d.inn[v]).count("1") for v in range(d.n)]
    return all(b <= t // 2 for b, t in zip(degrees, total))


def test_backedge_graph_examples():
    c3 = directed_cycle(3)
    # cyclic rotations of the cycle give one backward arc, reversed ones give two
    counts = sorted(backedge_graph(c3, order).m for order in permutations(range(3)))
    assert counts == [1, 1, 1, 2, 2, 2]
    assert backedge_graph(c3, [0, 1, 2]).edges() == [(0, 2)]
    tt = transitive_tournament(5)
    assert backedge_graph(tt, range(5)).m == 0
    assert backedge_graph(tt, list(range(4, -1, -1))) == underlying_graph(tt)


def test_backedge_graph_rejects_non_permutation():
    with pytest.raises(ValueError):
        backedge_graph(directed_cycle(3), [0, 0, 1])


@settings(max_examples=40)
@given(digraphs(max_n=7), st.randoms(use_true_random=False))
def test_dichromatic_at_most_backedge_chromatic(d, rnd):
    order = list(range(d.n))
    rnd.shuffle(order)
    assert dichromatic_number(d).value <= chromatic_number(backedge_graph(d, order))[0]


def test_via_orders_examples():
    assert dichromatic_via_orders(directed_cycle(3))[0] == 2
    assert dichromatic_via_orders(paley_tournament(7))[0] == 3
    assert dichromatic_via_orders(transitive_tournament(6))[0] == 1
    value, order = dichromatic_via_orders(paley_tournament(7))
    assert chromatic_number(backedge_graph(paley_tournament(7), order))[0] == value


def test_via_orders_size_limit():
    with pytest.raises(SizeLimitError):
        dichromatic_via_orders(directed_cycle(MAX_ORDER_ENUMERATION + 1))


@settings(max_examples=25)
@given(digraphs(max_n=5))
def test_via_orders_matches_oracle(d):
    assert dichromatic_via_orders(d)[0] == oracles.min_backedge_chromatic(d.n, oracles.arcs_of(d))


@pytest.mark.parametrize("seed", range(20))
def test_via_orders_equals_dichromatic_n6(seed):
    d = random_oriented_graph(6, seed)
    assert dichromatic_via_orders(d)[0] == dichromatic_number(d).value


def test_halving_examples():
    c3 = directed_cycle(3)
    assert _halving_holds(c3, halve_degree_order(c3))
    p7 = paley_tournament(7)
    order = halve_degree_order(p7)
    assert max(backedge_degrees(p7, order)) <= 3
    star_in = Digraph.from_arcs(6, [(v, 0) for v in range(1, 6)])
    order = halve_degree_order(star_in)
    assert _halving_holds(star_in, order)
    degrees = backedge_degrees(star_in, order)
    assert sum(degrees[1:]) <= 2


@given(digraphs(max_n=7))
def test_halving_postcondition_small(d):
    order = halve_degree_order(d)
    assert sorted(order) == list(range(d.n))
    assert _halving_holds(d, order)


@pytest.mark.parametrize("seed", range(30))
def test_halving_postcondition_random(seed):
    rng = make_rng(seed)
    n = int(rng.integers(1, 33))
    d = random_oriented_graph(n, seed)
    assert _halving_holds(d, halve_degree_order(d))


def test_linear_forest_examples():
    assert max_directed_linear_forest(directed_path(9))[0] == 8
    value, forest = max_directed_linear_forest(directed_cycle(3))
    assert value == 2 and forest.is_valid_in(directed_cycle(3))
    c5 = cycle_graph(5)
    d = linear_forest_orientation(c5, frozenset({0, 2}))
    assert d.inn[0] == 0 and d.inn[2] == 0
    assert max_directed_linear_forest(d)[0] == 3


def test_linear_forest_validity_checks():
    d = directed_cycle(3)
    assert not LinearForest(((0, 1), (1, 2), (2, 0))).is_valid_in(d)
    assert not LinearForest(((1, 0),)).is_valid_in(d)
    assert LinearForest(((0, 1), (1, 2))).paths(3) == [[0, 1, 2]]


@settings(max_examples=40)
@given(digraphs(max_n=6))
def test_linear_forest_matches_oracle(d):
    value, forest = max_directed_linear_forest(d)
    assert forest.is_valid_in(d) and len(forest.arcs) == value
    assert value == oracles.max_linear_forest(d.n, oracles.arcs_of(d))


def test_linear_forest_target_stops_early():
    d = paley_tournament(11)
    value, forest = max_directed_linear_forest(d, target=5)
    assert value >= 5 and forest.is_valid_in(d)


def test_min_orientation_examples():
    value, d = min_orientation_linear_forest(cycle_graph(5))
    assert value == 3 and max_directed_linear_forest(d)[0] == 3
    value, d = min_orientation_linear_forest(grotzsch())
    assert value == 6 and max_directed_linear_forest(d)[0] == 6
    assert min_orientation_linear_forest(UndirectedGraph.empty(4))[0] == 0


@settings(max_examples=30)
@given(graphs(min_n=1, max_n=6))
def test_min_orientation_witness_attains_value(g):
    value, d = min_orientation_linear_forest(g)
    assert underlying_graph(d) == g
    assert value == g.n - independence_number(g)[0]
    assert max_directed_linear_forest(d)[0] == value


@settings(max_examples=20)
@given(oriented_graphs(min_n=1, max_n=6))
def test_linear_forest_at_least_n_minus_alpha(d):
    g = underlying_graph(d)
    assert max_directed_linear_forest(d)[0] >= g.n - independence_number(g)[0]

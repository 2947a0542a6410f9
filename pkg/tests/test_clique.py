import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diclique.clique import (
    CliqueError,
    clique_number_within,
    has_clique_of_size,
    max_clique,
    max_clique_brute,
)
from diclique.graph import LinearOrder, UndirectedGraph, backedge_graph, make_complete_digraph


def cycle(n):
    return UndirectedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return UndirectedGraph.from_edges(10, outer + spokes + inner)


def random_graph(n, p, seed):
    rng = random.Random(seed)
    return UndirectedGraph.from_edges(n, [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p])


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return UndirectedGraph.from_edges(n, edges)


def test_complete():
    assert max_clique(UndirectedGraph.complete(5)).size == 5


def test_five_cycle():
    assert max_clique(cycle(5)).size == 2


def test_petersen_against_small_subset_enumeration():
    g = petersen()
    # no triangle among all 3-subsets, and an edge exists
    assert not any(g.is_clique(s) for s in combinations(range(10), 3))
    assert max_clique(g).size == 2


def test_empty_and_edgeless():
    assert max_clique(UndirectedGraph(0, ())).size == 0
    assert max_clique(UndirectedGraph.from_edges(4, [])).size == 1
    assert max_clique_brute(UndirectedGraph.from_edges(4, [])).size == 1


def test_brute_k3():
    assert max_clique_brute(UndirectedGraph.complete(3)).size == 3


def test_brute_guard():
    with pytest.raises(CliqueError):
        max_clique_brute(UndirectedGraph.from_edges(21, []))


@pytest.mark.parametrize("s,expected", [(4, True), (5, False), (0, True)])
def test_has_clique_k4(s, expected):
    ok, witness = has_clique_of_size(UndirectedGraph.complete(4), s)
    assert ok is expected
    if ok:
        assert len(witness) >= s


def test_has_clique_on_q6_backedges():
    bg = backedge_graph(make_complete_digraph(6), LinearOrder([3, 1, 5, 0, 2, 4]))
    assert has_clique_of_size(bg, 6)[0]


def test_negative_size():
    with pytest.raises(CliqueError):
        has_clique_of_size(UndirectedGraph.complete(2), -1)


def test_oracle_sweep_200_graphs():
    for seed in range(200):
        rng = random.Random(seed)
        g = random_graph(12, rng.random(), seed)
        assert max_clique(g).size == max_clique_brute(g).size, seed


@settings(max_examples=200)
@given(graphs(14))
def test_matches_brute(g):
    res = max_clique(g)
    assert res.size == max_clique_brute(g).size
    assert len(res.witness) == res.size
    assert g.is_clique(res.witness)


@settings(max_examples=100)
@given(graphs(12), st.data())
def test_adding_an_edge_never_decreases(g, data):
    if g.n < 2:
        return
    u, w = data.draw(st.sampled_from(list(combinations(range(g.n), 2))))
    bigger = UndirectedGraph.from_edges(g.n, g.edges() + [(u, w)])
    assert max_clique(bigger).size >= max_clique(g).size


@settings(max_examples=100)
@given(graphs(12), st.integers(0, 13))
def test_decision_agrees_with_optimum(g, s):
    ok, witness = has_clique_of_size(g, s)
    assert ok == (max_clique(g).size >= s)
    if ok and s:
        assert g.is_clique(witness) and len(witness) >= s


@settings(max_examples=100)
@given(graphs(12), st.data())
def test_within_mask(g, data):
    subset = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)))) if g.n else set()
    mask = sum(1 << v for v in subset)
    expected = max((len(s) for k in range(len(subset) + 1) for s in combinations(sorted(subset), k)
                    if g.is_clique(s)), default=0)
    assert clique_number_within(g.adj, mask) == expected


def test_deterministic_witness():
    g = random_graph(30, 0.5, 3)
    assert max_clique(g) == max_clique(g)


def test_large_structured_graph():
    # disjoint K_12 blocks joined sparsely: coloring bounds must keep this quick
    edges = []
    for b in range(30):
        base = 12 * b
        edges += [(base + i, base + j) for i, j in combinations(range(12), 2)]
        edges.append((base, (base + 12) % 360))
    g = UndirectedGraph.from_edges(360, edges)
    assert max_clique(g).size == 12

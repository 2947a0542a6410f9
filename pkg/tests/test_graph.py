import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diclique.graph import (
    DirectedGraph,
    GraphError,
    LinearOrder,
    UndirectedGraph,
    backedge_graph,
    format_digraph,
    format_order,
    format_undirected,
    induced_subgraph,
    is_tournament,
    is_transitive,
    make_complete_digraph,
    make_directed_cycle,
    make_random_digraph,
    make_random_tournament,
    make_transitive_tournament,
    parse_digraph,
    parse_order,
    parse_undirected,
    relabel,
    underlying_graph,
)


@st.composite
def digraphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    arcs = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return DirectedGraph.from_arcs(n, arcs)


@st.composite
def graph_and_order(draw, max_n=7):
    g = draw(digraphs(max_n))
    perm = draw(st.permutations(range(g.n)))
    return g, LinearOrder(perm)


@st.composite
def tournaments(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    flips = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    pairs = itertools.combinations(range(n), 2)
    return DirectedGraph.from_arcs(n, [(i, j) if f else (j, i) for (i, j), f in zip(pairs, flips)])


class TestBackedgeGraph:
    def test_transitive_order_has_no_backedges(self):
        bg = backedge_graph(make_transitive_tournament(3), LinearOrder([0, 1, 2]))
        assert bg.n == 3 and bg.edge_count == 0

    def test_reversed_transitive_order_gives_triangle(self):
        bg = backedge_graph(make_transitive_tournament(3), LinearOrder([2, 1, 0]))
        assert set(bg.edges()) == {(0, 1), (0, 2), (1, 2)}

    @pytest.mark.parametrize("seq", [[0, 1], [1, 0]])
    def test_antiparallel_pair_always_back(self, seq):
        bg = backedge_graph(make_complete_digraph(2), LinearOrder(seq))
        assert bg.edges() == [(0, 1)]

    def test_size_mismatch(self):
        with pytest.raises(GraphError):
            backedge_graph(make_complete_digraph(3), LinearOrder([0, 1]))

    @given(graph_and_order())
    def test_matches_definition(self, go):
        g, order = go
        expected = {tuple(sorted((u, w))) for u, w in g.arcs if order.precedes(w, u)}
        assert set(backedge_graph(g, order).edges()) == expected

    @given(tournaments(), st.data())
    def test_tournament_order_and_reverse_partition_pairs(self, t, data):
        order = LinearOrder(data.draw(st.permutations(range(t.n))))
        fwd = backedge_graph(t, order).edge_count
        rev = backedge_graph(t, order.reversed()).edge_count
        assert fwd + rev == t.n * (t.n - 1) // 2

    @given(st.integers(0, 7), st.data())
    def test_complete_digraph_gives_complete_graph(self, n, data):
        order = LinearOrder(data.draw(st.permutations(range(n))))
        assert backedge_graph(make_complete_digraph(n), order).adj == UndirectedGraph.complete(n).adj

    @given(graph_and_order())
    def test_edges_lie_on_arc_pairs(self, go):
        g, order = go
        under = underlying_graph(g)
        for u, w in backedge_graph(g, order).edges():
            assert under.has_edge(u, w)

    @given(graph_and_order(), st.data())
    def test_relabeling_conjugates(self, go, data):
        g, order = go
        perm = data.draw(st.permutations(range(g.n)))
        h = relabel(g, perm)
        h_order = LinearOrder(perm[v] for v in order.sequence)
        bg, bh = backedge_graph(g, order), backedge_graph(h, h_order)
        assert {tuple(sorted((perm[u], perm[w]))) for u, w in bg.edges()} == set(bh.edges())


class TestPredicates:
    def test_tt5_transitive(self):
        assert is_transitive(make_transitive_tournament(5))

    def test_cycle_not_transitive(self):
        assert not is_transitive(make_directed_cycle(3))

    def test_antiparallel_is_cycle(self):
        assert not is_transitive(make_complete_digraph(2))

    def test_arcless_graph_is_transitive(self):
        assert is_transitive(DirectedGraph.from_arcs(4, []))

    def test_tournaments(self):
        assert is_tournament(make_transitive_tournament(4))
        assert not is_tournament(make_complete_digraph(3))
        assert not is_tournament(DirectedGraph.from_arcs(2, []))
        assert is_tournament(DirectedGraph.from_arcs(0, []))


class TestConstructions:
    def test_tt(self):
        assert make_transitive_tournament(0).n == 0
        assert make_transitive_tournament(3).arcs == {(0, 1), (0, 2), (1, 2)}
        tt5 = make_transitive_tournament(5)
        assert len(tt5.arcs) == 10 and is_transitive(tt5) and is_tournament(tt5)

    @pytest.mark.parametrize("n,m", [(1, 0), (3, 6), (4, 12)])
    def test_complete(self, n, m):
        assert len(make_complete_digraph(n).arcs) == m

    def test_random_tournament(self):
        assert make_random_tournament(0, 3).n == 0
        assert make_random_tournament(5, 1).arcs == make_random_tournament(5, 1).arcs
        assert all(is_tournament(make_random_tournament(8, s)) for s in range(100))

    def test_rejects_loops(self):
        with pytest.raises(GraphError):
            DirectedGraph.from_arcs(2, [(1, 1)])


class TestInducedSubgraph:
    def test_q4_to_q2(self):
        sub = induced_subgraph(make_complete_digraph(4), [1, 3])
        assert sub.arcs == make_complete_digraph(2).arcs

    @pytest.mark.parametrize("subset", list(itertools.combinations(range(5), 3)))
    def test_tt5_to_tt3(self, subset):
        assert induced_subgraph(make_transitive_tournament(5), subset).arcs == make_transitive_tournament(3).arcs

    @given(digraphs())
    def test_full_subset_is_identity(self, g):
        assert induced_subgraph(g, range(g.n)).arcs == g.arcs

    def test_out_of_range(self):
        with pytest.raises(GraphError):
            induced_subgraph(make_complete_digraph(3), [0, 5])


class TestFormats:
    @given(digraphs())
    def test_digraph_roundtrip(self, g):
        assert parse_digraph(format_digraph(g, ["hello"])).arcs == g.arcs

    def test_digraph_is_one_indexed(self):
        text = "c demo\np dgf 2 2\na 1 2\na 2 1\n"
        assert parse_digraph(text).arcs == {(0, 1), (1, 0)}

    @pytest.mark.parametrize("text", [
        "p dgf 2 1\na 1 1\n",
        "p dgf 2 1\na 1 3\n",
        "p dgf 2 2\na 1 2\na 1 2\n",
        "p dgf 2 2\na 1 2\n",
        "a 1 2\n",
        "p dgf 2 1\nz 1 2\n",
    ])
    def test_digraph_errors(self, text):
        with pytest.raises(GraphError):
            parse_digraph(text)

    def test_order_roundtrip(self):
        order = LinearOrder([2, 0, 1])
        assert format_order(order) == "o 3 1 2\n"
        assert parse_order(format_order(order), 3) == order

    def test_truncated_order(self):
        with pytest.raises(GraphError):
            parse_order("o 1 2\n", 3)

    def test_undirected_roundtrip(self):
        rng = random.Random(4)
        g = UndirectedGraph.from_edges(6, [(i, j) for i in range(6) for j in range(i + 1, 6) if rng.random() < 0.5])
        assert parse_undirected(format_undirected(g)).adj == g.adj


def test_random_digraph_deterministic():
    assert make_random_digraph(6, 0.4, 9).arcs == make_random_digraph(6, 0.4, 9).arcs


def test_order_restrict_matches_induced_labels():
    order = LinearOrder([4, 1, 3, 0, 2])
    assert order.restrict([1, 3, 4]).sequence == (2, 0, 1)


@settings(max_examples=50)
@given(st.permutations(range(6)))
def test_linear_order_rank_is_inverse(perm):
    order = LinearOrder(perm)
    assert all(order.sequence[order.rank[v]] == v for v in range(6))


def test_linear_order_rejects_non_permutation():
    with pytest.raises(GraphError):
        LinearOrder([0, 0, 1])

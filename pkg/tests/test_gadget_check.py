import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diclique.clique import max_clique
from diclique.gadget_check import (
    FreenessTester,
    count_underlying_cliques,
    enumerate_cliques,
    focus_ranks,
    random_ranks,
    ranks_from_sequences,
    verify_claim1,
    verify_claim1_exhaustive,
    verify_claim1_sampled,
    verify_claim2,
)
from diclique.graph import LinearOrder, UndirectedGraph, backedge_graph, make_random_digraph
from diclique.reduction import ReductionError, build_binary_gadget, build_copy_gadget


def orders_from_ranks(ranks):
    return [LinearOrder(np.argsort(row, kind="stable").tolist()) for row in ranks]


class TestEnumerateCliques:
    def test_complete(self):
        adj = UndirectedGraph.complete(6).adj
        assert len(enumerate_cliques(adj, 3)) == math.comb(6, 3)

    @settings(max_examples=50)
    @given(st.integers(0, 9), st.floats(0, 1), st.integers(0, 10**6), st.integers(1, 5))
    def test_matches_subsets(self, n, p, seed, s):
        g = backedge_graph(make_random_digraph(n, p, seed), LinearOrder.identity(n))
        expected = [c for c in itertools.combinations(range(n), s) if g.is_clique(c)]
        assert enumerate_cliques(g.adj, s) == expected


class TestFreenessTester:
    def test_ranks_are_inverse(self):
        seqs = np.array([[2, 0, 1], [0, 1, 2]])
        assert ranks_from_sequences(seqs).tolist() == [[1, 2, 0], [0, 1, 2]]

    @pytest.mark.parametrize("t", [3, 4])
    def test_agrees_with_max_clique_on_gadget(self, t):
        gg = build_binary_gadget(t)
        tester = FreenessTester(gg.graph, t + 1)
        ranks = random_ranks(np.random.default_rng(t), gg.graph.n, 300)
        ranks = np.vstack([ranks, focus_ranks(ranks, gg.binaries, np.random.default_rng(9))])
        free = tester.free(ranks)
        for row, order in zip(free, orders_from_ranks(ranks)):
            assert bool(row) == (max_clique(backedge_graph(gg.graph, order)).size <= t)
        assert free.any()

    def test_agrees_on_copy_gadget(self):
        gg = build_copy_gadget(4)
        tester = FreenessTester(gg.graph, 5)
        rng = np.random.default_rng(3)
        ranks = focus_ranks(random_ranks(rng, gg.graph.n, 200), gg.binaries, rng)
        free = tester.free(ranks)
        for row, order in zip(free, orders_from_ranks(ranks)):
            assert bool(row) == (max_clique(backedge_graph(gg.graph, order)).size <= 4)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 8), st.floats(0, 1), st.integers(0, 10**6), st.integers(1, 4))
    def test_random_digraphs(self, n, p, seed, s):
        g = make_random_digraph(n, p, seed)
        tester = FreenessTester(g, s)
        ranks = random_ranks(np.random.default_rng(seed), n, 20)
        for row, order in zip(tester.free(ranks), orders_from_ranks(ranks)):
            assert bool(row) == (max_clique(backedge_graph(g, order)).size < s)

    def test_focus_keeps_permutations(self):
        gg = build_copy_gadget(4)
        rng = np.random.default_rng(0)
        ranks = focus_ranks(random_ranks(rng, gg.graph.n, 50), gg.binaries, rng)
        assert (np.sort(ranks, axis=1) == np.arange(gg.graph.n)).all()
        for g in gg.binaries:
            x_first = ranks[:, g.x] < ranks[:, g.xF]
            assert ((ranks[:, g.xF] < ranks[:, g.w]) & (ranks[:, g.w] < ranks[:, g.xT])).all()
            assert (x_first | (ranks[:, g.x] > ranks[:, g.xT])).all()


class TestClaims:
    def test_claim1_exhaustive(self):
        report = verify_claim1_exhaustive(3)
        tier = report.tiers[0]
        assert report.passed
        assert tier.checked == 362880 and tier.free > 0 and tier.violations == 0
        assert tier.details["free_F"] + tier.details["free_T"] == tier.free

    def test_exhaustive_guard(self):
        with pytest.raises(ReductionError):
            verify_claim1_exhaustive(4)

    def test_claim1_sampled(self):
        report = verify_claim1_sampled(5, 20_000, seed=1)
        assert report.passed and report.tiers[0].checked == 20_000

    def test_claim1_dispatch(self):
        assert verify_claim1(3).tiers[0].name == "exhaustive orders"
        assert verify_claim1(4, samples=1000).tiers[0].name == "sampled orders"

    def test_claim2_small(self):
        report = verify_claim2(4, samples=5_000, seed=2)
        assert report.passed
        names = [t.name for t in report.tiers]
        assert names == ["static obligations", "witness orders", "sampled uniform orders", "sampled focused orders"]
        assert report.tiers[-1].free > 0
        assert "PASS" in report.render()

    def test_claim2_deterministic(self):
        a = verify_claim2(4, samples=2_000, seed=7).render()
        assert a == verify_claim2(4, samples=2_000, seed=7).render()

    def test_underlying_clique_count(self):
        # three complete blocks plus named vertices; the count is fixed for t = 3
        gg = build_binary_gadget(3)
        n = count_underlying_cliques(gg.graph, 4)
        brute = sum(1 for c in itertools.combinations(range(9), 4)
                    if all(gg.graph.has_arc(u, w) or gg.graph.has_arc(w, u) for u, w in itertools.combinations(c, 2)))
        assert n == brute

"""Mechanical verification of the binary and copy gadget properties.

K_{t+1}-freeness is decided for whole batches of orders at once.  Every
backedge clique is a clique of the underlying graph, and it is a backedge
clique exactly when each of its single-arc pairs points backwards, so the
underlying (t+1)-cliques are enumerated once and each becomes a conjunction
over "arc is a backedge" columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .clique import max_clique
from .graph import DirectedGraph, LinearOrder, backedge_graph, underlying_graph
from .reduction import (
    BinaryGadget,
    GadgetGraph,
    ReductionError,
    binary_block,
    binary_obligations,
    build_binary_gadget,
    build_copy_gadget,
    check_clique_obligation,
    copy_obligations,
)

EXHAUSTIVE_LIMIT = 9  # vertices; 9! = 362880 orders
BATCH = 50_000


def enumerate_cliques(adj: tuple[int, ...], size: int) -> list[tuple[int, ...]]:
    """All cliques with exactly ``size`` vertices, each listed in increasing id order."""
    found: list[tuple[int, ...]] = []

    def grow(clique: list[int], cand: int) -> None:
        if len(clique) == size:
            found.append(tuple(clique))
            return
        while cand and cand.bit_count() >= size - len(clique):
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            clique.append(v)
            grow(clique, cand & adj[v])
            clique.pop()

    full = (1 << len(adj)) - 1
    grow([], full)
    return found


class FreenessTester:
    """Batched test of "backedge graph is K_s-free" for a fixed digraph."""

    def __init__(self, g: DirectedGraph, s: int):
        self.g = g
        self.s = s
        self.single = sorted((u, w) for u, w in g.arcs if not g.has_arc(w, u))
        index = {arc: j for j, arc in enumerate(self.single)}
        patterns = set()
        for clique in enumerate_cliques(underlying_graph(g).adj, s):
            req = []
            for a in range(len(clique)):
                for b in range(a + 1, len(clique)):
                    u, w = clique[a], clique[b]
                    if (u, w) in index:
                        req.append(index[(u, w)])
                    elif (w, u) in index:
                        req.append(index[(w, u)])
            patterns.add(tuple(sorted(req)))
        self.patterns = sorted(patterns)
        self.always = () in patterns

    def backedge_columns(self, ranks: np.ndarray) -> np.ndarray:
        """Column j: single arc j = (u, w) is a backedge, i.e. w ranks before u."""
        if not self.single:
            return np.zeros((ranks.shape[0], 0), dtype=bool)
        arcs = np.array(self.single)
        return ranks[:, arcs[:, 1]] < ranks[:, arcs[:, 0]]

    def free(self, ranks: np.ndarray) -> np.ndarray:
        """Boolean mask over rows of ``ranks`` (row = rank of each vertex)."""
        n_rows = ranks.shape[0]
        if self.always:
            return np.zeros(n_rows, dtype=bool)
        back = self.backedge_columns(ranks)
        has = np.zeros(n_rows, dtype=bool)
        for req in self.patterns:
            has |= back[:, list(req)].all(axis=1)
        return ~has


def ranks_from_sequences(seqs: np.ndarray) -> np.ndarray:
    return np.argsort(seqs, axis=1, kind="stable")


def _red(ranks: np.ndarray, g: BinaryGadget) -> tuple[np.ndarray, np.ndarray]:
    """(F red edge, T red edge) per row: x -> xF back iff xF first; xT -> x back iff x first."""
    return ranks[:, g.xF] < ranks[:, g.x], ranks[:, g.x] < ranks[:, g.xT]


@dataclass
class TierResult:
    name: str
    checked: int
    free: int = 0
    violations: int = 0
    passed: bool = True
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = " ".join(f"{k}={v}" for k, v in self.details.items())
        return f"[{status}] {self.name}: checked={self.checked} free={self.free} violations={self.violations} {extra}".rstrip()


@dataclass
class ClaimReport:
    claim: int
    t: int
    tiers: list[TierResult]

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.tiers)

    def render(self) -> str:
        head = f"claim {self.claim} at t={self.t}: {'PASS' if self.passed else 'FAIL'}"
        return "\n".join([head] + ["  " + t.line() for t in self.tiers])


def _one_red_tier(name: str, tester: FreenessTester, ranks: np.ndarray, g: BinaryGadget) -> TierResult:
    free = tester.free(ranks)
    f_edge, t_edge = _red(ranks, g)
    bad = free & (f_edge == t_edge)
    res = TierResult(
        name,
        checked=int(ranks.shape[0]),
        free=int(free.sum()),
        violations=int(bad.sum()),
        details={"free_F": int((free & f_edge).sum()), "free_T": int((free & t_edge).sum())},
    )
    return res


def verify_claim1_exhaustive(t: int = 3) -> ClaimReport:
    """All orders of the standalone binary gadget: free orders carry exactly one red backedge."""
    gg = build_binary_gadget(t)
    n = gg.graph.n
    if n > EXHAUSTIVE_LIMIT:
        raise ReductionError(
            f"exhaustive mode needs {n}! orders; use sampled verification for t > 3"
        )
    g = gg.binaries[0]
    tester = FreenessTester(gg.graph, t + 1)
    seqs = np.array(list(permutations(range(n))), dtype=np.int16)
    tier = _one_red_tier("exhaustive orders", tester, ranks_from_sequences(seqs), g)
    tier.passed = tier.violations == 0 and tier.free > 0 and tier.checked == math.factorial(n)
    return ClaimReport(1, t, [tier, _obligation_tier("static obligations", gg.graph, binary_obligations(g))])


def random_ranks(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    seqs = rng.permuted(np.tile(np.arange(n, dtype=np.int32), (count, 1)), axis=1)
    return ranks_from_sequences(seqs)


def _batches(samples: int):
    done = 0
    while done < samples:
        size = min(BATCH, samples - done)
        yield size
        done += size


def verify_claim1_sampled(t: int, samples: int, seed: int = 0) -> ClaimReport:
    gg = build_binary_gadget(t)
    g = gg.binaries[0]
    tester = FreenessTester(gg.graph, t + 1)
    rng = np.random.default_rng(seed)
    total = TierResult("sampled orders", 0, details={"free_F": 0, "free_T": 0})
    for size in _batches(samples):
        part = _one_red_tier("", tester, random_ranks(rng, gg.graph.n, size), g)
        total.checked += part.checked
        total.free += part.free
        total.violations += part.violations
        for k in total.details:
            total.details[k] += part.details[k]
    total.passed = total.violations == 0
    return ClaimReport(1, t, [total, _obligation_tier("static obligations", gg.graph, binary_obligations(g))])


def _obligation_tier(name, graph, obligations) -> TierResult:
    failed = [label for label, verts, cons in obligations if not check_clique_obligation(graph, verts, cons)]
    return TierResult(name, checked=len(obligations), violations=len(failed), passed=not failed,
                      details={"failed": failed} if failed else {})


def _witness_sequence(gg: GadgetGraph, value: bool) -> list[int]:
    seq: list[int] = []
    for g in gg.binaries:
        seq += binary_block(g, value)
    if gg.copy is not None:
        for block in gg.copy.a:
            seq += block
    return seq


def focus_ranks(ranks: np.ndarray, gadgets, rng: np.random.Generator) -> np.ndarray:
    """Rearrange each binary gadget's named vertices into one of the two free patterns.

    Within the four slots they already occupy, the vertices become either
    x, xF, w, xT or xF, w, xT, x, chosen independently per gadget and row.
    """
    out = ranks.copy()
    rows = np.arange(out.shape[0])
    for g in gadgets:
        cols = [g.x, g.xF, g.w, g.xT]
        slots = np.sort(out[:, cols], axis=1)
        pick = rng.integers(0, 2, size=out.shape[0]).astype(bool)
        # pattern True: x first; pattern False: x last
        out[rows, g.x] = np.where(pick, slots[:, 0], slots[:, 3])
        out[rows, g.xF] = np.where(pick, slots[:, 1], slots[:, 0])
        out[rows, g.w] = np.where(pick, slots[:, 2], slots[:, 1])
        out[rows, g.xT] = np.where(pick, slots[:, 3], slots[:, 2])
    return out


def _copy_sample_tier(name, tester, gg: GadgetGraph, rng, samples, focused) -> TierResult:
    gk, gl, mid = gg.binaries
    tier = TierResult(name, 0, details={"free_F": 0, "free_T": 0})
    for size in _batches(samples):
        ranks = random_ranks(rng, gg.graph.n, size)
        if focused:
            ranks = focus_ranks(ranks, gg.binaries, rng)
        free = tester.free(ranks)
        fk, _ = _red(ranks, gk)
        fl, _ = _red(ranks, gl)
        bad = free & (fk != fl)
        tier.checked += size
        tier.free += int(free.sum())
        tier.violations += int(bad.sum())
        tier.details["free_F"] += int((free & fk).sum())
        tier.details["free_T"] += int((free & ~fk).sum())
    tier.passed = tier.violations == 0
    return tier


def verify_claim2(t: int = 4, samples: int = 100_000, seed: int = 0) -> ClaimReport:
    """Copy gadget: static obligations, witness orders, sampled biconditional.

    The sampled tier draws uniform orders and, from an independent stream,
    focused orders whose binary gadgets each satisfy the binary-gadget
    property; only the latter produce many free orders.
    """
    gg = build_copy_gadget(t)
    if gg.copy is None:
        raise AssertionError("copy gadget missing")
    gk, gl, mid = gg.binaries
    tiers = []

    steps = copy_obligations(gg)
    failed = [label for label, obs in steps if not all(check_clique_obligation(gg.graph, v, c) for _, v, c in obs)]
    k_side, l_side = set(gk.vertices), set(gl.vertices)
    cross = sum(1 for u, w in gg.graph.arcs if (u in k_side and w in l_side) or (u in l_side and w in k_side))
    tiers.append(TierResult("static obligations", checked=len(steps), violations=len(failed) + cross,
                            passed=not failed and cross == 0,
                            details={"cross_arcs_k_l": cross, **({"failed": failed} if failed else {})}))

    witness = TierResult("witness orders", checked=2)
    for value in (False, True):
        order = LinearOrder(_witness_sequence(gg, value))
        omega = max_clique(backedge_graph(gg.graph, order)).size
        witness.details[f"omega_{'T' if value else 'F'}"] = omega
        if omega <= t:
            witness.free += 1
        else:
            witness.violations += 1
    witness.passed = witness.violations == 0
    tiers.append(witness)

    tester = FreenessTester(gg.graph, t + 1)
    uniform_seq, focused_seq = np.random.SeedSequence(seed).spawn(2)
    tiers.append(_copy_sample_tier("sampled uniform orders", tester, gg,
                                   np.random.default_rng(uniform_seq), samples, False))
    tiers.append(_copy_sample_tier("sampled focused orders", tester, gg,
                                   np.random.default_rng(focused_seq), samples, True))
    return ClaimReport(2, t, tiers)


def verify_claim1(t: int, samples: int = 1_000_000, seed: int = 0, exhaustive: bool | None = None) -> ClaimReport:
    """Exhaustive when the gadget is small enough (t = 3) unless told otherwise."""
    if exhaustive is None:
        exhaustive = 3 * t <= EXHAUSTIVE_LIMIT
    if exhaustive:
        return verify_claim1_exhaustive(t)
    return verify_claim1_sampled(t, samples, seed)


def count_underlying_cliques(g: DirectedGraph, s: int) -> int:
    return len(enumerate_cliques(underlying_graph(g).adj, s))


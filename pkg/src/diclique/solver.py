"""Directed clique number: exact order search, brute-force oracle, heuristics, CNF export.

The exact search builds the order left to right.  Placing ``v`` after the
placed set ``P`` adds the backedges ``v -- (out(v) & P)``, so every clique
of the prefix backedge graph ends at the vertex placed last among its
members.  The prefix clique number therefore only grows along a branch and
is a valid lower bound for every completion.

Memoizing on the placed *set* would be unsound: the backedges among ``P``
depend on the internal order of ``P``, and so does every later clique.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .clique import clique_number, clique_number_within
from .graph import (
    DirectedGraph,
    GraphError,
    LinearOrder,
    UndirectedGraph,
    backedge_graph,
    is_tournament,
    is_transitive,
    iter_bits,
    topological_order,
)

BRUTE_LIMIT = 9
EXACT_TT_LIMIT = 20
CNF_SUBSET_LIMIT = 2_000_000
RESTARTS = 32


class SolverError(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int | None = None
    time_limit: float | None = None

    def __post_init__(self):
        if self.node_limit is not None and self.node_limit < 0:
            raise SolverError("node_limit must be non-negative")
        if self.time_limit is not None and self.time_limit < 0:
            raise SolverError("time_limit must be non-negative")


UNLIMITED = SearchBudget()


class BudgetExhausted(Exception):
    """Search stopped early; carries the bounds known at that point."""

    def __init__(self, lower: int, upper: int, best_order: LinearOrder | None, nodes: int):
        super().__init__(f"budget exhausted after {nodes} nodes: {lower} <= diomega <= {upper}")
        self.lower = lower
        self.upper = upper
        self.best_order = best_order
        self.nodes = nodes


@dataclass(frozen=True)
class DiomegaResult:
    value: int
    witness_order: LinearOrder
    exact: bool = True
    nodes: int = 0


def order_value(g: DirectedGraph, order: LinearOrder) -> int:
    """Clique number of the backedge graph of ``g`` under ``order``."""
    return clique_number(backedge_graph(g, order))


def mutual_graph(g: DirectedGraph) -> UndirectedGraph:
    """Antiparallel pairs; they are backedges under every order."""
    return UndirectedGraph(g.n, tuple(o & i for o, i in zip(g.out_masks, g.in_masks)))


def lower_bound(g: DirectedGraph) -> int:
    if g.n == 0:
        return 0
    lb = 1 if is_transitive(g) else 2
    return max(lb, clique_number(mutual_graph(g)))


# --- heuristic orders ---------------------------------------------------------


def greedy_order(g: DirectedGraph, rng: random.Random | None = None) -> LinearOrder:
    """Place next the vertex with fewest arcs into the placed set; random or id tie-break."""
    placed = 0
    remaining = set(range(g.n))
    seq = []
    out = g.out_masks
    while remaining:
        best = min((out[v] & placed).bit_count() for v in remaining)
        choices = sorted(v for v in remaining if (out[v] & placed).bit_count() == best)
        v = rng.choice(choices) if rng is not None else choices[0]
        seq.append(v)
        remaining.discard(v)
        placed |= 1 << v
    return LinearOrder(seq)


def restart_order(g: DirectedGraph, seed: int = 0, restarts: int = RESTARTS) -> tuple[LinearOrder, int]:
    """Best of ``restarts`` randomized greedy orders, plus the id-tie-break greedy order."""
    rng = random.Random(seed)
    best_order = greedy_order(g)
    best = order_value(g, best_order)
    for _ in range(restarts):
        cand = greedy_order(g, rng)
        val = order_value(g, cand)
        if val < best:
            best, best_order = val, cand
    return best_order, best


def heuristic_order(g: DirectedGraph, seed: int = 0) -> tuple[LinearOrder, int]:
    """Upper-bound order: peeling for tournaments, seeded restarts otherwise."""
    if g.n == 0:
        return LinearOrder(()), 0
    topo = topological_order(g)
    if topo is not None:
        return LinearOrder(topo), 1
    if is_tournament(g):
        order, _ = peeling_order(g)
        return order, order_value(g, order)
    return restart_order(g, seed)


# --- exact search -------------------------------------------------------------


class _OrderSearch:
    def __init__(self, g: DirectedGraph, bound: int, budget: SearchBudget, stop_first: bool):
        self.g = g
        self.n = g.n
        self.out = g.out_masks
        self.bound = bound  # looking for orders with value < bound
        self.best_seq: list[int] | None = None
        self.budget = budget
        self.stop_first = stop_first
        self.nodes = 0
        self.deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
        self.adj = [0] * g.n
        self.seq: list[int] = []
        self.floor = 0
        self.done = False

    def _tick(self) -> None:
        self.nodes += 1
        lim = self.budget.node_limit
        if lim is not None and self.nodes > lim:
            raise _Stop
        if self.deadline is not None and self.nodes & 255 == 0 and time.monotonic() > self.deadline:
            raise _Stop

    def run(self) -> None:
        try:
            self._expand(0, 0)
        except _Stop:
            self.done = False
            raise

    def _expand(self, placed: int, cur: int) -> None:
        self._tick()
        n = self.n
        if len(self.seq) == n:
            if cur < self.bound:
                self.bound = cur
                self.best_seq = list(self.seq)
                if self.stop_first or cur <= self.floor:
                    self.done = True
            return
        out = self.out
        adj = self.adj
        need = self.bound - 1  # a child is useless once its value reaches bound
        children = []
        for v in range(n):
            if placed >> v & 1:
                continue
            back = out[v] & placed
            val = 1 + clique_number_within(adj, back) if back else 1
            val = max(val, cur)
            if val > need:
                # v must come after all of P, so any completion has value >= val
                return
            children.append((back.bit_count(), v, back, val))
        children.sort()
        for _, v, back, val in children:
            if val >= self.bound:
                return
            bit = 1 << v
            adj[v] = back
            for w in iter_bits(back):
                adj[w] |= bit
            self.seq.append(v)
            self._expand(placed | bit, val)
            self.seq.pop()
            for w in iter_bits(back):
                adj[w] &= ~bit
            adj[v] = 0
            if self.done:
                return


class _Stop(Exception):
    pass


def diomega_exact(
    g: DirectedGraph, budget: SearchBudget = UNLIMITED, seed: int = 0
) -> DiomegaResult:
    """Exact directed clique number with a witness order.

    Raises ``BudgetExhausted`` carrying (lower, upper, best order) when the
    budget runs out before optimality is proven.
    """
    if g.n == 0:
        return DiomegaResult(0, LinearOrder(()))
    lb = lower_bound(g)
    order, ub = heuristic_order(g, seed)
    if ub <= lb:
        return DiomegaResult(ub, order)
    search = _OrderSearch(g, ub, budget, stop_first=False)
    search.floor = lb
    try:
        search.run()
    except _Stop:
        best = LinearOrder(search.best_seq) if search.best_seq is not None else order
        raise BudgetExhausted(lb, search.bound, best, search.nodes) from None
    if search.best_seq is not None:
        order = LinearOrder(search.best_seq)
    return DiomegaResult(search.bound, order, nodes=search.nodes)


def diomega_decide(
    g: DirectedGraph, t: int, budget: SearchBudget = UNLIMITED, seed: int = 0
) -> tuple[bool, LinearOrder | None]:
    """Is there an order whose backedge graph is K_{t+1}-free?"""
    if t < 0:
        raise SolverError(f"t must be non-negative, got {t}")
    if g.n == 0:
        return True, LinearOrder(())
    if lower_bound(g) > t:
        return False, None
    order, ub = heuristic_order(g, seed)
    if ub <= t:
        return True, order
    search = _OrderSearch(g, t + 1, budget, stop_first=True)
    try:
        search.run()
    except _Stop:
        raise BudgetExhausted(lower_bound(g), ub, order, search.nodes) from None
    if search.best_seq is None:
        return False, None
    return True, LinearOrder(search.best_seq)


def diomega_brute(g: DirectedGraph) -> DiomegaResult:
    """Minimum over all n! orders; the first optimal order in lexicographic order is returned."""
    if g.n > BRUTE_LIMIT:
        raise SolverError(f"brute force limited to {BRUTE_LIMIT} vertices, got {g.n}")
    best = None
    best_order = None
    for perm in permutations(range(g.n)):
        order = LinearOrder(perm)
        val = order_value(g, order)
        if best is None or val < best:
            best, best_order = val, order
    assert best is not None and best_order is not None
    return DiomegaResult(best, best_order)


# --- transitive subtournaments and peeling ------------------------------------


@dataclass(frozen=True)
class TransitiveSubset:
    vertices: tuple[int, ...]  # listed source first: each vertex beats all later ones
    exact: bool

    def __len__(self) -> int:
        return len(self.vertices)


def _require_tournament(t: DirectedGraph) -> None:
    if not is_tournament(t):
        raise GraphError("input is not a tournament")


def _exact_tt(out: tuple[int, ...], universe: int) -> list[int]:
    # a transitive subtournament is a chain source -> rest, the rest lying in out(source)
    memo: dict[int, tuple[int, ...]] = {0: ()}

    def best(s: int) -> tuple[int, ...]:
        hit = memo.get(s)
        if hit is not None:
            return hit
        top: tuple[int, ...] = ()
        for v in iter_bits(s):
            rest = s & out[v]
            if 1 + rest.bit_count() <= len(top):
                continue
            cand = (v,) + best(rest)
            if len(cand) > len(top):
                top = cand
        memo[s] = top
        return top

    return list(best(universe))


def _greedy_tt(out: tuple[int, ...], vertices: list[int]) -> list[int]:
    chain: list[int] = []
    for v in vertices:
        # chain[:i] must all beat v, v must beat chain[i:]
        for i in range(len(chain) + 1):
            if all(out[u] >> v & 1 for u in chain[:i]) and all(out[v] >> u & 1 for u in chain[i:]):
                chain.insert(i, v)
                break
    return chain


def _max_tt_within(t: DirectedGraph, universe: int) -> TransitiveSubset:
    size = universe.bit_count()
    if size <= EXACT_TT_LIMIT:
        return TransitiveSubset(tuple(_exact_tt(t.out_masks, universe)), True)
    return TransitiveSubset(tuple(_greedy_tt(t.out_masks, list(iter_bits(universe)))), False)


def max_transitive_subtournament(t: DirectedGraph) -> TransitiveSubset:
    """Largest vertex set inducing a transitive subtournament.

    Exact up to 20 vertices; above that a greedy chain-insertion result is
    returned with ``exact=False``.
    """
    _require_tournament(t)
    return _max_tt_within(t, (1 << t.n) - 1)


def peeling_order(t: DirectedGraph) -> tuple[LinearOrder, int]:
    """Peel maximum transitive blocks U_1, U_2, ...; order them U_m, ..., U_1.

    Inside a block x precedes y iff (x, y) is an arc, so blocks carry no
    backedges and every backedge clique meets each block at most once.
    """
    _require_tournament(t)
    remaining = (1 << t.n) - 1
    blocks: list[tuple[int, ...]] = []
    while remaining:
        block = _max_tt_within(t, remaining).vertices
        blocks.append(block)
        for v in block:
            remaining &= ~(1 << v)
    seq = [v for block in reversed(blocks) for v in block]
    return LinearOrder(seq), len(blocks)


# --- CNF export ---------------------------------------------------------------


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list[list[int]] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    def to_dimacs(self) -> str:
        out = [f"c {c}" for c in self.comments]
        out.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        out.extend(" ".join(map(str, cl + [0])) for cl in self.clauses)
        return "\n".join(out) + "\n"


def order_variable(n: int, u: int, w: int) -> int:
    """DIMACS id of o_{uw} (u < w), true iff u precedes w."""
    assert 0 <= u < w < n
    return u * n - u * (u + 1) // 2 + (w - u - 1) + 1


def build_cnf_decision(g: DirectedGraph, t: int) -> CnfFormula:
    """CNF satisfiable iff some order of ``g`` has a K_{t+1}-free backedge graph."""
    n = g.n
    if t < 1:
        raise SolverError(f"t must be at least 1, got {t}")
    if math.comb(n, t + 1) > CNF_SUBSET_LIMIT:
        raise SolverError(
            f"C({n}, {t + 1}) = {math.comb(n, t + 1)} subsets exceeds limit {CNF_SUBSET_LIMIT}"
        )

    def before(u: int, w: int) -> int:
        return order_variable(n, u, w) if u < w else -order_variable(n, w, u)

    cnf = CnfFormula(n * (n - 1) // 2)
    cnf.comments.append(f"directed clique decision: order with K_{t + 1}-free backedge graph")
    cnf.comments.append(f"var o(u,w) for u<w, u precedes w; n={n} t={t}")
    for i, j, k in combinations(range(n), 3):
        # forbid the two cyclic orientations of every triple
        cnf.clauses.append([-before(i, j), -before(j, k), before(i, k)])
        cnf.clauses.append([before(i, j), before(j, k), -before(i, k)])
    out, inn = g.out_masks, g.in_masks
    for subset in combinations(range(n), t + 1):
        clause = []
        for u, w in combinations(subset, 2):
            fwd, bwd = out[u] >> w & 1, inn[u] >> w & 1
            if fwd and bwd:
                continue
            if fwd:
                clause.append(before(u, w))  # (u, w) not a backedge iff u first
            elif bwd:
                clause.append(before(w, u))
            else:
                clause = None
                break
        if clause is not None:
            cnf.clauses.append(clause)
    return cnf


def emit_cnf_decision(g: DirectedGraph, t: int) -> str:
    return build_cnf_decision(g, t).to_dimacs()

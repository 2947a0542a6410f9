"""Exact maximum clique and K_s-freeness on bitset undirected graphs.

The search is a bitset branch and bound with a greedy colouring bound
(MCQ/BBMC family).  Vertices are renumbered by descending degree, ties by
id, so the colouring sweeps and the branching order are fixed and results
are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import UndirectedGraph, iter_bits


class CliqueError(ValueError):
    pass


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: tuple[int, ...]


def _color_sort(adj: list[int], cand: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of ``cand``; returns vertices and their colour numbers."""
    order: list[int] = []
    colors: list[int] = []
    color = 0
    uncolored = cand
    while uncolored:
        color += 1
        q = uncolored
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~adj[v]
            q ^= low
            uncolored ^= low
            order.append(v)
            colors.append(color)
    return order, colors


class _Search:
    def __init__(self, adj: list[int], best_size: int, target: int | None):
        self.adj = adj
        self.best_size = best_size
        self.best: list[int] = []
        self.target = target
        self.done = False

    def expand(self, clique: list[int], cand: int) -> None:
        adj = self.adj
        order, colors = _color_sort(adj, cand)
        size = len(clique)
        for i in range(len(order) - 1, -1, -1):
            if size + colors[i] <= self.best_size:
                return
            v = order[i]
            clique.append(v)
            new_cand = cand & adj[v]
            if new_cand:
                self.expand(clique, new_cand)
            elif size + 1 > self.best_size:
                self.best_size = size + 1
                self.best = list(clique)
                if self.target is not None and self.best_size >= self.target:
                    self.done = True
            clique.pop()
            if self.done:
                return
            cand &= ~(1 << v)


def _prepare(g: UndirectedGraph) -> tuple[list[int], list[int]]:
    """Renumber by descending degree; bit i of the new masks is perm[i] in g."""
    perm = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    pos = [0] * g.n
    for i, v in enumerate(perm):
        pos[v] = i
    adj = []
    for v in perm:
        m = 0
        for w in iter_bits(g.adj[v]):
            m |= 1 << pos[w]
        adj.append(m)
    return perm, adj


def _greedy_clique(adj: list[int], n: int) -> list[int]:
    best: list[int] = []
    for start in range(min(n, 16)):
        clique = [start]
        cand = adj[start]
        while cand:
            v = max(iter_bits(cand), key=lambda x: ((adj[x] & cand).bit_count(), -x))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _core_prune(adj: list[int], n: int, k: int) -> int:
    """Mask of vertices surviving iterated removal of degree < k (they cannot join a K_{k+1})."""
    alive = (1 << n) - 1
    changed = True
    while changed:
        changed = False
        for v in iter_bits(alive):
            if (adj[v] & alive).bit_count() < k:
                alive &= ~(1 << v)
                changed = True
    return alive


def _run(g: UndirectedGraph, target: int | None) -> CliqueResult:
    if g.n == 0:
        return CliqueResult(0, ())
    perm, adj = _prepare(g)
    greedy = _greedy_clique(adj, g.n)
    if target is not None and len(greedy) >= target:
        return CliqueResult(len(greedy), tuple(sorted(perm[v] for v in greedy)))
    floor = len(greedy) if target is None else max(len(greedy), target - 1)
    # any clique beating the floor has floor+1 vertices, each of degree >= floor
    alive = _core_prune(adj, g.n, floor)
    search = _Search(adj, floor, target)
    if alive:
        search.expand([], alive)
    if search.best:
        found = search.best
    elif target is None or len(greedy) >= target:
        found = greedy
    else:
        return CliqueResult(len(greedy), tuple(sorted(perm[v] for v in greedy)))
    return CliqueResult(len(found), tuple(sorted(perm[v] for v in found)))


def max_clique(g: UndirectedGraph) -> CliqueResult:
    """Clique number of ``g`` together with one maximum clique."""
    return _run(g, None)


def has_clique_of_size(g: UndirectedGraph, s: int) -> tuple[bool, tuple[int, ...] | None]:
    """Decide whether ``g`` contains K_s; the witness is a clique of size >= s when it does."""
    if s < 0:
        raise CliqueError(f"clique size must be non-negative, got {s}")
    if s == 0:
        return True, ()
    if s > g.n:
        return False, None
    res = _run(g, s)
    if res.size >= s:
        return True, res.witness
    return False, None


def clique_number(g: UndirectedGraph) -> int:
    return max_clique(g).size


def clique_number_within(adj: list[int] | tuple[int, ...], cand: int, floor: int = 0) -> int:
    """Clique number of the subgraph induced by bitmask ``cand``, or ``floor`` if that is larger.

    Works on raw adjacency rows without renumbering; meant for the many tiny
    queries issued by the order search.
    """
    if not cand:
        return floor
    if cand & (cand - 1) == 0:
        return max(1, floor)
    search = _Search(adj, floor, None)  # type: ignore[arg-type]
    search.expand([], cand)
    return search.best_size


BRUTE_LIMIT = 20


def max_clique_brute(g: UndirectedGraph) -> CliqueResult:
    """Exhaustive subset enumeration; independent of the branch and bound."""
    n = g.n
    if n > BRUTE_LIMIT:
        raise CliqueError(f"brute force limited to {BRUTE_LIMIT} vertices, got {n}")
    if n == 0:
        return CliqueResult(0, ())
    for size in range(n, 0, -1):
        for subset in combinations(range(n), size):
            if all(g.has_edge(u, w) for u, w in combinations(subset, 2)):
                return CliqueResult(size, subset)
    raise AssertionError("unreachable: a single vertex is always a clique")

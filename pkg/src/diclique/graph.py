"""Directed and undirected graphs, linear orders and backedge graphs.

Vertices are dense integer ids ``0..n-1``.  Adjacency is kept both as a
frozen arc set (O(1) membership) and as per-vertex bitmask rows stored in
Python ints, which is what the clique and order-search kernels consume.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised on malformed graphs, orders or graph files."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class DirectedGraph:
    n: int
    arcs: frozenset[tuple[int, int]]
    out_masks: tuple[int, ...] = field(repr=False, compare=False)
    in_masks: tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "DirectedGraph":
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        arc_set = set()
        out = [0] * n
        inn = [0] * n
        for u, w in arcs:
            u, w = int(u), int(w)
            if not (0 <= u < n and 0 <= w < n):
                raise GraphError(f"arc ({u}, {w}) out of range for n={n}")
            if u == w:
                raise GraphError(f"loop at vertex {u}")
            arc_set.add((u, w))
            out[u] |= 1 << w
            inn[w] |= 1 << u
        return cls(n, frozenset(arc_set), tuple(out), tuple(inn))

    def has_arc(self, u: int, w: int) -> bool:
        return (u, w) in self.arcs

    def out_neighbors(self, u: int) -> list[int]:
        return list(iter_bits(self.out_masks[u]))

    def in_neighbors(self, u: int) -> list[int]:
        return list(iter_bits(self.in_masks[u]))

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    adj: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "UndirectedGraph":
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        adj = [0] * n
        for u, w in edges:
            if not (0 <= u < n and 0 <= w < n):
                raise GraphError(f"edge ({u}, {w}) out of range for n={n}")
            if u == w:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << w
            adj[w] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def complete(cls, n: int) -> "UndirectedGraph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    def has_edge(self, u: int, w: int) -> bool:
        return bool(self.adj[u] >> w & 1)

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in iter_bits(self.adj[u]) if u < w]

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, w) for i, u in enumerate(vs) for w in vs[i + 1:])


class LinearOrder:
    """A permutation of ``range(n)``; ``sequence[r]`` is the vertex of rank ``r``."""

    __slots__ = ("sequence", "rank")

    def __init__(self, sequence: Iterable[int]):
        seq = tuple(int(v) for v in sequence)
        n = len(seq)
        rank = [-1] * n
        for r, v in enumerate(seq):
            if not 0 <= v < n or rank[v] != -1:
                raise GraphError(f"not a permutation of 0..{n - 1}: {seq}")
            rank[v] = r
        self.sequence = seq
        self.rank = tuple(rank)

    @classmethod
    def identity(cls, n: int) -> "LinearOrder":
        return cls(range(n))

    def __len__(self) -> int:
        return len(self.sequence)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sequence)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearOrder) and self.sequence == other.sequence

    def __hash__(self) -> int:
        return hash(self.sequence)

    def __repr__(self) -> str:
        return f"LinearOrder({list(self.sequence)})"

    def precedes(self, u: int, w: int) -> bool:
        return self.rank[u] < self.rank[w]

    def reversed(self) -> "LinearOrder":
        return LinearOrder(reversed(self.sequence))

    def restrict(self, subset: Sequence[int]) -> "LinearOrder":
        """Order induced on ``subset``, relabelled the way ``induced_subgraph`` does."""
        relabel = {v: i for i, v in enumerate(sorted(subset))}
        return LinearOrder(relabel[v] for v in self.sequence if v in relabel)


def backedge_graph(g: DirectedGraph, order: LinearOrder) -> UndirectedGraph:
    """Undirected graph with edge {u, w} whenever (u, w) is an arc and w precedes u."""
    if len(order) != g.n:
        raise GraphError(f"order has {len(order)} vertices, graph has {g.n}")
    adj = [0] * g.n
    placed = 0
    out = g.out_masks
    for u in order.sequence:
        back = out[u] & placed
        if back:
            adj[u] |= back
            bit = 1 << u
            for w in iter_bits(back):
                adj[w] |= bit
        placed |= 1 << u
    return UndirectedGraph(g.n, tuple(adj))


def topological_order(g: DirectedGraph) -> list[int] | None:
    """Kahn's algorithm, smallest id first; None when a directed cycle exists."""
    indeg = [m.bit_count() for m in g.in_masks]
    ready = [v for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(ready)
    result = []
    while ready:
        u = heapq.heappop(ready)
        result.append(u)
        for w in iter_bits(g.out_masks[u]):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    return result if len(result) == g.n else None


def is_transitive(g: DirectedGraph) -> bool:
    # an antiparallel pair is a 2-cycle, which Kahn's algorithm detects as well
    return topological_order(g) is not None


def is_tournament(g: DirectedGraph) -> bool:
    full = (1 << g.n) - 1
    for v in range(g.n):
        out, inn = g.out_masks[v], g.in_masks[v]
        if out & inn or (out | inn) != full & ~(1 << v):
            return False
    return True


def make_transitive_tournament(n: int) -> DirectedGraph:
    return DirectedGraph.from_arcs(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def make_complete_digraph(n: int) -> DirectedGraph:
    return DirectedGraph.from_arcs(n, ((i, j) for i in range(n) for j in range(n) if i != j))


def make_directed_cycle(n: int) -> DirectedGraph:
    return DirectedGraph.from_arcs(n, ((i, (i + 1) % n) for i in range(n)) if n > 1 else ())


def make_random_tournament(n: int, seed: int | random.Random) -> DirectedGraph:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            arcs.append((i, j) if rng.random() < 0.5 else (j, i))
    return DirectedGraph.from_arcs(n, arcs)


def make_random_digraph(n: int, p: float, seed: int | random.Random) -> DirectedGraph:
    """Each of the n(n-1) possible arcs present independently with probability p."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    arcs = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < p]
    return DirectedGraph.from_arcs(n, arcs)


def tournament_from_bits(n: int, bits: int) -> DirectedGraph:
    """Tournament whose k-th pair (i<j, lexicographic) is oriented i->j iff bit k is set."""
    arcs = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            arcs.append((i, j) if bits >> k & 1 else (j, i))
            k += 1
    return DirectedGraph.from_arcs(n, arcs)


def induced_subgraph(g: DirectedGraph, subset: Iterable[int]) -> DirectedGraph:
    """Subgraph on ``subset``; vertices relabelled densely in increasing id order."""
    verts = sorted(set(subset))
    for v in verts:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    relabel = {v: i for i, v in enumerate(verts)}
    sub = mask_of(verts)
    arcs = [
        (relabel[u], relabel[w])
        for u in verts
        for w in iter_bits(g.out_masks[u] & sub)
    ]
    return DirectedGraph.from_arcs(len(verts), arcs)


def relabel(g: DirectedGraph, perm: Sequence[int]) -> DirectedGraph:
    """Graph with vertex v renamed to perm[v]."""
    return DirectedGraph.from_arcs(g.n, ((perm[u], perm[w]) for u, w in g.arcs))


def underlying_graph(g: DirectedGraph) -> UndirectedGraph:
    """Pairs carrying at least one arc."""
    return UndirectedGraph(g.n, tuple(o | i for o, i in zip(g.out_masks, g.in_masks)))


# --- text formats -------------------------------------------------------------


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        yield lineno, fields


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphError(f"line {lineno}: expected integer, got {tok!r}") from None


def parse_digraph(text: str) -> DirectedGraph:
    """Read ``p dgf <n> <m>`` followed by ``a <u> <v>`` lines (1-indexed)."""
    n = m = None
    arcs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, f in _lines(text):
        if f[0] == "p":
            if n is not None:
                raise GraphError(f"line {lineno}: duplicate header")
            if len(f) != 4 or f[1] != "dgf":
                raise GraphError(f"line {lineno}: expected 'p dgf <n> <m>'")
            n, m = _int(f[2], lineno), _int(f[3], lineno)
        elif f[0] == "a":
            if n is None:
                raise GraphError(f"line {lineno}: arc before header")
            if len(f) != 3:
                raise GraphError(f"line {lineno}: expected 'a <u> <v>'")
            u, w = _int(f[1], lineno) - 1, _int(f[2], lineno) - 1
            if not (0 <= u < n and 0 <= w < n):
                raise GraphError(f"line {lineno}: vertex out of range")
            if u == w:
                raise GraphError(f"line {lineno}: loop")
            if (u, w) in seen:
                raise GraphError(f"line {lineno}: duplicate arc")
            seen.add((u, w))
            arcs.append((u, w))
        else:
            raise GraphError(f"line {lineno}: unknown line type {f[0]!r}")
    if n is None:
        raise GraphError("missing 'p dgf' header")
    if len(arcs) != m:
        raise GraphError(f"header declares {m} arcs, found {len(arcs)}")
    return DirectedGraph.from_arcs(n, arcs)


def format_digraph(g: DirectedGraph, comments: Sequence[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p dgf {g.n} {len(g.arcs)}")
    out.extend(f"a {u + 1} {w + 1}" for u, w in g.sorted_arcs())
    return "\n".join(out) + "\n"


def parse_order(text: str, n: int | None = None) -> LinearOrder:
    """Read ``o <v1> ... <vn>`` (1-indexed, smallest rank first)."""
    body = [(ln, f) for ln, f in _lines(text)]
    if len(body) != 1 or body[0][1][0] != "o":
        raise GraphError("order file must contain exactly one 'o ...' line")
    lineno, f = body[0]
    verts = [_int(tok, lineno) - 1 for tok in f[1:]]
    if n is not None and len(verts) != n:
        raise GraphError(f"order lists {len(verts)} vertices, expected {n}")
    return LinearOrder(verts)


def format_order(order: LinearOrder) -> str:
    return "o " + " ".join(str(v + 1) for v in order.sequence) + "\n"


def parse_undirected(text: str) -> UndirectedGraph:
    """DIMACS ``p edge <n> <m>`` with ``e <u> <v>`` lines."""
    n = m = None
    edges = []
    for lineno, f in _lines(text):
        if f[0] == "p":
            if len(f) != 4 or f[1] not in ("edge", "col"):
                raise GraphError(f"line {lineno}: expected 'p edge <n> <m>'")
            n, m = _int(f[2], lineno), _int(f[3], lineno)
        elif f[0] == "e":
            if n is None or len(f) != 3:
                raise GraphError(f"line {lineno}: malformed edge line")
            u, w = _int(f[1], lineno) - 1, _int(f[2], lineno) - 1
            if not (0 <= u < n and 0 <= w < n) or u == w:
                raise GraphError(f"line {lineno}: bad edge")
            edges.append((u, w))
        else:
            raise GraphError(f"line {lineno}: unknown line type {f[0]!r}")
    if n is None:
        raise GraphError("missing 'p edge' header")
    g = UndirectedGraph.from_edges(n, edges)
    if g.edge_count != m:
        raise GraphError(f"header declares {m} edges, found {g.edge_count}")
    return g


def format_undirected(g: UndirectedGraph) -> str:
    edges = g.edges()
    out = [f"p edge {g.n} {len(edges)}"]
    out.extend(f"e {u + 1} {w + 1}" for u, w in edges)
    return "\n".join(out) + "\n"

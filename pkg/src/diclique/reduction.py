"""Compile a two-level 3-CNF instance into a directed graph and threshold t = 2c - 1.

Gadget orientations
-------------------
Binary gadget for an occurrence of x_i in clause k (t >= 3):

* ``A'`` (t-2), ``AF`` (t-1), ``AT`` (t-1) are complete digraphs;
* ``w`` is joined by antiparallel pairs to AF and AT, ``xF`` to AF,
  ``xT`` to AT, and each of ``x``, ``xF``, ``xT`` to A';
* single arcs ``xF -> w``, ``w -> xT``, ``xT -> xF``;
* red arcs ``x -> xF`` and ``xT -> x``.

A K_{t+1}-free order must put xF before w before xT, and must not put x
strictly between xF and xT, so exactly one red arc is a backedge:
{x, xT} when x comes first, {x, xF} when x comes last.

Copy gadget for occurrences k < l of x_i: a middle binary gadget (kl) plus
complete digraphs A1..A4 (t-3 each), each joined by antiparallel pairs to
four named vertices, which are also pairwise antiparallel apart from the
red pair inside each binary gadget:

* A1: x(k), xF(k), x(kl), xT(kl)
* A2: x(k), xT(k), x(kl), xF(kl)
* A3: x(kl), xT(kl), x(l), xF(l)
* A4: x(kl), xF(kl), x(l), xT(l)

Every arc outside the binary gadgets' five single arcs is antiparallel, so
a backedge graph is determined by the relative order of x, xF, w, xT in
each binary gadget.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache
from itertools import combinations
from typing import Iterable, Sequence

from .clique import has_clique_of_size
from .formula import X, Y, FormulaInstance, Literal, satisfying_mu
from .graph import DirectedGraph, GraphError, LinearOrder, backedge_graph

MIN_CLAUSES = 7

CLIQUE_KINDS = ("A'", "AF", "AT", "A1", "A2", "A3", "A4")
NAMED_KINDS = ("x", "xF", "xT", "w")
ROLE_KINDS = NAMED_KINDS + CLIQUE_KINDS + ("yA", "yB")


class ReductionError(ValueError):
    pass


class NotFreeError(ReductionError):
    """The backedge graph contains K_{2c}; carries the clique found."""

    def __init__(self, clique: Sequence[int]):
        super().__init__(f"backedge graph contains a clique of size {len(clique)}")
        self.clique = tuple(clique)


class InconsistentRedEdges(ReductionError):
    pass


@dataclass(frozen=True)
class VertexRole:
    kind: str
    owner: tuple[int, ...]  # (i, k) occurrence gadget, (i, k, l) copy gadget, (j, k) Y pair; 0-based
    member: int | None = None

    def __str__(self) -> str:
        parts = [self.kind, *(str(o + 1) for o in self.owner)]
        if self.member is not None:
            parts.append(str(self.member + 1))
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "VertexRole":
        fields = text.split()
        if not fields or fields[0] not in ROLE_KINDS:
            raise ReductionError(f"unknown role {text!r}")
        kind = fields[0]
        try:
            nums = [int(f) - 1 for f in fields[1:]]
        except ValueError:
            raise ReductionError(f"bad role {text!r}") from None
        if kind in CLIQUE_KINDS:
            if len(nums) < 3:
                raise ReductionError(f"bad role {text!r}")
            return cls(kind, tuple(nums[:-1]), nums[-1])
        return cls(kind, tuple(nums))


@dataclass(frozen=True)
class BinaryGadget:
    owner: tuple[int, ...]
    x: int
    xF: int
    xT: int
    w: int
    a_prime: tuple[int, ...]
    a_f: tuple[int, ...]
    a_t: tuple[int, ...]

    @property
    def internal(self) -> tuple[int, ...]:
        return self.a_prime + self.a_f + self.a_t

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.x, self.xF, self.xT, self.w) + self.internal


@dataclass(frozen=True)
class CopyGadget:
    owner: tuple[int, int, int]
    middle: BinaryGadget
    a: tuple[tuple[int, ...], ...]  # A1..A4

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.middle.vertices + tuple(v for block in self.a for v in block)


@dataclass(frozen=True)
class Group:
    clause: int
    literal: Literal
    vertices: tuple[int, int]


@dataclass(frozen=True)
class OrderConstraint:
    precedences: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "OrderConstraint":
        return cls(frozenset(pairs))

    def closure(self) -> dict[int, set[int]]:
        """Transitive closure: v -> everything forced after v.  Raises on cycles."""
        succ: dict[int, set[int]] = {}
        for u, w in self.precedences:
            succ.setdefault(u, set()).add(w)
            succ.setdefault(w, set())
        closed = {}
        for start in succ:
            seen: set[int] = set()
            stack = list(succ[start])
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                stack.extend(succ[v])
            if start in seen:
                raise ReductionError(f"cyclic precedence constraints through vertex {start}")
            closed[start] = seen
        return closed


class _Builder:
    def __init__(self):
        self.roles: list[VertexRole] = []
        self.arcs: set[tuple[int, int]] = set()

    def vertex(self, role: VertexRole) -> int:
        self.roles.append(role)
        return len(self.roles) - 1

    def block(self, kind: str, owner: tuple[int, ...], size: int) -> tuple[int, ...]:
        ids = tuple(self.vertex(VertexRole(kind, owner, m)) for m in range(size))
        for u, w in combinations(ids, 2):
            self.both(u, w)
        return ids

    def arc(self, u: int, w: int) -> None:
        self.arcs.add((u, w))

    def both(self, u: int, w: int) -> None:
        self.arcs.add((u, w))
        self.arcs.add((w, u))

    def join(self, us: Iterable[int], ws: Iterable[int]) -> None:
        ws = tuple(ws)
        for u in us:
            for w in ws:
                self.both(u, w)

    def binary(self, t: int, owner: tuple[int, ...]) -> BinaryGadget:
        x = self.vertex(VertexRole("x", owner))
        xF = self.vertex(VertexRole("xF", owner))
        xT = self.vertex(VertexRole("xT", owner))
        w = self.vertex(VertexRole("w", owner))
        a_prime = self.block("A'", owner, t - 2)
        a_f = self.block("AF", owner, t - 1)
        a_t = self.block("AT", owner, t - 1)
        self.join([w], a_f + a_t)
        self.join([xF], a_f)
        self.join([xT], a_t)
        self.join([x, xF, xT], a_prime)
        self.arc(xF, w)
        self.arc(w, xT)
        self.arc(xT, xF)
        self.arc(x, xF)
        self.arc(xT, x)
        return BinaryGadget(owner, x, xF, xT, w, a_prime, a_f, a_t)

    def copy(self, t: int, gk: BinaryGadget, gl: BinaryGadget, owner: tuple[int, int, int]) -> CopyGadget:
        mid = self.binary(t, owner)
        blocks = []
        for idx, quad in enumerate(copy_gadget_quads(gk, mid, gl)):
            ids = self.block(f"A{idx + 1}", owner, t - 3)
            self.join(ids, quad)
            for u, w in combinations(quad, 2):
                if not _is_red_pair(u, w, (gk, mid, gl)):
                    self.both(u, w)
            blocks.append(ids)
        return CopyGadget(owner, mid, tuple(blocks))

    def graph(self) -> DirectedGraph:
        return DirectedGraph.from_arcs(len(self.roles), self.arcs)


def copy_gadget_quads(
    gk: BinaryGadget, mid: BinaryGadget, gl: BinaryGadget
) -> tuple[tuple[int, int, int, int], ...]:
    """The four named vertices surrounding A1..A4."""
    return (
        (gk.x, gk.xF, mid.x, mid.xT),
        (gk.x, gk.xT, mid.x, mid.xF),
        (mid.x, mid.xT, gl.x, gl.xF),
        (mid.x, mid.xF, gl.x, gl.xT),
    )


def _is_red_pair(u: int, w: int, gadgets: Sequence[BinaryGadget]) -> bool:
    return any({u, w} in ({g.x, g.xF}, {g.x, g.xT}) for g in gadgets)


# --- standalone gadgets --------------------------------------------------------


@dataclass(frozen=True)
class GadgetGraph:
    graph: DirectedGraph
    roles: tuple[VertexRole, ...]
    binaries: tuple[BinaryGadget, ...]
    copy: CopyGadget | None = None


def build_binary_gadget(t: int) -> GadgetGraph:
    """Standalone binary gadget on 3t vertices."""
    if t < 3:
        raise ReductionError(f"binary gadget needs t >= 3, got {t}")
    b = _Builder()
    g = b.binary(t, (0, 0))
    return GadgetGraph(b.graph(), tuple(b.roles), (g,))


def build_copy_gadget(t: int) -> GadgetGraph:
    """Two occurrence gadgets (clauses 1 and 2 of x_1) plus the copy gadget linking them.

    No clause wiring is added; ``binaries`` is (k, l, middle).
    """
    if t < 4:
        raise ReductionError(f"copy gadget needs t >= 4, got {t}")
    b = _Builder()
    gk = b.binary(t, (0, 0))
    gl = b.binary(t, (0, 1))
    cg = b.copy(t, gk, gl, (0, 0, 1))
    return GadgetGraph(b.graph(), tuple(b.roles), (gk, gl, cg.middle), cg)


def binary_block(g: BinaryGadget, value: bool) -> list[int]:
    """Named vertices ordered per the truth value, then internal members by id."""
    if value:
        named = [g.x, g.xF, g.w, g.xT]
    else:
        named = [g.xF, g.w, g.xT, g.x]
    return named + sorted(g.internal)


def red_edges(bg, g: BinaryGadget) -> tuple[bool, bool]:
    """(F-edge present, T-edge present) in the undirected backedge graph ``bg``."""
    return bg.has_edge(g.x, g.xF), bg.has_edge(g.x, g.xT)


# --- full reduction -------------------------------------------------------------


@dataclass
class ReductionArtifact:
    formula: FormulaInstance
    graph: DirectedGraph
    t: int
    roles: tuple[VertexRole, ...]
    groups: tuple[tuple[Group, Group, Group], ...]
    binaries: dict[tuple[int, int], BinaryGadget] = field(repr=False)
    copies: dict[tuple[int, int, int], CopyGadget] = field(repr=False)
    y_vertices: tuple[int, ...] = field(repr=False)

    @property
    def c(self) -> int:
        return (self.t + 1) // 2

    @property
    def n(self) -> int:
        return self.graph.n

    def all_binaries(self) -> list[BinaryGadget]:
        """Occurrence gadgets then copy-gadget middles, in id order."""
        return list(self.binaries.values()) + [cg.middle for cg in self.copies.values()]

    def gadgets_of(self, i: int) -> list[BinaryGadget]:
        occ = [g for (vi, _), g in self.binaries.items() if vi == i]
        mids = [cg.middle for (vi, _, _), cg in self.copies.items() if vi == i]
        return occ + mids


def expected_vertex_count(f: FormulaInstance) -> int:
    t = 2 * f.c - 1
    x_occ = sum(1 for _ in f.occurrences(X))
    y_occ = sum(1 for _ in f.occurrences(Y))
    per_var = [0] * f.a
    for _, _, lit in f.occurrences(X):
        per_var[lit.var] += 1
    pairs = sum(k * (k - 1) // 2 for k in per_var)
    return 3 * t * x_occ + (7 * t - 12) * pairs + 2 * y_occ


def compatible(g1: Group, g2: Group) -> bool:
    """Groups in different clauses are wired unless they are opposite occurrences of one variable."""
    l1, l2 = g1.literal, g2.literal
    return not (l1.level == l2.level and l1.var == l2.var and l1.negated != l2.negated)


def compile_formula(f: FormulaInstance) -> ReductionArtifact:
    if f.c < MIN_CLAUSES:
        raise ReductionError(f"reduction requires c > 6 clauses, got {f.c}")
    _gadget_self_test()
    t = 2 * f.c - 1
    b = _Builder()
    binaries: dict[tuple[int, int], BinaryGadget] = {}
    for k, _, lit in f.occurrences(X):
        binaries[(lit.var, k)] = b.binary(t, (lit.var, k))
    copies: dict[tuple[int, int, int], CopyGadget] = {}
    for i in range(f.a):
        occ = sorted(k for (vi, k) in binaries if vi == i)
        for k, l in combinations(occ, 2):
            copies[(i, k, l)] = b.copy(t, binaries[(i, k)], binaries[(i, l)], (i, k, l))
    y_vertices = []
    groups = []
    for k, clause in enumerate(f.clauses):
        row = []
        for lit in clause:
            if lit.level == Y:
                ya = b.vertex(VertexRole("yA", (lit.var, k)))
                yb = b.vertex(VertexRole("yB", (lit.var, k)))
                b.both(ya, yb)
                y_vertices += [ya, yb]
                row.append(Group(k, lit, (ya, yb)))
            else:
                g = binaries[(lit.var, k)]
                row.append(Group(k, lit, (g.x, g.xF if lit.negated else g.xT)))
        groups.append(tuple(row))
    for r1, r2 in combinations(groups, 2):
        for g1 in r1:
            for g2 in r2:
                if compatible(g1, g2):
                    b.join(g1.vertices, g2.vertices)
    return ReductionArtifact(
        formula=f,
        graph=b.graph(),
        t=t,
        roles=tuple(b.roles),
        groups=tuple(groups),
        binaries=binaries,
        copies=copies,
        y_vertices=tuple(y_vertices),
    )


def pad_formula(f: FormulaInstance, min_clauses: int = MIN_CLAUSES) -> FormulaInstance:
    """Repeat existing clauses cyclically until there are ``min_clauses``.

    A repeated clause leaves the formula's truth value unchanged.
    """
    if f.c == 0:
        raise ReductionError("cannot pad a formula without clauses")
    clauses = list(f.clauses)
    k = 0
    while len(clauses) < min_clauses:
        clauses.append(f.clauses[k % f.c])
        k += 1
    return FormulaInstance(f.a, f.b, tuple(clauses))


def witness_order(art: ReductionArtifact, nu: Sequence[bool]) -> LinearOrder:
    """Order from the completeness argument: per-gadget blocks by gadget id, Y vertices last."""
    if len(nu) != art.formula.a:
        raise ReductionError(f"valuation has {len(nu)} bits, expected {art.formula.a}")
    seq: list[int] = []
    for (i, _), g in art.binaries.items():
        seq += binary_block(g, bool(nu[i]))
    for (i, _, _), cg in art.copies.items():
        seq += binary_block(cg.middle, bool(nu[i]))
        for block in cg.a:
            seq += block
    seq += sorted(art.y_vertices)
    return LinearOrder(seq)


def is_backedge_clique(g: DirectedGraph, order: LinearOrder, vertices: Sequence[int]) -> bool:
    """Pairwise backedge check straight from arcs and ranks."""
    rank = order.rank
    for u, w in combinations(vertices, 2):
        if not ((g.has_arc(u, w) and rank[w] < rank[u]) or (g.has_arc(w, u) and rank[u] < rank[w])):
            return False
    return True


def build_soundness_clique(
    art: ReductionArtifact, nu: Sequence[bool], mu: Sequence[bool], order: LinearOrder
) -> tuple[int, ...]:
    """One satisfied group per clause; a 2c-clique whenever ``order``'s red edges agree with nu."""
    f = art.formula
    if len(nu) != f.a or len(mu) != f.b:
        raise ReductionError("valuation lengths do not match the formula")
    if not f.satisfied_by(nu, mu):
        raise ReductionError("(nu, mu) does not satisfy every clause")
    if len(order) != art.n:
        raise GraphError(f"order has {len(order)} vertices, graph has {art.n}")
    rank = order.rank
    chosen: list[int] = []
    for row in art.groups:
        group = next(gr for gr in row if gr.literal.value(nu, mu))
        u, w = group.vertices
        if group.literal.level == X:
            g = art.binaries[(group.literal.var, group.clause)]
            # red arcs: x -> xF is a backedge iff xF first; xT -> x iff x first
            present = rank[g.xF] < rank[g.x] if group.literal.negated else rank[g.x] < rank[g.xT]
            if not present:
                raise InconsistentRedEdges(
                    f"clause {group.clause + 1}: red edge for {group.literal} absent under the order"
                )
        chosen += [u, w]
    return tuple(sorted(chosen))


def extract_valuation(
    art: ReductionArtifact, order: LinearOrder, require_free: bool = True
) -> tuple[bool, ...]:
    """Read nu_i from the red backedges of x_i's gadgets.

    With ``require_free`` the backedge graph must be K_{2c}-free
    (``NotFreeError`` otherwise).  Every gadget of a variable must carry
    exactly one red edge and all must agree, else ``InconsistentRedEdges``.
    """
    if len(order) != art.n:
        raise GraphError(f"order has {len(order)} vertices, graph has {art.n}")
    bg = backedge_graph(art.graph, order)
    if require_free:
        found, clique = has_clique_of_size(bg, 2 * art.c)
        if found:
            raise NotFreeError(clique or ())
    nu = []
    for i in range(art.formula.a):
        values = set()
        for g in art.gadgets_of(i):
            f_edge, t_edge = red_edges(bg, g)
            if f_edge == t_edge:
                raise InconsistentRedEdges(f"gadget {VertexRole('x', g.owner)}: {int(f_edge) + int(t_edge)} red edges")
            values.add(t_edge)
        if len(values) > 1:
            raise InconsistentRedEdges(f"occurrences of x{i + 1} disagree")
        nu.append(values.pop() if values else False)
    return tuple(nu)


def check_clique_obligation(
    g: DirectedGraph, clique: Iterable[int], constraints: OrderConstraint
) -> bool:
    """Is ``clique`` a backedge clique under every order obeying ``constraints``?

    Each pair needs an antiparallel pair of arcs, or a single arc whose
    head is forced before its tail by the transitive closure.
    """
    after = constraints.closure()
    verts = list(clique)
    for u, w in combinations(verts, 2):
        fwd, bwd = g.has_arc(u, w), g.has_arc(w, u)
        if fwd and bwd:
            continue
        if fwd:
            if u not in after.get(w, ()):
                return False
        elif bwd:
            if w not in after.get(u, ()):
                return False
        else:
            return False
    return True


def binary_obligations(g: BinaryGadget) -> list[tuple[str, tuple[int, ...], OrderConstraint]]:
    """The three cliques a K_{t+1}-free order must avoid inside one binary gadget."""
    return [
        ("AF+xF+w if w before xF", g.a_f + (g.xF, g.w), OrderConstraint.of((g.w, g.xF))),
        ("AT+xT+w if xT before w", g.a_t + (g.xT, g.w), OrderConstraint.of((g.xT, g.w))),
        (
            "A'+xF+x+xT if xF before x before xT",
            g.a_prime + (g.xF, g.x, g.xT),
            OrderConstraint.of((g.xF, g.x), (g.x, g.xT)),
        ),
    ]


def red_f_constraint(g: BinaryGadget) -> tuple[int, int]:
    return (g.xF, g.x)


def red_t_constraint(g: BinaryGadget) -> tuple[int, int]:
    return (g.x, g.xT)


def copy_obligations(gg: GadgetGraph) -> list[tuple[str, list[tuple[str, tuple[int, ...], OrderConstraint]]]]:
    """The eight steps of the copy argument (four per direction), each a list of obligations."""
    assert gg.copy is not None
    gk, gl, mid = gg.binaries
    a1, a2, a3, a4 = gg.copy.a
    q1, q2, q3, q4 = copy_gadget_quads(gk, mid, gl)
    return [
        ("F(k) and T(kl) give A1 clique", [
            ("A1", a1 + q1, OrderConstraint.of(red_f_constraint(gk), red_t_constraint(mid))),
        ]),
        ("binary claim on middle", binary_obligations(mid)),
        ("F(kl) and T(l) give A4 clique", [
            ("A4", a4 + q4, OrderConstraint.of(red_f_constraint(mid), red_t_constraint(gl))),
        ]),
        ("binary claim on l", binary_obligations(gl)),
        ("T(k) and F(kl) give A2 clique", [
            ("A2", a2 + q2, OrderConstraint.of(red_t_constraint(gk), red_f_constraint(mid))),
        ]),
        ("binary claim on middle (T side)", binary_obligations(mid)),
        ("T(kl) and F(l) give A3 clique", [
            ("A3", a3 + q3, OrderConstraint.of(red_t_constraint(mid), red_f_constraint(gl))),
        ]),
        ("binary claim on l (T side)", binary_obligations(gl)),
    ]


@cache
def _gadget_self_test() -> None:
    """Static obligations and witness orders at t = 4; rejects a broken gadget wiring."""
    gg = build_copy_gadget(4)
    for _, obligations in copy_obligations(gg):
        for name, verts, cons in obligations:
            if len(verts) != 5 or not check_clique_obligation(gg.graph, verts, cons):
                raise AssertionError(f"gadget self-test: obligation {name!r} fails")
    for value in (False, True):
        seq = []
        for g in gg.binaries:
            seq += binary_block(g, value)
        assert gg.copy is not None
        for block in gg.copy.a:
            seq += block
        found, _ = has_clique_of_size(backedge_graph(gg.graph, LinearOrder(seq)), 5)
        if found:
            raise AssertionError(f"gadget self-test: witness order for {value} has K_5")


# --- artifact files -----------------------------------------------------------


def format_labels(art: ReductionArtifact) -> str:
    """Sidecar file: ``t``, ``v <a> <b>``, one ``l <id> <role>`` per vertex, ``g`` group lines."""
    out = [f"t {art.t}", f"v {art.formula.a} {art.formula.b}"]
    out += [f"l {v + 1} {role}" for v, role in enumerate(art.roles)]
    for row in art.groups:
        for gr in row:
            out.append(f"g {gr.clause + 1} {gr.literal} {gr.vertices[0] + 1} {gr.vertices[1] + 1}")
    return "\n".join(out) + "\n"


def load_artifact(graph: DirectedGraph, labels_text: str) -> ReductionArtifact:
    """Rebuild an artifact from a compiled graph and its labels sidecar."""
    t = a = b = None
    roles: dict[int, VertexRole] = {}
    group_rows: dict[int, list[Group]] = {}
    for lineno, raw in enumerate(labels_text.splitlines(), start=1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        try:
            if fields[0] == "t":
                t = int(fields[1])
            elif fields[0] == "v":
                a, b = int(fields[1]), int(fields[2])
            elif fields[0] == "l":
                roles[int(fields[1]) - 1] = VertexRole.parse(" ".join(fields[2:]))
            elif fields[0] == "g":
                k = int(fields[1]) - 1
                lit = Literal.parse(fields[2])
                group_rows.setdefault(k, []).append(Group(k, lit, (int(fields[3]) - 1, int(fields[4]) - 1)))
            else:
                raise ReductionError(f"unknown line type {fields[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ReductionError(f"labels line {lineno}: {exc}") from None
    if t is None or a is None or b is None:
        raise ReductionError("labels file lacks 't' or 'v' header")
    if sorted(roles) != list(range(graph.n)):
        raise ReductionError(f"labels cover {len(roles)} vertices, graph has {graph.n}")
    rows = [group_rows[k] for k in sorted(group_rows)]
    if sorted(group_rows) != list(range(len(rows))) or any(len(r) != 3 for r in rows):
        raise ReductionError("group lines must give three groups for every clause")
    f = FormulaInstance(a, b, tuple(tuple(gr.literal for gr in row) for row in rows))
    if 2 * f.c - 1 != t:
        raise ReductionError(f"t = {t} does not match {f.c} clauses")

    named: dict[tuple[int, ...], dict[str, int]] = {}
    members: dict[tuple[tuple[int, ...], str], list[tuple[int, int]]] = {}
    y_vertices = []
    for v in range(graph.n):
        role = roles[v]
        if role.kind in ("yA", "yB"):
            y_vertices.append(v)
        elif role.member is None:
            named.setdefault(role.owner, {})[role.kind] = v
        else:
            members.setdefault((role.owner, role.kind), []).append((role.member, v))

    def block(owner, kind):
        return tuple(v for _, v in sorted(members.get((owner, kind), [])))

    def binary(owner):
        nm = named.get(owner, {})
        if set(nm) != set(NAMED_KINDS):
            raise ReductionError(f"gadget {owner} lacks named vertices")
        return BinaryGadget(owner, nm["x"], nm["xF"], nm["xT"], nm["w"],
                            block(owner, "A'"), block(owner, "AF"), block(owner, "AT"))

    binaries = {owner: binary(owner) for owner in sorted(named, key=lambda o: named[o]["x"]) if len(owner) == 2}
    copies = {
        owner: CopyGadget(owner, binary(owner), tuple(block(owner, f"A{j}") for j in range(1, 5)))
        for owner in sorted(named, key=lambda o: named[o]["x"])
        if len(owner) == 3
    }
    return ReductionArtifact(f, graph, t, tuple(roles[v] for v in range(graph.n)),
                             tuple(tuple(r) for r in rows), binaries, copies, tuple(y_vertices))


def find_refuting_mu(art: ReductionArtifact, nu: Sequence[bool]) -> tuple[bool, ...] | None:
    """Inner valuation satisfying every clause under ``nu``, if any."""
    return satisfying_mu(art.formula, nu)

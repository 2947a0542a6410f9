"""Two-level 3-CNF instances: parsing, clause semantics, brute-force ground truth.

An instance has existential variables x_1..x_a, universally-blocked
variables y_1..y_b and clauses of three literals over distinct variables.
The instance is a Yes-instance when some valuation of X leaves the formula
unsatisfiable over Y.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

import numpy as np

X = "x"
Y = "y"

ENUM_LIMIT = 26


class FormulaError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Literal:
    level: str
    var: int  # 0-based within its level
    negated: bool = False

    def __post_init__(self):
        if self.level not in (X, Y):
            raise FormulaError(f"unknown level {self.level!r}")
        if self.var < 0:
            raise FormulaError(f"negative variable index {self.var}")

    def value(self, nu: Sequence[bool], mu: Sequence[bool]) -> bool:
        bit = (nu if self.level == X else mu)[self.var]
        return not bit if self.negated else bool(bit)

    def __str__(self) -> str:
        return f"{'-' if self.negated else '+'}{self.level}{self.var + 1}"

    @classmethod
    def parse(cls, text: str) -> "Literal":
        """Inverse of ``str``: ``+x3`` / ``-y1``."""
        if len(text) < 3 or text[0] not in "+-" or text[1] not in (X, Y):
            raise FormulaError(f"bad literal {text!r}")
        return cls(text[1], int(text[2:]) - 1, text[0] == "-")


Clause = tuple[Literal, Literal, Literal]


def pos(i: int) -> Literal:
    """Positive occurrence of x_i (1-based, for readable fixtures)."""
    return Literal(X, i - 1)


def neg(i: int) -> Literal:
    return Literal(X, i - 1, True)


def ypos(j: int) -> Literal:
    return Literal(Y, j - 1)


def yneg(j: int) -> Literal:
    return Literal(Y, j - 1, True)


@dataclass(frozen=True)
class FormulaInstance:
    a: int
    b: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        for k, clause in enumerate(self.clauses):
            if len(clause) != 3:
                raise FormulaError(f"clause {k + 1}: expected 3 literals, got {len(clause)}")
            keys = {(lit.level, lit.var) for lit in clause}
            if len(keys) != 3:
                raise FormulaError(f"clause {k + 1}: repeated variable")
            for lit in clause:
                bound = self.a if lit.level == X else self.b
                if lit.var >= bound:
                    raise FormulaError(f"clause {k + 1}: variable {lit} out of range")

    @classmethod
    def build(cls, a: int, b: int, clauses: Sequence[Sequence[Literal]]) -> "FormulaInstance":
        return cls(a, b, tuple(tuple(c) for c in clauses))

    @property
    def c(self) -> int:
        return len(self.clauses)

    def occurrences(self, level: str = X) -> Iterator[tuple[int, int, Literal]]:
        """(clause index, position in clause, literal) for every occurrence at ``level``."""
        for k, clause in enumerate(self.clauses):
            for p, lit in enumerate(clause):
                if lit.level == level:
                    yield k, p, lit

    def satisfied_by(self, nu: Sequence[bool], mu: Sequence[bool]) -> bool:
        return all(eval_clause(cl, nu, mu) for cl in self.clauses)


def eval_clause(clause: Sequence[Literal], nu: Sequence[bool], mu: Sequence[bool]) -> bool:
    return any(lit.value(nu, mu) for lit in clause)


def _signed(lit: Literal, a: int) -> int:
    v = lit.var + 1 if lit.level == X else a + lit.var + 1
    return -v if lit.negated else v


def parse_formula(text: str) -> FormulaInstance:
    """Read ``p e2l3cnf <a> <b> <c>`` then clause lines ``l1 l2 l3 0``.

    Variables 1..a are existential, a+1..a+b are the inner level.
    """
    header = None
    clauses: list[Clause] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        if fields[0] == "p":
            if header is not None:
                raise FormulaError(f"line {lineno}: duplicate header")
            if len(fields) != 5 or fields[1] != "e2l3cnf":
                raise FormulaError(f"line {lineno}: expected 'p e2l3cnf <a> <b> <c>'")
            try:
                header = tuple(int(f) for f in fields[2:])
            except ValueError:
                raise FormulaError(f"line {lineno}: non-integer header field") from None
            if min(header) < 0:
                raise FormulaError(f"line {lineno}: negative header field")
            continue
        if header is None:
            raise FormulaError(f"line {lineno}: clause before header")
        a, b, _ = header
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise FormulaError(f"line {lineno}: non-integer literal") from None
        if len(nums) != 4 or nums[-1] != 0 or 0 in nums[:3]:
            raise FormulaError(f"line {lineno}: syntax error, expected three nonzero literals and 0")
        lits = []
        for v in nums[:3]:
            idx = abs(v)
            if idx > a + b:
                raise FormulaError(f"line {lineno}: variable {idx} out of range 1..{a + b}")
            lits.append(Literal(X, idx - 1, v < 0) if idx <= a else Literal(Y, idx - a - 1, v < 0))
        if len({abs(v) for v in nums[:3]}) != 3:
            raise FormulaError(f"line {lineno}: arity violation, repeated variable")
        clauses.append(tuple(lits))
    if header is None:
        raise FormulaError("missing 'p e2l3cnf' header")
    a, b, c = header
    if len(clauses) != c:
        raise FormulaError(f"header declares {c} clauses, found {len(clauses)}")
    return FormulaInstance(a, b, tuple(clauses))


def format_formula(f: FormulaInstance, comments: Sequence[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p e2l3cnf {f.a} {f.b} {f.c}")
    for clause in f.clauses:
        out.append(" ".join(str(_signed(lit, f.a)) for lit in clause) + " 0")
    return "\n".join(out) + "\n"


def _y_columns(b: int) -> np.ndarray:
    """Row m holds the bits of inner valuation m, y_1 as the most significant bit."""
    idx = np.arange(1 << b, dtype=np.int64)
    shifts = np.arange(b - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts) & 1).astype(bool)


def satisfying_mu(f: FormulaInstance, nu: Sequence[bool]) -> tuple[bool, ...] | None:
    """First inner valuation (lexicographic, False < True) satisfying f under ``nu``; None if none."""
    if len(nu) != f.a:
        raise FormulaError(f"valuation has {len(nu)} bits, expected {f.a}")
    if f.b > ENUM_LIMIT:
        raise FormulaError(f"inner enumeration limited to {ENUM_LIMIT} variables")
    residual = []
    for clause in f.clauses:
        if any(lit.level == X and lit.value(nu, ()) for lit in clause):
            continue
        ylits = [lit for lit in clause if lit.level == Y]
        if not ylits:
            return None
        residual.append(ylits)
    cols = _y_columns(f.b)
    ok = np.ones(1 << f.b, dtype=bool)
    for ylits in residual:
        sat = np.zeros(1 << f.b, dtype=bool)
        for lit in ylits:
            sat |= ~cols[:, lit.var] if lit.negated else cols[:, lit.var]
        ok &= sat
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    return tuple(bool(x) for x in cols[hits[0]])


def eval_sigma2(f: FormulaInstance) -> tuple[bool, tuple[bool, ...] | None]:
    """Decide whether some X-valuation makes every Y-valuation falsify a clause.

    Returns (answer, witness); the witness is the lexicographically first
    such valuation (False < True, x_1 most significant), or None on No.
    """
    if f.a + f.b > ENUM_LIMIT:
        raise FormulaError(f"enumeration limited to a+b <= {ENUM_LIMIT}, got {f.a + f.b}")
    for nu in product((False, True), repeat=f.a):
        if satisfying_mu(f, nu) is None:
            return True, nu
    return False, None


def eval_sigma2_naive(f: FormulaInstance) -> bool:
    """Literal double loop over both levels; test oracle for ``eval_sigma2``."""
    return any(
        not any(f.satisfied_by(nu, mu) for mu in product((False, True), repeat=f.b))
        for nu in product((False, True), repeat=f.a)
    )

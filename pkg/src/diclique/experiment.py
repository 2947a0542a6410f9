"""Random-tournament sweeps: directed clique number versus n, written as CSV."""

from __future__ import annotations

import csv
import io
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from statistics import mean
from typing import Iterable, Sequence

import numpy as np

from .graph import make_random_tournament
from .solver import (
    BudgetExhausted,
    SearchBudget,
    diomega_brute,
    diomega_exact,
    heuristic_order,
    lower_bound,
    peeling_order,
)

CSV_FIELDS = ("n", "seed", "method", "diomega", "lower", "upper", "runtime_ms")
METHODS = ("exact", "brute", "heuristic")


@dataclass(frozen=True)
class ExperimentRecord:
    n: int
    seed: int
    method: str
    diomega: int | None  # None when the value was not proven (heuristic or budget hit)
    lower: int
    upper: int
    runtime_ms: float


def derive_seed(root: int, n: int, index: int) -> int:
    """Per-instance seed from the root seed, independent across (n, index)."""
    return int(np.random.SeedSequence(entropy=root, spawn_key=(n, index)).generate_state(1)[0])


def _run_one(args: tuple[int, int, str, SearchBudget]) -> ExperimentRecord:
    n, seed, method, budget = args
    t = make_random_tournament(n, seed)
    start = time.perf_counter()
    if method == "exact":
        try:
            res = diomega_exact(t, budget)
            value, lo, hi = res.value, res.value, res.value
        except BudgetExhausted as exc:
            value, lo, hi = None, exc.lower, exc.upper
    elif method == "brute":
        res = diomega_brute(t)
        value, lo, hi = res.value, res.value, res.value
    elif method == "heuristic":
        _, hi = heuristic_order(t)
        value, lo = None, lower_bound(t)
    else:
        raise ValueError(f"unknown method {method!r}")
    elapsed = (time.perf_counter() - start) * 1000
    return ExperimentRecord(n, seed, method, value, lo, hi, round(elapsed, 3))


def run_sweep(
    n_min: int,
    n_max: int,
    seeds: int,
    root_seed: int = 0,
    method: str = "exact",
    budget: SearchBudget = SearchBudget(),
    threads: int | None = None,
) -> list[ExperimentRecord]:
    """Records ordered by (n, seed index); identical for any worker count."""
    jobs = [
        (n, derive_seed(root_seed, n, i), method, budget)
        for n in range(n_min, n_max + 1)
        for i in range(seeds)
    ]
    workers = threads or os.cpu_count() or 1
    if workers <= 1 or len(jobs) < 2:
        return [_run_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, jobs, chunksize=4))


def write_csv(records: Iterable[ExperimentRecord], fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        row = asdict(rec)
        row["diomega"] = "" if rec.diomega is None else rec.diomega
        writer.writerow(row)


def read_csv(fh) -> list[ExperimentRecord]:
    out = []
    for row in csv.DictReader(fh):
        out.append(ExperimentRecord(
            n=int(row["n"]),
            seed=int(row["seed"]),
            method=row["method"],
            diomega=int(row["diomega"]) if row["diomega"] else None,
            lower=int(row["lower"]),
            upper=int(row["upper"]),
            runtime_ms=float(row["runtime_ms"]),
        ))
    return out


@dataclass(frozen=True)
class SummaryRow:
    n: int
    count: int
    mean: float
    minimum: int
    maximum: int
    sqrt_bound: float
    bound_violations: int  # records above sqrt(2n) or with n < C(value+1, 2)
    block_violations: int = 0  # peeling orders using more than sqrt(2n) blocks


def summarize(records: Sequence[ExperimentRecord], blocks: bool = True) -> list[SummaryRow]:
    """Per-n statistics of the proven values (upper bounds for heuristic records).

    With ``blocks`` each tournament is regenerated from its seed and the
    block count of its peeling order is checked against sqrt(2n) too; the
    bound on the value does not obviously carry over to that count.
    """
    by_n: dict[int, list[int]] = {}
    peel_bad: dict[int, int] = {}
    for rec in records:
        by_n.setdefault(rec.n, []).append(rec.diomega if rec.diomega is not None else rec.upper)
        if blocks:
            _, m = peeling_order(make_random_tournament(rec.n, rec.seed))
            peel_bad[rec.n] = peel_bad.get(rec.n, 0) + (m > math.sqrt(2 * rec.n))
    rows = []
    for n in sorted(by_n):
        vals = by_n[n]
        bound = math.sqrt(2 * n)
        bad = sum(1 for v in vals if v > bound or n < math.comb(v + 1, 2))
        rows.append(SummaryRow(n, len(vals), mean(vals), min(vals), max(vals), bound, bad, peel_bad.get(n, 0)))
    return rows


def render_summary(rows: Sequence[SummaryRow]) -> str:
    buf = io.StringIO()
    buf.write(f"{'n':>4} {'count':>6} {'mean':>7} {'min':>4} {'max':>4} {'sqrt(2n)':>9} {'log2 n':>7} {'viol':>5} {'blocks>':>7}\n")
    for r in rows:
        buf.write(
            f"{r.n:>4} {r.count:>6} {r.mean:>7.3f} {r.minimum:>4} {r.maximum:>4} "
            f"{r.sqrt_bound:>9.3f} {math.log2(r.n):>7.3f} {r.bound_violations:>5} {r.block_violations:>7}\n"
        )
    means = [r.mean for r in rows]
    monotone = all(a <= b for a, b in zip(means, means[1:]))
    buf.write(f"mean nondecreasing in n: {'yes' if monotone else 'no'} (report only)\n")
    return buf.getvalue()

"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 budget exhausted, 3 verification
violation (gadget check failure or a rejected certificate).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .clique import max_clique
from .experiment import METHODS, render_summary, run_sweep, summarize, write_csv
from .formula import FormulaError, eval_sigma2, parse_formula
from .gadget_check import verify_claim1, verify_claim1_exhaustive, verify_claim1_sampled, verify_claim2
from .graph import (
    GraphError,
    backedge_graph,
    format_digraph,
    format_order,
    make_complete_digraph,
    make_directed_cycle,
    make_random_tournament,
    make_transitive_tournament,
    parse_digraph,
    parse_order,
)
from .reduction import (
    InconsistentRedEdges,
    NotFreeError,
    ReductionError,
    build_soundness_clique,
    compile_formula,
    expected_vertex_count,
    extract_valuation,
    find_refuting_mu,
    format_labels,
    load_artifact,
    pad_formula,
    witness_order,
)
from .solver import (
    BudgetExhausted,
    SearchBudget,
    SolverError,
    build_cnf_decision,
    diomega_brute,
    diomega_decide,
    diomega_exact,
    heuristic_order,
    lower_bound,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_VIOLATION = 3

INPUT_ERRORS = (GraphError, FormulaError, ReductionError, SolverError, OSError)


def _read(path: str) -> str:
    return Path(path).read_text()


def _budget(args) -> SearchBudget:
    return SearchBudget(args.budget_nodes, args.budget_seconds)


def _bits(text: str) -> tuple[bool, ...]:
    cleaned = text.replace(" ", "").replace(",", "")
    if any(ch not in "01" for ch in cleaned):
        raise ReductionError(f"valuation must be a string of 0/1, got {text!r}")
    return tuple(ch == "1" for ch in cleaned)


def _fmt_bits(bits: Sequence[bool]) -> str:
    return "".join("1" if b else "0" for b in bits)


def cmd_diomega(args) -> int:
    g = parse_digraph(_read(args.graph))
    budget = _budget(args)
    if args.t is not None:
        try:
            ok, order = diomega_decide(g, args.t, budget, seed=args.seed)
        except BudgetExhausted as exc:
            print(f"budget exhausted: {exc.lower} <= diomega <= {exc.upper}")
            return EXIT_BUDGET
        print("Yes" if ok else "No")
        if ok and order is not None and args.order_out:
            Path(args.order_out).write_text(format_order(order))
        return EXIT_OK
    if args.method == "brute":
        res = diomega_brute(g)
        value, order = res.value, res.witness_order
    elif args.method == "heuristic":
        order, value = heuristic_order(g, seed=args.seed)
        print(f"lower bound: {lower_bound(g)}")
        print(f"upper bound (heuristic): {value}")
        if args.order_out:
            Path(args.order_out).write_text(format_order(order))
        return EXIT_OK
    else:
        try:
            res = diomega_exact(g, budget, seed=args.seed)
        except BudgetExhausted as exc:
            print(f"budget exhausted after {exc.nodes} nodes: {exc.lower} <= diomega <= {exc.upper}")
            if args.order_out and exc.best_order is not None:
                Path(args.order_out).write_text(format_order(exc.best_order))
            return EXIT_BUDGET
        value, order = res.value, res.witness_order
    print(value)
    if args.order_out:
        Path(args.order_out).write_text(format_order(order))
    return EXIT_OK


def cmd_reduce(args) -> int:
    f = parse_formula(_read(args.formula))
    if args.pad:
        f = pad_formula(f)
    art = compile_formula(f)
    prefix = Path(args.prefix)
    prefix.with_suffix(".dgf").write_text(format_digraph(art.graph, [f"reduction output, t={art.t}"]))
    prefix.with_suffix(".labels").write_text(format_labels(art))
    print(f"clauses: {f.c}")
    print(f"t: {art.t}")
    print(f"vertices: {art.n} (closed form {expected_vertex_count(f)})")
    print(f"arcs: {len(art.graph.arcs)}")
    return EXIT_OK


def _load_prefix(prefix: str):
    p = Path(prefix)
    graph = parse_digraph(_read(str(p.with_suffix(".dgf"))))
    return load_artifact(graph, _read(str(p.with_suffix(".labels"))))


def cmd_verify(args) -> int:
    art = _load_prefix(args.prefix)
    size = 2 * art.c
    if args.valuation is not None:
        nu = _bits(args.valuation)
        order = witness_order(art, nu)
        if args.order_out:
            Path(args.order_out).write_text(format_order(order))
        omega = max_clique(backedge_graph(art.graph, order)).size
        print(f"valuation: {_fmt_bits(nu)}")
        print(f"max clique of backedge graph: {omega} (threshold 2c-1 = {art.t})")
        if omega <= art.t:
            print(f"K_{size}-free: yes")
            return EXIT_OK
        print(f"K_{size}-free: no")
        mu = find_refuting_mu(art, nu)
        if mu is not None:
            clique = build_soundness_clique(art, nu, mu, order)
            print(f"satisfying inner valuation: {_fmt_bits(mu)}")
            print(f"clique of size {len(clique)} found: " + " ".join(str(v + 1) for v in clique))
        return EXIT_VIOLATION
    order = parse_order(_read(args.order), art.n)
    try:
        nu = extract_valuation(art, order)
    except NotFreeError as exc:
        print(f"K_{size}-free: no")
        print(f"clique of size {len(exc.clique)} found: " + " ".join(str(v + 1) for v in exc.clique))
        return EXIT_VIOLATION
    except InconsistentRedEdges as exc:
        print(f"K_{size}-free: yes")
        print(f"red edges inconsistent: {exc}")
        return EXIT_VIOLATION
    print(f"K_{size}-free: yes")
    print(f"extracted valuation: {_fmt_bits(nu)}")
    refuted = find_refuting_mu(art, nu) is None
    print(f"no inner valuation satisfies the formula under it: {'yes' if refuted else 'no'}")
    return EXIT_OK if refuted else EXIT_VIOLATION


def cmd_gadget_check(args) -> int:
    if args.claim == 1:
        if args.exhaustive and 3 * args.t > 9:
            print(
                f"error: exhaustive check of the {3 * args.t}-vertex gadget needs {3 * args.t}! orders; "
                "drop --exhaustive to use sampling (--samples)",
                file=sys.stderr,
            )
            return EXIT_INPUT
        if args.exhaustive:
            report = verify_claim1_exhaustive(args.t)
        elif args.t == 3 and args.samples is None:
            report = verify_claim1(args.t)
        else:
            report = verify_claim1_sampled(args.t, args.samples or 1_000_000, args.seed)
    else:
        if args.t < 4:
            print("error: claim 2 needs t >= 4", file=sys.stderr)
            return EXIT_INPUT
        report = verify_claim2(args.t, args.samples or 100_000, args.seed)
    print(report.render())
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_experiment(args) -> int:
    records = run_sweep(
        args.n_min, args.n_max, args.seeds, root_seed=args.seed, method=args.method,
        budget=_budget(args), threads=args.threads,
    )
    with open(args.out, "w", newline="") as fh:
        write_csv(records, fh)
    rows = summarize(records)
    print(render_summary(rows), end="")
    unresolved = sum(1 for r in records if r.diomega is None and r.method != "heuristic")
    if unresolved:
        print(f"{unresolved} records hit the budget")
        return EXIT_BUDGET
    return EXIT_OK


def cmd_eval(args) -> int:
    f = parse_formula(_read(args.formula))
    yes, nu = eval_sigma2(f)
    if yes:
        print("Yes")
        print(f"witness: {_fmt_bits(nu or ())}")
    else:
        print("No")
    return EXIT_OK


def cmd_encode(args) -> int:
    g = parse_digraph(_read(args.graph))
    cnf = build_cnf_decision(g, args.t)
    Path(args.out).write_text(cnf.to_dimacs())
    print(f"variables: {cnf.num_vars}")
    print(f"clauses: {len(cnf.clauses)}")
    return EXIT_OK


def cmd_gen(args) -> int:
    makers = {
        "tt": lambda: make_transitive_tournament(args.n),
        "q": lambda: make_complete_digraph(args.n),
        "cycle": lambda: make_directed_cycle(args.n),
        "random": lambda: make_random_tournament(args.n, args.seed),
    }
    text = format_digraph(makers[args.kind](), [f"{args.kind} n={args.n}"])
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _default_threads() -> int:
    env = os.environ.get("DIOMEGA_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diclique", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="flat key=value file; command-line flags win")
    parser.add_argument("--threads", type=int, default=_default_threads(),
                        help="worker cap (default: $DIOMEGA_THREADS or machine parallelism)")
    sub = parser.add_subparsers(dest="command", required=True)

    def budget_flags(p):
        p.add_argument("--budget-nodes", type=int, default=None)
        p.add_argument("--budget-seconds", type=float, default=None)

    p = sub.add_parser("diomega", help="directed clique number of a digraph file")
    p.add_argument("graph")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="method", action="store_const", const="exact")
    mode.add_argument("--brute", dest="method", action="store_const", const="brute")
    mode.add_argument("--heuristic", dest="method", action="store_const", const="heuristic")
    p.add_argument("--t", type=int, default=None, help="decide diomega <= t instead")
    p.add_argument("--order-out", default=None)
    p.add_argument("--seed", type=int, default=0)
    budget_flags(p)
    p.set_defaults(func=cmd_diomega, method="exact")

    p = sub.add_parser("reduce", help="compile a formula to (graph, t)")
    p.add_argument("formula")
    p.add_argument("prefix", help="writes <prefix>.dgf and <prefix>.labels")
    p.add_argument("--pad", action="store_true", help="repeat clauses up to 7 (extension)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check a witness valuation or an order against an artifact")
    p.add_argument("prefix")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--order")
    src.add_argument("--valuation")
    p.add_argument("--order-out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gadget-check", help="verify the gadget claims")
    p.add_argument("--claim", type=int, choices=(1, 2), required=True)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_gadget_check)

    p = sub.add_parser("experiment", help="random tournament sweep to CSV")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=METHODS, default="exact")
    p.add_argument("--out", required=True)
    budget_flags(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("eval", help="brute-force truth of a formula")
    p.add_argument("formula")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("encode", help="CNF for diomega <= t")
    p.add_argument("graph")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("gen", help="write a standard digraph")
    p.add_argument("kind", choices=("tt", "q", "cycle", "random"))
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)
    return parser


def _load_config(path: str) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise GraphError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str], args) -> argparse.Namespace:
    """Reparse with config values as defaults so explicit flags still win."""
    config = _load_config(args.config)
    sub = next(a for a in parser._subparsers._actions if isinstance(a, argparse._SubParsersAction))
    targets = [parser, sub.choices[args.command]]
    for target in targets:
        for action in target._actions:
            if action.dest in config and action.dest not in ("help", "command", "func"):
                raw = config[action.dest]
                if action.const is not None and action.nargs == 0:
                    value = action.const if raw.lower() in ("1", "true", "yes") else action.default
                else:
                    value = action.type(raw) if action.type else raw
                target.set_defaults(**{action.dest: value})
    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            args = _apply_config(parser, argv, args)
        if getattr(args, "command", None) == "gadget-check" and args.t is None:
            args.t = 3 if args.claim == 1 else 4
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

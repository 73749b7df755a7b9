"""Command-line entry point.

Exit codes are stable: 0 success or satisfied, 1 violated / infeasible /
not found / not applicable, 2 file or parse error, 3 search budget exhausted.
On success ``solve``, ``color``, and ``mnw`` write nothing to stdout except a
partition in the n-line file format, so their output pipes straight back into
``check``; diagnostics (provenance, heuristic stats, welfare, progress) go to
stderr.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__
from .constructive import detect_groups, grouped_allocation
from .core import (
    Instance,
    ParseError,
    Partition,
    first_ef1_violation,
    first_symef1_violation,
    first_symefx_violation,
    format_partition,
    is_balanced,
    nash_welfare,
    parse_instance,
    parse_partition,
)
from .exact import (
    BudgetExceededError,
    ExactStatus,
    SearchLimits,
    enumerate_symef1,
    exact_symef1,
    export_ip,
    max_nash_welfare,
)
from .heuristic import greedy_symef1, order_items
from .sim import SimConfig, emit_csv, run_simulation
from .tuples import build_item_graph, coloring_to_partition, graph_to_dot, k_color

EXIT_OK = 0
EXIT_UNSAT = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError:
        print("BUDGET_EXCEEDED")
        return EXIT_BUDGET


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symfair",
        description="Verify and construct partitions of indivisible goods that "
        "every agent accepts under envy-freeness up to one good, whichever "
        "bundle they end up with.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify a partition against an instance")
    p.add_argument("instance")
    p.add_argument("partition")
    p.add_argument(
        "--mode", choices=["symef1", "symefx", "ef1", "balanced"], default="symef1"
    )
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("solve", help="construct a symEF1 partition")
    p.add_argument("instance")
    p.add_argument(
        "--strategy",
        choices=["auto", "constructive", "coloring", "heuristic", "exact"],
        default="auto",
    )
    p.add_argument(
        "--order",
        choices=["index", "desc-total-value", "random"],
        default="index",
        help="item order for the heuristic",
    )
    p.add_argument("--seed", type=int, default=None, help="seed for --order=random")
    _add_budget_flags(p)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("graph", help="emit the item conflict graph as DOT")
    p.add_argument("instance")
    p.add_argument("--out", default="-")
    p.set_defaults(handler=_cmd_graph)

    p = sub.add_parser("color", help="exactly k-color the item conflict graph")
    p.add_argument("instance")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=_cmd_color)

    p = sub.add_parser("enumerate", help="list every distinct symEF1 partition")
    p.add_argument("instance")
    p.add_argument("--force", action="store_true", help="ignore the n^m size guard")
    _add_budget_flags(p)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("mnw", help="maximum Nash welfare assignment by brute force")
    p.add_argument("instance")
    p.add_argument("--force", action="store_true", help="ignore the n^m size guard")
    _add_budget_flags(p)
    p.set_defaults(handler=_cmd_mnw)

    p = sub.add_parser("export-ip", help="write the feasibility program in LP format")
    p.add_argument("instance")
    p.add_argument("--out", default="-")
    p.set_defaults(handler=_cmd_export_ip)

    p = sub.add_parser("simulate", help="incidence statistics over random instances")
    p.add_argument("--n", required=True, help="agent counts, e.g. 3,4,5")
    p.add_argument("--m", required=True, help="item counts, e.g. 5..10,15")
    p.add_argument("--max-value", required=True, help="maximum item values, e.g. 10,10000")
    p.add_argument("--reps", type=int, default=2000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default="-")
    p.add_argument("--workers", type=int, default=None)
    _add_budget_flags(p)
    p.set_defaults(handler=_cmd_simulate)

    return parser


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--time-budget", type=float, default=None)


def _limits(args) -> SearchLimits:
    defaults = SearchLimits()
    return SearchLimits(
        node_budget=defaults.node_budget if args.node_budget is None else args.node_budget,
        time_budget=defaults.time_budget if args.time_budget is None else args.time_budget,
    )


def _read_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def _read_partition(path: str, inst: Instance) -> Partition:
    with open(path, encoding="utf-8") as fh:
        return parse_partition(fh.read(), n=inst.n, m=inst.m)


def _write_out(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_check(args) -> int:
    inst = _read_instance(args.instance)
    partition = _read_partition(args.partition, inst)
    if args.mode == "balanced":
        if is_balanced(partition):
            print("SATISFIED")
            return EXIT_OK
        sizes = partition.sizes()
        print(f"VIOLATED max_size={max(sizes)} min_size={min(sizes)}")
        return EXIT_UNSAT
    finder = {
        "symef1": first_symef1_violation,
        "symefx": first_symefx_violation,
        "ef1": first_ef1_violation,
    }[args.mode]
    witness = finder(inst, partition)
    if witness is None:
        print("SATISFIED")
        return EXIT_OK
    i, k, l, lhs, rhs = witness
    print(f"VIOLATED i={i + 1} k={k + 1} l={l + 1}: {lhs} < {rhs}")
    return EXIT_UNSAT


def _solve_stage(inst: Instance, strategy: str, args) -> tuple[Partition | None, str, int]:
    """One strategy attempt: (partition, status token, exit code)."""
    if strategy == "constructive":
        structure = detect_groups(inst)
        if structure is None:
            return None, "NOT_APPLICABLE", EXIT_UNSAT
        return grouped_allocation(inst, structure), "constructive (closed form)", EXIT_OK
    if strategy == "coloring":
        coloring = k_color(build_item_graph(inst), inst.n)
        if coloring is None:
            return None, "NOT_APPLICABLE", EXIT_UNSAT
        partition = coloring_to_partition(coloring, inst.n)
        return partition, "coloring (sufficient condition)", EXIT_OK
    if strategy == "heuristic":
        order = order_items(inst, args.order, args.seed)
        result = greedy_symef1(inst, order)
        stats = result.stats
        print(
            f"case1={stats.placed_case1} case2={stats.placed_case2} "
            f"case3={stats.placed_case3}",
            file=sys.stderr,
        )
        if result.partition is None:
            return None, "NOT_FOUND", EXIT_UNSAT
        return result.partition, "heuristic (greedy search)", EXIT_OK
    outcome = exact_symef1(inst, _limits(args))
    if outcome.status is ExactStatus.FOUND:
        return outcome.partition, "exact (complete search)", EXIT_OK
    if outcome.status is ExactStatus.PROVED_INFEASIBLE:
        return None, "INFEASIBLE", EXIT_UNSAT
    return None, "BUDGET_EXCEEDED", EXIT_BUDGET


def _cmd_solve(args) -> int:
    inst = _read_instance(args.instance)
    stages = (
        ["constructive", "coloring", "heuristic", "exact"]
        if args.strategy == "auto"
        else [args.strategy]
    )
    token, code = "NOT_FOUND", EXIT_UNSAT
    for stage in stages:
        partition, token, code = _solve_stage(inst, stage, args)
        if partition is not None:
            print(f"solved by: {token}", file=sys.stderr)
            sys.stdout.write(format_partition(partition))
            return EXIT_OK
        if token in ("INFEASIBLE", "BUDGET_EXCEEDED"):
            break
    print(token)
    return code


def _cmd_graph(args) -> int:
    inst = _read_instance(args.instance)
    _write_out(args.out, graph_to_dot(build_item_graph(inst)))
    return EXIT_OK


def _cmd_color(args) -> int:
    inst = _read_instance(args.instance)
    coloring = k_color(build_item_graph(inst), args.k)
    if coloring is None:
        print(f"INFEASIBLE k={args.k}")
        return EXIT_UNSAT
    bundles = [[] for _ in range(args.k)]
    for item, color in enumerate(coloring):
        bundles[color - 1].append(item)
    for bundle in bundles:
        print(" ".join(str(j + 1) for j in sorted(bundle)))
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    inst = _read_instance(args.instance)
    partitions = enumerate_symef1(inst, _limits(args), force=args.force)
    rendered = sorted(_render_bundles(p) for p in partitions)
    for line in rendered:
        print(line)
    print(f"count={len(rendered)}", file=sys.stderr)
    return EXIT_OK


def _cmd_mnw(args) -> int:
    inst = _read_instance(args.instance)
    assignment = max_nash_welfare(inst, _limits(args), force=args.force)
    sys.stdout.write(format_partition(assignment.partition))
    print(f"nash_welfare={nash_welfare(inst, assignment)}", file=sys.stderr)
    return EXIT_OK


def _cmd_export_ip(args) -> int:
    inst = _read_instance(args.instance)
    _write_out(args.out, export_ip(inst))
    return EXIT_OK


def _cmd_simulate(args) -> int:
    cfg = SimConfig(
        n_list=_parse_int_list(args.n),
        m_list=_parse_int_list(args.m),
        M_list=_parse_int_list(args.max_value),
        replications=args.reps,
        master_seed=args.seed,
        limits=_limits(args),
    )
    reports = run_simulation(
        cfg, workers=args.workers, progress=lambda msg: print(msg, file=sys.stderr)
    )
    _write_out(args.out, emit_csv(reports))
    return EXIT_OK


def _render_bundles(partition: Partition) -> str:
    parts = []
    for bundle in partition.bundles:
        parts.append(" ".join(str(j + 1) for j in sorted(bundle)) if bundle else "-")
    return " | ".join(parts)


def _parse_int_list(text: str) -> tuple[int, ...]:
    """Comma-separated integers with inclusive a..b ranges, e.g. '5..10,15'."""
    values: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ".." in chunk:
            lo, hi = chunk.split("..", 1)
            values.extend(range(int(lo), int(hi) + 1))
        else:
            values.append(int(chunk))
    if not values:
        raise ValueError(f"empty integer list: {text!r}")
    return tuple(values)


if __name__ == "__main__":
    sys.exit(main())

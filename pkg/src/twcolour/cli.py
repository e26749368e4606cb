"""Command-line interface.

Exit codes: 0 success, 1 malformed input, 2 unmet precondition (including
exhausted search budgets and oracle caps), 3 internal assertion.  Inputs
given as ``-`` (the default for ``check-choosable``) are read from stdin.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, TextIO

from . import formats
from .bipartite import DEFAULT_BUDGET, is_choosable_via_lstar
from .edge_solver import solve_list_edge
from .errors import InternalAssertion, InvalidInput, PreconditionError, SearchBudgetExceeded
from .generators import gen_gi, gen_partial_ktree
from .graph import Edge, Graph
from .oracles import (
    CHOOSABLE_EDGE_CAP,
    CHOOSABLE_UNIVERSE_CAP,
    EDGE_CAP,
    TOTAL_CAP,
    oracle_choosable,
    oracle_edge_list_colour,
    oracle_total_colour,
    validate_edge_colouring,
    validate_total_colouring,
)
from .report import format_report
from .total_solver import solve_total
from .treewidth import TreeDecomposition, min_degree_decompose, validate_td


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every subcommand.

    ``threshold`` of ``None`` means the list-size threshold derived from k.
    """

    seed: int = 0
    search_budget: int = DEFAULT_BUDGET
    edge_cap: int = EDGE_CAP
    total_cap: int = TOTAL_CAP
    choosable_edge_cap: int = CHOOSABLE_EDGE_CAP
    choosable_universe_cap: int = CHOOSABLE_UNIVERSE_CAP
    threshold: int | None = None
    verbosity: int = 0

    def __post_init__(self) -> None:
        for name in ("search_budget", "edge_cap", "total_cap", "choosable_edge_cap", "choosable_universe_cap"):
            if getattr(self, name) < 1:
                raise PreconditionError(f"{name} must be positive")
        if self.seed < 0:
            raise PreconditionError("seed must be non-negative")
        if self.threshold is not None and self.threshold < 1:
            raise PreconditionError("threshold must be positive")


def uniform_lists(g: Graph, size: int, seed: int) -> dict[Edge, frozenset[int]]:
    """Each edge, in canonical order, draws ``size`` colours from ``1..2*size``."""
    if size < 1:
        raise PreconditionError(f"list size must be positive, got {size}")
    rng = random.Random(seed)
    return {e: frozenset(rng.sample(range(1, 2 * size + 1), size)) for e in g.edges}


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def _graph_and_td(args: argparse.Namespace, stdin: TextIO) -> tuple[Graph, TreeDecomposition]:
    g = formats.parse_gr(_read(args.graph, stdin))
    td = formats.parse_td(_read(args.td, stdin)) if args.td else min_degree_decompose(g)
    return g, td


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        seed=args.seed,
        search_budget=args.budget,
        threshold=getattr(args, "threshold", None),
        verbosity=args.verbose,
    )


# -- subcommands ------------------------------------------------------------------


def cmd_decompose(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    g = formats.parse_gr(_read(args.graph, stdin))
    out.write(formats.write_td(min_degree_decompose(g), g.n))
    return 0


def cmd_validate_td(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    g = formats.parse_gr(_read(args.graph, stdin))
    td = formats.parse_td(_read(args.td, stdin))
    report = validate_td(g, td)
    out.write(format_report(report) + "\n")
    return 1 if report else 0


def cmd_colour_edges(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    cfg = _config(args)
    g, td = _graph_and_td(args, stdin)
    if args.lists:
        lists = formats.parse_lists(_read(args.lists, stdin), g)
    else:
        lists = uniform_lists(g, args.uniform_lists, cfg.seed)
    k = td.width if args.k is None else args.k
    colouring = solve_list_edge(g, td, lists, k, cfg.threshold, cfg.search_budget)
    out.write(formats.write_edge_colouring(colouring))
    return 0


def cmd_colour_total(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    g, td = _graph_and_td(args, stdin)
    k = td.width if args.k is None else args.k
    traces: list[list[dict]] = []
    try:
        tc = solve_total(g, td, k, traces)
    except InternalAssertion as exc:
        if args.trace:
            _write_trace(args.trace, [*traces, exc.trace])
        raise
    if args.trace:
        _write_trace(args.trace, traces)
    out.write(formats.write_total_colouring(tc))
    return 0


def _write_trace(path: str, traces: list[list[dict]]) -> None:
    with open(path, "w") as fh:
        for hub, steps in enumerate(traces):
            for step in steps:
                fh.write(json.dumps({"hub": hub, **step}, sort_keys=True, default=str) + "\n")


def cmd_check_choosable(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    h = formats.parse_bipartite(_read(args.bipartite, stdin))
    verdict = is_choosable_via_lstar(h, args.budget)
    out.write(f"choosable: {str(verdict).lower()}\n")
    return 0


def cmd_gen_gi(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    out.write(formats.write_bipartite(gen_gi(args.i)))
    return 0


def cmd_gen_ktree(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    g, td = gen_partial_ktree(args.k, args.n, args.keep, args.seed)
    out.write(formats.write_gr(g))
    if args.td_out:
        Path(args.td_out).write_text(formats.write_td(td, g.n))
    return 0


def cmd_oracle_edge_lists(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    g = formats.parse_gr(_read(args.graph, stdin))
    lists = formats.parse_lists(_read(args.lists, stdin), g)
    colouring = oracle_edge_list_colour(g, lists, args.cap or EDGE_CAP)
    if colouring is None:
        out.write("c no colouring exists\n")
        return 0
    out.write(formats.write_edge_colouring(colouring))
    return 0


def cmd_oracle_total(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    g = formats.parse_gr(_read(args.graph, stdin))
    palette = args.palette if args.palette is not None else g.max_degree + 1
    tc = oracle_total_colour(g, palette, args.cap or TOTAL_CAP)
    if tc is None:
        out.write(f"c no total colouring with {palette} colours\n")
        return 0
    out.write(formats.write_total_colouring(tc))
    return 0


def cmd_oracle_choosable(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    h = formats.parse_bipartite(_read(args.bipartite, stdin))
    verdict = oracle_choosable(
        h, range(1, args.universe + 1), args.cap or CHOOSABLE_EDGE_CAP, max(args.universe, CHOOSABLE_UNIVERSE_CAP)
    )
    out.write(f"choosable: {str(verdict).lower()}\n")
    return 0


def cmd_verify_edge(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    g = formats.parse_gr(_read(args.graph, stdin))
    tc = formats.parse_colouring(_read(args.colouring, stdin))
    if tc.vertex_colours:
        raise InvalidInput("edge colouring file contains vertex lines")
    lists = formats.parse_lists(_read(args.lists, stdin), g) if args.lists else None
    report = validate_edge_colouring(g, tc.edge_colours, lists)
    out.write(format_report(report) + "\n")
    return 1 if report else 0


def cmd_verify_total(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    g = formats.parse_gr(_read(args.graph, stdin))
    tc = formats.parse_colouring(_read(args.colouring, stdin))
    palette = args.palette if args.palette is not None else (tc.palette or None)
    if palette is None:
        raise InvalidInput("no palette given and none recorded in the colouring file")
    report = validate_total_colouring(g, tc, palette)
    out.write(format_report(report) + "\n")
    return 1 if report else 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="twcolour", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("decompose", cmd_decompose, "min-degree tree decomposition of a .gr graph")
    sp.add_argument("--graph", required=True)

    sp = add("validate-td", cmd_validate_td, "check a .td file against a .gr graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--td", required=True)

    sp = add("colour-edges", cmd_colour_edges, "list edge colouring")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--td", help="decomposition; computed heuristically when omitted")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--lists")
    src.add_argument("--uniform-lists", type=int, metavar="SIZE")
    sp.add_argument("--k", type=int, help="width bound; defaults to the decomposition width")
    sp.add_argument("--threshold", type=int, help="override the list-size threshold")

    sp = add("colour-total", cmd_colour_total, "total colouring")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--td")
    sp.add_argument("--k", type=int)
    sp.add_argument("--trace", metavar="PATH", help="write the move trace as JSON lines")

    sp = add("check-choosable", cmd_check_choosable, "decide whether W is choosable")
    sp.add_argument("--bipartite", default="-")

    gen = sub.add_parser("gen", help="instance generators")
    gsub = gen.add_subparsers(dest="family", required=True)
    sp = gsub.add_parser("gi", parents=[common], help="the tight bipartite family")
    sp.add_argument("--i", type=int, required=True)
    sp.set_defaults(func=cmd_gen_gi)
    sp = gsub.add_parser("partial-ktree", parents=[common], help="random partial k-tree")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--keep", type=float, default=1.0)
    sp.add_argument("--td-out", metavar="PATH")
    sp.set_defaults(func=cmd_gen_ktree)

    orc = sub.add_parser("oracle", help="exhaustive references for small instances")
    osub = orc.add_subparsers(dest="oracle", required=True)
    sp = osub.add_parser("edge-lists", parents=[common])
    sp.add_argument("--graph", required=True)
    sp.add_argument("--lists", required=True)
    sp.add_argument("--cap", type=int)
    sp.set_defaults(func=cmd_oracle_edge_lists)
    sp = osub.add_parser("total", parents=[common])
    sp.add_argument("--graph", required=True)
    sp.add_argument("--palette", type=int, help="defaults to max degree + 1")
    sp.add_argument("--cap", type=int)
    sp.set_defaults(func=cmd_oracle_total)
    sp = osub.add_parser("choosable", parents=[common])
    sp.add_argument("--bipartite", default="-")
    sp.add_argument("--universe", type=int, default=6)
    sp.add_argument("--cap", type=int)
    sp.set_defaults(func=cmd_oracle_choosable)

    sp = add("verify-edge-colouring", cmd_verify_edge, "validate an edge colouring file")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--colouring", required=True)
    sp.add_argument("--lists")

    sp = add("verify-total-colouring", cmd_verify_total, "validate a total colouring file")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--colouring", required=True)
    sp.add_argument("--palette", type=int)
    return p


def run_cli(argv: list[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING)
    try:
        _config(args)
        return args.func(args, stdin, stdout)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (PreconditionError, SearchBudgetExceeded) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return 2
    except InternalAssertion as exc:
        print(f"internal assertion (please report): {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run_cli())

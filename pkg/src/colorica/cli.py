"""Command-line front end: generate instances, solve, benchmark, exact-check.

Exit codes: 0 success, 1 usage/parse/parameter errors, 2 a solve whose best
colouring still has conflicts, 3 exact-search refusal.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bench import emit_report, resolve_chromatic, run_trials
from .coloring import format_colouring
from .dica import DicaParams, run_dica
from .ga import GaParams, run_ga
from .graphs import (
    GENERATORS,
    DimacsFormatError,
    Graph,
    GraphMeta,
    family_chromatic,
    parse_dimacs,
    write_dimacs,
)
from .oracle import OracleLimit, OracleLimitExceeded, chromatic_number_exact, exists_colouring

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFLICTS = 2
EXIT_ORACLE_REFUSED = 3


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1 (argparse's stock exit code is reserved for solve results)
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _add_common_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algo", choices=("dica", "ga"), default="dica", help="solver to run")
    p.add_argument("--seed", type=int, default=1, help="RNG seed")
    p.add_argument("--population-size", type=int, default=300, help="countries per run")
    p.add_argument("--k-max", type=int, default=None, help="initial colour range (default: max degree + 1)")
    p.add_argument("--penalty", type=float, default=None, help="conflict penalty (default: vertex count)")
    p.add_argument("--early-stop", action="store_true", help="stop once a proper colouring within the known chromatic number appears")
    grp_d = p.add_argument_group("dica options")
    grp_d.add_argument("--imperialist-fraction", type=float, default=0.10, help="share of the population made imperialists")
    grp_d.add_argument("--decades", type=int, default=100, help="iteration budget")
    grp_d.add_argument("--revolution-rate", type=float, default=0.25, help="per-colony swap probability")
    grp_d.add_argument("--uniting-threshold", type=float, default=0.02, help="normalized-distance bound for merging empires")
    grp_d.add_argument("--damp-ratio", type=float, default=0.90, help="per-decade decay of the revolution rate")
    grp_d.add_argument("--xi", type=float, default=0.1, help="mean-colony-cost weight in empire totals")
    grp_d.add_argument("--assimilation-coefficient", type=float, default=None, help="accepted for compatibility; has no effect")
    grp_d.add_argument("--assimilation-angle-coefficient", type=float, default=None, help="accepted for compatibility; has no effect")
    grp_g = p.add_argument_group("ga options")
    grp_g.add_argument("--generations", type=int, default=100, help="iteration budget")
    grp_g.add_argument("--mutation-rate", type=float, default=0.25, help="per-child mutation probability")
    grp_g.add_argument("--selection-probability", type=float, default=0.50, help="crossover (vs clone) probability per parent pair")
    grp_g.add_argument("--elitism", type=int, default=1, help="best individuals carried over unchanged")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="colorica",
        description="Graph-colouring search: imperialist-style and genetic solvers, "
        "instance generators, benchmarks, and an exact checker for small graphs.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="subcommand", metavar="{gen,solve,bench,oracle}")
    sub.required = True

    p_gen = sub.add_parser(
        "gen",
        help="write a generated instance as a DIMACS file",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p_gen.add_argument("family", choices=sorted(GENERATORS), help="instance family")
    p_gen.add_argument("param", type=int, help="size parameter (vertices, level, or board side)")
    p_gen.add_argument("--out", default=None, help="output path (default: <family>-<param>.col)")

    p_solve = sub.add_parser(
        "solve",
        help="run one seeded solve on a DIMACS file",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p_solve.add_argument("graph", help="DIMACS .col file")
    p_solve.add_argument(
        "--chromatic",
        type=int,
        default=None,
        help="known chromatic number (needed for --early-stop)",
    )
    _add_common_solver_flags(p_solve)

    p_bench = sub.add_parser(
        "bench",
        help="repeated seeded runs with success tallies",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p_bench.add_argument(
        "instances",
        nargs="+",
        metavar="INSTANCE",
        help="DIMACS file path or generator spec family:param (e.g. queen:5)",
    )
    p_bench.add_argument("--runs", type=int, default=20, help="trials per (instance, algorithm)")
    p_bench.add_argument("--seed-base", type=int, default=1, help="first seed; trial i uses seed-base + i")
    p_bench.add_argument("--format", choices=("table", "csv", "json"), default="table", help="report format")
    p_bench.add_argument(
        "--algos",
        choices=("dica", "ga", "both"),
        default="both",
        help="which solvers to benchmark",
    )
    p_bench.add_argument(
        "--chromatic",
        action="append",
        default=[],
        metavar="NAME=K",
        help="declare a known chromatic number for an instance (repeatable)",
    )
    _add_common_solver_flags(p_bench)

    p_oracle = sub.add_parser(
        "oracle",
        help="exact chromatic number or k-colourability of a small graph",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p_oracle.add_argument("graph", help="DIMACS .col file")
    p_oracle.add_argument("--k", type=int, default=None, help="check k-colourability instead of computing the chromatic number")
    p_oracle.add_argument("--max-vertices", type=int, default=32, help="refuse graphs larger than this")
    p_oracle.add_argument("--node-budget", type=int, default=10**8, help="refuse after this many search nodes")

    return parser


def _warn_vestigial(ns: argparse.Namespace) -> None:
    for flag in ("assimilation_coefficient", "assimilation_angle_coefficient"):
        if getattr(ns, flag, None) is not None:
            logger.warning("--%s is accepted for compatibility and has no effect", flag.replace("_", "-"))


def _dica_params(ns: argparse.Namespace, seed: int, known_chromatic: int | None) -> DicaParams:
    return DicaParams(
        population_size=ns.population_size,
        imperialist_fraction=ns.imperialist_fraction,
        decades=ns.decades,
        revolution_rate=ns.revolution_rate,
        uniting_threshold=ns.uniting_threshold,
        damp_ratio=ns.damp_ratio,
        xi=ns.xi,
        k_max=ns.k_max,
        penalty=ns.penalty,
        early_stop_at_chromatic=ns.early_stop,
        known_chromatic=known_chromatic,
        rng_seed=seed,
    )


def _ga_params(ns: argparse.Namespace, seed: int, known_chromatic: int | None) -> GaParams:
    return GaParams(
        population_size=ns.population_size,
        generations=ns.generations,
        mutation_rate=ns.mutation_rate,
        selection_probability=ns.selection_probability,
        elitism_count=ns.elitism,
        k_max=ns.k_max,
        penalty=ns.penalty,
        early_stop_at_chromatic=ns.early_stop,
        known_chromatic=known_chromatic,
        rng_seed=seed,
    )


def _load_graph(path: str) -> Graph:
    return parse_dimacs(Path(path).read_text())


def _parse_instance(spec: str) -> tuple[Graph, GraphMeta]:
    """An instance argument is a family:param generator spec or a file path."""
    head, sep, tail = spec.partition(":")
    if sep and head in GENERATORS and not Path(spec).exists():
        try:
            param = int(tail)
        except ValueError:
            raise ValueError(f"bad generator spec {spec!r}: param must be an integer")
        g = GENERATORS[head](param)
        return g, GraphMeta(name=f"{head}-{param}", known_chromatic=family_chromatic(head, param))
    g = _load_graph(spec)
    return g, GraphMeta(name=Path(spec).stem, known_chromatic=None)


def _cmd_gen(ns: argparse.Namespace) -> int:
    if ns.param < 1:
        raise ValueError(f"param must be >= 1, got {ns.param}")
    g = GENERATORS[ns.family](ns.param)
    out = Path(ns.out) if ns.out else Path(f"{ns.family}-{ns.param}.col")
    out.write_text(write_dimacs(g))
    print(f"wrote: {out}")
    print(f"n: {g.n}")
    print(f"m: {g.m}")
    chi = family_chromatic(ns.family, ns.param)
    if chi is not None:
        print(f"chromatic_number: {chi}")
    return EXIT_OK


def _cmd_solve(ns: argparse.Namespace) -> int:
    g = _load_graph(ns.graph)
    _warn_vestigial(ns)
    if ns.chromatic is not None and not 1 <= ns.chromatic <= g.n:
        raise ValueError(f"--chromatic must be in 1..{g.n}, got {ns.chromatic}")
    if ns.algo == "dica":
        result = run_dica(g, _dica_params(ns, ns.seed, ns.chromatic))
    else:
        result = run_ga(g, _ga_params(ns, ns.seed, ns.chromatic))
    print(f"best_cost: {result.best_cost:g}")
    print(f"conflicts: {result.conflicts}")
    print(f"colours_used: {result.colours_used}")
    print(f"iterations: {result.decades_executed}")
    print(f"terminated_by: {result.terminated_by}")
    print(f"colouring: {format_colouring(result.best)}")
    return EXIT_OK if result.conflicts == 0 else EXIT_CONFLICTS


def _cmd_bench(ns: argparse.Namespace) -> int:
    overrides: dict[str, int] = {}
    for item in ns.chromatic:
        name, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"bad --chromatic {item!r}: expected NAME=K")
        try:
            overrides[name] = int(value)
        except ValueError:
            raise ValueError(f"bad --chromatic {item!r}: K must be an integer")
    _warn_vestigial(ns)
    algos = ("dica", "ga") if ns.algos == "both" else (ns.algos,)
    records = []
    for spec in ns.instances:
        g, meta = _parse_instance(spec)
        if meta.name in overrides:
            meta = GraphMeta(name=meta.name, known_chromatic=overrides[meta.name])
        chi = resolve_chromatic(g, meta) if ns.early_stop else None
        for algo in algos:
            if algo == "dica":
                base = _dica_params(ns, ns.seed_base, chi)
            else:
                base = _ga_params(ns, ns.seed_base, chi)
            records.extend(
                run_trials(g, meta, algo, base, runs=ns.runs, seed_base=ns.seed_base)
            )
    sys.stdout.write(emit_report(records, format=ns.format))
    return EXIT_OK


def _cmd_oracle(ns: argparse.Namespace) -> int:
    g = _load_graph(ns.graph)
    limit = OracleLimit(max_vertices=ns.max_vertices, node_budget=ns.node_budget)
    if ns.k is not None:
        found = exists_colouring(g, ns.k, limit)
        print(f"exists: {'true' if found else 'false'}")
    else:
        chi = chromatic_number_exact(g, limit)
        print(f"chromatic_number: {chi}")
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    handlers = {
        "gen": _cmd_gen,
        "solve": _cmd_solve,
        "bench": _cmd_bench,
        "oracle": _cmd_oracle,
    }
    try:
        return handlers[ns.subcommand](ns)
    except OracleLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE_REFUSED
    except (DimacsFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface: lattice, simulate, sweep, contour, intersect, budget, plot.

Every subcommand accepts ``--config <path>`` (JSON, defaults applied),
``--seed <u64>`` and ``--out <path>``; data commands also take ``--format
{csv,json}`` and ``--workers``.  Exit codes: 0 success, 1 validation error,
2 runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import List, Optional

from .budget import pauli_error
from .config import ConfigError, RunConfig, parse_config
from .contours import (
    LevelCurve,
    find_intersection,
    partition_level_curve,
    pauli_level_curve,
    recommend_from_curve,
    redistribution_level_curve,
    run_sweep,
)
from .lattice import build_lattice
from .merge import run_trials
from .results_io import (
    BUDGET_COLUMNS,
    CURVE_COLUMNS,
    INTERSECTION_COLUMNS,
    SWEEP_COLUMNS,
    OutputFormat,
    budget_records,
    curve_records,
    emit_lattice,
    emit_results,
    intersection_records,
    sweep_records,
)
from .svgplot import PlotCurve, PlotMarker, emit_plot

COMMANDS = ("lattice", "simulate", "sweep", "contour", "intersect", "budget", "plot")
_MARKER_GLYPHS = ("cross", "diamond")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems are validation errors (exit 1)
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="starmerge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, help="JSON config file (defaults when omitted)")
        p.add_argument("--seed", type=int, help="override master_seed")
        p.add_argument("--out", type=Path, help="output file (stdout when omitted)")
        p.add_argument("--workers", type=int, help="override worker count")
        if name not in ("lattice", "plot"):
            p.add_argument(
                "--format",
                choices=[f.value for f in OutputFormat],
                default=OutputFormat.CSV.value,
            )
        if name == "contour":
            p.add_argument(
                "--family",
                choices=["all", "partition", "redistribution", "pauli"],
                default="all",
            )
    return parser


def _load_config(args: argparse.Namespace) -> RunConfig:
    if args.config is not None:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        config = parse_config(text)
    else:
        config = RunConfig()
    overrides = {}
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.out is not None:
        overrides["out"] = str(args.out)
    if overrides:
        config = dataclasses.replace(config, **overrides)
        if config.master_seed < 0 or config.master_seed >= 2**64:
            raise ConfigError("master_seed: must fit in 64 bits")
        if config.workers is not None and config.workers < 1:
            raise ConfigError("workers: must be >= 1")
    return config


def _emit(args: argparse.Namespace, config: RunConfig, records, columns) -> None:
    fmt = OutputFormat(getattr(args, "format", OutputFormat.CSV.value))
    text = emit_results(records, columns, fmt, config.out)
    if config.out is None:
        sys.stdout.write(text)


def _cmd_lattice(args: argparse.Namespace, config: RunConfig) -> int:
    lattice = build_lattice(config.lattice_spec())
    text = emit_lattice(lattice, config.out)
    if config.out is None:
        sys.stdout.write(text)
    return 0


def _cmd_simulate(args: argparse.Namespace, config: RunConfig) -> int:
    lattice = build_lattice(config.lattice_spec())
    merge_config = config.merge_config()
    stats = run_trials(lattice, merge_config, workers=config.workers)
    budget = pauli_error(config.cooperativity, config.n_qubits, config.error_params())
    record = {
        "C": config.cooperativity,
        "N": config.n_qubits,
        "mode": config.mode,
        "edge_failure_mean": stats.mean_failure_fraction,
        "edge_failure_stderr": stats.std_error,
        "loss_fraction": stats.loss_fraction_mean,
        "pauli_total": budget.total,
        "carving_term": budget.carving_term,
        "per_qubit_term": budget.per_qubit_term,
        "gate_term": budget.gate_term,
        "trials": stats.trials,
        "seed": config.master_seed,
    }
    _emit(args, config, [record], SWEEP_COLUMNS)
    return 0


def _cmd_sweep(args: argparse.Namespace, config: RunConfig) -> int:
    lattice = build_lattice(config.lattice_spec())
    grid = run_sweep(
        config.grid_c,
        config.grid_n,
        lattice,
        config.error_params(),
        mode=config.merge_config().mode,
        edge_order=config.merge_config().edge_order,
        trials=config.trials,
        master_seed=config.master_seed,
        workers=config.workers,
    )
    _emit(args, config, sweep_records(grid), SWEEP_COLUMNS)
    return 0


def _cmd_contour(args: argparse.Namespace, config: RunConfig) -> int:
    curves = {}
    if args.family in ("all", "partition"):
        curves["partition"] = partition_level_curve(config.edge_target, config.grid_c)
    if args.family in ("all", "redistribution"):
        lattice = build_lattice(config.lattice_spec())
        curves["redistribution"] = redistribution_level_curve(
            config.edge_target, config.grid_n, lattice, config.contour_settings()
        )
    if args.family in ("all", "pauli"):
        curves["pauli"] = pauli_level_curve(config.pauli_target, config.grid_n, config.error_params())
    _emit(args, config, curve_records(curves), CURVE_COLUMNS)
    return 0


def _cmd_intersect(args: argparse.Namespace, config: RunConfig) -> int:
    lattice = build_lattice(config.lattice_spec())
    result = find_intersection(
        config.edge_target,
        config.pauli_target,
        config.error_params(),
        config.grid_n,
        lattice,
        config.contour_settings(),
    )
    _emit(args, config, intersection_records(result), INTERSECTION_COLUMNS)
    return 0


def _cmd_budget(args: argparse.Namespace, config: RunConfig) -> int:
    params = config.error_params()
    budget = pauli_error(config.cooperativity, config.n_qubits, params)
    records = budget_records(config.cooperativity, config.n_qubits, params.epsilon_n(), budget)
    _emit(args, config, records, BUDGET_COLUMNS)
    return 0


def _cmd_plot(args: argparse.Namespace, config: RunConfig) -> int:
    from .budget import ErrorParams

    lattice = build_lattice(config.lattice_spec())
    edge_curve = redistribution_level_curve(
        config.edge_target, config.grid_n, lattice, config.contour_settings()
    )
    curves = [
        PlotCurve(
            label=f"edge failure {config.edge_target:g} (redistribution)",
            color="#1f77b4",
            curve=edge_curve,
        )
    ]
    markers: List[PlotMarker] = []
    for k, eps in enumerate(config.plot_epsilon_ns):
        params = ErrorParams(extra_per_qubit=eps)
        curves.append(
            PlotCurve(
                label=f"Pauli {config.pauli_target:g} (eps_N={eps:g})",
                color="#808080",
                curve=pauli_level_curve(config.pauli_target, config.grid_n, params),
            )
        )
        point = recommend_from_curve(edge_curve, config.pauli_target, params)
        if point is not None:
            n, c = point
            glyph = _MARKER_GLYPHS[k % len(_MARKER_GLYPHS)]
            markers.append(PlotMarker(c=c, n=n, glyph=glyph, label=f"operating point eps_N={eps:g}"))
    c_range = (min(config.grid_c), max(config.grid_c))
    n_range = (min(config.grid_n), max(config.grid_n))
    text = emit_plot(
        config.out,
        curves=curves,
        markers=markers,
        c_range=c_range,
        n_range=n_range,
        title="operating regions a factor of 10 below thresholds",
    )
    if config.out is None:
        sys.stdout.write(text)
    return 0


_HANDLERS = {
    "lattice": _cmd_lattice,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "contour": _cmd_contour,
    "intersect": _cmd_intersect,
    "budget": _cmd_budget,
    "plot": _cmd_plot,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _load_config(args)
        return _HANDLERS[args.command](args, config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime failures (I/O, infeasible inputs, ...)
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

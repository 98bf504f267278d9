"""Result persistence: CSV and JSON records, lattice dumps.

Floating values are printed with 9 significant digits in both formats so
repeated runs with one config and seed are byte-identical.  Missing values
(e.g. the cooperativity of an unreachable level-curve point) are empty CSV
fields and JSON nulls.
"""

from __future__ import annotations

import json
from enum import Enum
from pathlib import Path
from typing import Dict, List, Sequence, Union

from .budget import PauliBudget
from .contours import IntersectionResult, LevelCurve, SweepGrid
from .lattice import RhgLattice, lattice_to_json_dict


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"


SWEEP_COLUMNS = [
    "C",
    "N",
    "mode",
    "edge_failure_mean",
    "edge_failure_stderr",
    "loss_fraction",
    "pauli_total",
    "carving_term",
    "per_qubit_term",
    "gate_term",
    "trials",
    "seed",
]

CURVE_COLUMNS = ["family", "target", "N", "C", "c_halfwidth", "n_ceil", "unreachable"]

INTERSECTION_COLUMNS = [
    "N",
    "c_edge",
    "c_edge_halfwidth",
    "c_pauli",
    "c_required",
    "feasible",
    "recommended",
]

BUDGET_COLUMNS = ["C", "N", "epsilon_n", "carving_term", "per_qubit_term", "gate_term", "total"]

Value = Union[int, float, str, bool, None]
Record = Dict[str, Value]


def format_value(value: Value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def _json_value(value: Value) -> Value:
    if isinstance(value, float):
        return float(f"{value:.9g}")
    return value


def sweep_records(grid: SweepGrid) -> List[Record]:
    records = []
    for cell in grid.cells:
        records.append(
            {
                "C": cell.cooperativity,
                "N": cell.n_qubits,
                "mode": cell.mode.value,
                "edge_failure_mean": cell.edge_failure.mean_failure_fraction,
                "edge_failure_stderr": cell.edge_failure.std_error,
                "loss_fraction": cell.edge_failure.loss_fraction_mean,
                "pauli_total": cell.pauli.total,
                "carving_term": cell.pauli.carving_term,
                "per_qubit_term": cell.pauli.per_qubit_term,
                "gate_term": cell.pauli.gate_term,
                "trials": cell.edge_failure.trials,
                "seed": cell.seed,
            }
        )
    return records


def curve_records(curves: Dict[str, LevelCurve]) -> List[Record]:
    """Flatten named level curves into rows; unreachable points keep their row."""
    records = []
    for family, curve in curves.items():
        for point in curve.points:
            records.append(
                {
                    "family": family,
                    "target": curve.target,
                    "N": point.n,
                    "C": point.c,
                    "c_halfwidth": point.c_halfwidth,
                    "n_ceil": point.n_ceil,
                    "unreachable": not point.reachable,
                }
            )
    return records


def intersection_records(result: IntersectionResult) -> List[Record]:
    records = []
    for point in result.points:
        records.append(
            {
                "N": point.n_qubits,
                "c_edge": point.c_edge,
                "c_edge_halfwidth": point.c_edge_halfwidth,
                "c_pauli": point.c_pauli,
                "c_required": point.c_required,
                "feasible": point.feasible,
                "recommended": result.recommended is not None and point == result.recommended,
            }
        )
    return records


def budget_records(cooperativity: float, n_qubits: int, epsilon_n: float, budget: PauliBudget) -> List[Record]:
    return [
        {
            "C": cooperativity,
            "N": n_qubits,
            "epsilon_n": epsilon_n,
            "carving_term": budget.carving_term,
            "per_qubit_term": budget.per_qubit_term,
            "gate_term": budget.gate_term,
            "total": budget.total,
        }
    ]


def render_records(records: Sequence[Record], columns: Sequence[str], fmt: OutputFormat) -> str:
    """Render rows to CSV (header + one line per record) or a JSON array."""
    for record in records:
        missing = set(record) - set(columns)
        if missing:
            raise ValueError(f"record has fields not in columns: {sorted(missing)}")
    if fmt is OutputFormat.CSV:
        lines = [",".join(columns)]
        for record in records:
            lines.append(",".join(format_value(record.get(col)) for col in columns))
        return "\n".join(lines) + "\n"
    payload = [{col: _json_value(record.get(col)) for col in columns} for record in records]
    return json.dumps(payload, indent=2) + "\n"


def emit_results(
    records: Sequence[Record],
    columns: Sequence[str],
    fmt: OutputFormat,
    path: Union[str, Path, None],
) -> str:
    """Write records to ``path`` (or return only, when path is None)."""
    text = render_records(records, columns, fmt)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def emit_lattice(lattice: RhgLattice, path: Union[str, Path, None]) -> str:
    text = json.dumps(lattice_to_json_dict(lattice)) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text

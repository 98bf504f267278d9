"""Run configuration: a flat JSON document with documented defaults.

Unknown keys are rejected and every validation error names the offending
key.  Defaults reproduce the headline study: a distance-10 periodic lattice,
a (C, N) grid spanning 10..300 x 9..21, 10^4 trials per cell, tau = 1.5 s,
and operating targets one order of magnitude below the literature thresholds.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from typing import List, Optional

from .budget import ErrorParams
from .contours import DEFAULT_EDGE_TARGET, DEFAULT_PAULI_TARGET, ContourSettings
from .lattice import Boundary, LatticeSpec
from .merge import EdgeOrder, MergeConfig
from .resource import AllocationMode


class ConfigError(ValueError):
    """Invalid configuration document; message names the offending key."""


@dataclass(frozen=True)
class RunConfig:
    distance: int = 10
    boundary: str = Boundary.PERIODIC.value
    cooperativity: float = 160.0
    n_qubits: int = 15
    mode: str = AllocationMode.REDISTRIBUTION.value
    edge_order: str = EdgeOrder.SHUFFLED.value
    trials: int = 10_000
    master_seed: int = 0
    epsilon_m: float = 0.0
    op_time: float = 0.0
    coherence_time: float = 1.5
    epsilon_g: float = 0.0
    epsilon_n: float = 3.0e-5
    grid_c: List[float] = field(default_factory=lambda: [float(c) for c in range(10, 301, 10)])
    grid_n: List[int] = field(default_factory=lambda: list(range(9, 22)))
    edge_target: float = DEFAULT_EDGE_TARGET
    pauli_target: float = DEFAULT_PAULI_TARGET
    contour_c_min: float = 36.5
    contour_c_max: float = 300.0
    contour_resolution: float = 0.5
    contour_trials: int = 2000
    contour_max_trials: int = 128_000
    plot_epsilon_ns: List[float] = field(default_factory=lambda: [5.5e-5, 1.0e-5])
    workers: Optional[int] = None
    out: Optional[str] = None

    # ---- views onto the domain objects -------------------------------------

    def lattice_spec(self) -> LatticeSpec:
        return LatticeSpec(distance=self.distance, boundary=Boundary(self.boundary))

    def merge_config(self) -> MergeConfig:
        return MergeConfig(
            cooperativity=self.cooperativity,
            n_qubits=self.n_qubits,
            mode=AllocationMode(self.mode),
            edge_order=EdgeOrder(self.edge_order),
            trials=self.trials,
            master_seed=self.master_seed,
        )

    def error_params(self) -> ErrorParams:
        return ErrorParams(
            measurement_infidelity=self.epsilon_m,
            op_time=self.op_time,
            coherence_time=self.coherence_time,
            gate_infidelity=self.epsilon_g,
            extra_per_qubit=self.epsilon_n,
        )

    def contour_settings(self) -> ContourSettings:
        return ContourSettings(
            c_min=self.contour_c_min,
            c_max=self.contour_c_max,
            resolution=self.contour_resolution,
            initial_trials=self.contour_trials,
            max_trials=self.contour_max_trials,
            edge_order=EdgeOrder(self.edge_order),
            master_seed=self.master_seed,
            workers=self.workers,
        )

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


_FIELD_TYPES = {f.name: f for f in dataclasses.fields(RunConfig)}


def _require(key: str, condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(f"{key}: {message}")


def _check_number(key: str, value, *, integer: bool = False) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {type(value).__name__}")
    if integer and not isinstance(value, int):
        raise ConfigError(f"{key}: expected an integer, got {type(value).__name__}")
    if isinstance(value, float) and math.isnan(value):
        raise ConfigError(f"{key}: must not be NaN")


def _validate(config: RunConfig) -> None:
    _check_number("distance", config.distance, integer=True)
    _require("distance", config.distance >= 1, "must be >= 1")
    _require(
        "boundary",
        config.boundary in {b.value for b in Boundary},
        f"must be one of {sorted(b.value for b in Boundary)}",
    )
    _check_number("cooperativity", config.cooperativity)
    _require("cooperativity", config.cooperativity > 0, "must be > 0")
    _check_number("n_qubits", config.n_qubits, integer=True)
    _require("n_qubits", config.n_qubits >= 2, "must be >= 2")
    _require(
        "mode",
        config.mode in {m.value for m in AllocationMode},
        f"must be one of {sorted(m.value for m in AllocationMode)}",
    )
    _require(
        "edge_order",
        config.edge_order in {o.value for o in EdgeOrder},
        f"must be one of {sorted(o.value for o in EdgeOrder)}",
    )
    _check_number("trials", config.trials, integer=True)
    _require("trials", config.trials >= 1, "must be >= 1")
    _check_number("master_seed", config.master_seed, integer=True)
    _require("master_seed", 0 <= config.master_seed < 2**64, "must fit in 64 bits")
    for key in ("epsilon_m", "op_time", "epsilon_g", "epsilon_n"):
        _check_number(key, getattr(config, key))
        _require(key, getattr(config, key) >= 0, "must be >= 0")
    _check_number("coherence_time", config.coherence_time)
    _require("coherence_time", config.coherence_time > 0, "must be > 0")

    _require("grid_c", isinstance(config.grid_c, list) and config.grid_c, "must be a non-empty list")
    for value in config.grid_c:
        _check_number("grid_c", value)
        _require("grid_c", value > 0, "entries must be > 0")
    _require("grid_c", list(config.grid_c) == sorted(config.grid_c), "must be ascending")
    _require("grid_n", isinstance(config.grid_n, list) and config.grid_n, "must be a non-empty list")
    for value in config.grid_n:
        _check_number("grid_n", value, integer=True)
        _require("grid_n", value >= 2, "entries must be >= 2")
    _require("grid_n", list(config.grid_n) == sorted(config.grid_n), "must be ascending")

    for key in ("edge_target", "pauli_target"):
        _check_number(key, getattr(config, key))
        _require(key, getattr(config, key) > 0, "must be > 0")
    _check_number("contour_c_min", config.contour_c_min)
    _check_number("contour_c_max", config.contour_c_max)
    _require(
        "contour_c_min",
        36.0 <= config.contour_c_min < config.contour_c_max,
        "must satisfy 36 <= contour_c_min < contour_c_max",
    )
    _check_number("contour_resolution", config.contour_resolution)
    _require("contour_resolution", config.contour_resolution > 0, "must be > 0")
    _check_number("contour_trials", config.contour_trials, integer=True)
    _require("contour_trials", config.contour_trials >= 1, "must be >= 1")
    _check_number("contour_max_trials", config.contour_max_trials, integer=True)
    _require(
        "contour_max_trials",
        config.contour_max_trials >= config.contour_trials,
        "must be >= contour_trials",
    )
    _require(
        "plot_epsilon_ns",
        isinstance(config.plot_epsilon_ns, list) and config.plot_epsilon_ns,
        "must be a non-empty list",
    )
    for value in config.plot_epsilon_ns:
        _check_number("plot_epsilon_ns", value)
        _require("plot_epsilon_ns", value >= 0, "entries must be >= 0")
    if config.workers is not None:
        _check_number("workers", config.workers, integer=True)
        _require("workers", config.workers >= 1, "must be >= 1 (or null)")
    if config.out is not None:
        _require("out", isinstance(config.out, str), "must be a string path (or null)")


def config_from_dict(document: dict) -> RunConfig:
    if not isinstance(document, dict):
        raise ConfigError(f"config root: expected a JSON object, got {type(document).__name__}")
    unknown = sorted(set(document) - set(_FIELD_TYPES))
    if unknown:
        raise ConfigError(f"unknown key(s): {', '.join(unknown)}")
    # Integer-valued floats are accepted for float fields (JSON has one number type).
    coerced = dict(document)
    for key in ("grid_c", "plot_epsilon_ns"):
        if key in coerced and isinstance(coerced[key], list):
            coerced[key] = [float(v) if isinstance(v, int) and not isinstance(v, bool) else v for v in coerced[key]]
    for key, value in coerced.items():
        if (
            _FIELD_TYPES[key].type in ("float", float)
            and isinstance(value, int)
            and not isinstance(value, bool)
        ):
            coerced[key] = float(value)
    config = RunConfig(**coerced)
    _validate(config)
    return config


def parse_config(text: str) -> RunConfig:
    """Parse a JSON config document, applying defaults for absent keys."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    return config_from_dict(document)

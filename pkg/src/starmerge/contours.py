"""Level curves of edge failure and Pauli error over the (C, N) plane.

The partitioning curve is analytic; the redistribution curve is extracted
from Monte Carlo estimates by bracket bisection with a 3-sigma decision rule
and geometric trial escalation.  Intersections of the edge-failure and
Pauli-error families locate feasible operating points.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .budget import ErrorParams, InfeasibleTargetError, PauliBudget, pauli_error, solve_cooperativity
from .lattice import RhgLattice
from .merge import (
    CLAMP_COOPERATIVITY,
    EdgeFailureStats,
    EdgeOrder,
    GateClampWarning,
    MergeConfig,
    derive_seed,
    gate_failure_prob,
    run_trials,
)
from .resource import AllocationMode

# Literature thresholds and the factor-of-10 operating targets derived from them.
EDGE_FAILURE_THRESHOLD = 0.145
PAULI_ERROR_THRESHOLD = 0.0067
DEFAULT_EDGE_TARGET = EDGE_FAILURE_THRESHOLD / 10
DEFAULT_PAULI_TARGET = PAULI_ERROR_THRESHOLD / 10

# Seed-derivation namespaces (keep sweep cells and contour evals on disjoint streams).
_SWEEP_TAG = 1
_CONTOUR_TAG = 2


@dataclass(frozen=True)
class ThresholdConstants:
    edge_failure_threshold: float = EDGE_FAILURE_THRESHOLD
    pauli_threshold: float = PAULI_ERROR_THRESHOLD
    edge_target: float = DEFAULT_EDGE_TARGET
    pauli_target: float = DEFAULT_PAULI_TARGET


THRESHOLDS = ThresholdConstants()


@dataclass(frozen=True)
class CurvePoint:
    n: float
    c: Optional[float]
    c_halfwidth: float = 0.0
    n_ceil: Optional[int] = None
    reachable: bool = True


@dataclass(frozen=True)
class LevelCurve:
    target: float
    points: Tuple[CurvePoint, ...]


def partition_edge_failure(cooperativity: float, n_qubits: int) -> float:
    """Expected edge failure rate (6/sqrt(C))^((N-1)/4) of the partitioning method."""
    if n_qubits < 2:
        raise ValueError(f"n_qubits must be >= 2, got {n_qubits}")
    return gate_failure_prob(cooperativity) ** ((n_qubits - 1) / 4.0)


def partition_level_curve(target: float, c_values: Sequence[float]) -> LevelCurve:
    """Analytic level curve N(C) = 1 + 4 ln(target)/ln(6/sqrt(C)).

    Cooperativities at or below the clamp boundary have no finite solution
    and are excluded from the curve.
    """
    if not 0.0 < target < 1.0:
        raise ValueError(f"target must be in (0, 1), got {target}")
    points: List[CurvePoint] = []
    for c in c_values:
        if c <= CLAMP_COOPERATIVITY:
            continue
        n = 1.0 + 4.0 * math.log(target) / math.log(6.0 / math.sqrt(c))
        points.append(CurvePoint(n=n, c=float(c), n_ceil=math.ceil(n)))
    points.sort(key=lambda p: p.n)
    return LevelCurve(target=target, points=tuple(points))


@dataclass(frozen=True)
class ContourSettings:
    """Search range, stopping rule and seeding for the noisy level-curve solver."""

    c_min: float = CLAMP_COOPERATIVITY + 0.5
    c_max: float = 300.0
    resolution: float = 0.5
    initial_trials: int = 2000
    max_trials: int = 128_000
    escalation: int = 4
    edge_order: EdgeOrder = EdgeOrder.SHUFFLED
    master_seed: int = 0
    workers: Optional[int] = None

    def __post_init__(self) -> None:
        if not CLAMP_COOPERATIVITY <= self.c_min < self.c_max:
            raise ValueError("need clamp boundary <= c_min < c_max")
        if self.resolution <= 0:
            raise ValueError("resolution must be > 0")
        if self.initial_trials < 1 or self.max_trials < self.initial_trials:
            raise ValueError("need 1 <= initial_trials <= max_trials")
        if self.escalation < 2:
            raise ValueError("escalation factor must be >= 2")


Estimator = Callable[[float, int], Tuple[float, float]]
"""(cooperativity, trials) -> (mean failure fraction, standard error)."""


def solve_level_crossing(
    estimator: Estimator, target: float, settings: ContourSettings
) -> Optional[Tuple[float, float]]:
    """Find C* where a monotone-decreasing noisy estimator crosses ``target``.

    Bisects on the sign of (estimate - target); whenever the target lies
    inside the 3-sigma band of an evaluation, trials escalate geometrically
    before deciding.  Returns (C*, bracket half-width), or None when the
    target is still out of reach at c_max.
    """

    def sits_above(c: float) -> bool:
        trials = settings.initial_trials
        mean, se = estimator(c, trials)
        while abs(mean - target) <= 3.0 * se and trials < settings.max_trials:
            trials = min(trials * settings.escalation, settings.max_trials)
            mean, se = estimator(c, trials)
        return mean > target

    if sits_above(settings.c_max):
        return None
    lo, hi = settings.c_min, settings.c_max
    while hi - lo > settings.resolution:
        mid = 0.5 * (lo + hi)
        if sits_above(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), 0.5 * (hi - lo)


def _mc_estimator(lattice: RhgLattice, n_qubits: int, settings: ContourSettings) -> Estimator:
    """Redistribution-mode MC estimator with a fresh derived seed per evaluation."""
    counter = itertools.count()

    def estimate(c: float, trials: int) -> Tuple[float, float]:
        seed = derive_seed(settings.master_seed, _CONTOUR_TAG, n_qubits, next(counter))
        config = MergeConfig(
            cooperativity=c,
            n_qubits=n_qubits,
            mode=AllocationMode.REDISTRIBUTION,
            edge_order=settings.edge_order,
            trials=trials,
            master_seed=seed,
        )
        stats = run_trials(lattice, config, workers=settings.workers)
        return stats.mean_failure_fraction, stats.std_error

    return estimate


def redistribution_level_curve(
    target: float,
    n_values: Sequence[int],
    lattice: RhgLattice,
    settings: ContourSettings,
) -> LevelCurve:
    """Monte Carlo level curve C*(N) of the redistribution method.

    Unreachable targets (failure still above target at c_max) yield a point
    flagged unreachable with no cooperativity.
    """
    if not 0.0 < target < 1.0:
        raise ValueError(f"target must be in (0, 1), got {target}")
    points: List[CurvePoint] = []
    for n in sorted(n_values):
        solution = solve_level_crossing(_mc_estimator(lattice, n, settings), target, settings)
        if solution is None:
            points.append(CurvePoint(n=float(n), c=None, reachable=False))
        else:
            c_star, halfwidth = solution
            points.append(CurvePoint(n=float(n), c=c_star, c_halfwidth=halfwidth))
    return LevelCurve(target=target, points=tuple(points))


def pauli_level_curve(target: float, n_values: Sequence[int], params: ErrorParams) -> LevelCurve:
    """Closed-form level curve C(N) of the Pauli error budget at ``target``.

    N values whose per-qubit and gate terms already exceed the target have no
    finite cooperativity and are flagged unreachable.
    """
    points: List[CurvePoint] = []
    for n in sorted(n_values):
        try:
            points.append(CurvePoint(n=float(n), c=solve_cooperativity(n, target, params)))
        except InfeasibleTargetError:
            points.append(CurvePoint(n=float(n), c=None, reachable=False))
    return LevelCurve(target=target, points=tuple(points))


def recommend_from_curve(
    edge_curve: LevelCurve, pauli_target: float, params: ErrorParams
) -> Optional[Tuple[int, float]]:
    """Minimal-C feasible (N, C) given an already-computed edge-failure curve."""
    best: Optional[Tuple[float, int]] = None
    for point in edge_curve.points:
        if not point.reachable or point.c is None:
            continue
        n = int(round(point.n))
        try:
            c_pauli = solve_cooperativity(n, pauli_target, params)
        except InfeasibleTargetError:
            continue
        required = max(point.c, c_pauli)
        if best is None or (required, n) < best:
            best = (required, n)
    if best is None:
        return None
    return best[1], best[0]


@dataclass(frozen=True)
class OperatingPoint:
    n_qubits: int
    c_edge: Optional[float]
    c_edge_halfwidth: float
    c_pauli: Optional[float]
    feasible: bool

    @property
    def c_required(self) -> Optional[float]:
        if not self.feasible:
            return None
        return max(self.c_edge, self.c_pauli)


@dataclass(frozen=True)
class IntersectionResult:
    points: Tuple[OperatingPoint, ...]
    recommended: Optional[OperatingPoint]


def find_intersection(
    edge_target: float,
    pauli_target: float,
    params: ErrorParams,
    n_values: Sequence[int],
    lattice: RhgLattice,
    settings: ContourSettings,
) -> IntersectionResult:
    """Per-N frontier of C >= max(C_edge, C_pauli) and the minimal-C operating point.

    Ties between equal required cooperativities break toward smaller N.
    """
    points: List[OperatingPoint] = []
    for n in sorted(n_values):
        try:
            c_pauli: Optional[float] = solve_cooperativity(n, pauli_target, params)
        except InfeasibleTargetError:
            c_pauli = None
        if edge_target >= 1.0:
            c_edge: Optional[float] = settings.c_min
            halfwidth = 0.0
        else:
            solution = solve_level_crossing(_mc_estimator(lattice, n, settings), edge_target, settings)
            c_edge, halfwidth = solution if solution is not None else (None, 0.0)
        points.append(
            OperatingPoint(
                n_qubits=n,
                c_edge=c_edge,
                c_edge_halfwidth=halfwidth,
                c_pauli=c_pauli,
                feasible=c_edge is not None and c_pauli is not None,
            )
        )
    feasible = [p for p in points if p.feasible]
    recommended = min(feasible, key=lambda p: (p.c_required, p.n_qubits)) if feasible else None
    return IntersectionResult(points=tuple(points), recommended=recommended)


@dataclass(frozen=True)
class SweepCell:
    cooperativity: float
    n_qubits: int
    mode: AllocationMode
    edge_failure: EdgeFailureStats
    pauli: PauliBudget
    seed: int


@dataclass(frozen=True)
class SweepGrid:
    c_values: Tuple[float, ...]
    n_values: Tuple[int, ...]
    cells: Tuple[SweepCell, ...]  # N-major, C ascending within each N

    def cell(self, cooperativity: float, n_qubits: int) -> SweepCell:
        ci = self.c_values.index(cooperativity)
        ni = self.n_values.index(n_qubits)
        return self.cells[ni * len(self.c_values) + ci]


def run_sweep(
    c_values: Sequence[float],
    n_values: Sequence[int],
    lattice: RhgLattice,
    params: ErrorParams,
    mode: AllocationMode = AllocationMode.REDISTRIBUTION,
    edge_order: EdgeOrder = EdgeOrder.SHUFFLED,
    trials: int = 10_000,
    master_seed: int = 0,
    workers: Optional[int] = None,
) -> SweepGrid:
    """Fill every (C, N) grid cell with MC edge-failure stats and the Pauli budget.

    Per-cell seeds derive from (master_seed, cell position) only, so sweeps
    of the two allocation modes under one master seed are draw-for-draw paired.
    """
    if not c_values or not n_values:
        raise ValueError("sweep grid must be non-empty")
    cells: List[SweepCell] = []
    with warnings.catch_warnings():
        # Grids routinely include the clamped low-C corner; one warning per
        # sweep would drown real ones.
        warnings.simplefilter("ignore", GateClampWarning)
        for ni, n in enumerate(n_values):
            for ci, c in enumerate(c_values):
                seed = derive_seed(master_seed, _SWEEP_TAG, ci, ni)
                config = MergeConfig(
                    cooperativity=c,
                    n_qubits=n,
                    mode=mode,
                    edge_order=edge_order,
                    trials=trials,
                    master_seed=seed,
                )
                stats = run_trials(lattice, config, workers=workers)
                cells.append(
                    SweepCell(
                        cooperativity=float(c),
                        n_qubits=int(n),
                        mode=mode,
                        edge_failure=stats,
                        pauli=pauli_error(c, n, params),
                        seed=seed,
                    )
                )
    return SweepGrid(
        c_values=tuple(float(c) for c in c_values),
        n_values=tuple(int(n) for n in n_values),
        cells=tuple(cells),
    )

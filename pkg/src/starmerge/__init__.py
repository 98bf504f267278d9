"""starmerge: Monte Carlo construction of fault-tolerant cluster states.

Builds distance-d RHG cluster-state lattices, merges star-graph resource
states over their edges with a heralded cavity gate, evaluates the per-qubit
Pauli error budget, and extracts the (cooperativity, resource-size) operating
regions that sit a target factor below the error-correction thresholds.
"""

from .budget import (
    ErrorParams,
    InfeasibleTargetError,
    PauliBudget,
    max_feasible_n,
    pauli_error,
    solve_cooperativity,
)
from .config import ConfigError, RunConfig, parse_config
from .contours import (
    DEFAULT_EDGE_TARGET,
    DEFAULT_PAULI_TARGET,
    EDGE_FAILURE_THRESHOLD,
    PAULI_ERROR_THRESHOLD,
    THRESHOLDS,
    ContourSettings,
    CurvePoint,
    IntersectionResult,
    LevelCurve,
    OperatingPoint,
    SweepCell,
    SweepGrid,
    ThresholdConstants,
    find_intersection,
    partition_edge_failure,
    partition_level_curve,
    pauli_level_curve,
    redistribution_level_curve,
    run_sweep,
    solve_level_crossing,
)
from .lattice import (
    Boundary,
    LatticeSpec,
    LatticeStats,
    RhgLattice,
    build_lattice,
    lattice_stats,
    lattice_to_json_dict,
)
from .merge import (
    CLAMP_COOPERATIVITY,
    EdgeFailureStats,
    EdgeOrder,
    GateClampWarning,
    GateModel,
    MergeConfig,
    TrialOutcome,
    apply_adaptive_loss,
    gate_failure_prob,
    run_trials,
    simulate_trial,
    trial_stream,
)
from .resource import (
    AllocationMode,
    CARVING_RATE,
    StarLedger,
    carving_infidelity,
    carving_tradeoff,
    cooperativity_from_physical,
    new_star,
    partition_group_sizes,
)

__version__ = "0.1.0"

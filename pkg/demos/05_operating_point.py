"""
Picking an operating point
==========================

A workable (C, N) must satisfy both thresholds at once: the edge failure
target fixes a minimum cooperativity per resource size from the merge
simulation, and the Pauli budget fixes another from the closed form.  The
recommended operating point minimizes the larger of the two, breaking ties
toward smaller stars.
"""

from starmerge import ContourSettings, ErrorParams, LatticeSpec, build_lattice, find_intersection
from starmerge.results_io import INTERSECTION_COLUMNS, OutputFormat, emit_results, intersection_records

EDGE_TARGET = 0.05  # scaled for a quick small-lattice run
PAULI_TARGET = 6.7e-4

lattice = build_lattice(LatticeSpec(2))
settings = ContourSettings(
    c_min=40.0, c_max=280.0, resolution=2.0, initial_trials=400, max_trials=6400, master_seed=9
)

# ---------------------------------------------------------------------------
# Sweep the per-N frontier for two qualities of non-carving error.

for eps in (5.5e-5, 3e-5):
    params = ErrorParams(extra_per_qubit=eps)
    result = find_intersection(EDGE_TARGET, PAULI_TARGET, params, [9, 11, 13, 15, 17], lattice, settings)
    print(f"\neps_N = {eps:g}:")
    for point in result.points:
        if point.feasible:
            print(f"  N={point.n_qubits:3d}: C_edge = {point.c_edge:6.1f}, "
                  f"C_pauli = {point.c_pauli:6.1f} -> required C = {point.c_required:6.1f}")
        else:
            why = "Pauli budget infeasible" if point.c_pauli is None else "edge target unreachable"
            print(f"  N={point.n_qubits:3d}: {why}")
    if result.recommended is not None:
        rec = result.recommended
        print(f"  recommended: N = {rec.n_qubits}, C = {rec.c_required:.1f}")
    else:
        print("  no feasible operating point on this grid")

# ---------------------------------------------------------------------------
# Persist the eps_N = 3e-5 frontier.

params = ErrorParams(extra_per_qubit=3e-5)
result = find_intersection(EDGE_TARGET, PAULI_TARGET, params, [9, 11, 13, 15, 17], lattice, settings)
emit_results(intersection_records(result), INTERSECTION_COLUMNS, OutputFormat.CSV, "operating_points.csv")
print("\nwrote operating_points.csv")

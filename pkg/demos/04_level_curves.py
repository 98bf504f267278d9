"""
Level curves over the (C, N) plane
==================================

Where in parameter space does the edge failure rate hit a chosen target?
The partitioning curve follows from inverting its closed form; the
redistribution curve is extracted from Monte Carlo estimates by bracket
bisection with a 3-sigma decision rule and geometric trial escalation.
"""

from starmerge import (
    ContourSettings,
    LatticeSpec,
    build_lattice,
    partition_edge_failure,
    partition_level_curve,
    redistribution_level_curve,
    solve_level_crossing,
)
from starmerge.results_io import CURVE_COLUMNS, OutputFormat, curve_records, emit_results
from starmerge.svgplot import PlotCurve, emit_plot

TARGET = 0.05  # a modest target keeps this demo quick on a small lattice

# ---------------------------------------------------------------------------
# Analytic partitioning curve: N(C) = 1 + 4 ln(target)/ln(6/sqrt(C)).

curve_part = partition_level_curve(TARGET, [float(c) for c in range(60, 301, 40)])
print(f"partitioning curve at p_edge = {TARGET}:")
for p in curve_part.points:
    print(f"  C = {p.c:5.0f} -> N = {p.n:6.2f} (next integer {p.n_ceil})")

# ---------------------------------------------------------------------------
# The bisection solver against a deterministic evaluator recovers the
# closed-form inverse exactly (to bracket resolution).

def exact_evaluator(c, trials):
    return partition_edge_failure(c, 13), 0.0

settings = ContourSettings(c_min=36.5, c_max=300.0, resolution=0.1, initial_trials=10, max_trials=10)
c_star, halfwidth = solve_level_crossing(exact_evaluator, 0.5, settings)
print(f"\nbisection vs closed form at N=13, target 0.5: "
      f"C* = {c_star:.3f} +- {halfwidth:.3f} (exact {36 * 2 ** (2 / 3):.3f})")

# ---------------------------------------------------------------------------
# Monte Carlo redistribution curve on a distance-2 lattice.

lattice = build_lattice(LatticeSpec(2))
mc_settings = ContourSettings(
    c_min=40.0, c_max=280.0, resolution=2.0, initial_trials=400, max_trials=6400, master_seed=12
)
curve_mc = redistribution_level_curve(TARGET, [9, 13, 17, 21], lattice, mc_settings)
print(f"\nredistribution curve at p_edge = {TARGET} (Monte Carlo):")
for p in curve_mc.points:
    if p.reachable:
        print(f"  N = {p.n:4.0f} -> C* = {p.c:6.1f} +- {p.c_halfwidth:.1f}")
    else:
        print(f"  N = {p.n:4.0f} -> unreachable below C = {mc_settings.c_max}")

# ---------------------------------------------------------------------------
# Persist both curves as CSV and a quick SVG figure.

records = curve_records({"partition": curve_part, "redistribution": curve_mc})
emit_results(records, CURVE_COLUMNS, OutputFormat.CSV, "level_curves.csv")
emit_plot(
    "level_curves.svg",
    curves=[
        PlotCurve("partitioning (analytic)", "#d62728", curve_part),
        PlotCurve("redistribution (MC)", "#1f77b4", curve_mc),
    ],
    c_range=(36.0, 300.0),
    n_range=(5.0, 30.0),
    title=f"edge failure level curves at {TARGET}",
)
print("\nwrote level_curves.csv and level_curves.svg")

"""
Partitioning vs redistribution
==============================

Each lattice edge is built by a heralded gate that fails with probability
6/sqrt(C), burning one leaf qubit at each endpoint per attempt.  Partitioning
pins each leaf to one of the four edge directions, so an N-qubit star gives
every edge (N-1)/4 tries and the edge failure rate is the closed form
(6/sqrt(C))^((N-1)/4).  Redistribution pools all N-1 leaves.
"""

from starmerge import (
    AllocationMode,
    LatticeSpec,
    MergeConfig,
    build_lattice,
    gate_failure_prob,
    partition_edge_failure,
    run_trials,
)

lattice = build_lattice(LatticeSpec(3))
TRIALS = 3000

# ---------------------------------------------------------------------------
# Monte Carlo vs the closed form, and the pooled-leaf advantage.

print(f"{'C':>5} {'N':>3} {'p_f':>6} | {'partition MC':>13} {'analytic':>9} | {'redistribution':>14}")
for c, n in [(100.0, 13), (130.0, 17), (144.0, 21), (256.0, 13)]:
    part = run_trials(lattice, MergeConfig(c, n, AllocationMode.PARTITIONING, trials=TRIALS, master_seed=1))
    redist = run_trials(lattice, MergeConfig(c, n, AllocationMode.REDISTRIBUTION, trials=TRIALS, master_seed=1))
    print(f"{c:5.0f} {n:3d} {gate_failure_prob(c):6.3f} | "
          f"{part.mean_failure_fraction:13.5f} {partition_edge_failure(c, n):9.5f} | "
          f"{redist.mean_failure_fraction:14.5f}")

# ---------------------------------------------------------------------------
# The advantage inverts near the clamp boundary.  With p_f ~ 0.9 a single
# stubborn edge can eat a node's entire pooled budget before its siblings get
# a turn; fixed groups ration the leaves and come out ahead.

print("\nlow-cooperativity reversal (greedy pooling starves sibling edges):")
for c in (40.0, 50.0, 70.0, 100.0):
    part = run_trials(lattice, MergeConfig(c, 9, AllocationMode.PARTITIONING, trials=TRIALS, master_seed=2))
    redist = run_trials(lattice, MergeConfig(c, 9, AllocationMode.REDISTRIBUTION, trials=TRIALS, master_seed=2))
    gap = redist.mean_failure_fraction - part.mean_failure_fraction
    tag = "redistribution worse" if gap > 0 else "redistribution better"
    print(f"  C={c:5.0f}  partition {part.mean_failure_fraction:.4f}  "
          f"redistribution {redist.mean_failure_fraction:.4f}  ({tag})")

# ---------------------------------------------------------------------------
# Failed edges Z-measure one endpoint at random: the loss fraction tracks the
# edge failure rate but saturates more slowly (collisions on shared nodes).

print("\nedge failure vs qubit loss (redistribution, N=17):")
for c in (80.0, 110.0, 140.0, 200.0):
    stats = run_trials(lattice, MergeConfig(c, 17, trials=TRIALS, master_seed=3))
    print(f"  C={c:5.0f}  edge failure {stats.mean_failure_fraction:8.5f}  "
          f"loss fraction {stats.loss_fraction_mean:8.5f}")

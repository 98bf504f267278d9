"""
Anatomy of the cluster-state lattice
====================================

Qubits sit on the edges and faces of a cubic cell complex.  In doubled
integer coordinates a site hosts a qubit iff it has exactly one odd
component (edge qubit) or exactly two (face qubit); neighbors differ by one
unit step along a single axis, giving every bulk qubit degree four.
"""

import json

from starmerge import Boundary, LatticeSpec, build_lattice, lattice_stats, lattice_to_json_dict

# ---------------------------------------------------------------------------
# Periodic blocks: 6d^3 qubits, 12d^3 edges, every degree exactly 4.

for d in (1, 2, 3, 10):
    stats = lattice_stats(build_lattice(LatticeSpec(d)))
    print(f"periodic d={d:2d}: {stats.node_count:5d} qubits, {stats.edge_count:5d} edges, "
          f"degrees {stats.degree_histogram}")

# ---------------------------------------------------------------------------
# Open boundary keeps the same bulk but sheds edges at the surface.

for d in (1, 2, 3):
    stats = lattice_stats(build_lattice(LatticeSpec(d, Boundary.OPEN)))
    print(f"open     d={d:2d}: {stats.node_count:5d} qubits, {stats.edge_count:5d} edges, "
          f"degrees {stats.degree_histogram}")

# ---------------------------------------------------------------------------
# A face qubit and its four boundary edge qubits.

lattice = build_lattice(LatticeSpec(3))
face = lattice.node_index((1, 1, 0))
print(f"\nface qubit at (1,1,0) touches: "
      f"{[lattice.coordinate(n) for n in lattice.neighbors(face)]}")

edge_qubit = lattice.node_index((1, 0, 0))
print(f"edge qubit at (1,0,0) touches: "
      f"{[lattice.coordinate(n) for n in lattice.neighbors(edge_qubit)]}")

# ---------------------------------------------------------------------------
# The JSON dump used for cross-checking against external constructions.

doc = lattice_to_json_dict(build_lattice(LatticeSpec(1)))
print(f"\nd=1 dump:\n{json.dumps(doc, indent=2)[:400]} ...")

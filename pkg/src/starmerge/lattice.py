"""3D cluster-state lattice geometry.

Qubits live on the edges and faces of a cubic cell complex covering a
d x d x d block of unit cells.  In doubled integer coordinates a site is a
qubit iff it has exactly one odd component (an edge of the primal complex)
or exactly two odd components (a face).  Two qubits are connected iff their
coordinates differ by +-1 along exactly one axis, so every graph edge joins
a face qubit to one of its four boundary edge qubits and every qubit has
degree four in the bulk.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

import numpy as np

Coordinate = Tuple[int, int, int]


class Boundary(Enum):
    PERIODIC = "periodic"
    OPEN = "open"


@dataclass(frozen=True)
class LatticeSpec:
    """Code distance and boundary handling for the cluster-state block."""

    distance: int
    boundary: Boundary = Boundary.PERIODIC

    def __post_init__(self) -> None:
        if not isinstance(self.distance, int) or self.distance < 1:
            raise ValueError(f"distance must be a positive integer, got {self.distance!r}")


def odd_component_count(coord: Coordinate) -> int:
    return (coord[0] & 1) + (coord[1] & 1) + (coord[2] & 1)


def is_qubit_site(coord: Coordinate) -> bool:
    """True for edge sites (1 odd component) and face sites (2 odd components)."""
    return odd_component_count(coord) in (1, 2)


@dataclass(frozen=True)
class LatticeStats:
    node_count: int
    edge_count: int
    degree_histogram: Dict[int, int]


@dataclass(frozen=True)
class RhgLattice:
    """Immutable cluster-state graph; safe to share read-only across workers.

    Nodes are indexed lexicographically by coordinate.  ``edges[k] = (u, v)``
    with ``u <= v``; ``adjacency[n]`` lists the edge indices incident to node
    ``n`` in ascending order, and ``edge_slots[k] = (slot_at_u, slot_at_v)``
    gives each edge's fixed direction slot (0..3) at its two endpoints, i.e.
    its rank within the endpoint's adjacency list.

    Under periodic boundary at distance 1 the +1/-1 wraps along an axis meet,
    so a node pair can carry two parallel edges; these are distinct edges of
    the underlying cell complex and are kept as distinct entries.
    """

    spec: LatticeSpec
    coords: np.ndarray  # (n_nodes, 3) int64
    edges: np.ndarray  # (n_edges, 2) int32
    adjacency: Tuple[Tuple[int, ...], ...]
    edge_slots: np.ndarray = field(repr=False)  # (n_edges, 2) int32

    @property
    def n_nodes(self) -> int:
        return self.coords.shape[0]

    @property
    def n_edges(self) -> int:
        return self.edges.shape[0]

    def coordinate(self, node: int) -> Coordinate:
        x, y, z = self.coords[node]
        return (int(x), int(y), int(z))

    def node_index(self, coord: Coordinate) -> int:
        """Index of the node at ``coord``; raises KeyError for non-qubit sites."""
        keys = self.coords
        lo, hi = 0, keys.shape[0]
        target = tuple(coord)
        while lo < hi:
            mid = (lo + hi) // 2
            row = (int(keys[mid, 0]), int(keys[mid, 1]), int(keys[mid, 2]))
            if row < target:
                lo = mid + 1
            else:
                hi = mid
        if lo < keys.shape[0]:
            row = (int(keys[lo, 0]), int(keys[lo, 1]), int(keys[lo, 2]))
            if row == target:
                return lo
        raise KeyError(f"no qubit at {coord}")

    def degree(self, node: int) -> int:
        return len(self.adjacency[node])

    def neighbors(self, node: int) -> List[int]:
        """Adjacent node indices, one entry per incident edge, deterministic order."""
        if not 0 <= node < self.n_nodes:
            raise IndexError(f"node index {node} out of range")
        out = []
        for e in self.adjacency[node]:
            u, v = self.edges[e]
            out.append(int(v) if u == node else int(u))
        return out


def build_lattice(spec: LatticeSpec) -> RhgLattice:
    """Construct the cluster-state graph for a d x d x d block of unit cells."""
    d = spec.distance
    periodic = spec.boundary is Boundary.PERIODIC
    extent = 2 * d
    hi = extent if periodic else extent + 1  # open blocks include the far boundary plane

    coords: List[Coordinate] = []
    for x in range(hi):
        for y in range(hi):
            for z in range(hi):
                if is_qubit_site((x, y, z)):
                    coords.append((x, y, z))
    index = {c: i for i, c in enumerate(coords)}

    # Every graph edge joins a face qubit to a boundary edge qubit, so
    # enumerating the four unit steps along each face's odd axes covers each
    # cell-complex edge exactly once.
    raw_edges: List[Tuple[int, int]] = []
    for i, (x, y, z) in enumerate(coords):
        site = (x, y, z)
        if odd_component_count(site) != 2:
            continue
        for axis in range(3):
            if site[axis] % 2 == 0:
                continue
            for step in (-1, 1):
                nb = list(site)
                nb[axis] += step
                if periodic:
                    nb[axis] %= extent
                elif not 0 <= nb[axis] <= extent:
                    continue
                j = index[tuple(nb)]
                raw_edges.append((i, j) if i <= j else (j, i))
    raw_edges.sort()

    edges = np.asarray(raw_edges, dtype=np.int32).reshape(len(raw_edges), 2)
    adjacency_lists: List[List[int]] = [[] for _ in coords]
    for e, (u, v) in enumerate(raw_edges):
        adjacency_lists[u].append(e)
        adjacency_lists[v].append(e)

    edge_slots = np.zeros((len(raw_edges), 2), dtype=np.int32)
    for n, incident in enumerate(adjacency_lists):
        if len(incident) > 4:
            raise AssertionError(f"node {n} has degree {len(incident)} > 4")
        for slot, e in enumerate(incident):
            edge_slots[e, 0 if edges[e, 0] == n else 1] = slot

    return RhgLattice(
        spec=spec,
        coords=np.asarray(coords, dtype=np.int64),
        edges=edges,
        adjacency=tuple(tuple(a) for a in adjacency_lists),
        edge_slots=edge_slots,
    )


def lattice_stats(lattice: RhgLattice) -> LatticeStats:
    histogram = Counter(len(a) for a in lattice.adjacency)
    return LatticeStats(
        node_count=lattice.n_nodes,
        edge_count=lattice.n_edges,
        degree_histogram=dict(sorted(histogram.items())),
    )


def lattice_to_json_dict(lattice: RhgLattice) -> dict:
    """JSON-serializable dump for cross-checking against external constructions."""
    return {
        "spec": {
            "distance": lattice.spec.distance,
            "boundary": lattice.spec.boundary.value,
        },
        "nodes": lattice.coords.tolist(),
        "edges": lattice.edges.tolist(),
    }

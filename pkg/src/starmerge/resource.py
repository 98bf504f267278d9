"""Star-graph resource states: leaf budgets and carving fidelity closed forms.

A resource state is an N-qubit star graph (central qubit plus N-1 leaves)
produced by heralded cavity carving.  Leaves buffer failures of the merge
gate; the two allocation strategies differ in whether a leaf is free for any
edge (redistribution) or pinned to one of the four edge directions
(partitioning).
"""

from __future__ import annotations

import math
from enum import Enum
from typing import List, Optional

# Exponential suppression rate of the post-selected carving infidelity in C/N.
CARVING_RATE = 8.0 / math.pi**2


class AllocationMode(Enum):
    REDISTRIBUTION = "redistribution"
    PARTITIONING = "partitioning"


def partition_group_sizes(n_qubits: int) -> List[int]:
    """Balanced round-robin split of the N-1 leaves over the four directions.

    Remainder leaves go to the lowest direction indices, e.g. 14 -> [4, 4, 3, 3].
    """
    leaves = n_qubits - 1
    base, rem = divmod(leaves, 4)
    return [base + 1 if k < rem else base for k in range(4)]


class StarLedger:
    """Per-node leaf bookkeeping for one merge trial (single-owner, mutable)."""

    __slots__ = ("n_qubits", "mode", "leaves_remaining", "group_remaining")

    def __init__(self, n_qubits: int, mode: AllocationMode) -> None:
        if n_qubits < 2:
            raise ValueError(f"a star graph needs at least 2 qubits, got {n_qubits}")
        self.n_qubits = n_qubits
        self.mode = mode
        self.leaves_remaining = n_qubits - 1
        self.group_remaining: Optional[List[int]] = (
            partition_group_sizes(n_qubits) if mode is AllocationMode.PARTITIONING else None
        )

    def can_supply(self, direction: int) -> bool:
        if self.group_remaining is not None:
            return self.group_remaining[direction] > 0
        return self.leaves_remaining > 0

    def consume_leaf(self, direction: int) -> bool:
        """Take one leaf for an attempt in ``direction``; False when exhausted."""
        if not 0 <= direction <= 3:
            raise ValueError(f"direction must be 0..3, got {direction}")
        if not self.can_supply(direction):
            return False
        self.leaves_remaining -= 1
        if self.group_remaining is not None:
            self.group_remaining[direction] -= 1
        return True


def new_star(n_qubits: int, mode: AllocationMode) -> StarLedger:
    return StarLedger(n_qubits, mode)


def carving_infidelity(cooperativity: float, n_qubits: int) -> float:
    """Post-selected infidelity exp(-(8/pi^2) C/N) of carving an N-qubit star.

    Unit prefactor on the scaling relation; valid for O(1) success probability.
    """
    if cooperativity < 0:
        raise ValueError(f"cooperativity must be >= 0, got {cooperativity}")
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    if math.isinf(cooperativity):
        return 0.0
    return math.exp(-CARVING_RATE * cooperativity / n_qubits)


def carving_tradeoff(success_probability: float, cooperativity: float, n_qubits: int) -> float:
    """Carving infidelity (1/P_s)^(-C/N) as a function of the success probability.

    Equals ``carving_infidelity`` at the calibration point P_s = exp(-8/pi^2).
    """
    if not 0.0 < success_probability <= 1.0:
        raise ValueError(f"success probability must be in (0, 1], got {success_probability}")
    if cooperativity < 0:
        raise ValueError(f"cooperativity must be >= 0, got {cooperativity}")
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    return success_probability ** (cooperativity / n_qubits)


def cooperativity_from_physical(g: float, kappa: float, gamma: float) -> float:
    """Single-atom cooperativity g^2 / (kappa * gamma) from the raw cavity rates."""
    if g <= 0 or kappa <= 0 or gamma <= 0:
        raise ValueError("all rates must be positive")
    return g * g / (kappa * gamma)

"""Physical-qubit Pauli error budget and its feasibility/inversion forms.

The per-qubit error of a merged cluster state is the sum of the carving
infidelity exp(-(8/pi^2) C/N), a per-qubit term N*eps_N lumping measurement
error, decoherence (t/tau) and any other N-proportional sources, and a gate
term bounded by 4*eps_G (at most four successful connections per qubit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .resource import CARVING_RATE, carving_infidelity

DEFAULT_COHERENCE_TIME = 1.5  # seconds, T2 dephasing


class InfeasibleTargetError(ValueError):
    """The requested error target cannot be met at any cooperativity."""


@dataclass(frozen=True)
class ErrorParams:
    measurement_infidelity: float = 0.0
    op_time: float = 0.0
    coherence_time: float = DEFAULT_COHERENCE_TIME
    gate_infidelity: float = 0.0
    extra_per_qubit: float = 0.0

    def __post_init__(self) -> None:
        for name in ("measurement_infidelity", "op_time", "gate_infidelity", "extra_per_qubit"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.coherence_time <= 0:
            raise ValueError("coherence_time must be > 0")

    def epsilon_n(self) -> float:
        """Lumped per-qubit error rate: measurement + decoherence + extras."""
        return self.measurement_infidelity + self.op_time / self.coherence_time + self.extra_per_qubit


@dataclass(frozen=True)
class PauliBudget:
    carving_term: float
    per_qubit_term: float
    gate_term: float

    @property
    def total(self) -> float:
        return self.carving_term + self.per_qubit_term + self.gate_term


def pauli_error(cooperativity: float, n_qubits: int, params: ErrorParams) -> PauliBudget:
    """Evaluate the three-term per-qubit Pauli error budget at (C, N)."""
    if n_qubits < 2:
        raise ValueError(f"n_qubits must be >= 2, got {n_qubits}")
    return PauliBudget(
        carving_term=carving_infidelity(cooperativity, n_qubits),
        per_qubit_term=n_qubits * params.epsilon_n(),
        gate_term=4.0 * params.gate_infidelity,
    )


def max_feasible_n(target: float, params: ErrorParams):
    """Largest N whose N-proportional and gate terms leave room under ``target``.

    The carving term can be driven arbitrarily small by raising C, so N is
    feasible iff N*eps_N + 4*eps_G < target (strict).  Returns None when no
    N >= 2 qualifies, and math.inf when eps_N = 0 leaves every N feasible.
    """
    if target <= 0:
        raise ValueError(f"target must be > 0, got {target}")
    slope = params.epsilon_n()
    floor_term = 4.0 * params.gate_infidelity
    if slope == 0.0:
        return math.inf if floor_term < target else None
    n = int((target - floor_term) / slope)
    while n * slope + floor_term >= target:
        n -= 1
    while (n + 1) * slope + floor_term < target:
        n += 1
    return n if n >= 2 else None


def solve_cooperativity(n_qubits: int, target: float, params: ErrorParams) -> float:
    """Unique C at which the total budget equals ``target`` for an N-qubit star.

    Inverts the carving term: C = -(pi^2/8) * N * ln(target - N*eps_N - 4*eps_G).
    """
    if n_qubits < 2:
        raise ValueError(f"n_qubits must be >= 2, got {n_qubits}")
    if target <= 0:
        raise ValueError(f"target must be > 0, got {target}")
    margin = target - n_qubits * params.epsilon_n() - 4.0 * params.gate_infidelity
    if margin <= 0:
        raise InfeasibleTargetError(
            f"N={n_qubits}: per-qubit and gate terms leave no margin "
            f"({margin:.3e}) for the carving term"
        )
    if margin > 1:
        raise InfeasibleTargetError(
            f"N={n_qubits}: target exceeds the total error at zero coupling (margin {margin:.3e} > 1)"
        )
    return -(n_qubits / CARVING_RATE) * math.log(margin)

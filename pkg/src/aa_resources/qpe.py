"""Cost of low-T phase estimation over a Szegedy-type walk."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .cost_core import TCount, clog2, rotation_t_cost


@dataclass(frozen=True)
class QpePlan:
    delta_e: float
    alpha: float
    p: int
    t_count: TCount

    @property
    def eps_qft(self) -> float:
        return 2.0 ** -(self.p + 1)

    @property
    def qubits(self) -> int:
        return qpe_qubit_count(self.p)


def qpe_register_size(alpha: float, delta_e: float) -> int:
    """Bits ``p = ceil(log2(sqrt(2) pi alpha / (2 dE)))`` for Holevo variance ``delta_e``."""
    if not alpha > 0 or not delta_e > 0:
        raise ValueError(f"alpha and delta_e must be positive, got {alpha}, {delta_e}")
    if delta_e >= alpha:
        raise ValueError(f"delta_e={delta_e} must be smaller than alpha={alpha}")
    return max(1, clog2(math.sqrt(2.0) * math.pi * alpha / (2.0 * delta_e)))


def qpe_rotation_count(p: int) -> int:
    """Single-qubit rotations in the register preparation plus inverse QFT."""
    return 4 * p + 2 * p * (p - 1)


def qpe_t_count(p: int, t_hamiltonian: TCount) -> TCount:
    """Rotations synthesized to ``eps_qft / (pi p)`` each, plus ``2^p`` walk steps."""
    if p < 1:
        raise ValueError(f"QPE needs p >= 1, got {p}")
    eps_rot = 2.0 ** -(p + 1) / (math.pi * p)
    rot = qpe_rotation_count(p) * rotation_t_cost(eps_rot)
    walk = (1 << p) * int(t_hamiltonian)
    return TCount.from_parts({"chi_and_qft": rot, "walk": walk})


def qpe_qubit_count(p: int) -> int:
    if p < 1:
        raise ValueError(f"QPE needs p >= 1, got {p}")
    return p


def plan_qpe(alpha: float, delta_e: float, t_hamiltonian: TCount) -> QpePlan:
    p = qpe_register_size(alpha, delta_e)
    return QpePlan(delta_e=delta_e, alpha=alpha, p=p, t_count=qpe_t_count(p, t_hamiltonian))

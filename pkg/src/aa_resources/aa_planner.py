"""Amplitude-amplification planning with QSP approximate reflectors.

A plan fixes the iteration count, the reflector error budget (including
rotation-synthesis corrections), the QSP transition width and degree, and
from those the T cost of the amplification stage.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .cost_core import TCount, ceil_int, mcx_t_cost, rotation_t_cost
from .errors import InfeasiblePlanError

# Fraction of the bare budget granted to each phase rotation, before dividing
# by the QSP degree.
PHASE_ROTATION_FRACTION = 1e-10
# Block-encoding rotation error is this constant over the LCU term count.
PREP_ERROR_SCALE = 1e-2


@dataclass(frozen=True)
class AaPlan:
    """Amplitude-amplification parameters.

    ``eps0`` is the bare reflector error bound; ``eps_adj`` is what remains
    after subtracting rotation-synthesis errors and is the value used for the
    QSP degree. With ``n_iter == 0`` no amplification is needed and the
    error fields are NaN.
    """

    gamma_i: float
    gamma_f: float
    n_iter: int
    eps0: float
    eps_adj: float
    delta: float
    n_phi: int
    mu: float
    gap: float
    alpha_shifted: float
    eps_rh: float = 0.0
    eps_rp: float = 0.0


def n_iterations(gamma_i: float, gamma_f: float) -> int:
    """Rounds of amplification to lift overlap ``gamma_i`` to at least ``gamma_f``."""
    if not 0.0 < gamma_i <= 1.0 or not 0.0 < gamma_f <= 1.0:
        raise ValueError(f"overlaps must lie in (0, 1], got {gamma_i}, {gamma_f}")
    if gamma_i > gamma_f:
        raise ValueError(f"gamma_i={gamma_i} exceeds gamma_f={gamma_f}")
    ratio = math.asin(gamma_f) / math.asin(gamma_i)
    return max(0, ceil_int((ratio - 1.0) / 2.0))


def invert_n_iterations(n_iter: int, gamma_f: float) -> float:
    """Overlap for which exactly ``n_iter`` rounds reach ``gamma_f``."""
    if n_iter < 1:
        raise ValueError(f"need n_iter >= 1, got {n_iter}")
    return math.sin(math.asin(gamma_f) / (2 * n_iter + 1))


def epsilon_bound(gamma_f: float, n_iter: int) -> float:
    """Bare reflector error ``(1 - gamma_f^2) / (6 n_iter^2)``."""
    if n_iter < 1:
        raise ValueError(f"need n_iter >= 1, got {n_iter}")
    eps = (1.0 - gamma_f ** 2) / (6.0 * n_iter ** 2)
    if not eps > 0:
        raise InfeasiblePlanError(f"gamma_f={gamma_f} leaves no reflector error budget")
    return eps


def hamiltonian_synthesis_correction(gamma_f: float, n_iter: int, l_terms: int, gap: float,
                                     eps_rh: float) -> float:
    return abs(gamma_f) * math.sqrt(max(0.0, 1.0 - gamma_f ** 2)) / (4.0 * n_iter ** 2) * (l_terms / gap) * eps_rh


def phase_synthesis_correction(eps0: float, delta: float, eps_rp: float) -> float:
    return (2.0 / delta) * math.log(1.0 / eps0) * eps_rp


def epsilon_adjusted(eps0: float, gamma_f: float, n_iter: int, l_terms: int, gap: float, delta: float,
                     eps_rh: float, eps_rp: float) -> float:
    """Reflector budget left after both rotation-synthesis corrections.

    Raises:
        InfeasiblePlanError: if the corrections use up the whole budget.
    """
    c_h = hamiltonian_synthesis_correction(gamma_f, n_iter, l_terms, gap, eps_rh)
    c_p = phase_synthesis_correction(eps0, delta, eps_rp)
    eps = eps0 - c_h - c_p
    if not eps > 0:
        worst = "block-encoding rotations" if c_h >= c_p else "QSP phase rotations"
        raise InfeasiblePlanError(
            f"rotation-synthesis corrections exceed the budget {eps0:.3e}; dominated by {worst} "
            f"({max(c_h, c_p):.3e})")
    return eps


def qsp_degree(delta: float, eps: float) -> int:
    """Asymptotic QSP degree ``ceil((2/delta) ln(1/eps))``."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    return ceil_int(2.0 / delta * math.log(1.0 / eps))


def qsp_delta(gap: float, alpha_shifted: float, mu_centered: bool = True) -> float:
    """Transition half-width in units of the normalized spectrum.

    With mu centered in the gap the nearest eigenvalue is ``gap / 2`` away,
    and the width is a quarter of that distance.
    """
    if not gap > 0 or not alpha_shifted > 0:
        raise ValueError(f"gap and alpha_shifted must be positive, got {gap}, {alpha_shifted}")
    if not mu_centered:
        raise NotImplementedError("only a centered shift is supported; pass the nearest-level distance as gap")
    return (gap / 2.0) / (4.0 * alpha_shifted)


def default_eps_rh(l_terms: int) -> float:
    return PREP_ERROR_SCALE / l_terms


def plan_aa(gamma_i: float, gamma_f: float, gap: float, mu: float, alpha_shifted: float, l_terms: int,
            eps_rh: float | None = None, eps_rp: float | None = None) -> AaPlan:
    """Build a full plan.

    Args:
        gap: distance between the two levels straddling ``mu`` (energy).
        alpha_shifted: normalization of the shifted Hamiltonian.
        l_terms: LCU term count, which scales the block-encoding error.
        eps_rh: block-encoding rotation error; defaults to ``1e-2 / l_terms``.
        eps_rp: phase rotation error; defaults to ``1e-10 eps0 / d`` with d
            the degree at the bare budget.
    """
    n = n_iterations(gamma_i, gamma_f)
    delta = qsp_delta(gap, alpha_shifted)
    if eps_rh is None:
        eps_rh = default_eps_rh(l_terms)
    if n == 0:
        return AaPlan(gamma_i, gamma_f, 0, math.nan, math.nan, delta, 0, mu, gap, alpha_shifted,
                      eps_rh, 0.0 if eps_rp is None else eps_rp)
    eps0 = epsilon_bound(gamma_f, n)
    if eps_rp is None:
        eps_rp = PHASE_ROTATION_FRACTION * eps0 / qsp_degree(delta, eps0)
    eps_adj = epsilon_adjusted(eps0, gamma_f, n, l_terms, gap, delta, eps_rh, eps_rp)
    return AaPlan(gamma_i, gamma_f, n, eps0, eps_adj, delta, qsp_degree(delta, eps_adj), mu, gap,
                  alpha_shifted, eps_rh, eps_rp)


def reflect_init_t_count(t_guess: TCount, n_sys: int) -> TCount:
    """Reflection about the guess state: prepare, unprepare, and one MCX on the system."""
    return TCount.from_parts({"guess_prep": 2 * int(t_guess), "mcx": mcx_t_cost(n_sys)})


def phase_rotation_t_count(m: int, eps_rp: float) -> TCount:
    """One QSP phase: two MCX gates on the ``m``-qubit ancilla plus flag, and one rotation."""
    return TCount.from_parts({"mcx": 2 * mcx_t_cost(m + 1), "rotation": rotation_t_cost(eps_rp)})


def t_aa(plan: AaPlan, t_reflect_init: TCount, t_hamiltonian: TCount, t_phase_rotation: TCount) -> TCount:
    """``N_iter (T_R + N_phi (T_UH + T_phase))`` split by stage."""
    n, d = plan.n_iter, plan.n_phi
    return TCount.from_parts({
        "reflect_init": n * int(t_reflect_init),
        "qsp_walk": n * d * int(t_hamiltonian),
        "qsp_phases": n * d * int(t_phase_rotation),
    })

"""Improvement ratio of amplified over repeated phase estimation, and sweeps.

Without amplification the guess is prepared and phase estimation repeated
about ``1 / gamma_i^2`` times; with it, each repetition also pays for the
amplification stage but only ``1 / gamma_f^2`` repetitions are needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import firstquant as fq
from .aa_planner import (AaPlan, default_eps_rh, epsilon_bound, n_iterations, phase_rotation_t_count,
                         plan_aa, reflect_init_t_count, t_aa)
from .cost_core import TCount
from .errors import AlphabetTooSmallError, EstimationError, InfeasiblePlanError
from .qpe import plan_qpe
from .tfim import (TfimSpec, tfim_ancilla_count, tfim_free_fermion_spectrum, tfim_guess_prep_t_count,
                   tfim_hamiltonian_t_count, tfim_qubit_count)


def improvement_ratio(t_prep: int, t_qpe: int, t_aa: int, gamma_i: float, gamma_f: float) -> float:
    """Expected T cost without amplification over expected cost with it."""
    t_prep, t_qpe, t_aa = int(t_prep), int(t_qpe), int(t_aa)
    if min(t_prep, t_qpe, t_aa) < 0:
        raise ValueError("T counts must be nonnegative")
    if t_prep + t_qpe == 0:
        raise ValueError("at least one of t_prep, t_qpe must be positive")
    if not (0.0 < gamma_i <= 1.0 and 0.0 < gamma_f <= 1.0):
        raise ValueError(f"overlaps must lie in (0, 1], got {gamma_i}, {gamma_f}")
    base = t_prep + t_qpe
    # exact integers up to here; a single division keeps large tallies accurate
    return (base * gamma_f ** 2) / ((base + t_aa) * gamma_i ** 2)


def asymptotic_improvement(gamma_i: float, gamma_f: float, gap: float, delta_e: float) -> float:
    """Leading small-overlap behaviour of the improvement ratio (natural log)."""
    if not 0.0 < gamma_i < 1.0 or not 0.0 < gamma_f <= 1.0:
        raise ValueError(f"overlaps out of range: {gamma_i}, {gamma_f}")
    return ((gamma_f ** 2 / gamma_i ** 2) * (gap / delta_e) / math.asin(gamma_f)
            * gamma_i / math.log(gamma_i ** -2))


def fit_asymptotic(points: Sequence[tuple[float, float]], gamma_f: float, gap: float,
                   delta_e: float) -> tuple[float, float]:
    """One-constant log-domain fit ``iota ~ c * asymptotic_improvement``.

    Args:
        points: ``(gamma_i, iota)`` pairs.

    Returns:
        ``(c, max_rel_residual)`` where the residual is ``|iota / (c iota_asym) - 1|``.
    """
    if len(points) < 3:
        raise ValueError(f"need at least 3 points to fit, got {len(points)}")
    model = np.array([asymptotic_improvement(gi, gamma_f, gap, delta_e) for gi, _ in points])
    data = np.array([iota for _, iota in points], dtype=float)
    logc = float(np.mean(np.log(data) - np.log(model)))
    c = math.exp(logc)
    resid = float(np.max(np.abs(data / (c * model) - 1.0)))
    return c, resid


def loglog_slope(x: Iterable[float], y: Iterable[float]) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    lx, ly = np.log(np.asarray(list(x), float)), np.log(np.asarray(list(y), float))
    return float(np.polyfit(lx, ly, 1)[0])


def apply_distance_ratio(iota: float, d_no_aa: int, d_aa: int) -> float:
    """Rescale ``iota`` by the ratio of surface-code distances (runtime per T scales with d)."""
    if d_no_aa < 1 or d_aa < 1:
        raise ValueError(f"code distances must be >= 1, got {d_no_aa}, {d_aa}")
    return iota * d_no_aa / d_aa


@dataclass(frozen=True)
class ModelInstance:
    """Everything the planner needs from a concrete Hamiltonian.

    Attributes:
        t_guess: T count of one guess-state preparation.
        t_hamiltonian: T count of one (controlled) block-encoding query.
        n_sys: system-register width, reflected about by the guess reflector.
        m: ancilla qubits reflected on in each QSP phase.
        l_terms: LCU term count for the block-encoding error correction.
        alpha_shifted: normalization of ``H - mu``; also the QPE alpha.
        qubits: logical qubits excluding the QSP flag and QPE register, or
            None if unavailable.
    """

    model: str
    size_param: int
    t_guess: TCount
    t_hamiltonian: TCount
    n_sys: int
    m: int
    l_terms: int
    gap: float
    mu: float
    alpha_shifted: float
    qubits: int | None
    eps_rh: float
    eps_rp: float | None = None
    extra: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class TfimModel:
    """Ising chain family parameterized by L."""

    g: float
    mu_shift: float | None = None
    eps_rh: float | None = None
    eps_rp: float | None = None
    name = "tfim"

    def spec(self, L: int) -> TfimSpec:
        return TfimSpec(L=L, g=self.g, mu_shift=self.mu_shift)

    def instance(self, L: int, eps0: float | None = None) -> ModelInstance:
        spec = self.spec(L)
        spectrum = tfim_free_fermion_spectrum(spec)
        eps_rh = self.eps_rh if self.eps_rh is not None else default_eps_rh(spec.n_terms)
        return ModelInstance(
            model="tfim",
            size_param=L,
            t_guess=tfim_guess_prep_t_count(spec, eps_rh),
            t_hamiltonian=tfim_hamiltonian_t_count(spec, eps_rh),
            n_sys=L,
            m=tfim_ancilla_count(spec),
            l_terms=spec.n_terms,
            gap=spectrum.gap,
            mu=spectrum.mu,
            alpha_shifted=spectrum.lambda_,
            qubits=tfim_qubit_count(spec),
            eps_rh=eps_rh,
            eps_rp=self.eps_rp,
            extra={"e0": spectrum.e0, "e1": spectrum.e1},
        )


@dataclass(frozen=True)
class FirstQuantModel:
    """First-quantized cell family parameterized by the plane-wave count N.

    Register sizing uses ``eps_total`` when given, otherwise the bare
    reflector budget of the plan being costed.
    """

    eta: int
    zeta_norm: int
    n_atoms: int
    omega: float
    delta_exp: float = 9.0
    e0_bar: float = 0.0
    eps_total: float | None = None
    eps_rh: float | None = None
    eps_rp: float | None = None
    aa_factor: int = 1
    b_r: int = 7
    n_etazeta_reading: str = "value"
    name = "firstquant"

    L_TERMS = 3

    def spec(self, n_planewaves: int) -> fq.MaterialSpec:
        return fq.MaterialSpec(eta=self.eta, zeta_norm=self.zeta_norm, n_atoms=self.n_atoms, omega=self.omega,
                               n_planewaves=n_planewaves, delta_exp=self.delta_exp, e0_bar=self.e0_bar)

    def instance(self, n_planewaves: int, eps0: float | None = None) -> ModelInstance:
        spec = self.spec(n_planewaves)
        budget = self.eps_total if self.eps_total is not None else eps0
        if budget is None or not budget > 0 or math.isnan(budget):
            raise ValueError("first-quantized register sizing needs eps_total or a plan budget")
        regs = fq.size_precision_registers(spec, budget, b_r=self.b_r, aa_factor=self.aa_factor,
                                           n_etazeta_reading=self.n_etazeta_reading)
        norms = fq.lambda_norms(spec, regs.n_p)
        mu, gap, iterations = fq.firstquant_mu_delta(spec)
        eps_rh = self.eps_rh if self.eps_rh is not None else default_eps_rh(self.L_TERMS)
        try:
            qubits = fq.firstquant_qubit_count(spec, regs).total
        except AlphabetTooSmallError:
            qubits = None
        return ModelInstance(
            model="firstquant",
            size_param=n_planewaves,
            t_guess=fq.guess_prep_t_count(spec.eta, n_planewaves, eps_rh),
            t_hamiltonian=fq.firstquant_controlled_t_count(spec, regs),
            n_sys=3 * spec.eta * regs.n_p,
            m=regs.n_reflected,
            l_terms=self.L_TERMS,
            gap=gap,
            mu=mu,
            alpha_shifted=norms.lambda_total + abs(mu),
            qubits=qubits,
            eps_rh=eps_rh,
            eps_rp=self.eps_rp,
            extra={"registers": regs, "binary_search_iterations": iterations, "lambda": norms},
        )


@dataclass(frozen=True)
class ImprovementReport:
    model: str
    size_param: int
    gamma_i2: float
    gamma_f2: float
    delta_e: float
    t_prep: TCount | None
    t_qpe: TCount | None
    t_aa: TCount | None
    iota: float
    iota_asymptotic: float
    gap: float
    mu: float
    plan: AaPlan | None
    p: int | None
    qubits_total: int | None
    status: str = "ok"

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def evaluate_point(model, size_param: int, gamma_i2: float, gamma_f2: float, delta_e: float) -> ImprovementReport:
    """Full pipeline for one grid point. Errors propagate."""
    gamma_i, gamma_f = math.sqrt(gamma_i2), math.sqrt(gamma_f2)
    n = n_iterations(gamma_i, gamma_f)
    eps0 = epsilon_bound(gamma_f, n) if n >= 1 else None
    inst = model.instance(size_param, eps0)
    plan = plan_aa(gamma_i, gamma_f, inst.gap, inst.mu, inst.alpha_shifted, inst.l_terms, eps_rh=inst.eps_rh,
                   eps_rp=inst.eps_rp)
    qpe = plan_qpe(inst.alpha_shifted, delta_e, inst.t_hamiltonian)
    if plan.n_iter:
        t_amp = t_aa(plan, reflect_init_t_count(inst.t_guess, inst.n_sys), inst.t_hamiltonian,
                     phase_rotation_t_count(inst.m, plan.eps_rp))
    else:
        t_amp = TCount.from_parts({"reflect_init": 0, "qsp_walk": 0, "qsp_phases": 0})
    iota = improvement_ratio(inst.t_guess, qpe.t_count, t_amp, gamma_i, gamma_f)
    iota_asym = asymptotic_improvement(gamma_i, gamma_f, inst.gap, delta_e) if gamma_i < 1 else math.nan
    qubits = None if inst.qubits is None else inst.qubits + 1 + qpe.p
    return ImprovementReport(
        model=inst.model, size_param=size_param, gamma_i2=gamma_i2, gamma_f2=gamma_f2, delta_e=delta_e,
        t_prep=inst.t_guess, t_qpe=qpe.t_count, t_aa=t_amp, iota=iota, iota_asymptotic=iota_asym,
        gap=inst.gap, mu=inst.mu, plan=plan, p=qpe.p, qubits_total=qubits,
        status="ok" if qubits is not None else "ok_no_qubits",
    )


@dataclass(frozen=True)
class SweepGrid:
    model: str
    sizes: tuple
    gamma_i2: tuple
    delta_e: tuple
    gamma_f2: float = 0.75

    def __post_init__(self):
        if self.model not in ("tfim", "firstquant"):
            raise ValueError(f"model must be 'tfim' or 'firstquant', got {self.model!r}")
        for name in ("sizes", "gamma_i2", "delta_e"):
            if not getattr(self, name):
                raise ValueError(f"sweep axis {name} is empty")
        bad = [x for x in self.gamma_i2 if not 0 < x <= self.gamma_f2]
        if bad:
            raise ValueError(f"gamma_i2 values must lie in (0, gamma_f2]; offending: {bad}")

    def points(self):
        for size in self.sizes:
            for de in self.delta_e:
                for g2 in self.gamma_i2:
                    yield size, g2, de


def _failed(model_name: str, size, g2, gf2, de, status: str) -> ImprovementReport:
    return ImprovementReport(model=model_name, size_param=size, gamma_i2=g2, gamma_f2=gf2, delta_e=de,
                             t_prep=None, t_qpe=None, t_aa=None, iota=math.nan, iota_asymptotic=math.nan,
                             gap=math.nan, mu=math.nan, plan=None, p=None, qubits_total=None, status=status)


def run_sweep(grid: SweepGrid, model) -> list[ImprovementReport]:
    """Evaluate every grid point in order; failures become flagged rows."""
    if model.name != grid.model:
        raise ValueError(f"grid is for {grid.model!r} but model is {model.name!r}")
    rows = []
    for size, g2, de in grid.points():
        try:
            rows.append(evaluate_point(model, size, g2, grid.gamma_f2, de))
        except InfeasiblePlanError as exc:
            rows.append(_failed(model.name, size, g2, grid.gamma_f2, de, f"infeasible: {exc}"))
        except EstimationError as exc:
            rows.append(_failed(model.name, size, g2, grid.gamma_f2, de, f"error: {exc}"))
        except ValueError as exc:
            rows.append(_failed(model.name, size, g2, grid.gamma_f2, de, f"error: {exc}"))
    return rows


__all__ = [
    "FirstQuantModel", "ImprovementReport", "ModelInstance", "SweepGrid", "TfimModel",
    "apply_distance_ratio", "asymptotic_improvement", "evaluate_point", "fit_asymptotic",
    "improvement_ratio", "loglog_slope", "run_sweep",
]

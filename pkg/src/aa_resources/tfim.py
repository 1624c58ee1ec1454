"""Periodic transverse-field Ising chain: spectrum, guess state and LCU costs.

The Hamiltonian is ``H = sum_i Z_i Z_{i+1} + g X_i`` with Pauli operators and
periodic boundary conditions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import linalg, optimize

from .cost_core import TCount, clog2, mcx_t_cost, rotation_t_cost
from .errors import GaplessModelError, UnreachableTargetError

# Largest chain for which dense ground states are built.
DENSE_MAX_L = 12


@dataclass(frozen=True)
class TfimSpec:
    """Ising chain definition.

    Args:
        L: number of sites (>= 2).
        g: transverse field; |g| = 1 is rejected.
        mu_shift: optional override of the energy shift mu. ``None`` selects
            the midpoint between the ground and first excited levels.
    """

    L: int
    g: float
    mu_shift: float | None = None

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 2:
            raise ValueError(f"Ising chain needs L >= 2 sites, got {self.L}")
        if abs(abs(self.g) - 1.0) < 1e-12:
            raise GaplessModelError(f"the Ising chain is gapless at |g| = 1 (g = {self.g})")

    @property
    def n_terms(self) -> int:
        """LCU term count: L bonds, L fields and the identity shift."""
        return 2 * self.L + 1


@dataclass(frozen=True)
class TfimSpectrum:
    """Spectral data used by the cost model.

    ``e1`` is ``e0 + tfim_gap`` (the bulk gap), which is what the cost model
    consumes. ``e1_exact`` is the true finite-chain first excited level; it
    differs from ``e1`` at small L and is nearly degenerate with ``e0`` in
    the ordered phase.
    """

    e0: float
    e1: float
    gap: float
    lambda_: float
    mu: float
    e1_exact: float


@dataclass(frozen=True)
class GuessState:
    """Uniform product state ``(Ry(theta)|0>)^L`` and its ground-state overlap.

    ``theta`` lies in [0, 2 pi).
    """

    theta: float
    gamma_i: float


def tfim_gap(spec: TfimSpec) -> float:
    """Bulk gap ``2 | |g| - 1 |``."""
    return 2.0 * abs(abs(spec.g) - 1.0)


def _sector_levels(L: int, g: float, antiperiodic: bool) -> tuple[float, float]:
    """Two lowest energies of one fermion-parity sector.

    After a global Hadamard the chain is ``sum X X + g sum Z``. Jordan-Wigner
    maps the even-parity sector to antiperiodic fermions and the odd sector
    to periodic ones. Each (k, -k) pair contributes ``xi - E`` to the vacuum
    and two quasiparticles of energy E; the self-conjugate momenta 0 and pi
    are bare modes of energy ``xi``.
    """
    phase = 0.5 if antiperiodic else 0.0
    required_parity = 0 if antiperiodic else 1
    base = g * L
    parity = 0
    flips: list[float] = []
    for n in range(L):
        partner = (L - 1 - n) if antiperiodic else (L - n) % L
        if partner < n:
            continue
        k = 2.0 * math.pi * (n + phase) / L
        xi = 2.0 * math.cos(k) - 2.0 * g
        if partner == n:
            if xi < 0:
                base += xi
                parity ^= 1
            flips.append(abs(xi))
        else:
            e = math.sqrt(xi * xi + 4.0 * math.sin(k) ** 2)
            base += xi - e
            flips.extend((e, e))
    flips.sort()
    padded = flips + [math.inf, math.inf]
    if parity == required_parity:
        return base, base + padded[0] + padded[1]
    return base + padded[0], base + padded[1]


def free_fermion_levels(L: int, g: float) -> tuple[float, float]:
    """Exact ground and first excited energies of the periodic chain."""
    levels = sorted(_sector_levels(L, g, True) + _sector_levels(L, g, False))
    return levels[0], levels[1]


def tfim_free_fermion_spectrum(spec: TfimSpec) -> TfimSpectrum:
    e0, e1_exact = free_fermion_levels(spec.L, spec.g)
    gap = tfim_gap(spec)
    e1 = e0 + gap
    mu = spec.mu_shift if spec.mu_shift is not None else 0.5 * (e0 + e1)
    lam = spec.L * (1.0 + abs(spec.g)) + abs(mu)
    return TfimSpectrum(e0=e0, e1=e1, gap=gap, lambda_=lam, mu=mu, e1_exact=e1_exact)


def tfim_mu_delta(spectrum: TfimSpectrum) -> tuple[float, float]:
    """Midpoint shift and full gap between the two lowest levels used for costing."""
    if not spectrum.e0 < spectrum.e1:
        raise ValueError(f"need E0 < E1, got E0={spectrum.e0}, E1={spectrum.e1}")
    return 0.5 * (spectrum.e0 + spectrum.e1), spectrum.e1 - spectrum.e0


def dense_tfim_matrix(L: int, g: float) -> np.ndarray:
    """Dense Hamiltonian in the computational basis, site 0 as the most significant bit."""
    if L > DENSE_MAX_L:
        raise ValueError(f"dense construction limited to L <= {DENSE_MAX_L}, got {L}")
    dim = 1 << L
    idx = np.arange(dim)
    bits = (idx[:, None] >> (L - 1 - np.arange(L))[None, :]) & 1
    z = 1 - 2 * bits
    diag = np.sum(z * np.roll(z, -1, axis=1), axis=1).astype(float)
    h = np.diag(diag)
    for site in range(L):
        flipped = idx ^ (1 << (L - 1 - site))
        h[idx, flipped] += g
    return h


class _GroundState:
    def __init__(self, spec: TfimSpec):
        self.spec = spec

    @cached_property
    def vector(self) -> np.ndarray:
        h = dense_tfim_matrix(self.spec.L, self.spec.g)
        _, v = linalg.eigh(h, subset_by_index=[0, 0])
        return v[:, 0]


def dense_ground_state(spec: TfimSpec) -> np.ndarray:
    return _GroundState(spec).vector


def product_state(theta: float, L: int) -> np.ndarray:
    site = np.array([math.cos(theta / 2.0), math.sin(theta / 2.0)])
    state = site
    for _ in range(L - 1):
        state = np.kron(state, site)
    return state


def product_overlap(theta: float, psi: np.ndarray, L: int) -> float:
    """Signed overlap ``<(Ry(theta)|0>)^L | psi>`` without forming the product state."""
    site = np.array([math.cos(theta / 2.0), math.sin(theta / 2.0)])
    v = psi
    for _ in range(L):
        v = site @ v.reshape(2, -1)
    return float(v[0]) if np.ndim(v) else float(v)


def tune_guess_angle(spec: TfimSpec, target_gamma_i: float, psi: np.ndarray | None = None,
                     n_grid: int = 2048) -> GuessState:
    """Find an angle whose uniform product state has overlap ``target_gamma_i``.

    Scans theta over the full circle [0, 2 pi), then bisects the first
    bracket where the overlap magnitude crosses the target. The full circle
    matters: for g > 0 the ground state has alternating signs, and angles in
    (pi, 2 pi) give the negative single-site amplitude needed to reach large
    overlaps.

    Raises:
        UnreachableTargetError: if the target lies outside the range of
            overlaps the family attains.
    """
    if not 0.0 < target_gamma_i <= 1.0:
        raise ValueError(f"target overlap must lie in (0, 1], got {target_gamma_i}")
    if psi is None:
        psi = dense_ground_state(spec)
    L = spec.L

    def mag(t: float) -> float:
        return abs(product_overlap(t, psi, L))

    thetas = np.linspace(0.0, 2.0 * math.pi, n_grid + 1)
    vals = np.array([mag(t) for t in thetas])
    j = int(np.argmax(vals))
    lo, hi = thetas[max(j - 1, 0)], thetas[min(j + 1, n_grid)]
    res = optimize.minimize_scalar(lambda t: -mag(t), bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-12})
    theta_max, best = (float(res.x), -float(res.fun)) if -res.fun >= vals[j] else (float(thetas[j]), float(vals[j]))
    if target_gamma_i > best + 1e-12:
        raise UnreachableTargetError(target_gamma_i, best)
    if target_gamma_i >= best - 1e-10:
        return GuessState(theta=theta_max % (2.0 * math.pi), gamma_i=best)

    lowest = float(vals.min())
    if target_gamma_i < lowest:
        raise UnreachableTargetError(target_gamma_i, best, minimum=lowest)
    diff = vals - target_gamma_i
    crossings = np.nonzero(np.sign(diff[:-1]) != np.sign(diff[1:]))[0]
    if len(crossings) == 0:
        # target lies in the sliver between the grid maximum and the refined one
        a, b = (thetas[j], theta_max) if thetas[j] < theta_max else (theta_max, thetas[j])
    elif diff[crossings[0]] == 0.0:
        return GuessState(theta=float(thetas[crossings[0]]), gamma_i=float(vals[crossings[0]]))
    else:
        a, b = thetas[crossings[0]], thetas[crossings[0] + 1]
    theta = optimize.brentq(lambda t: mag(t) - target_gamma_i, a, b, xtol=1e-14, rtol=1e-15)
    return GuessState(theta=float(theta), gamma_i=mag(theta))


def tfim_hamiltonian_t_count(spec: TfimSpec, eps_prep: float) -> TCount:
    """T count of one block-encoded Hamiltonian query (PREP + UNPREP + SEL).

    PREP and UNPREP together use ten rotations; SEL is 3L multi-controlled
    gates on the ``ceil(log2 L) + 2`` qubit LCU index register.
    """
    if not 0.0 < eps_prep < 1.0:
        raise ValueError(f"PREP synthesis error must lie in (0, 1), got {eps_prep}")
    prep = 10 * rotation_t_cost(eps_prep)
    sel = 3 * spec.L * mcx_t_cost(clog2(spec.L) + 2)
    return TCount.from_parts({"prep": prep, "sel": sel})


def tfim_ancilla_count(spec: TfimSpec) -> int:
    """Width of the LCU index register (|mu>, |j>, |m>)."""
    return clog2(spec.L) + 2


def tfim_qubit_count(spec: TfimSpec, include_qsp: bool = False) -> int:
    return 2 + clog2(spec.L) + spec.L + (1 if include_qsp else 0)


def tfim_guess_prep_t_count(spec: TfimSpec, eps_rot: float) -> TCount:
    """One Ry rotation per site."""
    return TCount.labeled("guess_rotations", spec.L * rotation_t_cost(eps_rot))

"""First-quantized plane-wave electronic structure cost model.

Energies are in hartree and lengths in bohr unless a name says otherwise.
Sums over the reciprocal grid use integer vectors nu in
G0 = [-(M-1)/2, (M-1)/2]^3 without the origin, with N = M^3 plane waves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .cost_core import TCount, ceil_int, clog2, flog2, qrom_erase_cost, rotation_t_cost
from .errors import AlphabetTooSmallError

HARTREE_EV = 27.211386245988


def ev_to_hartree(x: float) -> float:
    return x / HARTREE_EV


@dataclass(frozen=True)
class MaterialSpec:
    """Periodic cell for the first-quantized model.

    Args:
        eta: electron count.
        zeta_norm: total nuclear charge.
        n_atoms: atoms in the cell (sets the binary-search energy window).
        omega: cell volume in bohr^3.
        n_planewaves: plane-wave count N; must be an odd perfect cube.
        delta_exp: experimental gap in eV.
        e0_bar: classical ground-energy estimate in eV.
    """

    eta: int
    zeta_norm: int
    n_atoms: int
    omega: float
    n_planewaves: int
    delta_exp: float = 9.0
    e0_bar: float = 0.0

    def __post_init__(self):
        if self.eta < 2:
            raise ValueError(f"need at least two electrons, got eta={self.eta}")
        if self.zeta_norm < 1:
            raise ValueError(f"total nuclear charge must be >= 1, got {self.zeta_norm}")
        if self.n_atoms < 1:
            raise ValueError(f"need at least one atom, got {self.n_atoms}")
        if not self.omega > 0:
            raise ValueError(f"cell volume must be positive, got {self.omega}")
        if self.n_planewaves < 27:
            raise ValueError(f"need N >= 27 plane waves, got {self.n_planewaves}")
        grid_side(self.n_planewaves)

    @property
    def m(self) -> int:
        return grid_side(self.n_planewaves)


@dataclass(frozen=True)
class PrecisionRegisters:
    n_p: int
    n_eta: int
    n_etazeta: int
    n_T: int
    n_M: int
    n_R: int
    b_r: int = 7
    aa_factor: int = 1

    def __post_init__(self):
        for name in ("n_p", "n_eta", "n_etazeta", "n_T", "n_M", "n_R", "b_r"):
            if getattr(self, name) < 1:
                raise ValueError(f"register size {name} must be >= 1, got {getattr(self, name)}")
        if self.aa_factor not in (1, 3):
            raise ValueError(f"aa_factor must be 1 or 3, got {self.aa_factor}")

    @property
    def n_reflected(self) -> int:
        """Ancilla qubits that are controlled on or reflected about."""
        return self.n_etazeta + 2 * self.n_eta + 8 * self.n_p + self.n_M + 16


@dataclass(frozen=True)
class LambdaNorms:
    lambda_T: float
    lambda_U: float
    lambda_V: float
    nu_norm2: float
    nu_norm1: float

    @property
    def lambda_total(self) -> float:
        return self.lambda_T + self.lambda_U + self.lambda_V


@dataclass(frozen=True)
class FirstQuantQubits:
    """Logical-qubit accounting.

    ``system`` is the 3 eta n_p momentum register and
    ``block_encoding_ancilla`` the remaining Hamiltonian qubits, so together
    they give the full block-encoding width. ``antisym_extra`` is the reduced
    antisymmetrization overhead after reusing freed system qubits.
    """

    system: int
    block_encoding_ancilla: int
    antisym_persistent: int
    antisym_extra: int

    @property
    def hamiltonian(self) -> int:
        return self.system + self.block_encoding_ancilla

    @property
    def total(self) -> int:
        return self.hamiltonian + self.antisym_extra

    @property
    def antisym(self) -> int:
        """Everything outside the system register: reduced record plus block-encoding ancillas."""
        return self.antisym_extra + self.block_encoding_ancilla

    @property
    def other(self) -> int:
        return self.system

    def as_tuple(self) -> tuple[int, int, int]:
        """``(total, antisym, other)``."""
        return self.total, self.antisym, self.other


def grid_side(n_planewaves: int, tol: float = 1e-6) -> int:
    """Odd integer M with M^3 = N, or ValueError."""
    m = round(n_planewaves ** (1.0 / 3.0))
    for cand in (m - 1, m, m + 1):
        if cand > 0 and cand ** 3 == n_planewaves:
            m = cand
            break
    else:
        raise ValueError(f"N={n_planewaves} is not a perfect cube")
    if abs(n_planewaves ** (1.0 / 3.0) - m) > tol * max(m, 1) or m % 2 == 0:
        raise ValueError(f"N={n_planewaves} must be the cube of an odd integer")
    return m


def round_to_odd_cube(n: float) -> int:
    """Nearest N = M^3 with M odd (distance measured in N)."""
    if n <= 27:
        return 27
    root = n ** (1.0 / 3.0)
    lo = int(math.floor(root))
    if lo % 2 == 0:
        lo -= 1
    candidates = [lo, lo + 2]
    return min((c ** 3 for c in candidates if c >= 3), key=lambda c: (abs(c - n), c))


@lru_cache(maxsize=32)
def _nu_sums_side(m: int) -> tuple[float, float]:
    half = (m - 1) // 2
    # one octant (coordinates >= 0) weighted by the number of sign images
    c = np.arange(half + 1, dtype=np.float64)
    w = np.where(c == 0, 1.0, 2.0)
    sq = c[:, None, None] ** 2 + c[None, :, None] ** 2 + c[None, None, :] ** 2
    weight = w[:, None, None] * w[None, :, None] * w[None, None, :]
    sq[0, 0, 0] = np.inf
    inv = 1.0 / sq
    s2 = float(np.sum(weight * inv))
    s1 = float(np.sum(weight * np.sqrt(inv)))
    return s2, s1


def nu_lattice_sums(n_planewaves: int) -> tuple[float, float]:
    """``(sum 1/|nu|^2, sum 1/|nu|)`` over the nonzero grid vectors."""
    return _nu_sums_side(grid_side(n_planewaves))


def naive_nu_lattice_sums(n_planewaves: int) -> tuple[float, float]:
    """Plain triple loop over the full grid, kept as a reference."""
    m = grid_side(n_planewaves)
    half = (m - 1) // 2
    s2 = s1 = 0.0
    for x in range(-half, half + 1):
        for y in range(-half, half + 1):
            for z in range(-half, half + 1):
                r2 = x * x + y * y + z * z
                if r2:
                    s2 += 1.0 / r2
                    s1 += 1.0 / math.sqrt(r2)
    return s2, s1


def momentum_bits(n_planewaves: int) -> int:
    return clog2(grid_side(n_planewaves) + 1)


def lambda_norms(spec: MaterialSpec, n_p: int | None = None) -> LambdaNorms:
    """LCU 1-norms of the kinetic, electron-nuclear and electron-electron terms."""
    if n_p is None:
        n_p = momentum_bits(spec.n_planewaves)
    nu2, nu1 = nu_lattice_sums(spec.n_planewaves)
    eta, om = spec.eta, spec.omega
    lam_t = 6.0 * eta * math.pi ** 2 / om ** (2.0 / 3.0) * (2 ** (n_p - 1) - 1) ** 2
    lam_u = eta * spec.zeta_norm * nu2 / (math.pi * om ** (1.0 / 3.0))
    lam_v = eta * (eta - 1) * nu2 / (2.0 * math.pi * om ** (1.0 / 3.0))
    return LambdaNorms(lam_t, lam_u, lam_v, nu2, nu1)


def _register_for(coeff: float, budget: float) -> int:
    """Smallest n >= 1 with coeff / 2^n <= budget."""
    if coeff <= budget:
        return 1
    n = max(1, ceil_int(math.log2(coeff / budget)))
    while coeff / 2.0 ** n > budget:
        n += 1
    while n > 1 and coeff / 2.0 ** (n - 1) <= budget:
        n -= 1
    return n


def register_error_coefficients(spec: MaterialSpec, norms: LambdaNorms, n_p: int,
                                n_etazeta_reading: str = "value") -> tuple[float, float, float]:
    """Numerators ``(c_T, c_M, c_R)`` with ``eps_X = c_X / 2^{n_X}``.

    Args:
        n_etazeta_reading: ``"value"`` uses ``eta + 2 zeta - 1`` for the
            ``n_etazeta - 1`` factor of eps_M; ``"bits"`` uses the bit count
            minus one.
    """
    eta, zeta, om = spec.eta, spec.zeta_norm, spec.omega
    if n_etazeta_reading == "value":
        weight = eta + 2 * zeta - 1
    elif n_etazeta_reading == "bits":
        weight = clog2(eta + 2 * zeta) - 1
    else:
        raise ValueError(f"n_etazeta_reading must be 'value' or 'bits', got {n_etazeta_reading!r}")
    c_t = math.pi * norms.lambda_total
    poly = 7 * 2 ** (n_p + 1) - 9 * n_p - 11 - 3 * 2.0 ** (-n_p)
    c_m = 2.0 * eta / (math.pi * om ** (1.0 / 3.0)) * weight * poly
    c_r = eta * zeta / om ** (1.0 / 3.0) * norms.nu_norm1
    return c_t, c_m, c_r


def size_precision_registers(spec: MaterialSpec, eps_total: float, b_r: int = 7, aa_factor: int = 1,
                             n_etazeta_reading: str = "value") -> PrecisionRegisters:
    """Size n_T, n_M, n_R so that each error source is at most ``eps_total / 10``."""
    if not eps_total > 0:
        raise ValueError(f"error budget must be positive, got {eps_total}")
    n_p = momentum_bits(spec.n_planewaves)
    norms = lambda_norms(spec, n_p)
    budget = eps_total / 10.0
    c_t, c_m, c_r = register_error_coefficients(spec, norms, n_p, n_etazeta_reading)
    return PrecisionRegisters(
        n_p=n_p,
        n_eta=max(1, clog2(spec.eta)),
        n_etazeta=clog2(spec.eta + 2 * spec.zeta_norm),
        n_T=_register_for(c_t, budget),
        n_M=_register_for(c_m, budget),
        n_R=_register_for(c_r, budget),
        b_r=b_r,
        aa_factor=aa_factor,
    )


def _record_size(eta: int) -> int:
    f = flog2(eta)
    return (eta // 2) * (f * (f + 1) // 2)


def antisym_t_counts(eta: int) -> tuple[TCount, TCount]:
    """``(startup, shuffle)`` T counts of the sorting-network antisymmetrization."""
    if eta < 2:
        raise ValueError(f"antisymmetrization needs eta >= 2, got {eta}")
    lg = clog2(eta * eta)
    shuffle = _record_size(eta) * (4 * lg + 8 * lg)
    startup = shuffle + 8 * (eta - 1) * lg
    return TCount.labeled("antisym_startup", startup), TCount.labeled("antisym_shuffle", shuffle)


def antisym_qubit_counts(eta: int, n_planewaves: int) -> tuple[int, int]:
    """``(persistent, transient_reduced)`` antisymmetrization qubits.

    Raises:
        AlphabetTooSmallError: if N < eta^2.
    """
    if eta < 2:
        raise ValueError(f"antisymmetrization needs eta >= 2, got {eta}")
    if n_planewaves < eta * eta:
        raise AlphabetTooSmallError(f"N={n_planewaves} is below eta^2={eta * eta}")
    persistent = eta * clog2(eta * eta)
    freed = eta * ceil_int(math.log2(n_planewaves) - math.log2(eta))
    reduced = persistent + 3 * clog2(eta) + _record_size(eta) - freed
    return persistent, max(0, reduced)


def givens_t_count(eta: int, n_planewaves: int, eps_rot_hf: float) -> int:
    """One broadcast Givens rotation over all eta system registers."""
    lg = clog2(n_planewaves)
    return 2 * (2 * 24 * lg * eta + 4 * lg * (eta - 1)) + 2 * rotation_t_cost(eps_rot_hf)


def hartree_fock_t_count(eta: int, n_planewaves: int, eps_rot_hf: float) -> TCount:
    """Givens network for the Slater determinant plus one antisymmetrization shuffle."""
    if n_planewaves <= eta:
        raise ValueError(f"need more plane waves than electrons, got N={n_planewaves}, eta={eta}")
    _, shuffle = antisym_t_counts(eta)
    givens = eta * (n_planewaves - eta) * givens_t_count(eta, n_planewaves, eps_rot_hf)
    return TCount.from_parts({"givens": givens, "antisym_shuffle": shuffle.total})


def guess_prep_t_count(eta: int, n_planewaves: int, eps_rot_hf: float) -> TCount:
    """Hartree-Fock guess preparation including the filtering startup.

    The antisymmetrization filter succeeds with probability above one half,
    so its startup is charged twice on average.
    """
    startup, _ = antisym_t_counts(eta)
    return (2 * startup) + hartree_fock_t_count(eta, n_planewaves, eps_rot_hf)


HAMILTONIAN_TERMS = ("prep_ai", "prep_cde", "prep_fgh", "controlled_swaps", "sel_T",
                     "momentum_state", "prep_l", "add_nu", "phasing", "select_tuv")

TOFFOLI_TO_T = 7


def hamiltonian_terms(spec: MaterialSpec, regs: PrecisionRegisters) -> dict[str, int]:
    """Toffoli-count addends of one block-encoding query, before the factor 7."""
    r = regs
    eta, zeta = spec.eta, spec.zeta_norm
    terms = {
        "prep_ai": 2 * (r.n_T + r.n_etazeta + 2 * r.b_r - 12),
        "prep_cde": 14 * r.n_eta + 8 * r.b_r - 36,
        "prep_fgh": 2 * (2 * r.n_p + 9),
        "controlled_swaps": 12 * eta * r.n_p + 4 * eta - 8,
        "sel_T": 5 * (r.n_p - 1) + 2,
        "momentum_state": r.aa_factor * (3 * r.n_p ** 2 + 15 * r.n_p - 7 + 4 * r.n_M * (r.n_p + 1)),
        "prep_l": zeta + qrom_erase_cost(zeta),
        "add_nu": 24 * r.n_p,
        "phasing": 8 * r.n_p * r.n_R,
        "select_tuv": 18,
    }
    for label, v in terms.items():
        if v < 0:
            raise ValueError(f"term {label} is negative ({v}); registers are too small")
    return terms


def firstquant_hamiltonian_t_count(spec: MaterialSpec, regs: PrecisionRegisters) -> TCount:
    """T count of one block-encoding query, with per-term breakdown (already times 7)."""
    terms = hamiltonian_terms(spec, regs)
    return TCount.from_parts({k: TOFFOLI_TO_T * v for k, v in terms.items()})


def firstquant_controlled_overhead(regs: PrecisionRegisters) -> TCount:
    return TCount.labeled("control", 4 * regs.n_reflected)


def firstquant_controlled_t_count(spec: MaterialSpec, regs: PrecisionRegisters) -> TCount:
    return firstquant_hamiltonian_t_count(spec, regs) + firstquant_controlled_overhead(regs)


def firstquant_qubit_count(spec: MaterialSpec, regs: PrecisionRegisters) -> FirstQuantQubits:
    r = regs
    system = 3 * spec.eta * r.n_p
    ancilla = (r.n_etazeta + 2 * r.n_eta + 3 * r.n_p ** 2 + 17 * r.n_p + max(r.n_T, r.n_R + 1)
               + 5 * r.n_R + 5 * r.n_M + 4 * r.n_M * r.n_p + 31)
    persistent, reduced = antisym_qubit_counts(spec.eta, spec.n_planewaves)
    return FirstQuantQubits(system=system, block_encoding_ancilla=ancilla,
                            antisym_persistent=persistent, antisym_extra=reduced)


def firstquant_mu_delta(spec: MaterialSpec) -> tuple[float, float, int]:
    """Shift, usable gap (hartree) and binary-search iteration count.

    The binary search resolves E0 to ``delta1 = delta_exp / 6`` starting from a
    window of N_atom eV; the classical estimate ``e0_bar`` stands in for its
    outcome.
    """
    if not spec.delta_exp > 0:
        raise ValueError(f"experimental gap must be positive, got {spec.delta_exp} eV")
    delta1_ev = spec.delta_exp / 6.0
    iterations = max(0, ceil_int(math.log2(spec.n_atoms / delta1_ev)))
    mu = ev_to_hartree(spec.e0_bar + delta1_ev)
    gap = ev_to_hartree(spec.delta_exp / 3.0)
    return mu, gap, iterations


def with_planewaves(spec: MaterialSpec, n_planewaves: int) -> MaterialSpec:
    return replace(spec, n_planewaves=n_planewaves)

"""Dense eigenvalue-level simulation of amplitude amplification.

The approximate reflector acts on system (dimension D) plus one flag qubit.
In the Hamiltonian eigenbasis it is a direct sum of 2x2 real reflections
``[[s_k, c_k], [c_k, -s_k]]`` with ``|s_k| = 1 - eps_k``, so it is exactly
unitary while its system block only approximates the ideal reflection about
the ground state. Vectors in the 2D space store the flag-0 half first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .aa_planner import epsilon_bound, invert_n_iterations, n_iterations
from .tfim import TfimSpec, GuessState, dense_tfim_matrix, product_state, tune_guess_angle

WORST_CASE = "worst_case"
RANDOM = "random"


class DenseHamiltonian:
    """Real symmetric matrix with a lazily cached eigendecomposition."""

    def __init__(self, matrix: np.ndarray, sym_tol: float = 1e-12):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"need a square matrix, got shape {matrix.shape}")
        if np.max(np.abs(matrix - matrix.T), initial=0.0) > sym_tol:
            raise ValueError("Hamiltonian matrix is not symmetric")
        self.matrix = matrix

    @classmethod
    def tfim(cls, spec: TfimSpec) -> "DenseHamiltonian":
        return cls(dense_tfim_matrix(spec.L, spec.g))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def _eig(self) -> tuple[np.ndarray, np.ndarray]:
        return np.linalg.eigh(self.matrix)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._eig[0]

    @property
    def eigenvectors(self) -> np.ndarray:
        return self._eig[1]

    @property
    def ground_state(self) -> np.ndarray:
        return self.eigenvectors[:, 0]


@dataclass(frozen=True)
class ApproxReflector:
    """2D x 2D reflector and its per-eigenstate errors."""

    matrix: np.ndarray = field(repr=False)
    eps_k: np.ndarray = field(repr=False)
    epsilon: float

    @property
    def dim(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def system_block(self) -> np.ndarray:
        d = self.dim
        return self.matrix[:d, :d]

    @property
    def off_diagonal_block(self) -> np.ndarray:
        d = self.dim
        return self.matrix[:d, d:]

    def unitarity_residual(self) -> float:
        m = self.matrix
        return float(np.max(np.abs(m.T @ m - np.eye(m.shape[0]))))

    def off_diagonal_norm(self) -> float:
        return float(np.linalg.norm(self.off_diagonal_block, 2))


def off_diagonal_bound(epsilon: float) -> float:
    """Largest spectral norm the leakage block may have, ``sqrt(2 eps - eps^2)``."""
    return math.sqrt(2.0 * epsilon - epsilon ** 2)


def build_approx_reflector(h: DenseHamiltonian, mu: float, epsilon: float, mode: str = WORST_CASE,
                           seed: int | None = None) -> ApproxReflector:
    """Approximate reflection about the eigenstates below ``mu``.

    Args:
        mu: threshold strictly between the two lowest eigenvalues.
        epsilon: per-eigenstate error ceiling, ``0 <= epsilon < 1``.
        mode: ``"worst_case"`` puts every eps_k at epsilon; ``"random"``
            draws eps_k uniformly in [0, epsilon] from a PCG64 generator.
        seed: seed for random mode.
    """
    w, v = h.eigenvalues, h.eigenvectors
    if not (w[0] < mu < w[1]):
        raise ValueError(f"mu={mu} must lie strictly between E0={w[0]} and E1={w[1]}")
    if not 0.0 <= epsilon < 1.0:
        raise ValueError(f"epsilon must lie in [0, 1), got {epsilon}")
    d = h.dim
    if mode == WORST_CASE:
        eps_k = np.full(d, float(epsilon))
    elif mode == RANDOM:
        rng = np.random.Generator(np.random.PCG64(seed))
        eps_k = rng.uniform(0.0, epsilon, size=d)
    else:
        raise ValueError(f"mode must be {WORST_CASE!r} or {RANDOM!r}, got {mode!r}")
    sigma = np.where(w < mu, -1.0, 1.0)
    s = sigma * (1.0 - eps_k)
    c = np.sqrt(np.clip(1.0 - s * s, 0.0, None))
    top = (v * s) @ v.T
    off = (v * c) @ v.T
    mat = np.block([[top, off], [off, -top]])
    # symmetrize away rounding so R is exactly symmetric
    mat = 0.5 * (mat + mat.T)
    return ApproxReflector(matrix=mat, eps_k=eps_k, epsilon=float(epsilon))


@dataclass(frozen=True)
class SimResult:
    target_gamma_f2: float
    achieved_gamma_f2: float
    per_iteration_overlaps: tuple[float, ...]
    epsilon_used: float
    n_iter: int
    gamma_i: float
    L: int | None = None
    g: float | None = None
    mode: str = WORST_CASE
    seed: int | None = None

    @property
    def infidelity_ratio(self) -> float:
        """``(1 - achieved) / (1 - target)``; at most one when the bound holds."""
        return (1.0 - self.achieved_gamma_f2) / (1.0 - self.target_gamma_f2)

    @property
    def bound_holds(self) -> bool:
        return self.achieved_gamma_f2 >= self.target_gamma_f2


def run_amplitude_amplification(h: DenseHamiltonian, guess: np.ndarray | GuessState, reflector: ApproxReflector,
                                n_iter: int, target_gamma_f2: float = math.nan, norm_tol: float = 1e-10) -> SimResult:
    """Apply ``(R_init (+) -I) R_eps`` ``n_iter`` times to ``(guess, 0)``.

    Args:
        guess: normalized guess vector, or a GuessState for a chain whose size
            matches ``h``.
    """
    d = h.dim
    if isinstance(guess, GuessState):
        L = d.bit_length() - 1
        phi = product_state(guess.theta, L)
    else:
        phi = np.asarray(guess, dtype=float)
    if phi.shape != (d,) or reflector.dim != d:
        raise ValueError(f"dimension mismatch: H is {d}, guess {phi.shape}, reflector {reflector.dim}")
    psi0 = h.ground_state
    x = np.concatenate([phi, np.zeros(d)])
    overlaps = [float(np.dot(psi0, x[:d]) ** 2)]
    r = reflector.matrix
    for _ in range(n_iter):
        x = r @ x
        top = x[:d]
        x = np.concatenate([2.0 * np.dot(phi, top) * phi - top, -x[d:]])
        overlaps.append(float(np.dot(psi0, x[:d]) ** 2))
    norm = float(np.linalg.norm(x))
    if abs(norm - 1.0) > norm_tol:
        raise RuntimeError(f"state norm drifted to {norm}")
    gamma_i = math.sqrt(overlaps[0])
    return SimResult(target_gamma_f2=target_gamma_f2, achieved_gamma_f2=overlaps[-1],
                     per_iteration_overlaps=tuple(overlaps), epsilon_used=reflector.epsilon,
                     n_iter=n_iter, gamma_i=gamma_i)


def bracket_top_gamma_i(n_iter: int, gamma_f: float) -> float:
    """Overlap at which ``n_iter`` rounds of ideal amplification reach (nearly) unity.

    Clamped just inside the range where the iteration-count formula still
    returns ``n_iter``, so the returned value is consistent with it.
    """
    edge = math.asin(gamma_f) / (2 * n_iter - 1) * (1.0 - 1e-9)
    return math.sin(min(math.pi / (2.0 * (2 * n_iter + 1)), edge))


GAMMA_I_RULES = {
    "bracket_top": bracket_top_gamma_i,
    "invert": invert_n_iterations,
}


def verify_theorem1(spec: TfimSpec, gamma_f2: float, n_iter: int, mode: str = WORST_CASE, seed: int | None = None,
                    gamma_i_rule: str = "bracket_top", h: DenseHamiltonian | None = None) -> SimResult:
    """Simulate amplification with an error-saturating reflector on a TFIM chain.

    ``gamma_i_rule`` picks the guess overlap among those for which the
    iteration-count formula gives ``n_iter``: ``"bracket_top"`` lets ideal
    amplification reach unity, ``"invert"`` reaches exactly ``gamma_f``.
    """
    if gamma_i_rule not in GAMMA_I_RULES:
        raise ValueError(f"gamma_i_rule must be one of {sorted(GAMMA_I_RULES)}, got {gamma_i_rule!r}")
    gamma_f = math.sqrt(gamma_f2)
    target_gi = GAMMA_I_RULES[gamma_i_rule](n_iter, gamma_f)
    if n_iterations(target_gi, gamma_f) != n_iter:
        raise RuntimeError(f"gamma_i={target_gi} does not reproduce n_iter={n_iter}")
    if h is None:
        h = DenseHamiltonian.tfim(spec)
    w = h.eigenvalues
    guess = tune_guess_angle(spec, target_gi, psi=h.ground_state)
    eps = epsilon_bound(gamma_f, n_iter)
    refl = build_approx_reflector(h, 0.5 * (w[0] + w[1]), eps, mode=mode, seed=seed)
    res = run_amplitude_amplification(h, guess, refl, n_iter, target_gamma_f2=gamma_f2)
    return SimResult(target_gamma_f2=gamma_f2, achieved_gamma_f2=res.achieved_gamma_f2,
                     per_iteration_overlaps=res.per_iteration_overlaps, epsilon_used=eps, n_iter=n_iter,
                     gamma_i=guess.gamma_i, L=spec.L, g=spec.g, mode=mode, seed=seed)

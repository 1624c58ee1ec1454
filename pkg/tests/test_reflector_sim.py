import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aa_resources.aa_planner import invert_n_iterations, n_iterations
from aa_resources.reflector_sim import (RANDOM, WORST_CASE, DenseHamiltonian, build_approx_reflector,
                                        bracket_top_gamma_i, off_diagonal_bound, run_amplitude_amplification,
                                        verify_theorem1)
from aa_resources.tfim import TfimSpec


def chain(L, g=2.0):
    return DenseHamiltonian.tfim(TfimSpec(L, g))


def midpoint(h):
    w = h.eigenvalues
    return 0.5 * (w[0] + w[1])


def guess_with_overlap(h, gamma_i, seed=0):
    """Normalized vector with exactly ``gamma_i`` overlap on the ground state."""
    rng = np.random.default_rng(seed)
    psi = h.ground_state
    r = rng.normal(size=h.dim)
    r -= np.dot(r, psi) * psi
    r /= np.linalg.norm(r)
    return gamma_i * psi + math.sqrt(1 - gamma_i ** 2) * r


class TestDenseHamiltonian:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            DenseHamiltonian(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_reconstruction(self):
        h = chain(5, 0.7)
        v, w = h.eigenvectors, h.eigenvalues
        assert np.max(np.abs((v * w) @ v.T - h.matrix)) <= 1e-10


class TestReflector:
    def test_exact_reflector_squares_to_identity(self):
        h = chain(3)
        r = build_approx_reflector(h, midpoint(h), 0.0).matrix
        assert np.max(np.abs(r @ r - np.eye(r.shape[0]))) <= 1e-12
        assert np.max(np.abs(r[:h.dim, h.dim:])) <= 1e-15

    def test_eps_point_three_on_two_sites(self):
        h = chain(2)
        r = build_approx_reflector(h, midpoint(h), 0.3)
        a = r.off_diagonal_norm()
        assert 0 < a <= math.sqrt(0.51) + 1e-12

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 6), st.floats(1e-6, 0.3), st.integers(0, 2 ** 32), st.sampled_from([WORST_CASE, RANDOM]))
    def test_invariants(self, L, eps, seed, mode):
        h = chain(L)
        r = build_approx_reflector(h, midpoint(h), eps, mode=mode, seed=seed)
        assert r.unitarity_residual() <= 1e-12
        assert np.max(np.abs(r.matrix - r.matrix.T)) <= 1e-12
        assert np.linalg.svd(r.off_diagonal_block, compute_uv=False)[0] <= off_diagonal_bound(eps) + 1e-12
        top = np.linalg.eigvalsh(r.system_block)
        assert np.all(np.abs(np.abs(top) - 1) <= eps + 1e-12)

    def test_ground_state_sign(self):
        h = chain(4)
        r = build_approx_reflector(h, midpoint(h), 0.1).system_block
        psi = h.ground_state
        assert psi @ r @ psi == pytest.approx(-0.9)

    def test_random_is_reproducible(self):
        h = chain(3)
        a = build_approx_reflector(h, midpoint(h), 0.2, RANDOM, seed=11)
        b = build_approx_reflector(h, midpoint(h), 0.2, RANDOM, seed=11)
        assert np.array_equal(a.matrix, b.matrix)

    def test_rejects_bad_arguments(self):
        h = chain(3)
        w = h.eigenvalues
        for mu in (w[0] - 1, w[1] + 0.5, w[0]):
            with pytest.raises(ValueError):
                build_approx_reflector(h, mu, 0.1)
        with pytest.raises(ValueError):
            build_approx_reflector(h, midpoint(h), 1.0)
        with pytest.raises(ValueError):
            build_approx_reflector(h, midpoint(h), 0.1, mode="median")


class TestAmplification:
    @pytest.mark.parametrize("n", [1, 4, 6, 10])
    def test_ideal_closed_form(self, n):
        h = chain(4)
        gi = invert_n_iterations(n, math.sqrt(0.99))
        res = run_amplitude_amplification(h, guess_with_overlap(h, gi), build_approx_reflector(h, midpoint(h), 0.0), n)
        assert res.achieved_gamma_f2 == pytest.approx(math.sin((2 * n + 1) * math.asin(gi)) ** 2, abs=1e-10)
        assert len(res.per_iteration_overlaps) == n + 1

    def test_zero_iterations(self):
        h = chain(3)
        res = run_amplitude_amplification(h, guess_with_overlap(h, 0.2), build_approx_reflector(h, midpoint(h), 0.1), 0)
        assert res.achieved_gamma_f2 == pytest.approx(0.04, abs=1e-14)

    def test_dimension_mismatch(self):
        h = chain(3)
        with pytest.raises(ValueError):
            run_amplitude_amplification(h, np.ones(4) / 2, build_approx_reflector(h, midpoint(h), 0.1), 1)

    def test_worst_case_dominated_by_random(self):
        h = chain(4)
        gf = math.sqrt(0.99)
        n = 6
        gi = bracket_top_gamma_i(n, gf)
        phi = guess_with_overlap(h, gi)
        from aa_resources.aa_planner import epsilon_bound
        eps = epsilon_bound(gf, n)
        worst = run_amplitude_amplification(h, phi, build_approx_reflector(h, midpoint(h), eps), n)
        wins = sum(
            worst.achieved_gamma_f2 <= run_amplitude_amplification(
                h, phi, build_approx_reflector(h, midpoint(h), eps, RANDOM, seed=s), n).achieved_gamma_f2
            for s in range(100))
        assert wins >= 95


class TestOverlapBound:
    def test_examples(self):
        r = verify_theorem1(TfimSpec(4, 2.0), 0.99, 6)
        assert r.achieved_gamma_f2 >= 0.99
        r = verify_theorem1(TfimSpec(2, 2.0), 0.9, 4, mode=WORST_CASE)
        assert r.bound_holds and r.infidelity_ratio <= 1

    def test_bracket_top_is_consistent(self):
        for n in (1, 4, 6, 10, 40):
            for gf2 in (0.75, 0.9, 0.99, 0.999):
                assert n_iterations(bracket_top_gamma_i(n, math.sqrt(gf2)), math.sqrt(gf2)) == n

    @pytest.mark.parametrize("L", [2, 3, 4, 5, 6])
    def test_bound_over_grid_and_seeds(self, L):
        spec = TfimSpec(L, 2.0)
        h = DenseHamiltonian.tfim(spec)
        misses = []
        for gf2 in (0.9, 0.99, 0.999):
            for n in (4, 6, 10):
                runs = [(WORST_CASE, None)] + [(RANDOM, s) for s in range(20)]
                for mode, seed in runs:
                    r = verify_theorem1(spec, gf2, n, mode=mode, seed=seed, h=h)
                    if not r.bound_holds:
                        misses.append((gf2, n, mode, seed))
        assert not misses

    def test_invert_rule_misses_target(self):
        # starting exactly at the inverted overlap leaves no slack for reflector error
        r = verify_theorem1(TfimSpec(4, 2.0), 0.99, 6, gamma_i_rule="invert")
        assert not r.bound_holds and 1 < r.infidelity_ratio < 1.2

    def test_unknown_rule(self):
        with pytest.raises(ValueError):
            verify_theorem1(TfimSpec(2, 2.0), 0.9, 4, gamma_i_rule="middle")

import math

import pytest
from hypothesis import given, strategies as st

from aa_resources.cost_core import TCount
from aa_resources.qpe import plan_qpe, qpe_qubit_count, qpe_register_size, qpe_rotation_count, qpe_t_count


def test_register_size_examples():
    assert qpe_register_size(192, 1e-2) == 16
    assert qpe_register_size(100, 1e-2) == 15
    assert qpe_qubit_count(qpe_register_size(192, 1e-2)) == 16


def test_register_size_rejects_degenerate():
    with pytest.raises(ValueError):
        qpe_register_size(1.0, 1.0)
    with pytest.raises(ValueError):
        qpe_register_size(1.0, 0.0)


@given(st.floats(1.0, 1e8), st.floats(1e-6, 1e-2))
def test_halving_delta_e_adds_one_bit(alpha, de):
    x = math.log2(math.sqrt(2) * math.pi * alpha / (2 * de))
    if abs(x - round(x)) > 1e-6:
        assert qpe_register_size(alpha, de / 2) == qpe_register_size(alpha, de) + 1


def test_t_count_example():
    t = qpe_t_count(3, TCount(100))
    assert t.breakdown == {"chi_and_qft": 24 * 39, "walk": 800}
    assert t.total == 1736


def test_rotation_count():
    assert qpe_rotation_count(1) == 4
    assert qpe_rotation_count(3) == 24


def test_qubits():
    assert qpe_qubit_count(16) == 16 and qpe_qubit_count(1) == 1
    with pytest.raises(ValueError):
        qpe_qubit_count(0)


@pytest.mark.parametrize("model", ["tfim", "firstquant"])
def test_walk_dominates_on_sweep_grid(model):
    from aa_resources.firstquant import ev_to_hartree
    from aa_resources.improvement import FirstQuantModel, TfimModel

    if model == "tfim":
        m, sizes, des = TfimModel(g=2.0), (4, 16, 64), (1e-2, 1e-3)
    else:
        m = FirstQuantModel(eta=610, zeta_norm=610, n_atoms=61, omega=4116.0)
        sizes, des = (1331, 103823, 9938375), (ev_to_hartree(0.013), ev_to_hartree(0.043))
    for size in sizes:
        inst = m.instance(size, 1e-4)
        for de in des:
            plan = plan_qpe(inst.alpha_shifted, de, inst.t_hamiltonian)
            assert plan.p >= 10
            bd = plan.t_count.breakdown
            assert bd["walk"] >= 10 * bd["chi_and_qft"], (size, de)


def test_walk_dominance_needs_larger_hamiltonian_at_p10():
    # with a 100-T walk step at p = 10 the rotations still weigh about one sixth
    bd = qpe_t_count(10, TCount(100)).breakdown
    assert 6 * bd["chi_and_qft"] < bd["walk"] < 10 * bd["chi_and_qft"]
    bd = qpe_t_count(10, TCount(1000)).breakdown
    assert bd["walk"] >= 10 * bd["chi_and_qft"]


@given(st.integers(1, 60), st.integers(0, 10 ** 12))
def test_increasing_in_p_and_linear_in_hamiltonian(p, th):
    assert qpe_t_count(p + 1, TCount(th)).total > qpe_t_count(p, TCount(th)).total
    a, b = qpe_t_count(p, TCount(th)), qpe_t_count(p, TCount(2 * th))
    assert b.breakdown["walk"] == 2 * a.breakdown["walk"]


def test_walk_doubles():
    a, b = qpe_t_count(7, TCount(1000)), qpe_t_count(8, TCount(1000))
    assert b.breakdown["walk"] == 2 * a.breakdown["walk"]


def test_plan():
    plan = plan_qpe(192, 1e-2, TCount(5))
    assert plan.p == 16 and plan.eps_qft == 2.0 ** -17 and plan.qubits == 16

import pytest

from aa_resources.firstquant import ev_to_hartree, round_to_odd_cube
from aa_resources.improvement import FirstQuantModel, SweepGrid, TfimModel, run_sweep

TFIM_GAMMA_I2 = (1e-5, 2.154e-5, 4.642e-5, 1e-4, 2.154e-4, 4.642e-4, 1e-3, 2.154e-3, 4.642e-3,
                 1e-2, 2.154e-2, 4.642e-2, 1e-1)
TFIM_DELTA_E = (1e-2, 1e-3)
FQ_GAMMA_I2 = (1e-5, 3.162e-5, 1e-4, 3.162e-4, 1e-3, 3.162e-3, 1e-2, 3.162e-2, 1e-1)
FQ_DELTA_E = tuple(ev_to_hartree(x) for x in (0.013, 0.043))
FQ_SIZES = tuple(round_to_odd_cube(n) for n in (1e3, 1e5, 1e7))


def fq_model(**kw):
    return FirstQuantModel(eta=610, zeta_norm=610, n_atoms=61, omega=4116.0, **kw)


@pytest.fixture(scope="session")
def tfim_sweep():
    grid = SweepGrid("tfim", (4, 16, 64), TFIM_GAMMA_I2, TFIM_DELTA_E, 0.75)
    return run_sweep(grid, TfimModel(g=2.0))


@pytest.fixture(scope="session")
def fq_sweep():
    grid = SweepGrid("firstquant", FQ_SIZES, FQ_GAMMA_I2, FQ_DELTA_E, 0.75)
    return run_sweep(grid, fq_model())


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

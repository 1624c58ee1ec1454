"""T-gate and logical-qubit estimates for phase estimation preceded by
amplitude-amplified ground-state preparation.

Two Hamiltonian families are modeled: the periodic transverse-field Ising
chain and first-quantized plane-wave electronic structure. A dense
eigenvalue-level simulator checks the amplification overlap bound on small
Ising chains.
"""
from .aa_planner import AaPlan, epsilon_bound, invert_n_iterations, n_iterations, plan_aa, qsp_degree, t_aa
from .cost_core import TCount, mcx_t_cost, qrom_erase_cost, rotation_t_cost
from .errors import (AlphabetTooSmallError, ConfigError, EstimationError, GaplessModelError, InfeasiblePlanError,
                     UnreachableTargetError)
from .improvement import (FirstQuantModel, SweepGrid, TfimModel, asymptotic_improvement, evaluate_point,
                          fit_asymptotic, improvement_ratio, run_sweep)
from .qpe import qpe_register_size, qpe_t_count
from .tfim import TfimSpec, tfim_free_fermion_spectrum

__version__ = "0.1.0"

__all__ = [
    "AaPlan", "AlphabetTooSmallError", "ConfigError", "EstimationError", "FirstQuantModel", "GaplessModelError",
    "InfeasiblePlanError", "SweepGrid", "TCount", "TfimModel", "TfimSpec", "UnreachableTargetError",
    "asymptotic_improvement", "epsilon_bound", "evaluate_point", "fit_asymptotic", "improvement_ratio",
    "invert_n_iterations", "mcx_t_cost", "n_iterations", "plan_aa", "qpe_register_size", "qpe_t_count",
    "qrom_erase_cost", "qsp_degree", "rotation_t_cost", "run_sweep", "t_aa", "tfim_free_fermion_spectrum",
]

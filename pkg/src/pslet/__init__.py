"""Bound-state energies of polynomial oscillators via a shifted-l
pseudoperturbation series, with rational resummation and an independent
Numerov shooting solver for validation.
"""

from .errors import (DegenerateFrequency, GridTooCoarse, InsufficientOrder,
                     NoEigenvalueInBracket, NonBinding, NoRoot,
                     PoleAtEvaluation, PsletError, SingularSystem)
from .hierarchy import (CorrectionHierarchy, EnergyExpansion,
                        PerturbationTerms, build_v_terms, energy_expansion,
                        log_derivative, riccati_residual, solve_hierarchy)
from .leading_order import (LeadingOrderSolution, e_minus2_curvature,
                            eq20_residual, frequency_w, shift_beta, solve_q0)
from .oracle import OracleConfig, default_config, radial_wavefunction, solve_radial
from .pade import PadeApproximant, evaluate, fit, resummed_energy, taylor_coefficients
from .poly import Polynomial, differentiate, linear_combine, multiply
from .potential import PotentialSpec, derivative_at, from_terms, quartic
from .precision import DOUBLE, Precision, extended
from .solver import SolveRequest, SolveResult, result_to_dict, run_solve
from .tables import reproduce_table, rows_to_csv, table_exit_code

__version__ = "0.1.0"

__all__ = [
    "CorrectionHierarchy", "DegenerateFrequency", "DOUBLE", "EnergyExpansion",
    "GridTooCoarse", "InsufficientOrder", "LeadingOrderSolution",
    "NoEigenvalueInBracket", "NonBinding", "NoRoot", "OracleConfig",
    "PadeApproximant", "PerturbationTerms", "PoleAtEvaluation", "Polynomial",
    "PotentialSpec", "Precision", "PsletError", "SingularSystem",
    "SolveRequest", "SolveResult", "build_v_terms", "default_config",
    "derivative_at", "differentiate", "e_minus2_curvature", "energy_expansion",
    "eq20_residual", "evaluate", "extended", "fit", "frequency_w",
    "from_terms", "linear_combine", "log_derivative", "multiply", "quartic",
    "radial_wavefunction", "reproduce_table", "resummed_energy",
    "result_to_dict", "riccati_residual", "rows_to_csv", "run_solve",
    "shift_beta", "solve_hierarchy", "solve_q0", "solve_radial",
    "table_exit_code", "taylor_coefficients",
]

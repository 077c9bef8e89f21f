"""Numerical laboratory for KPP-type radial elliptic problems.

Building blocks: reaction-term validation, radial shooting with first-root
localization, the linear comparison problem and its cylinder-function zeros,
Dirichlet solutions on expanding balls, and the branching-Brownian-motion /
reaction-diffusion duality check.  Hot loops run in a compiled extension when
available (see ``kpplab.backend``); a pure-Python twin produces bit-identical
results.
"""

from .backend import BACKEND, available_backends
from .ballbvp import (BallSolution, NonexistenceCertificate, Ordering,
                      OrderingVerdict, comparison_check, dirichlet_solution,
                      existence_threshold, minimal_solution_sweep,
                      nonexistence_certificate)
from .comparison import (ComparisonRecord, RhoMethod, cylinder_first_zero,
                         eigenvalue_of_ball, rho)
from .fkpp import (BBMOutcome, ConsistencyReport, FkppField, MCEstimate,
                   TestFunction, consistency_check, laplace_functional_mc,
                   simulate_bbm, solve_fkpp, yule_closed_form)
from .nonlinearity import (Nonlinearity, ValidationReport, comparison_slope,
                           evaluate, validate_assumptions)
from .shooting import (RadialProfile, ShootConfig, ShootStatus, first_root,
                       monotone_check, series_start, shoot)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "available_backends",
    "Nonlinearity", "ValidationReport", "evaluate", "validate_assumptions",
    "comparison_slope",
    "RadialProfile", "ShootConfig", "ShootStatus", "series_start", "shoot",
    "first_root", "monotone_check",
    "ComparisonRecord", "RhoMethod", "rho", "cylinder_first_zero",
    "eigenvalue_of_ball",
    "BallSolution", "NonexistenceCertificate", "Ordering", "OrderingVerdict",
    "dirichlet_solution", "minimal_solution_sweep", "existence_threshold",
    "comparison_check", "nonexistence_certificate",
    "TestFunction", "BBMOutcome", "MCEstimate", "FkppField",
    "ConsistencyReport", "simulate_bbm", "laplace_functional_mc",
    "yule_closed_form", "solve_fkpp", "consistency_check",
    "__version__",
]

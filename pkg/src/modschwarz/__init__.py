"""Exact constructions of quasi-modular ODE solutions and equivariant
Schwarzian solutions, with coefficient-wise and numeric verification."""

from .modforms import (
    Group,
    IdentityViolated,
    NamedForm,
    check_jacobi,
    check_ramanujan,
    delta,
    delta_half,
    eisenstein,
    eta_power,
    hauptmodul,
    j1728,
    named_form,
    seed_t0,
    sigma,
    theta_fourth,
    theta_logderiv,
)
from .numeric import (
    EvalConfig,
    Moebius,
    check_equivariance,
    check_schwarz_numeric,
    eval_series,
)
from .series import (
    IncompatibleLattice,
    LaurentSeries,
    NonzeroConstantTerm,
    PrefactoredSeries,
    UnknownCoefficient,
    ZeroLeadingCoefficient,
)
from .solver import (
    BSystem,
    SolveResult,
    build_B,
    build_g,
    classify_theta_cross_ratio,
    cross_ratio,
    equivariant_offset,
    frobenius_oracle,
    solve_eigen,
    solve_ode,
)

__version__ = "0.1.0"

__all__ = [
    "Group",
    "IdentityViolated",
    "NamedForm",
    "check_jacobi",
    "check_ramanujan",
    "delta",
    "delta_half",
    "eisenstein",
    "eta_power",
    "hauptmodul",
    "j1728",
    "named_form",
    "seed_t0",
    "sigma",
    "theta_fourth",
    "theta_logderiv",
    "EvalConfig",
    "Moebius",
    "check_equivariance",
    "check_schwarz_numeric",
    "eval_series",
    "IncompatibleLattice",
    "LaurentSeries",
    "NonzeroConstantTerm",
    "PrefactoredSeries",
    "UnknownCoefficient",
    "ZeroLeadingCoefficient",
    "BSystem",
    "SolveResult",
    "build_B",
    "build_g",
    "classify_theta_cross_ratio",
    "cross_ratio",
    "equivariant_offset",
    "frobenius_oracle",
    "solve_eigen",
    "solve_ode",
]

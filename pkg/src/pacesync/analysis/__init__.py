"""Rate bounds, sufficient conditions and trajectory diagnostics."""

from ..phases import order_parameter
from .bounds import (
    ConditionVerdict,
    RateBound,
    alpha1,
    alpha2,
    alpha3,
    alpha4,
    bound_in_regime,
    check_locking_condition,
    check_sync_condition,
    check_trapping_condition,
    condition_for,
    epsilon_of,
    lambda_max_laplacian,
    sync_threshold,
    trapping_threshold,
)
from .diagnostics import SMatrices, fit_decay_rate, lyapunov_diagnostics, s_matrices, tail_window
from .eigen import jacobi_eigenvalues, symmetric_eigen_extremes
from .scalars import SincConstants, sigma_pair_lock, sigma_pair_sync, sinc, solve_epsilon0

__all__ = [
    "ConditionVerdict",
    "RateBound",
    "SMatrices",
    "SincConstants",
    "alpha1",
    "alpha2",
    "alpha3",
    "alpha4",
    "bound_in_regime",
    "check_locking_condition",
    "check_sync_condition",
    "check_trapping_condition",
    "condition_for",
    "epsilon_of",
    "fit_decay_rate",
    "jacobi_eigenvalues",
    "lambda_max_laplacian",
    "lyapunov_diagnostics",
    "order_parameter",
    "s_matrices",
    "sigma_pair_lock",
    "sigma_pair_sync",
    "sinc",
    "solve_epsilon0",
    "symmetric_eigen_extremes",
    "tail_window",
    "sync_threshold",
    "trapping_threshold",
]

"""Cyclic Jacobi eigenvalue iteration for small symmetric matrices."""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

SYMMETRY_TOL = 1e-9
OFFDIAG_RTOL = 1e-12
MAX_SWEEPS = 100


def _off_norm(a: np.ndarray) -> float:
    off = a[~np.eye(a.shape[0], dtype=bool)]
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigenvalues(mat: ArrayLike) -> NDArray[np.float64]:
    """All eigenvalues of a symmetric matrix, ascending.

    Sweeps rotate every (p, q) pair in row order until the off-diagonal
    Frobenius norm falls below 1e-12 times the norm of the input.

    Raises:
        ValueError: ``mat`` is not square or not symmetric to 1e-9.
        ArithmeticError: no convergence within ``MAX_SWEEPS`` sweeps.
    """
    a = np.array(mat, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains non-finite entries")
    scale = float(np.linalg.norm(a))
    if np.max(np.abs(a - a.T), initial=0.0) > SYMMETRY_TOL * max(scale, 1.0):
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    target = OFFDIAG_RTOL * scale
    for _ in range(MAX_SWEEPS):
        if _off_norm(a) <= target:
            return np.sort(np.diag(a).copy())
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-18 * abs(diff):
                    # rotation angle below rounding; skip to avoid overflow in tau**2
                    a[p, q] = a[q, p] = 0.0
                    continue
                tau = diff / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    if _off_norm(a) <= target:
        return np.sort(np.diag(a).copy())
    raise ArithmeticError(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")


def symmetric_eigen_extremes(mat: ArrayLike) -> tuple[float, float]:
    """(lambda_min, lambda_max) of a symmetric matrix."""
    lam = jacobi_eigenvalues(mat)
    return float(lam[0]), float(lam[-1])

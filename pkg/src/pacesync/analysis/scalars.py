from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray

_SERIES_CUTOFF = 1e-4


def sinc(x: ArrayLike) -> NDArray[np.float64] | float:
    """Unnormalised sinc, sin(x)/x, with value 1 at 0.

    Below |x| = 1e-4 the Taylor series 1 - x^2/6 + x^4/120 is used.
    """
    x = np.asarray(x, dtype=np.float64)
    small = np.abs(x) < _SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    x2 = x * x
    out = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)
    return float(out) if out.ndim == 0 else out


def _tangency_residual(eps: float) -> float:
    return 2.0 * eps * math.cos(2.0 * eps) - math.sin(2.0 * eps)


@dataclass(frozen=True)
class SincConstants:
    """``epsilon0`` solves 2e cos(2e) = sin(2e) on (pi/2, pi); sinc is minimal at 2*epsilon0."""

    epsilon0: float
    sinc_2eps0: float


@lru_cache(maxsize=1)
def solve_epsilon0(tol: float = 1e-12) -> SincConstants:
    lo, hi = math.pi / 2 + 1e-9, math.pi - 1e-9
    f_lo, f_hi = _tangency_residual(lo), _tangency_residual(hi)
    if f_lo * f_hi >= 0:
        raise ArithmeticError("epsilon0 bracket does not contain a sign change")
    mid = 0.5 * (lo + hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = _tangency_residual(mid)
        if abs(f_mid) < tol or hi - lo < 1e-15:
            break
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return SincConstants(epsilon0=mid, sinc_2eps0=float(sinc(2.0 * mid)))


def sigma_pair_sync(epsilon: float) -> tuple[float, float]:
    """Lower bounds (sinc(eps), sinc(2 eps)) on the S1 and S2 diagonals for eps < pi/2."""
    if not (0.0 <= epsilon < math.pi / 2):
        raise ValueError(f"epsilon must lie in [0, pi/2), got {epsilon}")
    return float(sinc(epsilon)), float(sinc(2.0 * epsilon))


def sigma_pair_lock(epsilon: float) -> tuple[float, float]:
    """(cos(eps), cos(2 eps)) for the phase-locking regime eps < pi/4."""
    if not (0.0 <= epsilon < math.pi / 4):
        raise ValueError(f"epsilon must lie in [0, pi/4), got {epsilon}")
    return math.cos(epsilon), math.cos(2.0 * epsilon)

"""Sufficient conditions and exponential-rate lower bounds.

Regimes, with eps the largest initial |xi_i|:

* synchronisation (identical frequencies): alpha1 for eps < pi/2,
  alpha2 for pi/2 <= eps < pi;
* phase locking: alpha3 for eps < pi/4, alpha4 for pi/4 <= eps < pi/2;
* phase trapping in [-delta, delta] for eps < pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from ..dynamics import ModelParams
from ..network import build_incidence, is_connected, laplacian
from .eigen import symmetric_eigen_extremes
from .scalars import sigma_pair_sync, sinc, solve_epsilon0

BoundKind = Literal["alpha1", "alpha2", "alpha3", "alpha4"]

HALF_PI = 0.5 * math.pi
QUARTER_PI = 0.25 * math.pi


@dataclass(frozen=True)
class RateBound:
    kind: BoundKind
    value: float
    epsilon: float
    valid: bool


@dataclass(frozen=True)
class ConditionVerdict:
    """Outcome of a sufficient-condition check.

    ``margin`` is g_min (or max g_i) minus the binding threshold, in 1/s;
    it is positive exactly when the condition holds.
    """

    theorem: str
    holds: bool
    margin: float
    binding_term: str


def graph_laplacian(params: ModelParams) -> np.ndarray:
    return laplacian(build_incidence(params.graph))


def lambda_max_laplacian(params: ModelParams) -> float:
    if params.n == 1:
        return 0.0
    return symmetric_eigen_extremes(graph_laplacian(params))[1]


def epsilon_of(xi0) -> float:
    """Largest absolute initial relative phase."""
    return float(np.max(np.abs(np.asarray(xi0, dtype=np.float64))))


def _require_identical(params: ModelParams, what: str) -> None:
    if not params.identical_frequencies:
        raise ValueError(f"{what} applies to identical natural frequencies only")


def _pinned_connected(params: ModelParams, theorem: str) -> ConditionVerdict:
    if not is_connected(params.graph):
        return ConditionVerdict(theorem, False, 0.0, "disconnected")
    g_max = params.pacemaker.g_max
    if g_max <= 0:
        return ConditionVerdict(theorem, False, 0.0, "no_pacemaker")
    return ConditionVerdict(theorem, True, g_max, "max_g")


def _threshold_verdict(theorem: str, g_min: float, terms: dict[str, float]) -> ConditionVerdict:
    label = max(terms, key=terms.__getitem__)
    margin = g_min - terms[label]
    return ConditionVerdict(theorem, margin > 0, margin, label)


def check_sync_condition(params: ModelParams, epsilon: float) -> ConditionVerdict:
    """Synchronisation condition for identical frequencies.

    Below pi/2 it only needs a connected graph with one pinned node; from
    pi/2 up, g_min must exceed
    max{ sinc(2 eps0) lambda_max(L) / (-sinc eps), max_i sum_j a_ij / sin eps }.
    """
    _require_identical(params, "the synchronisation condition")
    if not (0.0 <= epsilon < math.pi):
        raise ValueError(f"epsilon must lie in [0, pi), got {epsilon}")
    if epsilon < HALF_PI:
        return _pinned_connected(params, "sync_case1")
    return _threshold_verdict("sync_case2", params.pacemaker.g_min, _sync_terms(params, epsilon))


def _sync_terms(params: ModelParams, epsilon: float) -> dict[str, float]:
    consts = solve_epsilon0()
    return {
        "spectral": consts.sinc_2eps0 * lambda_max_laplacian(params) / (-float(sinc(epsilon))),
        "degree": float(np.max(params.graph.degrees())) / math.sin(epsilon),
    }


def sync_threshold(params: ModelParams, epsilon: float) -> float:
    """Smallest g_min the wide-spread (pi/2 <= eps < pi) synchronisation condition exceeds."""
    if not (HALF_PI <= epsilon < math.pi):
        raise ValueError(f"epsilon must lie in [pi/2, pi), got {epsilon}")
    return max(_sync_terms(params, epsilon).values())


def check_locking_condition(params: ModelParams, epsilon: float) -> ConditionVerdict:
    if not (0.0 <= epsilon < HALF_PI):
        raise ValueError(f"epsilon must lie in [0, pi/2), got {epsilon}")
    if epsilon < QUARTER_PI:
        return _pinned_connected(params, "lock_case1")
    c1, c2 = math.cos(epsilon), math.cos(2.0 * epsilon)
    terms = {
        "spectral": -c2 * lambda_max_laplacian(params) / c1,
        "degree": float(np.max(-params.graph.degrees() * c2 / c1)),
    }
    return _threshold_verdict("lock_case2", params.pacemaker.g_min, terms)


def trapping_threshold(params: ModelParams, epsilon: float, delta: float) -> float:
    """Smallest g_min (exclusive) that traps every xi_i in [-delta, delta]."""
    if not (0.0 < delta < math.pi):
        raise ValueError(f"delta must lie in (0, pi), got {delta}")
    if not (0.0 <= epsilon < math.pi):
        raise ValueError(f"epsilon must lie in [0, pi), got {epsilon}")
    s = float(sinc(epsilon))
    threshold = float(np.linalg.norm(params.omega)) / (delta * s)
    if epsilon >= HALF_PI:
        threshold -= solve_epsilon0().sinc_2eps0 * lambda_max_laplacian(params) / s
    return threshold


def check_trapping_condition(params: ModelParams, epsilon: float, delta: float) -> ConditionVerdict:
    threshold = trapping_threshold(params, epsilon, delta)
    theorem = "trap_case1" if epsilon < HALF_PI else "trap_case2"
    return _threshold_verdict(theorem, params.pacemaker.g_min, {"frequency_spread": threshold})


def _lambda_min_mix(params: ModelParams, w_g: float, w_l: float) -> float:
    mat = w_g * np.diag(params.g) + w_l * graph_laplacian(params)
    return symmetric_eigen_extremes(mat)[0]


def alpha1(params: ModelParams, epsilon: float) -> RateBound:
    """lambda_min(sinc(eps) G + sinc(2 eps) L), eps < pi/2."""
    _require_identical(params, "alpha1")
    s1, s2 = sigma_pair_sync(epsilon)
    value = _lambda_min_mix(params, s1, s2)
    valid = check_sync_condition(params, epsilon).holds
    return RateBound("alpha1", value, float(epsilon), valid)


def alpha2(params: ModelParams, epsilon: float) -> RateBound:
    """g_min sinc(eps) + sinc(2 eps0) lambda_max(L), pi/2 <= eps < pi."""
    _require_identical(params, "alpha2")
    if not (HALF_PI <= epsilon < math.pi):
        raise ValueError(f"alpha2 needs epsilon in [pi/2, pi), got {epsilon}")
    value = params.pacemaker.g_min * float(sinc(epsilon)) + solve_epsilon0().sinc_2eps0 * lambda_max_laplacian(params)
    valid = check_sync_condition(params, epsilon).holds
    return RateBound("alpha2", value, float(epsilon), valid)


def alpha3(params: ModelParams, epsilon: float) -> RateBound:
    if not (0.0 <= epsilon < QUARTER_PI):
        raise ValueError(f"alpha3 needs epsilon in [0, pi/4), got {epsilon}")
    value = _lambda_min_mix(params, math.cos(epsilon), math.cos(2.0 * epsilon))
    valid = check_locking_condition(params, epsilon).holds
    return RateBound("alpha3", value, float(epsilon), valid)


def alpha4(params: ModelParams, epsilon: float) -> RateBound:
    if not (QUARTER_PI <= epsilon < HALF_PI):
        raise ValueError(f"alpha4 needs epsilon in [pi/4, pi/2), got {epsilon}")
    value = params.pacemaker.g_min * math.cos(epsilon) + math.cos(2.0 * epsilon) * lambda_max_laplacian(params)
    valid = check_locking_condition(params, epsilon).holds
    return RateBound("alpha4", value, float(epsilon), valid)


_REGIMES: dict[str, tuple[float, float, bool]] = {
    # kind: (lo, hi, needs identical frequencies)
    "alpha1": (0.0, HALF_PI, True),
    "alpha2": (HALF_PI, math.pi, True),
    "alpha3": (0.0, QUARTER_PI, False),
    "alpha4": (QUARTER_PI, HALF_PI, False),
}

_BOUND_FUNCS = {"alpha1": alpha1, "alpha2": alpha2, "alpha3": alpha3, "alpha4": alpha4}


def bound_in_regime(kind: str, params: ModelParams, epsilon: float) -> RateBound | None:
    """The requested bound, or None when eps or the frequency mode is outside its regime."""
    lo, hi, needs_identical = _REGIMES[kind]
    if not (lo <= epsilon < hi) or (needs_identical and not params.identical_frequencies):
        return None
    return _BOUND_FUNCS[kind](params, epsilon)


def condition_for(kind: str, params: ModelParams, epsilon: float) -> ConditionVerdict | None:
    lo, hi, needs_identical = _REGIMES[kind]
    if not (lo <= epsilon < hi) or (needs_identical and not params.identical_frequencies):
        return None
    if kind in ("alpha1", "alpha2"):
        return check_sync_condition(params, epsilon)
    return check_locking_condition(params, epsilon)

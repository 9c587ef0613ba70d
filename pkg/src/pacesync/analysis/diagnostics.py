from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike

from ..dynamics import ModelParams, Trajectory, relative_phase_rhs
from ..network import IncidenceRepresentation
from .scalars import sinc

NORM_FLOOR = 1e-12


class SMatrices(NamedTuple):
    """Diagonals of S1 = sinc(xi), S2 = sinc(B^T xi), S3 = cos(xi), S4 = cos(B^T xi)."""

    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray
    s4: np.ndarray


def lyapunov_diagnostics(xi: ArrayLike, params: ModelParams) -> tuple[float, float]:
    """V = xi.xi / 2 and its derivative along the flow, xi . xi'."""
    xi = np.asarray(xi, dtype=np.float64)
    v = 0.5 * float(xi @ xi)
    v_dot = float(xi @ relative_phase_rhs(xi, params))
    return v, v_dot


def s_matrices(xi: ArrayLike, inc: IncidenceRepresentation) -> SMatrices:
    xi = np.asarray(xi, dtype=np.float64)
    edge_diff = inc.b.T @ xi
    return SMatrices(
        np.asarray(sinc(xi)).reshape(-1),
        np.asarray(sinc(edge_diff)).reshape(-1),
        np.cos(xi),
        np.cos(edge_diff),
    )


def fit_decay_rate(traj: Trajectory, window: tuple[float, float]) -> tuple[float, float]:
    """Least-squares fit of ln||xi(t)|| = intercept - alpha_hat * t on ``window``.

    Samples are used up to (not including) the first one whose norm drops
    below 1e-12.  Returns ``(alpha_hat, intercept)``.

    Raises:
        ValueError: fewer than three usable samples.
    """
    t0, t1 = window
    sel = (traj.times >= t0) & (traj.times <= t1)
    t = traj.times[sel]
    norms = traj.norms()[sel]
    below = np.flatnonzero(~(norms > NORM_FLOOR))
    if below.size:
        t, norms = t[: below[0]], norms[: below[0]]
    if t.size < 3:
        raise ValueError(f"need at least 3 samples above {NORM_FLOOR:g} in window {window}, got {t.size}")
    slope, intercept = np.polyfit(t, np.log(norms), 1)
    return float(-slope), float(intercept)


def tail_window(traj: Trajectory, drop: float = 1e-3) -> tuple[float, float]:
    """Window from the first time ||xi|| has fallen by ``drop`` to the end.

    This keeps the fit in the near-linear regime close to synchrony.  Falls
    back to the second half of the run if the norm never drops that far.
    """
    norms = traj.norms()
    start = norms[0] * drop
    hit = np.flatnonzero(norms <= start)
    t_end = float(traj.times[-1])
    if hit.size == 0:
        return 0.5 * t_end, t_end
    return float(traj.times[hit[0]]), t_end

"""Phase utilities shared by the integrator and the analysis code."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

TWO_PI = 2.0 * np.pi


def wrap_phase(x: ArrayLike) -> NDArray[np.float64] | float:
    """Map phases to [-pi, pi)."""
    y = np.mod(np.asarray(x, dtype=np.float64) + np.pi, TWO_PI) - np.pi
    # mod can round up to exactly 2*pi for tiny negative inputs
    y = np.where(y >= np.pi, y - TWO_PI, y)
    return float(y) if y.ndim == 0 else y


def order_parameter(phi0: ArrayLike, phi: ArrayLike) -> NDArray[np.float64] | float:
    """Modulus of the mean phasor over the pacemaker and all N nodes.

    r = |(e^{j phi0} + sum_i e^{j phi_i}) / (N + 1)|, so r lies in [0, 1] and
    equals 1 exactly when every phase agrees modulo 2 pi.

    Works on batches: ``phi0`` of shape (R,) with ``phi`` of shape (R, N)
    gives an (R,) result.
    """
    phi0 = np.asarray(phi0, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    n = phi.shape[-1]
    z = np.exp(1j * phi0) + np.exp(1j * phi).sum(axis=-1)
    r = np.minimum(np.abs(z) / (n + 1), 1.0)
    return float(r) if r.ndim == 0 else r

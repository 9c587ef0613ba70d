"""Relative-phase dynamics and a fixed-step RK4 integrator.

Relative phases xi_i = phi_i - phi_0 evolve as

    xi_i' = (w_i - w_0) + sum_j a_ij sin(xi_j - xi_i) - g_i sin(xi_i)

Integration never re-wraps xi; only initial conditions outside [-pi, pi]
are wrapped.  Many runs are advanced together as rows of one batch, which is
how the sweep harness gets through hundreds of trajectories quickly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .network import (
    CouplingGraph,
    IncidenceRepresentation,
    PacemakerCoupling,
    build_incidence,
)
from .phases import order_parameter, wrap_phase

FloatArray = NDArray[np.float64]

DEFAULT_DT = 0.01
BLOWUP_THRESHOLD = 1e6


class IntegrationError(RuntimeError):
    """State became non-finite or exceeded the blow-up threshold."""

    def __init__(self, step: int, rows: Sequence[int] = (), message: str | None = None):
        self.step = int(step)
        self.rows = tuple(int(r) for r in rows)
        if message is None:
            message = (
                f"integration aborted at step {self.step}: state non-finite or |xi| > "
                f"{BLOWUP_THRESHOLD:g} (try a smaller dt)"
            )
            if self.rows:
                message += f"; affected runs {list(self.rows)}"
        super().__init__(message)


@dataclass(frozen=True)
class ModelParams:
    """Everything the relative-phase vector field needs."""

    graph: CouplingGraph
    pacemaker: PacemakerCoupling
    w0: float
    w: FloatArray
    phi0_init: float = 0.0

    def __post_init__(self) -> None:
        w = np.array(self.w, dtype=np.float64).reshape(-1)
        if w.size != self.graph.n:
            raise ValueError(f"w has {w.size} entries, graph has {self.graph.n} nodes")
        if self.pacemaker.n != self.graph.n:
            raise ValueError(f"g has {self.pacemaker.n} entries, graph has {self.graph.n} nodes")
        if not np.all(np.isfinite(w)) or not np.isfinite(self.w0):
            raise ValueError("natural frequencies must be finite")
        w.setflags(write=False)
        omega = w - float(self.w0)
        omega.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "w0", float(self.w0))
        object.__setattr__(self, "phi0_init", float(self.phi0_init))
        object.__setattr__(self, "_omega", omega)

    @classmethod
    def identical(
        cls,
        coupling: ArrayLike | CouplingGraph,
        g: ArrayLike | PacemakerCoupling,
        w0: float = 1.0,
        phi0_init: float = 0.0,
    ) -> "ModelParams":
        """All nodes share the pacemaker frequency ``w0``."""
        graph = coupling if isinstance(coupling, CouplingGraph) else CouplingGraph(coupling)
        pace = g if isinstance(g, PacemakerCoupling) else PacemakerCoupling(g)
        return cls(graph, pace, w0, np.full(graph.n, float(w0)), phi0_init)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def omega(self) -> FloatArray:
        """Frequency offsets w_i - w_0."""
        return self._omega  # type: ignore[attr-defined]

    @property
    def g(self) -> FloatArray:
        return self.pacemaker.g

    @property
    def a(self) -> FloatArray:
        return self.graph.a

    @property
    def identical_frequencies(self) -> bool:
        return bool(np.max(np.abs(self.omega)) == 0.0)

    def with_pacemaker(self, g: ArrayLike | PacemakerCoupling) -> "ModelParams":
        pace = g if isinstance(g, PacemakerCoupling) else PacemakerCoupling(g)
        return ModelParams(self.graph, pace, self.w0, self.w, self.phi0_init)

    def with_coupling(self, coupling: ArrayLike | CouplingGraph) -> "ModelParams":
        graph = coupling if isinstance(coupling, CouplingGraph) else CouplingGraph(coupling)
        return ModelParams(graph, self.pacemaker, self.w0, self.w, self.phi0_init)


@dataclass(frozen=True)
class PhaseState:
    t: float
    xi: FloatArray


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = DEFAULT_DT
    t_max: float = 500.0
    record_every: int = 1

    def __post_init__(self) -> None:
        if not (self.dt > 0 and np.isfinite(self.dt)):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not (self.t_max >= self.dt):
            raise ValueError(f"t_max ({self.t_max}) must be >= dt ({self.dt})")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ValueError(f"record_every must be a positive integer, got {self.record_every}")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_max / self.dt))


@dataclass(frozen=True)
class Trajectory:
    """Sampled relative phases, their time derivatives and the order parameter."""

    times: FloatArray
    xi: FloatArray
    zeta: FloatArray
    r: FloatArray

    def __post_init__(self) -> None:
        k = len(self.times)
        if not (len(self.xi) == len(self.zeta) == len(self.r) == k):
            raise ValueError("trajectory arrays must have equal length")
        if k > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("trajectory times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def n(self) -> int:
        return int(self.xi.shape[1])

    def state(self, k: int) -> PhaseState:
        return PhaseState(float(self.times[k]), self.xi[k])

    @property
    def final(self) -> PhaseState:
        return self.state(-1)

    def norms(self) -> FloatArray:
        return np.linalg.norm(self.xi, axis=1)


def _check_dim(xi: np.ndarray, n: int) -> None:
    if xi.shape[-1] != n:
        raise ValueError(f"state has {xi.shape[-1]} components, model has {n} nodes")


def relative_phase_rhs(xi: ArrayLike, params: ModelParams) -> FloatArray:
    """Component form of the relative-phase vector field."""
    xi = np.asarray(xi, dtype=np.float64)
    _check_dim(xi, params.n)
    diff = xi[..., None, :] - xi[..., :, None]  # diff[i, j] = xi_j - xi_i
    coupling = np.sum(params.a * np.sin(diff), axis=-1)
    return params.omega + coupling - params.g * np.sin(xi)


def relative_phase_rhs_matrix(
    xi: ArrayLike,
    params: ModelParams,
    inc: IncidenceRepresentation | None = None,
) -> FloatArray:
    """Incidence form: Omega - G sin(xi) - B W sin(B^T xi)."""
    xi = np.asarray(xi, dtype=np.float64)
    _check_dim(xi, params.n)
    if inc is None:
        inc = build_incidence(params.graph)
    edge_term = inc.b @ (inc.w * np.sin(inc.b.T @ xi))
    return params.omega - params.g * np.sin(xi) - edge_term


def full_phase_rhs(phi0: float, phi: ArrayLike, params: ModelParams) -> tuple[float, FloatArray]:
    """Absolute-phase vector field: returns (phi0', phi')."""
    phi = np.asarray(phi, dtype=np.float64)
    _check_dim(phi, params.n)
    diff = phi[None, :] - phi[:, None]
    dphi = params.w + np.sum(params.a * np.sin(diff), axis=1) + params.g * np.sin(phi0 - phi)
    return params.w0, dphi


def rk4_step(f, y: np.ndarray, dt: float) -> np.ndarray:
    k1 = f(y)
    k2 = f(y + 0.5 * dt * k1)
    k3 = f(y + 0.5 * dt * k2)
    k4 = f(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


class PhaseBatch:
    """Several models stacked row-wise for vectorised integration.

    Row ``r`` of a state array of shape (R, n) belongs to ``params[r]``.  A
    coupling matrix shared by every row is kept 2-D; otherwise a (R, n, n)
    stack is used.
    """

    def __init__(self, params: Sequence[ModelParams]):
        if len(params) == 0:
            raise ValueError("empty batch")
        n = params[0].n
        if any(p.n != n for p in params):
            raise ValueError("all models in a batch must have the same node count")
        self.params = tuple(params)
        self.n = n
        self.size = len(params)
        self.omega = np.stack([p.omega for p in params])
        self.g = np.stack([p.g for p in params])
        self.w0 = np.array([p.w0 for p in params])
        self.phi0_init = np.array([p.phi0_init for p in params])
        first = params[0].a
        if all(p.a is first or np.array_equal(p.a, first) for p in params):
            self._a_t = np.ascontiguousarray(first.T)
            self._shared = True
        else:
            self._a_t = np.ascontiguousarray(np.stack([p.a for p in params]).transpose(0, 2, 1))
            self._shared = False

    def _coupled(self, v: np.ndarray) -> np.ndarray:
        if self._shared:
            return v @ self._a_t
        return np.matmul(v[:, None, :], self._a_t)[:, 0, :]

    def rhs(self, xi: np.ndarray) -> np.ndarray:
        # sum_j a_ij sin(xi_j - xi_i) = cos(xi_i) (A sin xi)_i - sin(xi_i) (A cos xi)_i
        s = np.sin(xi)
        c = np.cos(xi)
        return self.omega - self.g * s + c * self._coupled(s) - s * self._coupled(c)

    def order_parameter(self, t: float, xi: np.ndarray) -> np.ndarray:
        phi0 = self.w0 * t + self.phi0_init
        return order_parameter(phi0, phi0[:, None] + xi)


def prepare_initial(xi0: ArrayLike, n: int) -> FloatArray:
    """Validate an initial condition; wrap entries lying outside [-pi, pi]."""
    xi0 = np.array(xi0, dtype=np.float64)
    if xi0.shape[-1] != n:
        raise ValueError(f"initial state has {xi0.shape[-1]} components, model has {n} nodes")
    if not np.all(np.isfinite(xi0)):
        raise ValueError("initial state must be finite")
    outside = np.abs(xi0) > np.pi
    if np.any(outside):
        xi0 = np.where(outside, wrap_phase(xi0), xi0)
    return xi0


def iterate_batch(
    batch: PhaseBatch,
    xi0: ArrayLike,
    cfg: IntegratorConfig,
    blown: dict[int, int] | None = None,
) -> Iterator[tuple[int, float, FloatArray]]:
    """Yield ``(step, t, xi)`` every ``record_every`` steps and at the last step.

    Without ``blown`` a diverging row raises :class:`IntegrationError`.  With
    a dict, diverging rows are recorded there as ``row -> step``, frozen at
    NaN, and the remaining rows carry on.
    """
    x = prepare_initial(xi0, batch.n).reshape(batch.size, batch.n)
    n_steps = cfg.n_steps
    stride = int(cfg.record_every)
    dt = float(cfg.dt)
    yield 0, 0.0, x
    for k in range(1, n_steps + 1):
        x = rk4_step(batch.rhs, x, dt)
        if not (np.max(np.abs(x)) <= BLOWUP_THRESHOLD):
            bad = ~np.all(np.abs(x) <= BLOWUP_THRESHOLD, axis=1)
            rows = [int(r) for r in np.flatnonzero(bad)]
            if blown is None:
                raise IntegrationError(k, rows)
            for r in rows:
                blown.setdefault(r, k)
            x = np.where(bad[:, None], np.nan, x)
        if k % stride == 0 or k == n_steps:
            yield k, k * dt, x


def integrate_many(
    params: Sequence[ModelParams],
    xi0: ArrayLike,
    cfg: IntegratorConfig,
) -> list[Trajectory]:
    """Integrate several runs side by side; ``xi0`` has shape (R, n)."""
    batch = PhaseBatch(params)
    times, xs, zs, rs = [], [], [], []
    for _, t, x in iterate_batch(batch, xi0, cfg):
        times.append(t)
        xs.append(x.copy())
        zs.append(batch.rhs(x))
        rs.append(batch.order_parameter(t, x))
    times_arr = np.array(times)
    xs_arr = np.stack(xs, axis=1)
    zs_arr = np.stack(zs, axis=1)
    rs_arr = np.stack(rs, axis=1)
    return [
        Trajectory(times_arr.copy(), xs_arr[r], zs_arr[r], rs_arr[r]) for r in range(batch.size)
    ]


def integrate(params: ModelParams, xi0: ArrayLike, cfg: IntegratorConfig | None = None) -> Trajectory:
    """Classical RK4 with a fixed step.

    Samples are taken at t = 0, every ``cfg.record_every`` steps, and at the
    final step.  ``zeta`` is the vector field evaluated at each sample and
    ``r`` the order parameter of the reconstructed absolute phases.

    Raises:
        IntegrationError: the state left the finite range; carries the step index.
    """
    cfg = cfg or IntegratorConfig()
    xi0 = np.asarray(xi0, dtype=np.float64).reshape(1, -1)
    return integrate_many([params], xi0, cfg)[0]


@dataclass(frozen=True)
class FullPhaseTrajectory:
    times: FloatArray
    phi0: FloatArray
    phi: FloatArray


def integrate_full_phase(
    params: ModelParams,
    phi_init: ArrayLike,
    cfg: IntegratorConfig | None = None,
) -> FullPhaseTrajectory:
    """RK4 on the absolute phases (pacemaker state first), sampled like :func:`integrate`."""
    cfg = cfg or IntegratorConfig()
    phi_init = np.asarray(phi_init, dtype=np.float64)
    _check_dim(phi_init, params.n)

    def f(y: np.ndarray) -> np.ndarray:
        d0, d = full_phase_rhs(y[0], y[1:], params)
        return np.concatenate(([d0], d))

    y = np.concatenate(([params.phi0_init], phi_init))
    times, samples = [0.0], [y.copy()]
    n_steps, stride = cfg.n_steps, int(cfg.record_every)
    for k in range(1, n_steps + 1):
        y = rk4_step(f, y, cfg.dt)
        if not np.all(np.isfinite(y)):
            raise IntegrationError(k)
        if k % stride == 0 or k == n_steps:
            times.append(k * cfg.dt)
            samples.append(y.copy())
    arr = np.array(samples)
    return FullPhaseTrajectory(np.array(times), arr[:, 0], arr[:, 1:])

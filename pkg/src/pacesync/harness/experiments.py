"""Seeded sweep experiments: time to synchronisation, time to phase locking,
and the trapping curve, each as a function of a strength multiplier.

Every run ``k`` draws its initial phases (and natural frequencies, when they
are not identical) from its own substream of the experiment seed, so adding
runs never reshuffles earlier ones.  Within a sweep, run ``k`` reuses the same
draws for every multiplier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Literal, Sequence

import numpy as np
from numpy.typing import NDArray

from ..dynamics import IntegratorConfig, ModelParams, PhaseBatch, Trajectory, iterate_batch
from ..network import CouplingGraph, PacemakerCoupling, random_uniform_coupling
from ..phases import wrap_phase

FloatArray = NDArray[np.float64]

SYNC_THRESHOLD = 0.99
LOCK_TOL = 1e-3

ExperimentKind = Literal["sync_sweep", "locking_sweep", "trapping"]
SweepTarget = Literal["pacemaker", "coupling"]


@dataclass(frozen=True)
class RandomUniformCoupling:
    lo: float
    hi: float


@dataclass(frozen=True)
class ExperimentSpec:
    kind: ExperimentKind
    n: int
    coupling_source: FloatArray | RandomUniformCoupling
    base_g: FloatArray
    multipliers: tuple[float, ...] = tuple(float(m) for m in range(1, 11))
    sweep_target: SweepTarget = "pacemaker"
    runs: int = 100
    init_interval: tuple[float, float] = (-0.5 * math.pi, 0.5 * math.pi)
    # None means identical natural frequencies (every w_i == w0)
    natural_freq_interval: tuple[float, float] | None = None
    w0: float = 1.0
    seed: int = 0
    integrator: IntegratorConfig = field(default_factory=lambda: IntegratorConfig(0.01, 500.0, 1))
    sync_threshold: float = SYNC_THRESHOLD
    lock_tol: float = LOCK_TOL

    def __post_init__(self) -> None:
        if self.kind not in ("sync_sweep", "locking_sweep", "trapping"):
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.sweep_target not in ("pacemaker", "coupling"):
            raise ValueError(f"unknown sweep_target {self.sweep_target!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        g = np.array(self.base_g, dtype=np.float64).reshape(-1)
        if g.size != self.n:
            raise ValueError(f"base_g has {g.size} entries, expected {self.n}")
        object.__setattr__(self, "base_g", g)
        mult = tuple(float(m) for m in self.multipliers)
        if not mult or any(not (m > 0) for m in mult):
            raise ValueError("multipliers must be a non-empty list of positive numbers")
        object.__setattr__(self, "multipliers", mult)
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        _check_interval(self.init_interval, "init_interval")
        if self.natural_freq_interval is not None:
            lo, hi = self.natural_freq_interval
            if not lo <= hi:
                raise ValueError(f"natural_freq_interval must satisfy lo <= hi, got {self.natural_freq_interval}")
        if not isinstance(self.coupling_source, RandomUniformCoupling):
            a = np.array(self.coupling_source, dtype=np.float64)
            if a.shape != (self.n, self.n):
                raise ValueError(f"coupling matrix has shape {a.shape}, expected ({self.n}, {self.n})")
            object.__setattr__(self, "coupling_source", a)
        if self.seed < 0 or self.seed >= 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class MultiplierStats:
    multiplier: float
    mean_time: float | None
    std_time: float | None
    timeout_count: int
    blowup_count: int = 0


@dataclass(frozen=True)
class SweepResult:
    records: tuple[MultiplierStats, ...]
    # raw_times[i][k]: multiplier i, run k; None marks a timeout
    raw_times: tuple[tuple[float | None, ...], ...]

    @property
    def mean_times(self) -> list[float | None]:
        return [rec.mean_time for rec in self.records]


@dataclass(frozen=True)
class TrappingRecord:
    multiplier: float
    max_final_relative_phase: float


@dataclass(frozen=True)
class TrappingResult:
    records: tuple[TrappingRecord, ...]

    @property
    def values(self) -> list[float]:
        return [rec.max_final_relative_phase for rec in self.records]


def _check_interval(interval: tuple[float, float], name: str) -> None:
    lo, hi = interval
    if not (-math.pi <= lo <= hi <= math.pi):
        raise ValueError(f"{name} must satisfy -pi <= lo <= hi <= pi, got ({lo}, {hi})")


# -- random streams ---------------------------------------------------------

_GRAPH_STREAM = 2**32 - 1


def run_rng(seed: int, run_index: int) -> np.random.Generator:
    """Independent PCG64 substream for one run."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(run_index,)))


def graph_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(_GRAPH_STREAM,)))


def sample_initial_phases(n: int, interval: tuple[float, float], rng: np.random.Generator) -> FloatArray:
    """n i.i.d. draws from U(lo, hi)."""
    _check_interval(interval, "interval")
    lo, hi = interval
    if lo == hi:
        return np.full(n, float(lo))
    return rng.uniform(lo, hi, size=n)


def resolve_coupling(spec: ExperimentSpec) -> CouplingGraph:
    src = spec.coupling_source
    if isinstance(src, RandomUniformCoupling):
        return random_uniform_coupling(spec.n, src.lo, src.hi, graph_rng(spec.seed))
    return CouplingGraph(src)


@dataclass(frozen=True)
class RunDraw:
    xi0: FloatArray
    w: FloatArray


def draw_runs(spec: ExperimentSpec) -> list[RunDraw]:
    draws = []
    for k in range(spec.runs):
        rng = run_rng(spec.seed, k)
        xi0 = sample_initial_phases(spec.n, spec.init_interval, rng)
        if spec.natural_freq_interval is None:
            w = np.full(spec.n, float(spec.w0))
        else:
            lo, hi = spec.natural_freq_interval
            w = rng.uniform(lo, hi, size=spec.n)
        draws.append(RunDraw(xi0, w))
    return draws


def _scaled_params(
    spec: ExperimentSpec, graph: CouplingGraph, draws: Sequence[RunDraw], multiplier: float
) -> list[ModelParams]:
    g = spec.base_g
    if spec.sweep_target == "pacemaker" or spec.kind == "trapping":
        pace = PacemakerCoupling(g * multiplier)
    else:
        pace = PacemakerCoupling(g)
        graph = graph.scaled(multiplier)
    return [ModelParams(graph, pace, spec.w0, d.w) for d in draws]


# -- event detection ---------------------------------------------------------

def time_to_sync(traj: Trajectory, threshold: float = SYNC_THRESHOLD) -> float | None:
    """First sample time with r >= threshold, or None on timeout."""
    hit = np.flatnonzero(traj.r >= threshold)
    return float(traj.times[hit[0]]) if hit.size else None


def time_to_lock(traj: Trajectory, tol: float = LOCK_TOL) -> float | None:
    """First sample time with max_i |zeta_i| < tol, or None on timeout."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    hit = np.flatnonzero(np.max(np.abs(traj.zeta), axis=1) < tol)
    return float(traj.times[hit[0]]) if hit.size else None


def first_event_times(
    params: Sequence[ModelParams],
    xi0: FloatArray,
    cfg: IntegratorConfig,
    event: Literal["sync", "lock"],
    threshold: float,
) -> tuple[list[float | None], dict[int, int]]:
    """Integrate a batch and return each row's first event time.

    Stops as soon as every row has either hit its event or diverged.  The
    per-sample tests are exactly those of :func:`time_to_sync` and
    :func:`time_to_lock`.
    """
    batch = PhaseBatch(params)
    blown: dict[int, int] = {}
    times = np.full(batch.size, np.nan)
    pending = np.ones(batch.size, dtype=bool)
    for _, t, x in iterate_batch(batch, xi0, cfg, blown=blown):
        if event == "sync":
            hit = batch.order_parameter(t, x) >= threshold
        else:
            hit = np.max(np.abs(batch.rhs(x)), axis=1) < threshold
        new = hit & pending
        times[new] = t
        pending &= ~hit
        if blown:
            pending[list(blown)] = False
        if not pending.any():
            break
    out = [None if math.isnan(v) else float(v) for v in times]
    return out, blown


def _aggregate(multiplier: float, times: Sequence[float | None], blowups: int) -> MultiplierStats:
    done = np.array([t for t in times if t is not None], dtype=np.float64)
    timeouts = len(times) - done.size
    if done.size == 0:
        return MultiplierStats(multiplier, None, None, timeouts, blowups)
    return MultiplierStats(multiplier, float(done.mean()), float(done.std()), timeouts, blowups)


def run_sweep(spec: ExperimentSpec) -> SweepResult:
    """Mean time to synchronisation or phase locking for each multiplier."""
    if spec.kind not in ("sync_sweep", "locking_sweep"):
        raise ValueError(f"run_sweep handles sync_sweep / locking_sweep, got {spec.kind!r}")
    graph = resolve_coupling(spec)
    draws = draw_runs(spec)
    xi0 = np.stack([d.xi0 for d in draws])
    event = "sync" if spec.kind == "sync_sweep" else "lock"
    threshold = spec.sync_threshold if event == "sync" else spec.lock_tol
    records, raw = [], []
    for m in spec.multipliers:
        params = _scaled_params(spec, graph, draws, m)
        times, blown = first_event_times(params, xi0, spec.integrator, event, threshold)
        records.append(_aggregate(m, times, len(blown)))
        raw.append(tuple(times))
    return SweepResult(tuple(records), tuple(raw))


def final_relative_phases(
    params: Sequence[ModelParams], xi0: FloatArray, cfg: IntegratorConfig
) -> FloatArray:
    """Wrapped relative phases at t_max for every row; diverged rows are NaN."""
    batch = PhaseBatch(params)
    last = None
    for _, _, x in iterate_batch(batch, xi0, replace(cfg, record_every=max(cfg.n_steps, 1)), blown={}):
        last = x
    return wrap_phase(last)


def run_trapping(spec: ExperimentSpec) -> TrappingResult:
    """Worst-case |xi_i(t_max)| over runs and nodes, per pacemaker multiplier."""
    if spec.kind != "trapping":
        raise ValueError(f"run_trapping needs kind='trapping', got {spec.kind!r}")
    if np.any(spec.base_g <= 0):
        raise ValueError("trapping requires every base pacemaker strength to be positive")
    graph = resolve_coupling(spec)
    draws = draw_runs(spec)
    xi0 = np.stack([d.xi0 for d in draws])
    params: list[ModelParams] = []
    for m in spec.multipliers:
        params.extend(_scaled_params(spec, graph, draws, m))
    final = final_relative_phases(params, np.tile(xi0, (len(spec.multipliers), 1)), spec.integrator)
    per_row = np.max(np.abs(final), axis=1).reshape(len(spec.multipliers), spec.runs)
    # a diverged run counts as untrapped
    worst = np.where(np.isnan(per_row).any(axis=1), math.inf, np.nanmax(per_row, axis=1, initial=0.0))
    return TrappingResult(tuple(TrappingRecord(m, float(v)) for m, v in zip(spec.multipliers, worst)))


# -- experiment presets --------------------------------------------------------

# Pacemaker frequency for the non-identical experiments: the centre of the
# natural-frequency interval (0, 1).  With w0 = 1 every offset w_i - w0 is
# negative and a single pinned node can never absorb their sum, so no
# phase-locked state would exist.
NONIDENTICAL_W0 = 0.5


def figure_presets(runs: int = 100, seed: int = 2024) -> dict[str, ExperimentSpec]:
    """Standard nine-node sweep set-ups, keyed by experiment name.

    ``*_single`` pins only node 1 (strength 1, or 3 for coupling sweeps);
    ``*_all`` pins every node.  Couplings are U[0, 0.1] on every pair.
    """
    n = 9
    single = np.zeros(n)
    single[0] = 1.0
    every = np.ones(n)
    coupling = RandomUniformCoupling(0.0, 0.1)
    sweep_cfg = IntegratorConfig(0.01, 500.0, 1)
    trap_cfg = IntegratorConfig(0.01, 1000.0, 1)
    half, quarter, full = 0.5 * math.pi, 0.25 * math.pi, math.pi
    common = dict(n=n, coupling_source=coupling, runs=runs, seed=seed, integrator=sweep_cfg)
    ident = dict(natural_freq_interval=None, w0=1.0)
    nonid = dict(natural_freq_interval=(0.0, 1.0), w0=NONIDENTICAL_W0)
    return {
        "sync_pacemaker_single": ExperimentSpec("sync_sweep", base_g=single, init_interval=(-half, half), **common, **ident),
        "sync_pacemaker_all": ExperimentSpec("sync_sweep", base_g=every, init_interval=(-full, full), **common, **ident),
        "sync_coupling_single": ExperimentSpec("sync_sweep", base_g=3 * single, sweep_target="coupling", init_interval=(-half, half), **common, **ident),
        "sync_coupling_all": ExperimentSpec("sync_sweep", base_g=3 * every, sweep_target="coupling", init_interval=(-full, full), **common, **ident),
        "lock_pacemaker_single": ExperimentSpec("locking_sweep", base_g=single, init_interval=(-quarter, quarter), **common, **nonid),
        "lock_pacemaker_all": ExperimentSpec("locking_sweep", base_g=every, init_interval=(-half, half), **common, **nonid),
        "lock_coupling_single": ExperimentSpec("locking_sweep", base_g=3 * single, sweep_target="coupling", init_interval=(-quarter, quarter), **common, **nonid),
        "lock_coupling_all": ExperimentSpec("locking_sweep", base_g=3 * every, sweep_target="coupling", init_interval=(-half, half), **common, **nonid),
        "trapping": ExperimentSpec(
            "trapping", n=n, coupling_source=coupling, base_g=every, runs=runs, seed=seed,
            init_interval=(-full, full), integrator=trap_cfg, **nonid,
        ),
    }

"""JSON experiment configuration.

Recognised keys::

    n, coupling (matrix | {"random_uniform": [lo, hi]}), g (vector), w0,
    w (vector | "identical" | {"uniform": [lo, hi]}),
    xi0 (vector | {"uniform": [lo, hi]}), dt, t_max, record_every, kind,
    sweep_target, multipliers, runs, seed, delta, epsilon_override,
    phi0, sync_threshold, lock_tol
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from ..dynamics import IntegratorConfig, ModelParams
from ..network import CouplingGraph, PacemakerCoupling
from .experiments import (
    LOCK_TOL,
    SYNC_THRESHOLD,
    ExperimentSpec,
    RandomUniformCoupling,
    draw_runs,
    resolve_coupling,
)

SWEEP_T_MAX = 500.0
TRAP_T_MAX = 1000.0


class ConfigError(ValueError):
    def __init__(self, field: str, problem: str):
        self.field = field
        super().__init__(f"config field '{field}': {problem}")


@dataclass(frozen=True)
class SingleRunConfig:
    params: ModelParams
    xi0: np.ndarray
    integrator: IntegratorConfig
    epsilon_override: float | None = None
    delta: float | None = None


def load_config(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError("--config", f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("--config", f"invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError("--config", "top level must be a JSON object")
    return data


def _number(cfg: dict, key: str, default: Any = None, *, required: bool = False) -> float | None:
    if key not in cfg:
        if required:
            raise ConfigError(key, "missing")
        return default
    val = cfg[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val):
        raise ConfigError(key, f"expected a finite number, got {val!r}")
    return float(val)


def _int(cfg: dict, key: str, default: int | None = None, *, required: bool = False) -> int | None:
    val = _number(cfg, key, default, required=required)
    if val is None:
        return None
    if val != int(val):
        raise ConfigError(key, f"expected an integer, got {cfg[key]!r}")
    return int(val)


def _vector(cfg: dict, key: str, n: int) -> np.ndarray:
    val = cfg[key]
    try:
        arr = np.array(val, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ConfigError(key, f"expected a list of {n} numbers") from exc
    if arr.shape != (n,) or not np.all(np.isfinite(arr)):
        raise ConfigError(key, f"expected a list of {n} finite numbers, got shape {arr.shape}")
    return arr


def _pair(val: Any, key: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in val)
    except (TypeError, ValueError) as exc:
        raise ConfigError(key, f"expected [lo, hi], got {val!r}") from exc
    if not lo <= hi:
        raise ConfigError(key, f"expected lo <= hi, got [{lo}, {hi}]")
    return lo, hi


def _tagged_pair(val: Any, key: str, tag: str) -> tuple[float, float] | None:
    if isinstance(val, dict):
        if set(val) != {tag}:
            raise ConfigError(key, f"expected {{\"{tag}\": [lo, hi]}}, got keys {sorted(val)}")
        return _pair(val[tag], key)
    return None


def _n(cfg: dict) -> int:
    n = _int(cfg, "n", required=True)
    if n < 1:
        raise ConfigError("n", "must be >= 1")
    return n


def _coupling_source(cfg: dict, n: int):
    if "coupling" not in cfg:
        raise ConfigError("coupling", "missing")
    val = cfg["coupling"]
    pair = _tagged_pair(val, "coupling", "random_uniform")
    if pair is not None:
        if pair[0] < 0:
            raise ConfigError("coupling", "random_uniform bounds must be non-negative")
        return RandomUniformCoupling(*pair)
    try:
        a = np.array(val, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ConfigError("coupling", "expected an n x n matrix") from exc
    if a.shape != (n, n):
        raise ConfigError("coupling", f"expected shape ({n}, {n}), got {a.shape}")
    try:
        CouplingGraph(a)
    except ValueError as exc:
        raise ConfigError("coupling", str(exc)) from exc
    return a


def _g(cfg: dict, n: int) -> np.ndarray:
    if "g" not in cfg:
        raise ConfigError("g", "missing")
    g = _vector(cfg, "g", n)
    if np.any(g < 0):
        raise ConfigError("g", "pacemaker strengths must be non-negative")
    return g


def _freq_interval(cfg: dict) -> tuple[float, float] | None:
    val = cfg.get("w", "identical")
    if val == "identical":
        return None
    pair = _tagged_pair(val, "w", "uniform")
    if pair is None:
        raise ConfigError("w", "sweeps take \"identical\" or {\"uniform\": [lo, hi]}")
    return pair


def _integrator(cfg: dict, default_t_max: float) -> IntegratorConfig:
    dt = _number(cfg, "dt", 0.01)
    t_max = _number(cfg, "t_max", default_t_max)
    every = _int(cfg, "record_every", 1)
    if not dt > 0:
        raise ConfigError("dt", "must be positive")
    if not t_max >= dt:
        raise ConfigError("t_max", "must be >= dt")
    if every < 1:
        raise ConfigError("record_every", "must be >= 1")
    return IntegratorConfig(dt, t_max, every)


def _seed(cfg: dict, override: int | None) -> int:
    if override is not None:
        seed = override
    else:
        seed = _int(cfg, "seed", 0)
    if not 0 <= seed < 2**64:
        raise ConfigError("seed", "must be an unsigned 64-bit integer")
    return seed


def _interval(cfg: dict, key: str, default: tuple[float, float]) -> tuple[float, float]:
    val = cfg.get(key)
    if val is None:
        return default
    pair = _tagged_pair(val, key, "uniform")
    if pair is None:
        raise ConfigError(key, "sweeps take {\"uniform\": [lo, hi]}")
    if not (-math.pi <= pair[0] and pair[1] <= math.pi):
        raise ConfigError(key, "interval must lie within [-pi, pi]")
    return pair


def experiment_from_config(cfg: dict, seed_override: int | None = None) -> ExperimentSpec:
    kind = cfg.get("kind")
    if kind not in ("sync_sweep", "locking_sweep", "trapping"):
        raise ConfigError("kind", f"expected sync_sweep, locking_sweep or trapping, got {kind!r}")
    n = _n(cfg)
    target = cfg.get("sweep_target", "pacemaker")
    if target not in ("pacemaker", "coupling"):
        raise ConfigError("sweep_target", f"expected pacemaker or coupling, got {target!r}")
    mult = cfg.get("multipliers", list(range(1, 11)))
    if not isinstance(mult, list) or not mult or any(
        isinstance(m, bool) or not isinstance(m, (int, float)) or not m > 0 for m in mult
    ):
        raise ConfigError("multipliers", "expected a non-empty list of positive numbers")
    runs = _int(cfg, "runs", 100)
    if runs < 1:
        raise ConfigError("runs", "must be >= 1")
    half = 0.5 * math.pi
    try:
        return ExperimentSpec(
            kind=kind,
            n=n,
            coupling_source=_coupling_source(cfg, n),
            base_g=_g(cfg, n),
            multipliers=tuple(float(m) for m in mult),
            sweep_target=target,
            runs=runs,
            init_interval=_interval(cfg, "xi0", (-half, half)),
            natural_freq_interval=_freq_interval(cfg),
            w0=_number(cfg, "w0", 1.0),
            seed=_seed(cfg, seed_override),
            integrator=_integrator(cfg, TRAP_T_MAX if kind == "trapping" else SWEEP_T_MAX),
            sync_threshold=_number(cfg, "sync_threshold", SYNC_THRESHOLD),
            lock_tol=_number(cfg, "lock_tol", LOCK_TOL),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(kind, str(exc)) from exc


def single_run_from_config(cfg: dict, seed_override: int | None = None) -> SingleRunConfig:
    """Concrete model and initial state; random entries come from run 0's stream."""
    n = _n(cfg)
    seed = _seed(cfg, seed_override)
    w0 = _number(cfg, "w0", 1.0)
    w_val = cfg.get("w", "identical")
    w_interval = None if w_val == "identical" else _tagged_pair(w_val, "w", "uniform")
    xi_val = cfg.get("xi0")
    if xi_val is None:
        raise ConfigError("xi0", "missing")
    xi_interval = _tagged_pair(xi_val, "xi0", "uniform")
    try:
        spec = ExperimentSpec(
            kind="sync_sweep",
            n=n,
            coupling_source=_coupling_source(cfg, n),
            base_g=_g(cfg, n),
            runs=1,
            init_interval=xi_interval if xi_interval is not None else (0.0, 0.0),
            natural_freq_interval=w_interval,
            w0=w0,
            seed=seed,
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("xi0", str(exc)) from exc
    draw = draw_runs(spec)[0]
    if xi_interval is None:
        xi0 = _vector(cfg, "xi0", n)
    else:
        xi0 = draw.xi0
    if w_val == "identical":
        w = np.full(n, w0)
    elif w_interval is not None:
        w = draw.w
    else:
        w = _vector(cfg, "w", n)
    params = ModelParams(
        resolve_coupling(spec), PacemakerCoupling(spec.base_g), w0, w, _number(cfg, "phi0", 0.0)
    )
    eps = _number(cfg, "epsilon_override")
    if eps is not None and not 0 <= eps < math.pi:
        raise ConfigError("epsilon_override", "must lie in [0, pi)")
    delta = _number(cfg, "delta")
    if delta is not None and not 0 < delta < math.pi:
        raise ConfigError("delta", "must lie in (0, pi)")
    return SingleRunConfig(params, xi0, _integrator(cfg, SWEEP_T_MAX), eps, delta)

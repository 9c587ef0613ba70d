"""Experiment protocols, configuration and CSV output."""

from .config import ConfigError, experiment_from_config, load_config, single_run_from_config
from .experiments import (
    ExperimentSpec,
    MultiplierStats,
    RandomUniformCoupling,
    SweepResult,
    TrappingRecord,
    TrappingResult,
    draw_runs,
    figure_presets,
    first_event_times,
    graph_rng,
    run_rng,
    run_sweep,
    run_trapping,
    sample_initial_phases,
    time_to_lock,
    time_to_sync,
)

__all__ = [
    "ConfigError",
    "ExperimentSpec",
    "MultiplierStats",
    "RandomUniformCoupling",
    "SweepResult",
    "TrappingRecord",
    "TrappingResult",
    "draw_runs",
    "experiment_from_config",
    "figure_presets",
    "first_event_times",
    "graph_rng",
    "load_config",
    "run_rng",
    "run_sweep",
    "run_trapping",
    "sample_initial_phases",
    "single_run_from_config",
    "time_to_lock",
    "time_to_sync",
]

"""Acceptance gate: one recorded PASS/FAIL line per criterion.

Run on its own with ``pytest tests/test_acceptance.py -rA``; the summary
block at the end lists every criterion.
"""

import math

import numpy as np
import pytest

from pacesync.analysis import (
    alpha1,
    fit_decay_rate,
    sinc,
    solve_epsilon0,
    symmetric_eigen_extremes,
    sync_threshold,
    tail_window,
    trapping_threshold,
)
from pacesync.dynamics import (
    IntegratorConfig,
    ModelParams,
    PhaseBatch,
    integrate,
    integrate_full_phase,
    integrate_many,
    relative_phase_rhs,
    relative_phase_rhs_matrix,
)
from pacesync.harness.experiments import (
    NONIDENTICAL_W0,
    ExperimentSpec,
    RandomUniformCoupling,
    draw_runs,
    figure_presets,
    final_relative_phases,
    first_event_times,
    resolve_coupling,
    run_sweep,
    run_trapping,
)
from pacesync.network import CouplingGraph, PacemakerCoupling

from oracles import eig2_closed_form, eig3_cubic_roots, random_connected_coupling, random_symmetric_coupling, scalar_rhs

PI = math.pi
N = 9
SEED = 2024


def seeded_network(seed, interval, freq=None, w0=1.0):
    """Random U[0, 0.1] connected graph plus one draw of xi(0) (and w)."""
    spec = ExperimentSpec(
        "sync_sweep", n=N, coupling_source=RandomUniformCoupling(0.0, 0.1), base_g=np.zeros(N),
        runs=1, init_interval=interval, natural_freq_interval=freq, w0=w0, seed=seed,
    )
    draw = draw_runs(spec)[0]
    return resolve_coupling(spec), draw.xi0, draw.w


def mostly_non_increasing(means, rel=0.02):
    """At most one rise, and that rise no more than ``rel`` of the preceding mean."""
    if any(m is None for m in means):
        return False
    rises = [(a, b) for a, b in zip(means, means[1:]) if b > a]
    return len(rises) <= 1 and all(b - a <= rel * a for a, b in rises)


def fmt_means(means):
    return "[" + ", ".join("-" if m is None else f"{m:.3g}" for m in means) + "]"


# -- 1 and 2: single pinned node, half-circle start ------------------------------------

@pytest.fixture(scope="module")
def half_circle_runs():
    runs = []
    for k in range(50):
        graph, xi0, _ = seeded_network(SEED + k, (-PI / 2, PI / 2))
        g = np.zeros(N)
        g[0] = 1.0
        runs.append((ModelParams(graph, PacemakerCoupling(g), 1.0, np.ones(N)), xi0))
    params = [p for p, _ in runs]
    trajs = integrate_many(params, np.stack([x for _, x in runs]), IntegratorConfig(0.01, 500.0, 10))
    return runs, trajs


def test_c1_single_pacemaker_synchronises(acceptance, half_circle_runs):
    _, trajs = half_circle_runs
    synced = sum(bool(np.any(t.r >= 0.99)) for t in trajs)
    worst = max(float(np.max(np.abs(t.xi[-1]))) for t in trajs)
    ok = synced == len(trajs) and worst < 1e-3
    acceptance.record("1", ok, f"{synced}/{len(trajs)} reach r>=0.99, max|xi(500)| = {worst:.2e} (< 1e-3)")
    assert ok


def test_c2_decay_rate_above_floor(acceptance, half_circle_runs):
    runs, trajs = half_circle_runs
    ratios = []
    for (p, xi0), traj in zip(runs, trajs):
        a1 = alpha1(p, float(np.max(np.abs(xi0)))).value
        alpha_hat, _ = fit_decay_rate(traj, tail_window(traj))
        ratios.append(alpha_hat / a1)
    worst = min(ratios)
    ok = worst >= 0.95
    acceptance.record("2", ok, f"min alpha_hat/alpha1 over {len(ratios)} runs = {worst:.3f} (>= 0.95)")
    assert ok


# -- 3: monotonicity in pacemaker strength ----------------------------------------------

def test_c3_alpha1_monotone_in_g(acceptance):
    rng = np.random.default_rng(SEED)
    worst = math.inf
    for _ in range(100):
        n = int(rng.integers(2, 10))
        a = random_connected_coupling(rng, n, 0.1 * rng.uniform(1, 10))
        g = rng.uniform(0, 2, n) * (rng.random(n) < 0.5)
        eps = rng.uniform(0, PI / 2)
        base = alpha1(ModelParams.identical(a, g), eps).value
        i = int(rng.integers(n))
        for delta in (0.1, 1.0, 10.0):
            g2 = g.copy()
            g2[i] += delta
            worst = min(worst, alpha1(ModelParams.identical(a, g2), eps).value - base)
    ok = worst >= -1e-8
    acceptance.record("3", ok, f"min change in alpha1 after raising one g_i = {worst:.2e} (>= -1e-8)")
    assert ok


# -- 4: two-node counterexample ----------------------------------------------------------

def test_c4_counterexample_never_returns(acceptance):
    kappas = (1.0, 10.0, 100.0)
    params = [ModelParams.identical([[0, k], [k, 0]], [k, 0]) for k in kappas]
    xi0 = np.tile([-0.6 * PI, 0.6 * PI], (len(kappas), 1))
    trajs = integrate_many(params, xi0, IntegratorConfig(0.5 / max(kappas), 1000.0, 200))
    final = [abs(float(t.xi[-1, 1])) for t in trajs]
    ok = all(v > 0.1 for v in final)
    detail = ", ".join(f"kappa={k:g}: |xi_2(1000)|={v:.4f}" for k, v in zip(kappas, final))
    acceptance.record("4", ok, detail + " (> 0.1)")
    assert ok


# -- 5: every node pinned, full-circle start ----------------------------------------------

def _sync_fraction(scale):
    params, xi0 = [], []
    for k in range(50):
        graph, x0, _ = seeded_network(SEED + 100 + k, (-PI, PI))
        probe = ModelParams.identical(graph.a, np.zeros(N))
        g = scale * sync_threshold(probe, float(np.max(np.abs(x0))))
        params.append(ModelParams.identical(graph.a, np.full(N, g)))
        xi0.append(x0)
    g_max = max(p.pacemaker.g_max for p in params)
    cfg = IntegratorConfig(min(0.01, 0.5 / g_max), 500.0, 1)
    times, blown = first_event_times(params, np.stack(xi0), cfg, "sync", 0.99)
    return sum(t is not None for t in times), len(times), blown


def test_c5_wide_start_above_threshold(acceptance):
    synced, total, blown = _sync_fraction(1.1)
    low_synced, low_total, _ = _sync_fraction(0.5)
    ok = synced == total and not blown
    acceptance.record(
        "5", ok,
        f"g = 1.1 x threshold: {synced}/{total} synchronise; "
        f"g = 0.5 x threshold (recorded only): failure fraction {1 - low_synced / low_total:.2f}",
    )
    assert ok


# -- 6: trapping region ----------------------------------------------------------------------

def test_c6_trapping_within_delta(acceptance):
    delta = 0.1
    params, xi0 = [], []
    for k in range(20):
        graph, x0, w = seeded_network(SEED + 200 + k, (-PI / 2, PI / 2), (0.0, 1.0), NONIDENTICAL_W0)
        probe = ModelParams(graph, PacemakerCoupling(np.ones(N)), NONIDENTICAL_W0, w)
        g = 1.05 * trapping_threshold(probe, float(np.max(np.abs(x0))), delta)
        params.append(ModelParams(graph, PacemakerCoupling(np.full(N, g)), NONIDENTICAL_W0, w))
        xi0.append(x0)
    g_max = max(p.pacemaker.g_max for p in params)
    final = final_relative_phases(params, np.stack(xi0), IntegratorConfig(min(0.01, 0.5 / g_max), 1000.0, 1))
    worst = float(np.max(np.abs(final)))
    ok = worst <= delta
    acceptance.record("6", ok, f"max_i |xi_i(1000)| over 20 runs = {worst:.4f} (<= 0.1)")
    assert ok


# -- 7: sweep shapes --------------------------------------------------------------------------

SWEEPS = [
    "sync_pacemaker_single",
    "sync_pacemaker_all",
    "lock_pacemaker_single",
    "lock_pacemaker_all",
    "sync_coupling_single",
    "lock_coupling_single",
]


@pytest.mark.slow
@pytest.mark.parametrize("name", SWEEPS)
def test_c7_sweep_curves_non_increasing(acceptance, name):
    spec = figure_presets(runs=100, seed=SEED)[name]
    res = run_sweep(spec)
    ok = mostly_non_increasing(res.mean_times)
    timeouts = [r.timeout_count for r in res.records]
    acceptance.record(f"7.{SWEEPS.index(name) + 1}", ok, f"{name} means {fmt_means(res.mean_times)} timeouts {timeouts}")
    assert ok


# -- 8: trapping curve ---------------------------------------------------------------------------

@pytest.mark.slow
def test_c8_trapping_curve_decreasing(acceptance):
    spec = figure_presets(runs=20, seed=SEED)["trapping"]
    vals = run_trapping(spec).values
    ok = all(b < a or abs(b - a) <= 1e-4 for a, b in zip(vals, vals[1:]))
    acceptance.record("8", ok, "max final |xi| by multiplier " + fmt_means(vals))
    assert ok


# -- 9: independent-route agreement -------------------------------------------------------------

def test_c9_oracle_equivalence(acceptance):
    rng = np.random.default_rng(SEED)
    eig_err = 0.0
    for _ in range(100):
        m2 = rng.uniform(-3, 3, (2, 2))
        m2 = m2 + m2.T
        eig_err = max(eig_err, np.max(np.abs(np.subtract(symmetric_eigen_extremes(m2), eig2_closed_form(m2)))))
        m3 = rng.uniform(-3, 3, (3, 3))
        m3 = m3 + m3.T
        roots = eig3_cubic_roots(m3)
        eig_err = max(eig_err, np.max(np.abs(np.subtract(symmetric_eigen_extremes(m3), (roots[0], roots[-1])))))

    rhs_err = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 10))
        a = random_symmetric_coupling(rng, n, density=rng.uniform(0.2, 1.0), scale=2.0)
        g = rng.uniform(0, 3, n)
        p = ModelParams(CouplingGraph(a), PacemakerCoupling(g), 0.5, rng.uniform(-1, 2, n))
        xi = rng.uniform(-PI, PI, n)
        ref = np.array(scalar_rhs(xi, p.omega, g, a))
        for got in (relative_phase_rhs(xi, p), relative_phase_rhs_matrix(xi, p), PhaseBatch([p]).rhs(xi[None])[0]):
            rhs_err = max(rhs_err, float(np.max(np.abs(got - ref))))

    co_err = 0.0
    for _ in range(5):
        a = random_connected_coupling(rng, N, 0.1)
        p = ModelParams(CouplingGraph(a), PacemakerCoupling(rng.uniform(0.5, 2, N)), 1.0, rng.uniform(0, 1, N), 0.3)
        xi0 = rng.uniform(-PI / 2, PI / 2, N)
        cfg = IntegratorConfig(0.01, 100.0, 10)
        rel = integrate(p, xi0, cfg)
        full = integrate_full_phase(p, p.phi0_init + xi0, cfg)
        co_err = max(co_err, float(np.max(np.abs(full.phi - full.phi0[:, None] - rel.xi))))

    ok = eig_err <= 1e-8 and rhs_err <= 1e-12 and co_err < 1e-6
    acceptance.record(
        "9", ok,
        f"eigen vs polynomial roots {eig_err:.1e} (<= 1e-8); component vs matrix RHS {rhs_err:.1e} (<= 1e-12); "
        f"absolute vs relative phases {co_err:.1e} (< 1e-6)",
    )
    assert ok


# -- 10: constants ---------------------------------------------------------------------------------

def test_c10_constants(acceptance):
    c = solve_epsilon0()
    ok = (
        abs(c.epsilon0 - 2.2467045) <= 1e-6
        and abs(c.sinc_2eps0 - (-0.2172336)) <= 1e-6
        and abs(c.sinc_2eps0 - math.cos(2 * c.epsilon0)) <= 1e-10
        and abs(float(sinc(2 * c.epsilon0)) - c.sinc_2eps0) <= 1e-15
    )
    acceptance.record(
        "10", ok,
        f"eps0 = {c.epsilon0:.10f}, sinc(2 eps0) = {c.sinc_2eps0:.10f}, "
        f"|sinc(2 eps0) - cos(2 eps0)| = {abs(c.sinc_2eps0 - math.cos(2 * c.epsilon0)):.1e}",
    )
    assert ok

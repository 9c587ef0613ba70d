"""Command line entry point.

    pacesync simulate --config run.json --out traj.csv
    pacesync bounds   --config run.json [--out bounds.csv]
    pacesync check    --config run.json
    pacesync sweep    --config sync_sweep.json --out sweep.csv
    pacesync trap     --config trapping.json --out trap.csv

Exit codes: 0 success, 1 configuration error, 2 numerical abort.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from contextlib import contextmanager
from typing import Sequence, TextIO

from .analysis import (
    bound_in_regime,
    check_locking_condition,
    check_sync_condition,
    check_trapping_condition,
    condition_for,
    epsilon_of,
)
from .dynamics import IntegrationError, integrate
from .harness import csvio
from .harness.config import ConfigError, experiment_from_config, load_config, single_run_from_config
from .harness.experiments import run_sweep, run_trapping

log = logging.getLogger("pacesync")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2


def _seed(value: str) -> int:
    seed = int(value, 0)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pacesync", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "simulate": "integrate one trajectory and write it as CSV",
        "bounds": "rate bounds alpha1..alpha4 with their conditions",
        "check": "sufficient-condition verdicts only",
        "sweep": "time-to-sync / time-to-lock sweep over strength multipliers",
        "trap": "maximal final relative phase per pacemaker multiplier",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True, help="JSON configuration file")
        p.add_argument("--out", help="output CSV path (default: stdout)")
        p.add_argument("--seed", type=_seed, help="override the config seed")
        p.add_argument("--quiet", action="store_true", help="suppress progress messages")
    return parser


@contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _epsilon(run) -> float:
    return run.epsilon_override if run.epsilon_override is not None else epsilon_of(run.xi0)


def _bound_rows(run):
    eps = _epsilon(run)
    return [(k, eps, bound_in_regime(k, run.params, eps), condition_for(k, run.params, eps))
            for k in ("alpha1", "alpha2", "alpha3", "alpha4")]


def _print_bounds_table(rows, out: TextIO) -> None:
    out.write(f"{'kind':<8}{'epsilon':>12}{'value':>14}{'valid':>8}{'margin':>14}  binding_term\n")
    for kind, eps, bound, verdict in rows:
        value = f"{bound.value:.6g}" if bound else "-"
        valid = str(bound.valid).lower() if bound else "false"
        margin = f"{verdict.margin:.6g}" if verdict else "-"
        term = verdict.binding_term if verdict else "out_of_regime"
        out.write(f"{kind:<8}{eps:>12.6g}{value:>14}{valid:>8}{margin:>14}  {term}\n")


def _verdicts(run):
    eps = _epsilon(run)
    out = []
    if run.params.identical_frequencies and eps < math.pi:
        out.append(check_sync_condition(run.params, eps))
    if eps < 0.5 * math.pi:
        out.append(check_locking_condition(run.params, eps))
    if run.delta is not None and eps < math.pi:
        out.append(check_trapping_condition(run.params, eps, run.delta))
    return out


def _run(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    if args.command in ("simulate", "bounds", "check"):
        run = single_run_from_config(cfg, args.seed)
        if args.command == "simulate":
            traj = integrate(run.params, run.xi0, run.integrator)
            with _output(args.out) as fh:
                csvio.write_trajectory(traj, fh)
            log.info("wrote %d samples", len(traj))
        elif args.command == "bounds":
            rows = _bound_rows(run)
            if args.out:
                with _output(args.out) as fh:
                    csvio.write_bounds(rows, fh)
            if not args.quiet or not args.out:
                _print_bounds_table(rows, sys.stdout)
        else:
            with _output(args.out) as fh:
                csvio.write_verdicts(_verdicts(run), fh)
        return EXIT_OK

    spec = experiment_from_config(cfg, args.seed)
    if args.command == "sweep":
        if spec.kind == "trapping":
            raise ConfigError("kind", "use the 'trap' subcommand for trapping experiments")
        log.info("running %s: %d multipliers x %d runs", spec.kind, len(spec.multipliers), spec.runs)
        result = run_sweep(spec)
        with _output(args.out) as fh:
            csvio.write_sweep(result, fh)
    else:
        if spec.kind != "trapping":
            raise ConfigError("kind", "the 'trap' subcommand needs kind = trapping")
        log.info("running trapping: %d multipliers x %d runs", len(spec.multipliers), spec.runs)
        result = run_trapping(spec)
        with _output(args.out) as fh:
            csvio.write_trapping(result, fh)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(message)s")
    try:
        return _run(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

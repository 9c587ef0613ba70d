"""CSV writers.  Every file has a header row; timeouts are empty fields."""

from __future__ import annotations

import csv
import io
import math
from typing import Iterable, Sequence, TextIO

from ..analysis import ConditionVerdict, RateBound
from ..dynamics import Trajectory
from .experiments import SweepResult, TrappingResult


def fmt(x: float | None) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return f"{x:.9g}"


def _writer(out: TextIO):
    return csv.writer(out, lineterminator="\n")


def write_trajectory(traj: Trajectory, out: TextIO) -> None:
    n = traj.n
    w = _writer(out)
    w.writerow(["t", *(f"xi_{i}" for i in range(1, n + 1)), *(f"zeta_{i}" for i in range(1, n + 1)), "r"])
    for k in range(len(traj)):
        w.writerow([fmt(traj.times[k]), *map(fmt, traj.xi[k]), *map(fmt, traj.zeta[k]), fmt(traj.r[k])])


def write_sweep(result: SweepResult, out: TextIO) -> None:
    w = _writer(out)
    w.writerow(["multiplier", "mean_time", "std_time", "timeouts"])
    for rec in result.records:
        w.writerow([fmt(rec.multiplier), fmt(rec.mean_time), fmt(rec.std_time), rec.timeout_count])


def write_trapping(result: TrappingResult, out: TextIO) -> None:
    w = _writer(out)
    w.writerow(["multiplier", "max_final_relative_phase"])
    for rec in result.records:
        w.writerow([fmt(rec.multiplier), fmt(rec.max_final_relative_phase)])


BoundRow = tuple[str, float, "RateBound | None", "ConditionVerdict | None"]


def write_bounds(rows: Iterable[BoundRow], out: TextIO) -> None:
    w = _writer(out)
    w.writerow(["kind", "epsilon", "value", "valid", "margin", "binding_term"])
    for kind, eps, bound, verdict in rows:
        w.writerow([
            kind,
            fmt(eps),
            fmt(bound.value) if bound else "",
            str(bound.valid).lower() if bound else "false",
            fmt(verdict.margin) if verdict else "",
            verdict.binding_term if verdict else "out_of_regime",
        ])


def write_verdicts(verdicts: Sequence[ConditionVerdict], out: TextIO) -> None:
    w = _writer(out)
    w.writerow(["theorem", "holds", "margin", "binding_term"])
    for v in verdicts:
        w.writerow([v.theorem, str(v.holds).lower(), fmt(v.margin), v.binding_term])


def to_text(writer, obj) -> str:
    buf = io.StringIO()
    writer(obj, buf)
    return buf.getvalue()

"""Run orchestration, output files and the refinement harness."""

from __future__ import annotations

import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from ..diagnostics.bounds import bound_summary
from ..diagnostics.records import RUN_COLUMNS
from ..errors import ConfigurationError, MetricDegeneracyError, NumericError
from ..evolution import evolve, picard_solve, sup_y_distance
from ..fields import norm_X0
from ..grid import build_grid, interpolate
from .config import FORMAT_VERSION, RunConfig
from .initial_data import initial_slice

log = logging.getLogger(__name__)

SNAPSHOT_COLUMNS = ("r", "h", "h_bar", "dh_dr", "g", "g_tilde", "F", "G")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DEGENERATE = 2
EXIT_NUMERIC = 3
EXIT_NOT_CONVERGED = 4


def _fmt(x: float) -> str:
    if not math.isfinite(x):
        raise NumericError(f"refusing to write non-finite value {x!r}")
    return format(float(x), ".17g")


def _header(cfg: RunConfig, extra: list[str] | None = None) -> list[str]:
    lines = [f"# bondi_ekg output, format_version = {FORMAT_VERSION}"]
    lines += [f"# {line}" for line in cfg.echo().splitlines()]
    lines += [f"# {line}" for line in (extra or [])]
    return lines


def write_run_csv(path, records, cfg: RunConfig, partial: bool = False) -> int:
    """One row per ``output_every`` steps plus the final step; returns the row count."""
    every = cfg.solver.output_every
    chosen = [r for i, r in enumerate(records) if i % every == 0]
    if records and (len(records) - 1) % every != 0:
        chosen.append(records[-1])
    extra = ["status = partial (run halted)"] if partial else []
    lines = _header(cfg, extra) + [",".join(RUN_COLUMNS)]
    for rec in chosen:
        d = rec.as_dict()
        lines.append(",".join(_fmt(d[c]) for c in RUN_COLUMNS))
    Path(path).write_text("\n".join(lines) + "\n")
    return len(chosen)


def write_snapshot(path, s, m, cfg: RunConfig) -> None:
    cols = (s.grid.nodes, s.h, s.h_bar, s.dh_dr, m.g, m.g_tilde, m.F, m.G)
    lines = _header(cfg, [f"u = {_fmt(s.u)}"]) + [",".join(SNAPSHOT_COLUMNS)]
    for row in zip(*cols):
        lines.append(",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path) -> tuple[list[str], np.ndarray]:
    """Header names and data of a run or snapshot CSV (comment lines skipped)."""
    with open(path) as fh:
        rows = [ln for ln in fh.read().splitlines() if ln and not ln.startswith("#")]
    names = rows[0].split(",")
    data = np.array([[float(x) for x in ln.split(",")] for ln in rows[1:]]).reshape(-1, len(names))
    return names, data


def _write_json(path, payload) -> None:
    Path(path).write_text(json.dumps(_clean(payload), indent=2, sort_keys=True) + "\n")


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj) if math.isfinite(obj) else None
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _persist_trajectory(traj, cfg: RunConfig, out: Path, partial: bool) -> None:
    write_run_csv(out / "run.csv", traj.records, cfg, partial=partial)
    snap_dir = out / "snapshots"
    snap_dir.mkdir(exist_ok=True)
    for i, (s, m) in enumerate(zip(traj.slices, traj.metrics)):
        write_snapshot(snap_dir / f"snapshot_{i:04d}.csv", s, m, cfg)


def _failure_record(exc: Exception, stage: str) -> dict:
    rec = {"status": "failed", "stage": stage, "error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, MetricDegeneracyError):
        rec.update(u=exc.u, min_gtilde=exc.min_gtilde, floor=exc.floor)
    return rec


def run(cfg: RunConfig, output_dir=None) -> int:
    """Execute one configured run and write its outputs; returns the exit status.

    Writes ``run.csv``, ``snapshots/snapshot_XXXX.csv`` and ``summary.json``;
    on failure also ``failure.json`` next to whatever partial output exists.
    """
    out = Path(output_dir or cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    grid = build_grid(cfg.r_max, cfg.n)
    s0 = initial_slice(cfg.initial, grid, cfg.solver.k)
    d = norm_X0(s0, cfg.solver.k)
    summary: dict = {"format_version": FORMAT_VERSION, "mode": cfg.mode, "x0_norm": d,
                     "config": cfg.to_dict()}
    status = EXIT_OK
    traj = None

    if cfg.mode in ("evolve", "both"):
        try:
            traj = evolve(s0, cfg.solver, cfg.potential, store_every=cfg.snapshot_every)
        except MetricDegeneracyError as exc:
            if exc.trajectory is not None:
                _persist_trajectory(exc.trajectory, cfg, out, partial=True)
            _write_json(out / "failure.json", _failure_record(exc, "evolve"))
            summary.update(status="failed", wall_time_s=time.perf_counter() - t0)
            _write_json(out / "summary.json", summary)
            log.error("%s", exc)
            return EXIT_DEGENERATE
        _persist_trajectory(traj, cfg, out, partial=False)
        recs = traj.records
        summary["evolve"] = {
            "steps": len(recs) - 1,
            "u_final": traj.final.u,
            "x_norm_emp": recs[-1].x_norm_emp,
            "final_y_weight_max": recs[-1].y_weight_max,
            "final_dh_weight_max": recs[-1].dh_weight_max,
            "min_gtilde": traj.min_gtilde,
            "max_residuals": {c: max(getattr(r, c) for r in recs) for c in RUN_COLUMNS[3:]},
        }

    if cfg.mode in ("picard", "both"):
        res = picard_solve(s0, cfg.solver, cfg.potential)
        pic = {
            "iterations": res.iterations,
            "ratios": res.ratios,
            "differences": res.differences,
            "converged": res.converged,
        }
        if res.converged and traj is not None and cfg.mode == "both":
            # same u-grid as the Picard iterate so the slices pair up
            full = evolve(s0, cfg.solver, cfg.potential,
                          u_grid=res.trajectory.u_values, store_every=1)
            pic["sup_y_distance_to_evolve"] = sup_y_distance(res.trajectory, full, cfg.solver.k)
        summary["picard"] = pic
        if not res.converged:
            fail = (_failure_record(res.failure, "picard") if res.failure is not None else
                    {"status": "failed", "stage": "picard", "error": "NotConverged",
                     "message": f"no convergence in {res.iterations} iterations"})
            fail["ratios"] = res.ratios
            fail["differences"] = res.differences
            _write_json(out / "failure.json", fail)
            status = EXIT_DEGENERATE if res.failure is not None else EXIT_NOT_CONVERGED

    x = cfg.bound_x
    if x is None:
        x = summary.get("evolve", {}).get("x_norm_emp", d)
    summary["bounds"] = bound_summary(x, cfg.bound_params(d))
    summary["status"] = "ok" if status == EXIT_OK else "failed"
    summary["wall_time_s"] = time.perf_counter() - t0
    _write_json(out / "summary.json", summary)
    return status


# -- refinement harness ----------------------------------------------------------


class HarnessError(RuntimeError):
    def __init__(self, message: str, report: "ConvergenceReport"):
        super().__init__(message)
        self.report = report


@dataclass
class ConvergenceReport:
    """Pairwise self-convergence orders over ``n, 2n, 4n, ...``."""

    levels: list = field(default_factory=list)
    h_differences: list = field(default_factory=list)
    h_orders: list = field(default_factory=list)
    residual_max: dict = field(default_factory=dict)
    residual_orders: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return _clean(asdict(self))


def _order(a: float, b: float) -> float:
    if a > 0.0 and b > 0.0:
        return math.log2(a / b)
    return float("nan")


def convergence_harness(cfg: RunConfig, levels: int = 3, output_dir=None) -> ConvergenceReport:
    """Run at ``n * 2^i`` for ``i < levels`` and estimate convergence orders.

    Final slices are compared on the coarsest nodes (finer levels are read
    off with cubic interpolation).
    """
    if int(levels) != levels or levels < 3:
        raise ConfigurationError(f"convergence harness needs levels >= 3, got {levels}")
    report = ConvergenceReport()
    finals = []
    for i in range(levels):
        n = cfg.n * 2**i
        grid = build_grid(cfg.r_max, n)
        s0 = initial_slice(cfg.initial, grid, cfg.solver.k)
        try:
            traj = evolve(s0, cfg.solver, cfg.potential, store_every=10**9)
        except (MetricDegeneracyError, NumericError) as exc:
            raise HarnessError(f"level n={n} failed: {exc}", report) from exc
        report.levels.append(n)
        finals.append(traj.final)
        for c in RUN_COLUMNS[3:]:
            report.residual_max.setdefault(c, []).append(max(getattr(r, c) for r in traj.records))
        log.info("level n=%d done (%d steps)", n, len(traj.records) - 1)
    coarse = finals[0].grid.nodes
    on_coarse = [interpolate(f.h, coarse, f.grid) for f in finals]
    report.h_differences = [float(np.max(np.abs(a - b))) for a, b in zip(on_coarse, on_coarse[1:])]
    report.h_orders = [_order(a, b) for a, b in zip(report.h_differences, report.h_differences[1:])]
    report.residual_orders = {
        c: [_order(a, b) for a, b in zip(v, v[1:])] for c, v in report.residual_max.items()
    }
    if output_dir is not None:
        out = Path(output_dir)
        out.mkdir(parents=True, exist_ok=True)
        _write_json(out / "convergence.json", report.as_dict())
    return report

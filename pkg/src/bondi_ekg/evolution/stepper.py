"""Semi-Lagrangian characteristic stepper and the evolution driver.

Along an ingoing characteristic ``dr/du = -g_tilde/2`` the evolution
equation is the ODE ``dh/du = S`` with

    S = a (h - h_bar) + b,
    a = (g - g_tilde) / (2 r) + 4 pi g r V(h_bar),
    b = (g r / 2) V'(h_bar).

One step traces every new node back to its foot on the old slice,
interpolates there, and integrates S with a trapezoidal predictor-corrector.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..diagnostics.monitors import du_h_from, slice_weighted_sups
from ..diagnostics.records import DiagnosticsRecord
from ..diagnostics.residuals import (
    ddu_weights,
    residual_ij,
    residual_rr,
    supplementary_from,
    wave_residual_from,
)
from ..errors import ContractViolation, MetricDegeneracyError
from ..fields import FieldSlice, make_slice, norm_X_slicewise
from ..grid import RadialGrid, stencil
from ..metric import MetricSlice, compute_metric, minkowski
from .config import SolverConfig

log = logging.getLogger(__name__)

FOUR_PI = 4.0 * np.pi


# -- right-hand side ---------------------------------------------------------


def source_coefficients(s: FieldSlice, m: MetricSlice, spec, potential_terms: bool = True):
    """``(a, b)`` with ``S = a (h - h_bar) + b``; both vanish at the axis."""
    r = s.grid.nodes[1:]
    a = np.zeros(s.grid.n)
    b = np.zeros(s.grid.n)
    a[1:] = (m.g[1:] - m.g_tilde[1:]) / (2.0 * r)
    if potential_terms and not spec.massless:
        hb = s.h_bar[1:]
        a[1:] += FOUR_PI * m.g[1:] * r * spec.V(hb)
        b[1:] = 0.5 * m.g[1:] * r * spec.dV(hb)
    return a, b


def rhs_Dh(s: FieldSlice, m: MetricSlice, spec, potential_terms: bool = True) -> np.ndarray:
    """Nodewise source of ``D h = S``; zero at ``r = 0``."""
    a, b = source_coefficients(s, m, spec, potential_terms)
    return a * (s.h - s.h_bar) + b


def characteristic_speed(metric: MetricSlice, floor: float = 0.0) -> np.ndarray:
    """``dr/du = -g_tilde/2`` at every node."""
    lowest = float(np.min(metric.g_tilde))
    if not lowest > floor:
        raise MetricDegeneracyError(float("nan"), lowest, floor)
    return -0.5 * np.asarray(metric.g_tilde)


def metric_for(s: FieldSlice, config: SolverConfig, spec) -> MetricSlice:
    if config.frozen_metric:
        return minkowski(s.grid)
    return compute_metric(s, spec, config.gtilde_floor)


def cfl_step(m: MetricSlice, grid: RadialGrid, config: SolverConfig) -> float:
    return config.cfl * grid.spacing / float(np.max(0.5 * m.g_tilde))


# -- one step ----------------------------------------------------------------


class _FootSampler:
    """Interpolation at a fixed set of feet; beyond r_max the decay law applies."""

    def __init__(self, feet: np.ndarray, grid: RadialGrid, order: int, u: float, k: float):
        self.idx, self.w = stencil(grid, np.minimum(feet, grid.r_max), order)
        self.beyond = feet > grid.r_max
        self.tail = None
        if np.any(self.beyond):
            self.tail = ((1.0 + grid.r_max + u) / (1.0 + feet[self.beyond] + u)) ** (k - 1.0)

    def __call__(self, values: np.ndarray, decay: bool = True) -> np.ndarray:
        picked = values[self.idx]
        out = picked[:, 0] * self.w[:, 0]
        for c in range(1, self.w.shape[1]):
            out += picked[:, c] * self.w[:, c]
        if decay and self.tail is not None:
            out[self.beyond] = values[-1] * self.tail
        return out


def advance(h_n, S_n, c_n, u_n: float, du: float, predictor, grid: RadialGrid,
            k: float, order: int) -> np.ndarray:
    """Generic predictor-corrector step along characteristics.

    ``c_n`` and ``S_n`` are the (positive) inward speed and the source on
    the old slice; ``predictor(h_star)`` returns the same pair on the new
    slice evaluated from the Euler predictor.
    """
    r = grid.nodes
    # predictor foot: midpoint rule with the old speed
    r_mid = r + 0.5 * du * c_n
    foot = r + du * _FootSampler(r_mid, grid, order, u_n, k)(c_n, decay=False)
    old = _FootSampler(foot, grid, order, u_n, k)
    h_star = old(h_n) + du * old(S_n)
    c_star, S_star = predictor(h_star)
    # corrector foot: midpoint in r, average of old and predicted speeds
    for _ in range(2):
        at_mid = _FootSampler(0.5 * (r + foot), grid, order, u_n, k)
        foot = r + 0.5 * du * (at_mid(c_n, decay=False) + at_mid(c_star, decay=False))
    old = _FootSampler(foot, grid, order, u_n, k)
    return old(h_n) + 0.5 * du * (old(S_n) + S_star)


def step_pair(s: FieldSlice, m: MetricSlice, du: float, config: SolverConfig, spec,
              u_new: float | None = None):
    """Advance ``(slice, metric)`` by ``du``; two metric solves per step.

    ``u_new`` pins the label of the new slice (avoids drift when landing
    on a prescribed time); it defaults to ``s.u + du``.
    """
    if not du > 0.0:
        raise ContractViolation(f"step size must be positive, got {du}")
    grid = s.grid
    u_new = s.u + du if u_new is None else float(u_new)

    def predictor(h_star):
        s_star = make_slice(u_new, h_star, grid)
        m_star = metric_for(s_star, config, spec)
        return 0.5 * m_star.g_tilde, rhs_Dh(s_star, m_star, spec, config.potential_terms)

    S_n = rhs_Dh(s, m, spec, config.potential_terms)
    h_new = advance(s.h, S_n, 0.5 * m.g_tilde, s.u, du, predictor, grid,
                    config.k, config.interp_order)
    s_new = make_slice(u_new, h_new, grid)
    return s_new, metric_for(s_new, config, spec)


def step(s: FieldSlice, config: SolverConfig, spec, du: float | None = None) -> FieldSlice:
    """One CFL-limited step (or a step of the given ``du``)."""
    m = metric_for(s, config, spec)
    if du is None:
        du = cfl_step(m, s.grid, config)
    return step_pair(s, m, du, config, spec)[0]


# -- trajectory ----------------------------------------------------------------


@dataclass(eq=False)
class Trajectory:
    """Stored slices with their metrics, plus one diagnostics record per step."""

    grid: RadialGrid
    config: SolverConfig
    spec: object
    slices: list = field(default_factory=list)
    metrics: list = field(default_factory=list)
    records: list = field(default_factory=list)
    failure: MetricDegeneracyError | None = None

    def append(self, s: FieldSlice, m: MetricSlice):
        if self.slices and not s.u > self.slices[-1].u:
            raise ContractViolation(f"u must increase: {s.u} after {self.slices[-1].u}")
        self.slices.append(s)
        self.metrics.append(m)

    def __len__(self) -> int:
        return len(self.slices)

    @property
    def u_values(self) -> np.ndarray:
        return np.array([s.u for s in self.slices])

    @property
    def final(self) -> FieldSlice:
        return self.slices[-1]

    @property
    def min_gtilde(self) -> float:
        if self.records:
            return min(r.min_gtilde for r in self.records)
        return min(float(np.min(m.g_tilde)) for m in self.metrics)


class _Recorder:
    """Builds diagnostics records from a rolling window of three slices."""

    def __init__(self, traj: Trajectory):
        self.traj = traj
        self.window: list[tuple[FieldSlice, MetricSlice]] = []
        self.seen = 0
        self.x_run = 0.0

    def push(self, s, m):
        self.window.append((s, m))
        self.seen += 1
        if len(self.window) == 3:
            if self.seen == 3:
                self._record(0)
            self._record(1)
            self.window.pop(0)

    def finish(self):
        w = len(self.window)
        if self.seen < 3:
            for at in range(w):
                self._record(at)
        else:
            self._record(w - 1)

    def _record(self, at: int):
        spec, k = self.traj.spec, self.traj.config.k
        s, m = self.window[at]
        if len(self.window) > 1:
            wts = ddu_weights([x[0].u for x in self.window], at)
            h_u = sum(wj * x[0].h for wj, x in zip(wts, self.window))
            phi_u = sum(wj * x[0].h_bar for wj, x in zip(wts, self.window))
            G_u = sum(wj * x[1].G for wj, x in zip(wts, self.window))
            wave = wave_residual_from(s, m, phi_u, spec)
            supp = supplementary_from(s, m, phi_u, G_u, spec)
            duh = du_h_from(h_u, s)
        else:
            wave, supp, duh = 0.0, (0.0, 0.0), 0.0
        hw, dhw = slice_weighted_sups(s, k)
        self.x_run = max(self.x_run, norm_X_slicewise(s, k))
        self.traj.records.append(DiagnosticsRecord(
            u=s.u,
            x_norm_emp=self.x_run,
            y_weight_max=hw,
            dh_weight_max=dhw,
            min_gtilde=float(np.min(m.g_tilde)),
            res_rr=residual_rr(m, s),
            res_ij=residual_ij(m, s, spec),
            res_supp00=supp[0],
            res_supp01=supp[1],
            res_wave=wave,
            du_h_max_weighted=duh,
        ))


def _check_schedule(u_grid, u_end: float) -> np.ndarray:
    u_grid = np.asarray(u_grid, dtype=np.float64)
    if u_grid.ndim != 1 or u_grid.size < 2 or u_grid[0] != 0.0 or np.any(np.diff(u_grid) <= 0):
        raise ContractViolation("u_grid must start at 0 and increase strictly")
    return u_grid


def next_step(u: float, du: float, u_end: float) -> tuple[float, float]:
    """``(du, u_new)`` clipped so the run lands on ``u_end``; a sliver under 1% is absorbed."""
    if u + du * 1.01 >= u_end:
        return u_end - u, u_end
    return du, u + du


def evolve(initial: FieldSlice, config: SolverConfig, spec, *, u_grid=None,
           store_every: int | None = None) -> Trajectory:
    """March from ``u = 0`` to ``config.u_end``.

    Slices are stored every ``store_every`` steps (default
    ``config.output_every``) and always at both ends; diagnostics are
    recorded at every step. With ``u_grid`` the step sizes follow that
    schedule instead of the CFL rule.

    On metric degeneracy the raised :class:`MetricDegeneracyError` carries
    the partial trajectory, which is also flagged via ``failure``.
    """
    if initial.u != 0.0:
        raise ContractViolation(f"evolution starts at u=0, got u={initial.u}")
    grid = initial.grid
    store_every = int(config.output_every if store_every is None else store_every)
    schedule = None if u_grid is None else _check_schedule(u_grid, config.u_end)
    u_end = config.u_end if schedule is None else float(schedule[-1])

    traj = Trajectory(grid=grid, config=config, spec=spec)
    rec = _Recorder(traj)
    try:
        m = metric_for(initial, config, spec)
    except MetricDegeneracyError as exc:
        exc.trajectory = traj
        traj.failure = exc
        raise
    s = initial
    traj.append(s, m)
    rec.push(s, m)
    n = 0
    du_fixed = cfl_step(m, grid, config)
    while s.u < u_end:
        if schedule is not None:
            u_new = float(schedule[n + 1])
            du = u_new - s.u
        else:
            du = cfl_step(m, grid, config) if config.adaptive else du_fixed
            du, u_new = next_step(s.u, du, u_end)
        try:
            s_new, m_new = step_pair(s, m, du, config, spec, u_new)
        except MetricDegeneracyError as exc:
            rec.finish()
            if traj.slices[-1] is not s:
                traj.append(s, m)
            traj.failure = exc
            exc.trajectory = traj
            log.warning("run halted: %s", exc)
            raise
        n += 1
        s, m = s_new, m_new
        rec.push(s, m)
        if n % store_every == 0:
            traj.append(s, m)
    rec.finish()
    if traj.slices[-1] is not s:
        traj.append(s, m)
    log.debug("evolved %d steps to u=%.6g", n, s.u)
    return traj

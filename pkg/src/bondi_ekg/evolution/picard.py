"""Picard iteration for the evolution equation.

One application of the map solves the *linear* transport problem whose
coefficients (speed, metric factors, ``h_bar``) are frozen from a candidate
trajectory; the fixed point of the map is the nonlinear solution.
"""

from __future__ import annotations

import logging
from typing import NamedTuple

import numpy as np

from ..errors import ContractViolation, MetricDegeneracyError, UndefinedRatioError
from ..fields import FieldSlice, make_slice, norm_Y_diff
from .config import SolverConfig
from .stepper import Trajectory, advance, cfl_step, metric_for, source_coefficients

log = logging.getLogger(__name__)


class PicardResult(NamedTuple):
    trajectory: Trajectory
    iterations: int
    ratios: list
    differences: list
    converged: bool
    failure: MetricDegeneracyError | None


def picard_schedule(initial: FieldSlice, config: SolverConfig, spec) -> np.ndarray:
    """Uniform u-grid on ``[0, u_end]`` from the CFL step of the initial slice."""
    du = cfl_step(metric_for(initial, config, spec), initial.grid, config)
    steps = int(np.ceil(config.u_end / du - 1e-9))
    return np.linspace(0.0, config.u_end, steps + 1)


def constant_extension(initial: FieldSlice, u_grid, config: SolverConfig, spec) -> Trajectory:
    """The initial slice repeated at every u of the schedule."""
    m0 = metric_for(initial, config, spec)
    traj = Trajectory(grid=initial.grid, config=config, spec=spec)
    traj.append(initial, m0)
    for u in u_grid[1:]:
        traj.append(make_slice(u, initial.h, initial.grid), m0)
    return traj


def picard_map(candidate: Trajectory, initial: FieldSlice, config: SolverConfig, spec
               ) -> Trajectory:
    """Solve the frozen-coefficient transport problem with ``F(0, r) = h(0, r)``.

    Uses the stepper's predictor-corrector on the candidate's u-grid; the
    speed and source coefficients at both ends of every step come from the
    candidate slices.
    """
    if len(candidate) < 2:
        raise ContractViolation("candidate trajectory needs at least two slices")
    if candidate.slices[0].u != 0.0:
        raise ContractViolation("candidate must start at u=0")
    grid = initial.grid
    coeffs = [source_coefficients(s, m, spec, config.potential_terms)
              for s, m in zip(candidate.slices, candidate.metrics)]
    out = Trajectory(grid=grid, config=config, spec=spec)
    cur = initial if initial.u == 0.0 else make_slice(0.0, initial.h, grid)
    out.append(cur, metric_for(cur, config, spec))
    for n in range(len(candidate) - 1):
        s_n, s_np = candidate.slices[n], candidate.slices[n + 1]
        (a_n, b_n), (a_np, b_np) = coeffs[n], coeffs[n + 1]
        c_np = 0.5 * candidate.metrics[n + 1].g_tilde

        def predictor(f_star, a=a_np, b=b_np, hb=s_np.h_bar, c=c_np):
            return c, a * (f_star - hb) + b

        S_n = a_n * (cur.h - s_n.h_bar) + b_n
        du = s_np.u - s_n.u
        f_new = advance(cur.h, S_n, 0.5 * candidate.metrics[n].g_tilde, s_n.u, du,
                        predictor, grid, config.k, config.interp_order)
        cur = make_slice(s_np.u, f_new, grid)
        out.append(cur, metric_for(cur, config, spec))
    return out


def sup_y_distance(t1: Trajectory, t2: Trajectory, k: float) -> float:
    """``sup_u`` of the slicewise Y distance; both trajectories share one u-grid."""
    if len(t1) != len(t2) or not np.array_equal(t1.u_values, t2.u_values):
        raise ContractViolation("trajectories are stored on different u-grids")
    return max(norm_Y_diff(a, b, k) for a, b in zip(t1.slices, t2.slices))


def picard_solve(initial: FieldSlice, config: SolverConfig, spec) -> PicardResult:
    """Iterate the map from the constant-in-u extension of ``initial``.

    Stops once the sup-Y difference of successive iterates is at most
    ``picard_tol``. Metric degeneracy or exhausting ``picard_max_iter``
    ends the iteration with ``converged=False``; nothing is raised.
    """
    differences: list[float] = []
    ratios: list[float] = []
    failure = None
    converged = False
    try:
        u_grid = picard_schedule(initial, config, spec)
        current = constant_extension(initial, u_grid, config, spec)
    except MetricDegeneracyError as exc:
        log.warning("initial slice is already degenerate: %s", exc)
        empty = Trajectory(grid=initial.grid, config=config, spec=spec)
        return PicardResult(empty, 0, ratios, differences, False, exc)
    for it in range(1, config.picard_max_iter + 1):
        try:
            new = picard_map(current, initial, config, spec)
        except MetricDegeneracyError as exc:
            failure = exc
            log.warning("Picard iteration %d hit metric degeneracy: %s", it, exc)
            break
        diff = sup_y_distance(new, current, config.k)
        if differences and differences[-1] > 0.0:
            ratios.append(diff / differences[-1])
        differences.append(diff)
        current = new
        log.info("Picard iteration %d: sup-Y difference %.3e", it, diff)
        if diff <= config.picard_tol:
            converged = True
            break
    return PicardResult(current, len(differences), ratios, differences, converged, failure)


def contraction_ratio(h1: Trajectory, h2: Trajectory, config: SolverConfig, spec) -> float:
    """``|F(h1) - F(h2)|_Y / |h1 - h2|_Y`` for two candidates with one initial slice."""
    if h1.grid.n != h2.grid.n or h1.grid.r_max != h2.grid.r_max:
        raise ContractViolation("candidates live on different grids")
    if not np.array_equal(h1.slices[0].h, h2.slices[0].h):
        raise ContractViolation("candidates must share their initial slice")
    denom = sup_y_distance(h1, h2, config.k)
    if denom == 0.0:
        raise UndefinedRatioError("identical candidates: contraction ratio undefined")
    initial = h1.slices[0]
    num = sup_y_distance(picard_map(h1, initial, config, spec),
                         picard_map(h2, initial, config, spec), config.k)
    return num / denom

"""Einstein-constraint and wave-equation residuals.

Every residual is reported as an L-infinity norm over a set of nodes.  The
slice-level kernels (``*_from``) take u-derivatives as arrays so the same
code serves both the on-the-fly monitor inside the stepper and the
trajectory-level entry points below.
"""

from __future__ import annotations

import numpy as np

from ..errors import InsufficientStencilError
from ..fields import FieldSlice, dphi_dr
from ..grid import derivative_r, second_derivative_r
from ..metric import MetricSlice

EIGHT_PI = 8.0 * np.pi
FOUR_PI = 4.0 * np.pi

#: residuals with explicit 1/r factors are reported on r >= this radius
AXIS_EXCLUSION = 0.25


def _linf(values: np.ndarray) -> float:
    if values.size == 0:
        return 0.0
    return float(np.max(np.abs(values)))


def residual_rr(metric: MetricSlice, s: FieldSlice) -> float:
    """``d_r(F+G) - 4 pi r (d_r phi)^2`` over interior nodes."""
    r = s.grid.nodes
    lhs = derivative_r(metric.F + metric.G, s.grid)
    res = lhs - FOUR_PI * r * dphi_dr(s) ** 2
    return _linf(res[1:-1])


def residual_ij(metric: MetricSlice, s: FieldSlice, spec) -> float:
    """``d_r(F-G) - [(e^{2G} - 1)/r + 8 pi r e^{2G} V(phi)]`` over interior nodes."""
    r = s.grid.nodes[1:-1]
    lhs = derivative_r(metric.F - metric.G, s.grid)[1:-1]
    e2g = np.exp(2.0 * metric.G[1:-1])
    rhs = (e2g - 1.0) / r + EIGHT_PI * r * e2g * spec.V(s.h_bar[1:-1])
    return _linf(lhs - rhs)


def wave_residual_from(s: FieldSlice, metric: MetricSlice, phi_u: np.ndarray, spec,
                       r_min: float = AXIS_EXCLUSION) -> float:
    """``box(phi) + V'(phi)`` on one slice given ``phi_u = d_u h_bar``.

    The d'Alembertian is the Bondi-coordinate one written with
    ``e^{-(F+G)} = 1/g`` and ``e^{-2G} = g_tilde/g``; ``d_r(F-G)`` is taken
    from the closed-form slope of ``g_tilde``.
    """
    grid = s.grid
    mask = grid.nodes >= max(r_min, grid.spacing)
    r = grid.nodes[mask]
    phi = s.h_bar
    phi_r = derivative_r(phi, grid)[mask]
    phi_rr = second_derivative_r(phi, grid)[mask]
    phi_ur = derivative_r(phi_u, grid)[mask]
    g = metric.g[mask]
    gt = metric.g_tilde[mask]
    fmg_r = metric.dgtilde_dr[mask] / gt
    box = -(2.0 / g) * (phi_ur + phi_u[mask] / r) + (gt / g) * (
        phi_rr + phi_r * (2.0 / r + fmg_r)
    )
    return _linf(box + spec.dV(phi[mask]))


def supplementary_from(s: FieldSlice, metric: MetricSlice, phi_u: np.ndarray,
                       G_u: np.ndarray, spec, r_min: float = AXIS_EXCLUSION) -> tuple[float, float]:
    """The {00} and {01} Einstein components evaluated as written.

    Both expressions contain a bare ``1/r^2`` that survives on Minkowski;
    that vacuum baseline is subtracted so vacuum reports ``(0, 0)``.
    Report-only quantities.
    """
    grid = s.grid
    mask = grid.nodes >= max(r_min, grid.spacing)
    r = grid.nodes[mask]
    F, G = metric.F[mask], metric.G[mask]
    G_r = derivative_r(metric.G, grid)[mask]
    phi = s.h_bar[mask]
    phi_r = dphi_dr(s)[mask]
    pu = phi_u[mask]
    e2fg = np.exp(2.0 * (F - G))
    baseline = 1.0 / r**2
    geometric = e2fg * (-(2.0 / r) * G_r + 1.0 / r**2)
    matter01 = EIGHT_PI * (0.5 * e2fg * phi_r**2 - np.exp(2.0 * F) * spec.V(phi))
    res01 = geometric + matter01 - baseline
    matter00 = matter01 + EIGHT_PI * (pu**2 - np.exp(F - G) * pu * phi_r)
    res00 = geometric + matter00 - (2.0 / r) * np.exp(F - G) * G_u[mask] - baseline
    return _linf(res00), _linf(res01)


# -- u-differencing over stored slices --------------------------------------


def ddu_weights(us, at: int) -> np.ndarray:
    """Lagrange weights for ``d/du`` at ``us[at]`` from the sample times ``us``.

    Three points give the second-order centred or one-sided formula on a
    non-uniform u-grid; two points give the first-order quotient.
    """
    us = np.asarray(us, dtype=np.float64)
    x = us[at]
    w = np.zeros(len(us))
    for j in range(len(us)):
        others = [m for m in range(len(us)) if m != j]
        denom = np.prod([us[j] - us[m] for m in others])
        # derivative of prod_{m != j} (x - u_m) at x
        num = 0.0
        for a in others:
            num += np.prod([x - us[m] for m in others if m != a])
        w[j] = num / denom
    return w


def _window(n_slices: int, index: int, require_both: bool) -> tuple[list[int], int]:
    if not 0 <= index < n_slices:
        raise InsufficientStencilError(f"slice index {index} outside [0, {n_slices - 1}]")
    if 0 < index < n_slices - 1:
        return [index - 1, index, index + 1], 1
    if require_both:
        raise InsufficientStencilError(f"slice {index} lacks a neighbour on one side")
    if n_slices < 2:
        raise InsufficientStencilError("u-difference needs at least two slices")
    if n_slices == 2:
        return [0, 1], index
    if index == 0:
        return [0, 1, 2], 0
    return [index - 2, index - 1, index], 2


def _ddu(arrays, us, at):
    w = ddu_weights(us, at)
    out = w[0] * arrays[0]
    for wj, a in zip(w[1:], arrays[1:]):
        out = out + wj * a
    return out


def residual_wave(traj, index: int, spec=None, r_min: float = AXIS_EXCLUSION) -> float:
    """Wave-equation residual at stored slice ``index`` (needs both u-neighbours)."""
    spec = traj.spec if spec is None else spec
    idx, at = _window(len(traj.slices), index, require_both=True)
    sl = [traj.slices[i] for i in idx]
    phi_u = _ddu([x.h_bar for x in sl], [x.u for x in sl], at)
    return wave_residual_from(traj.slices[index], traj.metrics[index], phi_u, spec, r_min)


def residual_supplementary(traj, index: int, spec=None,
                           r_min: float = AXIS_EXCLUSION) -> tuple[float, float]:
    """{00} and {01} residuals at stored slice ``index`` (needs both u-neighbours)."""
    spec = traj.spec if spec is None else spec
    idx, at = _window(len(traj.slices), index, require_both=True)
    sl = [traj.slices[i] for i in idx]
    us = [x.u for x in sl]
    phi_u = _ddu([x.h_bar for x in sl], us, at)
    G_u = _ddu([traj.metrics[i].G for i in idx], us, at)
    return supplementary_from(traj.slices[index], traj.metrics[index], phi_u, G_u, spec, r_min)

"""Field state on one null slice and the weighted sup norms.

``h = d/dr (r phi)`` is the evolved variable; the scalar field is recovered
as its running mean, ``phi = mean(h)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, ContractViolation, NumericError
from .grid import RadialGrid, cumulative_mean, derivative_r


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class FieldSlice:
    """``h(u, .)`` on the grid together with its cached mean and slope."""

    u: float
    h: np.ndarray
    h_bar: np.ndarray
    dh_dr: np.ndarray
    grid: RadialGrid


def make_slice(u: float, h: np.ndarray, grid: RadialGrid) -> FieldSlice:
    h = np.array(h, dtype=np.float64)
    if h.shape != (grid.n,):
        raise ContractViolation(f"h has shape {h.shape}, grid has {grid.n} nodes")
    if not np.all(np.isfinite(h)):
        raise NumericError(f"non-finite h on slice u={u}")
    return FieldSlice(
        u=float(u),
        h=_frozen(h),
        h_bar=_frozen(cumulative_mean(h, grid)),
        dh_dr=_frozen(derivative_r(h, grid)),
        grid=grid,
    )


def phi_from_h(s: FieldSlice) -> np.ndarray:
    """Scalar field values; this is just the cached mean of h."""
    return s.h_bar


def dphi_dr(s: FieldSlice) -> np.ndarray:
    """``(h - h_bar) / r`` with the axis value ``dh/dr(0) / 2``."""
    out = np.empty_like(s.h)
    out[1:] = (s.h[1:] - s.h_bar[1:]) / s.grid.nodes[1:]
    out[0] = 0.5 * s.dh_dr[0]
    return out


def _check_k(k: float) -> float:
    k = float(k)
    if not k >= 3.0:
        raise ConfigurationError(f"weight exponent k must lie in [3, inf), got {k}")
    return k


def weight(s: FieldSlice, power: float) -> np.ndarray:
    return (1.0 + s.grid.nodes + s.u) ** power


def norm_X_slicewise(s: FieldSlice, k: float) -> float:
    """Grid max of ``(1+r+u)^(k-1)|h| + (1+r+u)^k |dh/dr|`` on one slice."""
    k = _check_k(k)
    base = 1.0 + s.grid.nodes + s.u
    return float(np.max(base ** (k - 1.0) * np.abs(s.h) + base**k * np.abs(s.dh_dr)))


def norm_X0(s: FieldSlice, k: float) -> float:
    """Initial-data norm ``d``; only defined on the u = 0 slice."""
    if s.u != 0.0:
        raise ContractViolation(f"X0 norm needs the initial slice, got u={s.u}")
    return norm_X_slicewise(s, k)


def norm_Y_diff(a: FieldSlice, b: FieldSlice, k: float) -> float:
    """Grid max of ``(1+r+u)^(k-1) |h_a - h_b|``."""
    k = _check_k(k)
    if a.u != b.u:
        raise ContractViolation(f"slices at different u: {a.u} vs {b.u}")
    if a.grid is not b.grid and a.grid.n != b.grid.n:
        raise ContractViolation("slices live on different grids")
    return float(np.max(weight(a, k - 1.0) * np.abs(a.h - b.h)))


@dataclass(frozen=True)
class NormReport:
    x_norm: float
    x0_norm: float
    k: float


def norm_report(slices, k: float) -> NormReport:
    """Sup-over-u X norm of a slice sequence and the X0 norm of its first slice."""
    slices = list(slices)
    return NormReport(
        x_norm=max(norm_X_slicewise(s, k) for s in slices),
        x0_norm=norm_X0(slices[0], k),
        k=float(k),
    )

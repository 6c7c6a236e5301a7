"""Metric functionals reconstructed from one field slice.

``g = exp(F+G)`` and ``g_tilde = exp(F-G)`` are constraints, not evolved:
every slice gets its own :class:`MetricSlice` via :func:`compute_metric`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MetricDegeneracyError, NumericError
from .fields import FieldSlice
from .grid import cumulative_integral, cumulative_mean, tail_integrals

FOUR_PI = 4.0 * np.pi
EIGHT_PI = 8.0 * np.pi


def _frozen(a):
    a = np.asarray(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class MetricSlice:
    g: np.ndarray
    g_bar: np.ndarray
    g_tilde: np.ndarray
    F: np.ndarray
    G: np.ndarray
    dgtilde_dr: np.ndarray


def compute_g(s: FieldSlice) -> np.ndarray:
    """``g = exp(-4 pi int_r^rmax (h - h_bar)^2 / s ds)``."""
    r = s.grid.nodes
    w = np.zeros_like(s.h)
    w[1:] = (s.h[1:] - s.h_bar[1:]) ** 2 / r[1:]
    exponent = -FOUR_PI * tail_integrals(w, s.grid)
    if not np.all(np.isfinite(exponent)):
        raise NumericError(f"g exponent overflow at u={s.u}")
    # exact-zero integrand gives g == 1 exactly
    return np.exp(exponent)


def compute_gbar(g: np.ndarray, grid) -> np.ndarray:
    return cumulative_mean(g, grid)


def _potential_moment(g, s: FieldSlice, spec) -> np.ndarray:
    """``int_0^r s^2 g V(h_bar) ds``."""
    r = s.grid.nodes
    return cumulative_integral(r * r * g * spec.V(s.h_bar), s.grid)


def compute_gtilde(g: np.ndarray, s: FieldSlice, spec, g_bar=None) -> np.ndarray:
    """``g_tilde = g_bar + (8 pi / r) int_0^r s^2 g V(h_bar) ds``; ``g_tilde(0) = g(0)``."""
    if g_bar is None:
        g_bar = compute_gbar(g, s.grid)
    r = s.grid.nodes
    out = np.array(g_bar, dtype=np.float64)
    if not spec.massless:
        moment = _potential_moment(g, s, spec)
        out[1:] += EIGHT_PI * moment[1:] / r[1:]
    out[0] = g[0]
    return out


def compute_F_G(g: np.ndarray, g_tilde: np.ndarray, u: float = float("nan")):
    """Invert ``g = e^(F+G)``, ``g_tilde = e^(F-G)``."""
    if np.any(~(g > 0.0)):
        raise MetricDegeneracyError(u, float(np.min(g)), 0.0)
    if np.any(~(g_tilde > 0.0)):
        raise MetricDegeneracyError(u, float(np.min(g_tilde)), 0.0)
    lg, lgt = np.log(g), np.log(g_tilde)
    return 0.5 * (lg + lgt), 0.5 * (lg - lgt)


def dgtilde_dr(metric: MetricSlice, s: FieldSlice, spec) -> np.ndarray:
    """Closed-form radial slope of g_tilde (no differencing of g_tilde itself)."""
    return _dgtilde_dr(metric.g, metric.g_bar, s, spec)


def _dgtilde_dr(g, g_bar, s: FieldSlice, spec) -> np.ndarray:
    r = s.grid.nodes
    out = np.zeros_like(g)
    out[1:] = (g[1:] - g_bar[1:]) / r[1:]
    if not spec.massless:
        moment = _potential_moment(g, s, spec)
        out[1:] += -EIGHT_PI * moment[1:] / r[1:] ** 2 + EIGHT_PI * r[1:] * g[1:] * spec.V(s.h_bar[1:])
    out[0] = 0.0
    return out


def compute_metric(s: FieldSlice, spec, gtilde_floor: float = 1e-8) -> MetricSlice:
    """All metric functionals of one slice; halts below the g_tilde floor."""
    g = compute_g(s)
    g_bar = compute_gbar(g, s.grid)
    g_tilde = compute_gtilde(g, s, spec, g_bar=g_bar)
    lowest = float(np.min(g_tilde))
    if not lowest > gtilde_floor:
        raise MetricDegeneracyError(s.u, lowest, gtilde_floor)
    F, G = compute_F_G(g, g_tilde, s.u)
    return MetricSlice(
        g=_frozen(g),
        g_bar=_frozen(g_bar),
        g_tilde=_frozen(g_tilde),
        F=_frozen(F),
        G=_frozen(G),
        dgtilde_dr=_frozen(_dgtilde_dr(g, g_bar, s, spec)),
    )


def minkowski(grid) -> MetricSlice:
    one = np.ones(grid.n)
    zero = np.zeros(grid.n)
    return MetricSlice(*(_frozen(a.copy()) for a in (one, one, one, zero, zero, zero)))

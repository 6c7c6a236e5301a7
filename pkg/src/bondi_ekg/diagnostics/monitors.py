"""Decay and d_u h monitors over a trajectory."""

from __future__ import annotations

import numpy as np

from ..fields import weight
from .residuals import _ddu, _window


def slice_weighted_sups(s, k: float) -> tuple[float, float]:
    """``sup (1+r+u)^(k-1)|h|`` and ``sup (1+r+u)^k |d_r h|`` on one slice."""
    return (
        float(np.max(weight(s, k - 1.0) * np.abs(s.h))),
        float(np.max(weight(s, k) * np.abs(s.dh_dr))),
    )


def decay_monitor(traj, k: float | None = None):
    """Running suprema of the two decay weights and the per-u series.

    Uses the per-step records when ``k`` is the run's own exponent (every
    step is covered); otherwise recomputes from the stored slices.
    Returns ``(sup_h_weighted, sup_dh_weighted, series)`` with ``series``
    an ``(m, 3)`` array of ``u, h-weighted, dh-weighted``.
    """
    if k is None or (traj.records and float(k) == traj.config.k):
        series = np.array([(r.u, r.y_weight_max, r.dh_weight_max) for r in traj.records])
    else:
        series = np.array([(s.u, *slice_weighted_sups(s, k)) for s in traj.slices])
    if series.size == 0:
        return 0.0, 0.0, np.zeros((0, 3))
    return float(series[:, 1].max()), float(series[:, 2].max()), series


def du_h_from(h_u: np.ndarray, s) -> float:
    return float(np.max(weight(s, 2.0) * np.abs(h_u)))


def du_h_monitor(traj, index: int) -> float:
    """``sup (1+r+u)^2 |d_u h|`` at stored slice ``index``.

    Centred in u where both neighbours exist, second-order one-sided at
    the ends (first-order when only two slices are stored).
    """
    idx, at = _window(len(traj.slices), index, require_both=False)
    sl = [traj.slices[i] for i in idx]
    h_u = _ddu([x.h for x in sl], [x.u for x in sl], at)
    return du_h_from(h_u, traj.slices[index])


def du_h_series(traj) -> np.ndarray:
    return np.array([r.du_h_max_weighted for r in traj.records])

"""Initial profiles ``h(0, r)`` and the C1 plausibility screen."""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline

from ..errors import ConfigurationError
from ..fields import FieldSlice, make_slice
from ..grid import RadialGrid
from .config import InitialDataFamily

log = logging.getLogger(__name__)


def check_c1(values, tolerance: float = 0.25) -> tuple[bool, float]:
    """Second-difference screen for kinks and jumps in sampled data.

    Compares the largest change between consecutive first differences with
    the largest first difference. Smooth data sampled finely give a small
    ratio; a kink or a jump gives a ratio of order one. Constant data pass.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size < 3:
        return True, 0.0
    d = np.diff(values)
    scale = float(np.max(np.abs(d)))
    if scale == 0.0:
        return True, 0.0
    ratio = float(np.max(np.abs(np.diff(d)))) / scale
    return ratio <= tolerance, ratio


def gaussian_bump(r, amplitude: float, center: float, width: float):
    """``d0 r^2 exp(-(r - r0)^2 / sigma^2)``."""
    return amplitude * r**2 * np.exp(-((r - center) ** 2) / width**2)


def power_decay(r, amplitude: float, decay: float):
    """``d0 / (1 + r)^(k-1)``."""
    return amplitude / (1.0 + r) ** decay


def load_profile(path, grid: RadialGrid, tolerance: float) -> np.ndarray:
    """Two-column ``r, h`` samples, screened and spline-resampled onto the grid."""
    try:
        data = np.loadtxt(Path(path), delimiter=None, comments="#", ndmin=2)
    except (OSError, ValueError) as exc:
        raise ConfigurationError(f"cannot read initial data file {path}: {exc}") from exc
    if data.shape[1] != 2 or data.shape[0] < 4:
        raise ConfigurationError(f"{path}: need at least 4 rows of two columns (r, h)")
    r, h = data[:, 0], data[:, 1]
    if not np.all(np.isfinite(data)):
        raise ConfigurationError(f"{path}: non-finite samples")
    if np.any(np.diff(r) <= 0):
        raise ConfigurationError(f"{path}: radii must increase strictly")
    if r[0] > 0.0 or r[-1] < grid.r_max:
        raise ConfigurationError(f"{path}: samples cover [{r[0]}, {r[-1]}], need [0, {grid.r_max}]")
    ok, ratio = check_c1(h, tolerance)
    if not ok:
        raise ConfigurationError(
            f"{path}: data fail the C1 screen (second/first difference ratio {ratio:.3g} "
            f"> {tolerance})"
        )
    return CubicSpline(r, h)(grid.nodes)


def initial_profile(family: InitialDataFamily, grid: RadialGrid, k: float) -> np.ndarray:
    r = grid.nodes
    if family.kind == "gaussian-bump":
        h = gaussian_bump(r, family.amplitude, family.center, family.width)
    elif family.kind == "power-decay":
        decay = k - 1.0 if family.decay is None else family.decay
        h = power_decay(r, family.amplitude, decay)
    elif family.kind == "file":
        h = load_profile(family.path, grid, family.c1_tolerance)
    else:
        raise ConfigurationError(f"unknown initial data kind {family.kind!r}")
    # analytic families are smooth by construction; a failed screen on the
    # grid only means the profile is under-resolved
    ok, ratio = check_c1(h, family.c1_tolerance)
    if not ok:
        log.warning("initial profile is under-resolved on the grid (second/first difference "
                    "ratio %.3g > %g); consider a finer grid", ratio, family.c1_tolerance)
    return h


def initial_slice(family: InitialDataFamily, grid: RadialGrid, k: float) -> FieldSlice:
    return make_slice(0.0, initial_profile(family, grid, k), grid)

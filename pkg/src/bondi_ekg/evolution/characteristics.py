"""Backward tracing of ingoing characteristics through a stored trajectory."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ContractViolation
from ..grid import interpolate


@dataclass(frozen=True, eq=False)
class CharacteristicPath:
    """Samples ``(u_j, r_j)`` from ``u1`` down to 0 and the foot ``r(0)``.

    ``clipped`` is set when the path left ``[0, r_max]`` and was held at
    the boundary from then on.
    """

    samples: np.ndarray
    foot: float
    clipped: bool = False

    @property
    def u(self) -> np.ndarray:
        return self.samples[:, 0]

    @property
    def r(self) -> np.ndarray:
        return self.samples[:, 1]


def _gtilde_at(traj, u: float, r: float) -> float:
    """``g_tilde(u, r)``: linear in u between stored slices, cubic in r."""
    us = traj.u_values
    r = min(max(r, 0.0), traj.grid.r_max)
    j = int(np.clip(np.searchsorted(us, u, side="right") - 1, 0, len(us) - 2)) if len(us) > 1 else 0
    g0 = interpolate(traj.metrics[j].g_tilde, r, traj.grid)
    if len(us) == 1:
        return g0
    g1 = interpolate(traj.metrics[j + 1].g_tilde, r, traj.grid)
    theta = (u - us[j]) / (us[j + 1] - us[j])
    return (1.0 - theta) * g0 + theta * g1


def trace_characteristic(u1: float, r1: float, traj, max_substep: float | None = None
                         ) -> CharacteristicPath:
    """Integrate ``dr/du = -g_tilde/2`` backwards from ``(u1, r1)`` to ``u = 0``.

    Explicit midpoint rule on sub-intervals of at most ``max_substep``
    (default: one grid spacing) inside each stored u-interval.
    """
    us = traj.u_values
    if not us[0] <= u1 <= us[-1]:
        raise ContractViolation(f"u1={u1} outside stored range [{us[0]}, {us[-1]}]")
    if not 0.0 <= r1 <= traj.grid.r_max:
        raise ContractViolation(f"r1={r1} outside [0, {traj.grid.r_max}]")
    h = traj.grid.spacing if max_substep is None else float(max_substep)
    knots = np.concatenate([us[us < u1], [u1]])[::-1]
    samples = [(float(u1), float(r1))]
    r, clipped = float(r1), False
    for ub, ua in zip(knots[:-1], knots[1:]):
        m = max(1, int(np.ceil((ub - ua) / h)))
        edges = np.linspace(ub, ua, m + 1)
        for u_hi, u_lo in zip(edges[:-1], edges[1:]):
            du = u_hi - u_lo
            r_mid = r + 0.25 * du * _gtilde_at(traj, u_hi, r)
            r = r + 0.5 * du * _gtilde_at(traj, 0.5 * (u_hi + u_lo), r_mid)
            if r > traj.grid.r_max:
                r, clipped = traj.grid.r_max, True
        samples.append((float(ua), r))
    return CharacteristicPath(samples=np.array(samples), foot=r, clipped=clipped)

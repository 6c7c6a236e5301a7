from __future__ import annotations

import numpy as np
import pytest

from bondi_ekg import ContractViolation, PotentialSpec, build_grid, make_slice
from bondi_ekg.diagnostics import BoundParams, kappa
from bondi_ekg.evolution import SolverConfig, evolve, trace_characteristic
from bondi_ekg.fields import norm_X_slicewise


@pytest.fixture(scope="module")
def vacuum_traj():
    grid = build_grid(50.0, 256)
    return evolve(make_slice(0.0, np.zeros(grid.n), grid), SolverConfig(u_end=10.0),
                  PotentialSpec(), store_every=5)


@pytest.mark.parametrize("u1, r1", [(4.0, 0.0), (10.0, 3.0), (2.5, 17.2)])
def test_minkowski_straight_line(vacuum_traj, u1, r1):
    path = trace_characteristic(u1, r1, vacuum_traj)
    assert path.foot == pytest.approx(r1 + u1 / 2, abs=1e-12)
    assert path.u[0] == u1 and path.u[-1] == 0.0
    np.testing.assert_allclose(path.r, r1 + path.u[0] / 2 - path.u / 2 + 0 * path.u, atol=1e-12)


def test_initial_slice_is_a_single_point(vacuum_traj):
    path = trace_characteristic(0.0, 5.0, vacuum_traj)
    assert path.samples.shape == (1, 2) and path.foot == 5.0


def test_clipped_at_outer_boundary(vacuum_traj):
    path = trace_characteristic(10.0, 48.0, vacuum_traj)
    assert path.clipped and path.foot == 50.0


@pytest.mark.parametrize("u1, r1", [(11.0, 1.0), (-1.0, 1.0), (1.0, 51.0)])
def test_outside_range(vacuum_traj, u1, r1):
    with pytest.raises(ContractViolation):
        trace_characteristic(u1, r1, vacuum_traj)


def test_speed_lower_bound(default_run):
    # characteristics travel at least kappa(x)/2 per unit u
    params = BoundParams()
    x = max(norm_X_slicewise(s, 3.0) for s in default_run.slices[::50])
    lower = min(kappa(x, params), default_run.min_gtilde)
    for r1 in (0.0, 2.0, 10.0):
        path = trace_characteristic(8.0, r1, default_run)
        assert path.foot - r1 >= 0.5 * lower * 8.0 - 1e-9
        assert path.foot - r1 <= 4.0 + 1e-9
        assert np.all(np.diff(path.r) >= 0.0)

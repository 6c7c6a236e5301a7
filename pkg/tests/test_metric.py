from __future__ import annotations

import numpy as np
import pytest

from bondi_ekg import MetricDegeneracyError, PotentialSpec, build_grid, make_slice
from bondi_ekg.metric import (
    compute_F_G,
    compute_g,
    compute_gbar,
    compute_gtilde,
    compute_metric,
    minkowski,
)

QUARTIC = PotentialSpec()

# Oracles from scipy.integrate.quad (epsabs 1e-14) for h = 0.1 r exp(-r^2), r_max = 50,
# with V = -phi^4 / 4.  Frozen values; the grid below puts nodes on each radius.
G_ORACLE = {
    0.0: 0.9904124737746008,
    0.5: 0.993122315593925,
    1.0: 0.9948472841751141,
    2.0: 0.996335565875095,
    5.0: 0.9993781580785014,
}
GTILDE_ORACLE = {
    0.5: 0.9914586514253388,
    1.0: 0.9928728547503562,
    2.0: 0.9940787644042413,
    5.0: 0.9967011413201983,
}


@pytest.fixture(scope="module")
def oracle_slice():
    grid = build_grid(50.0, 2001)
    return make_slice(0.0, 0.1 * grid.nodes * np.exp(-grid.nodes**2), grid)


def _at(grid, r):
    i = int(round(r / grid.spacing))
    assert grid.nodes[i] == pytest.approx(r, abs=1e-12)
    return i


class TestVacuum:
    def test_exact_minkowski(self, grid):
        s = make_slice(0.0, np.zeros(grid.n), grid)
        m = compute_metric(s, QUARTIC)
        for name in ("g", "g_bar", "g_tilde"):
            assert np.all(getattr(m, name) == 1.0)
        for name in ("F", "G", "dgtilde_dr"):
            assert np.all(getattr(m, name) == 0.0)

    def test_constant_field_has_flat_g(self, grid):
        # h == h_bar for a constant profile, so no mass accumulates
        s = make_slice(0.0, np.full(grid.n, 0.01), grid)
        m = compute_metric(s, PotentialSpec(coupling=0.0))
        assert np.all(m.g == 1.0) and np.all(m.g_tilde == 1.0)

    def test_minkowski_helper(self, grid):
        m = minkowski(grid)
        assert np.all(m.g == 1) and np.all(m.G == 0)


class TestOracles:
    @pytest.mark.parametrize("r", sorted(G_ORACLE))
    def test_g(self, oracle_slice, r):
        g = compute_g(oracle_slice)
        assert g[_at(oracle_slice.grid, r)] == pytest.approx(G_ORACLE[r], abs=5e-8)

    @pytest.mark.parametrize("r", sorted(GTILDE_ORACLE))
    def test_gtilde(self, oracle_slice, r):
        m = compute_metric(oracle_slice, QUARTIC)
        assert m.g_tilde[_at(oracle_slice.grid, r)] == pytest.approx(GTILDE_ORACLE[r], abs=5e-8)

    def test_gbar_analytic(self):
        # mean of 1 - exp(-r) over [0, r] is 1 + (exp(-r) - 1)/r
        grid = build_grid(20.0, 1025)
        r = grid.nodes
        got = compute_gbar(1.0 - np.exp(-r), grid)
        exact = np.zeros_like(r)
        exact[1:] = 1.0 + np.expm1(-r[1:]) / r[1:]
        # trapezoid error over a short interval is amplified by 1/r near the axis
        np.testing.assert_allclose(got, exact, atol=1e-6)

    def test_axis_values(self, oracle_slice):
        m = compute_metric(oracle_slice, QUARTIC)
        assert m.g_tilde[0] == m.g[0] == m.g_bar[0]
        assert m.dgtilde_dr[0] == 0.0


class TestFG:
    def test_arithmetic(self):
        g = np.array([np.exp(0.2)])
        gt = np.array([np.exp(-0.1)])
        F, G = compute_F_G(g, gt)
        assert F[0] == pytest.approx(0.05, abs=1e-15)
        assert G[0] == pytest.approx(0.15, abs=1e-15)

    def test_round_trip(self, oracle_slice):
        m = compute_metric(oracle_slice, QUARTIC)
        np.testing.assert_allclose(np.exp(m.F + m.G), m.g, rtol=1e-14)
        np.testing.assert_allclose(np.exp(m.F - m.G), m.g_tilde, rtol=1e-14)

    @pytest.mark.parametrize("bad", [0.0, -0.5, np.nan])
    def test_nonpositive_raises(self, bad):
        with pytest.raises(MetricDegeneracyError):
            compute_F_G(np.array([1.0, bad]), np.array([1.0, 1.0]), u=3.0)
        with pytest.raises(MetricDegeneracyError):
            compute_F_G(np.array([1.0, 1.0]), np.array([1.0, bad]), u=3.0)


class TestStructure:
    def test_g_monotone_and_bounded(self, oracle_slice):
        g = compute_g(oracle_slice)
        assert np.all(np.diff(g) >= 0) and g[-1] == 1.0 and np.all(g <= 1.0)

    def test_gtilde_slope_matches_differencing(self, oracle_slice):
        m = compute_metric(oracle_slice, QUARTIC)
        dr = oracle_slice.grid.spacing
        fd = (m.g_tilde[2:] - m.g_tilde[:-2]) / (2 * dr)
        # centred differencing carries a dr^2/6 truncation term
        np.testing.assert_allclose(m.dgtilde_dr[1:-1], fd, rtol=0, atol=1e-5)

    def test_potential_sign_orders_gtilde(self, oracle_slice):
        g = compute_g(oracle_slice)
        gbar = compute_gbar(g, oracle_slice.grid)
        neg = compute_gtilde(g, oracle_slice, PotentialSpec(sign=-1))
        pos = compute_gtilde(g, oracle_slice, PotentialSpec(sign=1))
        free = compute_gtilde(g, oracle_slice, PotentialSpec(coupling=0.0))
        assert np.array_equal(free, gbar)
        assert np.all(neg[1:] <= gbar[1:]) and np.all(pos[1:] >= gbar[1:])

    def test_floor_halts(self, oracle_slice):
        with pytest.raises(MetricDegeneracyError) as info:
            compute_metric(oracle_slice, QUARTIC, gtilde_floor=0.995)
        assert info.value.u == 0.0 and info.value.min_gtilde < 0.995

    def test_read_only(self, oracle_slice):
        m = compute_metric(oracle_slice, QUARTIC)
        with pytest.raises(ValueError):
            m.g[0] = 2.0

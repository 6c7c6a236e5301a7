from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from bondi_ekg import ConfigurationError, ContractViolation, NumericError, build_grid, make_slice
from bondi_ekg.fields import (
    dphi_dr,
    norm_report,
    norm_X0,
    norm_X_slicewise,
    norm_Y_diff,
    phi_from_h,
)
from bondi_ekg.grid import derivative_r


class TestMakeSlice:
    def test_vacuum(self, grid):
        s = make_slice(0.0, np.zeros(grid.n), grid)
        assert np.all(s.h_bar == 0) and np.all(s.dh_dr == 0)

    def test_constant(self, grid):
        s = make_slice(0.0, np.full(grid.n, 5.0), grid)
        assert np.all(s.h_bar == 5.0) and np.all(s.dh_dr == 0)

    def test_mean_against_quadrature(self):
        # oracle: adaptive quadrature of r exp(-r^2) at a few radii
        g = build_grid(10.0, 1001)
        s = make_slice(0.0, g.nodes * np.exp(-g.nodes**2), g)
        for i in (10, 50, 100, 300):
            r = g.nodes[i]
            ref = quad(lambda x: x * np.exp(-x * x), 0, r)[0] / r
            assert s.h_bar[i] == pytest.approx(ref, abs=5e-8)

    def test_nan_rejected(self, grid):
        h = np.zeros(grid.n)
        h[5] = np.nan
        with pytest.raises(NumericError):
            make_slice(0.0, h, grid)

    def test_shape_checked(self, grid):
        with pytest.raises(ContractViolation):
            make_slice(0.0, np.zeros(grid.n - 1), grid)

    def test_caches_read_only_and_consistent(self, grid):
        s = make_slice(1.5, np.sin(grid.nodes), grid)
        assert s.h_bar[0] == s.h[0]
        assert np.array_equal(s.dh_dr, derivative_r(s.h, grid))
        with pytest.raises(ValueError):
            s.h[0] = 1.0


class TestPhi:
    def test_vacuum(self, grid):
        s = make_slice(0.0, np.zeros(grid.n), grid)
        assert np.all(phi_from_h(s) == 0) and np.all(dphi_dr(s) == 0)

    def test_constant(self, grid):
        s = make_slice(0.0, np.full(grid.n, 2.0), grid)
        assert np.all(phi_from_h(s) == 2.0) and np.all(dphi_dr(s) == 0)

    def test_linear_including_origin(self, grid):
        s = make_slice(0.0, grid.nodes.copy(), grid)
        np.testing.assert_allclose(phi_from_h(s), grid.nodes / 2, atol=1e-12)
        np.testing.assert_allclose(dphi_dr(s), 0.5, atol=1e-12)

    def test_reconstruction(self):
        # h = d_r(r phi) recovered from phi to O(dr^2)
        errs = []
        for n in (401, 801):
            g = build_grid(10.0, n)
            s = make_slice(0.0, np.exp(-g.nodes) * np.cos(g.nodes), g)
            back = derivative_r(g.nodes * phi_from_h(s), g)
            errs.append(np.max(np.abs(back - s.h)))
        assert errs[0] / errs[1] == pytest.approx(4.0, abs=1.0)


class TestNorms:
    def test_vacuum(self, grid):
        s = make_slice(0.0, np.zeros(grid.n), grid)
        assert norm_X_slicewise(s, 3) == 0.0 and norm_X0(s, 3) == 0.0

    def test_power_law_value(self):
        # oracle: (1+r)^2 (1+r)^-2 + (1+r)^3 * 2 (1+r)^-3 = 3 at every r
        g = build_grid(50.0, 8192)
        s = make_slice(0.0, (1.0 + g.nodes) ** -2, g)
        assert norm_X_slicewise(s, 3) == pytest.approx(3.0, rel=1e-3)
        d0 = 1e-3
        s = make_slice(0.0, d0 * (1.0 + g.nodes) ** -2, g)
        assert norm_X0(s, 3) == pytest.approx(3 * d0, rel=1e-3)

    @pytest.mark.parametrize("k", [2.0, 2.999, -1.0])
    def test_k_range(self, grid, k):
        s = make_slice(0.0, np.zeros(grid.n), grid)
        with pytest.raises(ConfigurationError):
            norm_X_slicewise(s, k)

    def test_x0_needs_initial_slice(self, grid):
        with pytest.raises(ContractViolation):
            norm_X0(make_slice(0.5, np.zeros(grid.n), grid), 3)

    def test_y_requires_same_u(self, grid):
        a = make_slice(0.0, np.zeros(grid.n), grid)
        b = make_slice(1.0, np.zeros(grid.n), grid)
        with pytest.raises(ContractViolation):
            norm_Y_diff(a, b, 3)

    def test_y_against_vacuum_is_h_term(self, grid):
        h = np.exp(-grid.nodes)
        a = make_slice(2.0, h, grid)
        b = make_slice(2.0, np.zeros(grid.n), grid)
        assert norm_Y_diff(a, b, 3) == np.max((3.0 + grid.nodes) ** 2 * h)

    @settings(max_examples=25, deadline=None)
    @given(lam=st.floats(-20, 20), u=st.floats(0, 10), k=st.floats(3, 6))
    def test_homogeneity_and_symmetry(self, lam, u, k):
        g = build_grid(20.0, 64)
        h1 = np.exp(-g.nodes) * g.nodes
        h2 = np.cos(g.nodes) / (1 + g.nodes) ** 3
        a, b = make_slice(u, h1, g), make_slice(u, h2, g)
        scaled = make_slice(u, lam * h1, g)
        assert norm_X_slicewise(scaled, k) == pytest.approx(abs(lam) * norm_X_slicewise(a, k), rel=1e-12, abs=1e-300)
        assert norm_Y_diff(a, b, k) == norm_Y_diff(b, a, k)
        # Y drops the derivative term, so it never exceeds X of the difference
        diff = make_slice(u, h1 - h2, g)
        assert norm_Y_diff(a, b, k) <= norm_X_slicewise(diff, k)

    @settings(max_examples=25, deadline=None)
    @given(u=st.floats(0, 10))
    def test_triangle_inequality(self, u):
        g = build_grid(20.0, 64)
        a = make_slice(u, np.sin(g.nodes) / (1 + g.nodes) ** 2, g)
        b = make_slice(u, np.exp(-g.nodes), g)
        ab = make_slice(u, a.h + b.h, g)
        assert norm_X_slicewise(ab, 3) <= norm_X_slicewise(a, 3) + norm_X_slicewise(b, 3) + 1e-15

    def test_report(self, grid):
        slices = [make_slice(u, np.exp(-grid.nodes - u), grid) for u in (0.0, 1.0, 2.0)]
        rep = norm_report(slices, 3)
        assert rep.x0_norm == norm_X0(slices[0], 3)
        assert rep.x_norm == max(norm_X_slicewise(s, 3) for s in slices)

"""Quasi-classical tunneling: extrema, well frequencies, WKB and
asymptotic splittings."""

import numpy as np
import pytest

from fluxsim.circuit import CircuitParams, potential_1d
from fluxsim.errors import (AsymmetricWellsError, LevelAboveBarrierError,
                            NoDoubleWellError, NotAWellError)
from fluxsim.semiclassics import (asymptotic_splitting, find_extrema,
                                  turning_points, well_frequency,
                                  wkb_splitting)
from fluxsim.solver import spectrum_1d


class TestFindExtrema:
    def test_barrier_top_at_pi(self, p2, p15):
        for p in (p2, p15):
            ws = find_extrema(p, 1.0)
            assert ws.phi_max == pytest.approx(np.pi, abs=1e-9)

    def test_mirror_symmetry(self, p15):
        ws = find_extrema(p15, 1.0)
        assert ws.phi_ml + ws.phi_mr == pytest.approx(2.0 * np.pi, abs=1e-10)
        assert ws.omega_l == pytest.approx(ws.omega_r, abs=1e-10)

    def test_stationarity_residual(self, p15):
        ws = find_extrema(p15, 1.0)
        for phi in (ws.phi_ml, ws.phi_mr, ws.phi_max):
            resid = p15.ejf * np.sin(phi) + 2.0 * p15.el * (phi - np.pi)
            assert abs(resid) < 1e-10 * p15.ejf

    def test_first_order_minimum_location(self, p15):
        # leading order: phi_mL ~ pi * 2 el / ejf
        ws = find_extrema(p15, 1.0)
        assert ws.phi_ml == pytest.approx(np.pi * 2.0 * p15.el / p15.ejf,
                                          abs=0.005)

    def test_curvature_signs(self, p2):
        ws = find_extrema(p2, 1.0)
        assert ws.curvature_l > 0 and ws.curvature_r > 0
        assert ws.curvature_top < 0

    def test_no_double_well(self):
        p = CircuitParams(ejf=0.2, ejm=0.2, ec=0.5, el=0.15)
        with pytest.raises(NoDoubleWellError):
            find_extrema(p, 1.0)


class TestWellFrequency:
    def test_value(self, p3cell):
        assert well_frequency(p3cell, 0.0) == pytest.approx(
            np.sqrt(8.0 * 0.5 * (20.0 + 0.3)))

    def test_not_a_well(self, p2):
        with pytest.raises(NotAWellError):
            well_frequency(p2, np.pi)

    def test_against_solver_spacing(self, p3cell):
        # doublet-center spacing from exact diagonalization; the raw
        # harmonic frequency overshoots by the transmon anharmonicity ~ec
        ws = find_extrema(p3cell, 1.0)
        s = spectrum_1d(p3cell, 1.0, k=4)
        spacing = (0.5 * (s.eigenvalues[2] + s.eigenvalues[3])
                   - 0.5 * (s.eigenvalues[0] + s.eigenvalues[1]))
        assert ws.omega_l == pytest.approx(spacing, rel=0.07)
        assert ws.omega_l - p3cell.ec == pytest.approx(spacing, rel=0.01)


class TestTurningPoints:
    def test_bracket_and_level(self, p15):
        ws = find_extrema(p15, 1.0)
        tp = turning_points(p15, 1.0, ws)
        assert ws.phi_ml < tp.phi_1 < ws.phi_max < tp.phi_2 < ws.phi_mr
        for phi in (tp.phi_1, tp.phi_2):
            assert potential_1d(p15, 1.0, phi) == pytest.approx(
                ws.energy_l, abs=1e-9)

    def test_level_above_barrier(self):
        # large charging energy pushes the well level over a shallow barrier
        p = CircuitParams(ejf=0.5, ejm=0.5, ec=5.0, el=0.15)
        with pytest.raises(LevelAboveBarrierError):
            wkb_splitting(p)


class TestSplittings:
    def test_asymmetric_rejected(self, p15):
        with pytest.raises(AsymmetricWellsError):
            wkb_splitting(p15, 0.98)

    def test_monotone_in_beta(self):
        deltas = []
        for ejf in (2.0, 4.5, 15.0):  # beta = 13.3, 30, 100
            p = CircuitParams(ejf=ejf, ejm=ejf, ec=0.5, el=0.15)
            deltas.append(wkb_splitting(p))
        assert deltas[0] > deltas[1] > deltas[2] > 0.0

    def test_wkb_vs_exact_large_beta(self, p15):
        s = spectrum_1d(p15, 1.0, k=2)
        exact = float(s.eigenvalues[1] - s.eigenvalues[0])
        assert abs(np.log(wkb_splitting(p15) / exact)) < np.log(2.0)

    def test_log_linear_in_sqrt_ej_over_ec(self):
        # deep-well scaling: ln Delta ~ -sqrt(8 EJ/EC); renormalization
        # lifts the fitted slope slightly above -sqrt(8) = -2.83
        xs, ys = [], []
        for ej in np.geomspace(3.0, 100.0, 12):
            p = CircuitParams(ejf=float(ej), ejm=float(ej), ec=1.0, el=0.15)
            xs.append(np.sqrt(ej / p.ec))
            ys.append(np.log(wkb_splitting(p)))
        slope, intercept = np.polyfit(xs, ys, 1)
        resid = np.asarray(ys) - (slope * np.asarray(xs) + intercept)
        r2 = 1.0 - resid.var() / np.var(ys)
        assert r2 > 0.999
        assert -3.0 < slope < -2.3

    def test_asymptotic_renormalized_coefficients(self, p15):
        beta = p15.beta_f
        ejb = p15.ejf * (1.0 - (np.pi**2 / (4.0 * beta)) * (1.0 - 1.0 / beta))
        assert ejb == pytest.approx(15.0 * (1.0 - (np.pi**2 / 400.0) * 0.99))
        # beta -> infinity restores the bare-coefficient formula
        p_big = CircuitParams(ejf=150.0, ejm=1.0, ec=100.0, el=0.15)
        bare = (2.0 * np.sqrt(2.0 / np.pi)
                * np.sqrt(8.0 * p_big.ejf * p_big.ec)
                * (8.0 * p_big.ejf / p_big.ec) ** 0.25
                * np.exp(-np.sqrt(8.0 * p_big.ejf / p_big.ec)))
        assert asymptotic_splitting(p_big) == pytest.approx(bare, rel=0.05)

    def test_asymptotic_invalid_beta(self):
        p = CircuitParams(ejf=0.1, ejm=0.1, ec=0.5, el=0.15)
        with pytest.raises(NoDoubleWellError):
            asymptotic_splitting(p)

    def test_asymptotic_monotone(self):
        deltas = [asymptotic_splitting(
            CircuitParams(ejf=ejf, ejm=ejf, ec=0.5, el=0.15))
            for ejf in (2.0, 4.5, 15.0)]
        assert deltas[0] > deltas[1] > deltas[2] > 0.0

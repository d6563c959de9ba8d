"""Finite-difference eigensolvers: analytic oracles, invariants,
classification, and convergence behavior."""

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from fluxsim.circuit import CircuitParams, FluxConfig
from fluxsim.errors import (AmbiguousClassificationError, GridTooNarrowError,
                            NoConvergenceError)
from fluxsim.grids import PhaseGrid1D, PhaseGrid2D, StateLabel
from fluxsim.solver import (classify_state, converge, default_grid_1d,
                            default_grid_2d, discretize_1d, find_wells_2d,
                            richardson, spectrum_1d, spectrum_2d,
                            _assemble_2d)

FIG8_FLUX = FluxConfig(phi1=0.0, phi2=1.0, phim=0.0)


class TestGrids:
    def test_spacing_and_points(self):
        g = PhaseGrid1D(0.0, 1.0, 11)
        assert g.h == pytest.approx(0.1)
        assert np.allclose(g.points, np.linspace(0.0, 1.0, 11))

    def test_centered_default_interval(self):
        g = default_grid_1d(1.0)
        assert g.phi_min == pytest.approx(-2.0 * np.pi)
        assert g.phi_max == pytest.approx(4.0 * np.pi)

    def test_refined_is_nested(self):
        g = PhaseGrid1D(0.0, 1.0, 11).refined()
        assert g.n == 21 and g.h == pytest.approx(0.05)

    def test_invalid_grid(self):
        with pytest.raises(ValueError):
            PhaseGrid1D(0.0, 1.0, 2)
        with pytest.raises(ValueError):
            PhaseGrid1D(1.0, 0.0, 11)


class TestDiscretize1D:
    def test_boundary_margin_check(self, p2):
        g = default_grid_1d(1.0, n=401)
        with pytest.raises(GridTooNarrowError):
            discretize_1d(p2, 1.0, g, k_max_energy=50.0)
        diag, off = discretize_1d(p2, 1.0, g, k_max_energy=1.0)
        assert diag.shape == (401,) and off.shape == (400,)

    def test_symmetric_operator(self, p2):
        # off-diagonal is a single constant both above and below the diagonal
        _, off = discretize_1d(p2, 1.0, default_grid_1d(1.0, n=101))
        assert np.all(off == off[0])

    def test_box_levels_and_refinement(self, p2):
        # zero potential: particle in a box; Dirichlet zeros sit one
        # spacing outside the stored endpoints
        errs = []
        for n in (501, 1001, 2001):
            g = PhaseGrid1D(0.0, 2.0 * np.pi, n)
            diag, off = discretize_1d(p2, 1.0, g, potential=lambda x: 0.0 * x)
            w = eigh_tridiagonal(diag, off, select="i", select_range=(0, 3),
                                 eigvals_only=True)
            box = 2.0 * np.pi + 2.0 * g.h
            exact = 4.0 * p2.ec * (np.pi * np.arange(1, 5) / box) ** 2
            errs.append(np.max(np.abs(w / exact - 1.0)))
        assert errs[0] < 1e-4
        # second-order stencil: error shrinks ~4x per refinement
        assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)
        assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.1)


class TestSpectrum1D:
    def test_harmonic_oracle(self, p2):
        s = spectrum_1d(p2, 1.0, k=3,
                        potential=lambda x: p2.el * (x - np.pi) ** 2)
        spacings = np.diff(s.eigenvalues)
        assert np.allclose(spacings, 4.0 * np.sqrt(p2.ec * p2.el), rtol=1e-4)

    def test_frozen_splittings(self, p2, p15):
        # frozen oracle values at the default grid (n=2001, span 3 pi)
        s = spectrum_1d(p2, 1.0, k=2)
        assert float(s.eigenvalues[1] - s.eigenvalues[0]) == pytest.approx(
            0.1462091913433894, rel=1e-10)
        s = spectrum_1d(p15, 1.0, k=2)
        assert float(s.eigenvalues[1] - s.eigenvalues[0]) == pytest.approx(
            1.6565372020771463e-05, rel=1e-6)

    def test_normalization_orthogonality_residuals(self, p2):
        s = spectrum_1d(p2, 1.0, k=4)
        x = s.grid.points
        for i in range(4):
            norm = np.trapezoid(s.eigenvectors[:, i] ** 2, x)
            assert norm == pytest.approx(1.0, abs=1e-10)
            assert s.residuals[i] < 1e-6
            for j in range(i):
                ov = np.trapezoid(s.eigenvectors[:, i] * s.eigenvectors[:, j], x)
                assert abs(ov) < 1e-8

    def test_parity_at_degeneracy(self, p2):
        s = spectrum_1d(p2, 1.0, k=2)
        psi0, psi1 = s.eigenvectors[:, 0], s.eigenvectors[:, 1]
        # grid is vertex-centered, so reversal mirrors about phi = pi
        assert np.max(np.abs(psi0 - psi0[::-1])) < 1e-6
        assert np.max(np.abs(psi1 + psi1[::-1])) < 1e-6

    def test_localized_ground_state_off_degeneracy(self, p15):
        s = spectrum_1d(p15, 0.95, k=1)
        x = s.grid.points
        centroid = np.trapezoid(x * s.eigenvectors[:, 0] ** 2, x)
        assert centroid < np.pi  # fluxon sits in the left well

    def test_narrow_grid_rejected(self, p2):
        g = PhaseGrid1D.centered(np.pi, span=1.2 * np.pi, n=201)
        with pytest.raises(GridTooNarrowError):
            spectrum_1d(p2, 1.0, k=4, g=g)

    def test_k_sanity_bound(self, p2):
        with pytest.raises(ValueError, match="too large"):
            spectrum_1d(p2, 1.0, k=60, g=PhaseGrid1D.centered(np.pi, n=201))


class TestSpectrum2D:
    def test_sparse_operator_symmetric(self, p3cell):
        g = default_grid_2d(FIG8_FLUX, n=41)
        h, _, _, _ = _assemble_2d(p3cell, FIG8_FLUX, g)
        assert abs(h - h.T).max() == 0.0

    def test_separable_limit(self, p3cell):
        # with the cross term removed the 2D levels are sums of 1D levels
        g1f = PhaseGrid1D.centered(np.pi * FIG8_FLUX.delta_f, n=101)
        g1m = PhaseGrid1D.centered(np.pi * FIG8_FLUX.delta_m, n=101)
        s2 = spectrum_2d(p3cell, FIG8_FLUX, k=6, g=PhaseGrid2D(g1f, g1m),
                         classify=False, coupling=0.0)
        sf = spectrum_1d(p3cell, FIG8_FLUX.delta_f, k=4, g=g1f)
        vm = np.pi * FIG8_FLUX.delta_m
        pot_m = lambda x: p3cell.ejm * (1.0 - np.cos(x)) + p3cell.el * (x - vm) ** 2
        sm = spectrum_1d(p3cell, 0.0, k=4, g=g1m, potential=pot_m)
        sums = np.sort((sf.eigenvalues[:, None] + sm.eigenvalues[None, :])
                       .ravel())[:6]
        assert np.allclose(s2.eigenvalues, sums, atol=1e-8)

    def test_residuals_and_normalization(self, p3cell):
        g = default_grid_2d(FIG8_FLUX, n=121)
        s = spectrum_2d(p3cell, FIG8_FLUX, k=4, g=g, classify=False)
        assert np.all(np.diff(s.eigenvalues) >= 0)
        assert np.all(s.residuals < 1e-6)
        w = g.grid_f.h * g.grid_m.h
        for i in range(4):
            assert (s.eigenvectors[:, :, i] ** 2).sum() * w == pytest.approx(
                1.0, abs=1e-8)

    def test_narrow_domain_rejected(self, p3cell):
        g = PhaseGrid2D(PhaseGrid1D.centered(np.pi, span=1.2 * np.pi, n=61),
                        PhaseGrid1D.centered(-np.pi, span=1.2 * np.pi, n=61))
        with pytest.raises(GridTooNarrowError):
            spectrum_2d(p3cell, FIG8_FLUX, k=8, g=g, classify=False)


class TestWellsAndClassification:
    def test_find_wells_topology(self, p3cell):
        wells = find_wells_2d(p3cell, FIG8_FLUX)
        assert set(wells) == {"L", "C", "R"}
        cf, cm = wells["C"]
        assert np.hypot(cf, cm) < 0.5
        assert wells["L"][0] - cf == pytest.approx(2.0 * np.pi, abs=0.3)
        assert abs(wells["L"][1] - cm) < 0.5
        assert wells["R"][1] - cm == pytest.approx(-2.0 * np.pi, abs=0.3)
        assert abs(wells["R"][0] - cf) < 0.5

    def _gaussian(self, g, center, width=0.5):
        xf, xm = np.meshgrid(g.grid_f.points, g.grid_m.points, indexing="ij")
        psi = np.exp(-((xf - center[0]) ** 2 + (xm - center[1]) ** 2)
                     / (2.0 * width**2))
        return psi / np.sqrt((psi**2).sum() * g.grid_f.h * g.grid_m.h)

    def test_gaussian_ground_label(self, p3cell):
        wells = find_wells_2d(p3cell, FIG8_FLUX)
        g = default_grid_2d(FIG8_FLUX, n=101)
        for name, center in wells.items():
            psi = self._gaussian(g, center)
            assert classify_state(psi, g, wells) == StateLabel(name, 0, 0)

    def test_excited_labels(self, p3cell):
        wells = find_wells_2d(p3cell, FIG8_FLUX)
        g = default_grid_2d(FIG8_FLUX, n=101)
        xf = g.grid_f.points[:, None]
        xm = g.grid_m.points[None, :]
        base = self._gaussian(g, wells["C"])
        assert tuple(classify_state(base * (xf - wells["C"][0]), g, wells)) \
            == ("C", 1, 0)
        assert tuple(classify_state(base * (xm - wells["C"][1]), g, wells)) \
            == ("C", 0, 1)

    def test_ambiguous_centroid(self, p3cell):
        wells = find_wells_2d(p3cell, FIG8_FLUX)
        g = default_grid_2d(FIG8_FLUX, n=101)
        # centroid at the central saddle region, far from every well
        psi = self._gaussian(g, (np.pi, -np.pi), width=0.3)
        with pytest.raises(AmbiguousClassificationError):
            classify_state(psi, g, wells)


class TestConvergence:
    def test_harmonic_order(self, p2):
        _, tol, order = converge(
            lambda n: spectrum_1d(p2, 1.0, k=4, g=default_grid_1d(1.0, n),
                                  potential=lambda x: p2.el * (x - np.pi) ** 2),
            n0=251, target_tol=1e-6)
        assert tol < 1e-6
        assert 1.8 <= order <= 2.2

    def test_unreachable_tolerance(self, p2):
        with pytest.raises(NoConvergenceError):
            converge(lambda n: spectrum_1d(p2, 1.0, k=2,
                                           g=default_grid_1d(1.0, n)),
                     n0=251, target_tol=1e-13, n_cap=2001)

    def test_richardson_exact_on_model(self):
        # E(h) = E* + c h^2 is recovered exactly
        e_star, c = 3.7, 0.9
        h1, h2 = 0.1, 0.05
        out = richardson([e_star + c * h1**2], [e_star + c * h2**2], h1, h2)
        assert out[0] == pytest.approx(e_star, rel=1e-12)

"""Shared fixtures: paper parameter sets and the converged three-cell solve.

The three-cell fixture is session-scoped because it is by far the most
expensive computation in the suite (two 2D eigensolves plus Richardson
extrapolation) and several acceptance criteria read from it.
"""

import numpy as np
import pytest

from fluxsim.circuit import CircuitParams
from fluxsim.sweeps import three_cell_point


@pytest.fixture(scope="session")
def p2():
    """Small-beta two-cell parameter set (beta ~ 13.3)."""
    return CircuitParams(ejf=2.0, ejm=2.0, ec=0.5, el=0.15)


@pytest.fixture(scope="session")
def p15():
    """Large-beta two-cell parameter set (beta = 100)."""
    return CircuitParams(ejf=15.0, ejm=15.0, ec=0.5, el=0.15)


@pytest.fixture(scope="session")
def p3cell():
    """Three-cell parameter set used for the 2D spectrum."""
    return CircuitParams(ejf=20.0, ejm=22.0, ec=0.5, el=0.15)


@pytest.fixture(scope="session")
def fig8_point(p3cell):
    """Converged three-cell solve at the degeneracy flux.

    phi^x_1 + phi^x_2 = 1 flux quantum (traps a single fluxon), phi^x_m = 0;
    energies Richardson-extrapolated from n = 201 and n = 301 grids.
    """
    return three_cell_point(p3cell, phi_delta_f=1.0, sigma_f=1.0, phim=0.0,
                            k=14, n_coarse=201, n_fine=301)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)

"""Quasi-classical treatment of fluxon tunneling in the two-cell SQUID.

Potential extrema come from the transcendental equation
ej sin(phi) = 2 el (phi - pi phi_delta); well levels from the harmonic
expansion; the tunneling amplitude from the WKB action between turning
points; and a closed-form asymptotic splitting for the renormalized cosine
potential is provided for comparison.

Convention notes (validated against exact diagonalization, see tests):
  * the well frequency is sqrt(8 ec (2 el + ej cos phi_m)) in GHz -- no
    extra 2 pi, consistent with the E/h-in-GHz convention;
  * the WKB action is the decay exponent of -4 ec psi'' + V psi = E psi,
    i.e. integral of sqrt((V - E) / (4 ec));
  * the asymptotic splitting exponent is -sqrt(8 ejbar / ecbar), the
    standard cosine-potential ground-band result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from fluxsim.circuit import CircuitParams, potential_1d
from fluxsim.errors import (
    AsymmetricWellsError,
    LevelAboveBarrierError,
    NoDoubleWellError,
    NotAWellError,
)

__all__ = [
    "WellStructure",
    "TurningPoints",
    "find_extrema",
    "well_frequency",
    "wkb_splitting",
    "asymptotic_splitting",
]


@dataclass(frozen=True)
class WellStructure:
    """Double-well geometry around the barrier of the two-cell potential."""

    phi_ml: float
    phi_mr: float
    phi_max: float
    energy_l: float      # V(min) + omega/2, GHz
    energy_r: float
    omega_l: float       # harmonic frequency, GHz
    omega_r: float
    curvature_l: float   # V''(phi_ml), GHz/rad^2
    curvature_r: float
    curvature_top: float


@dataclass(frozen=True)
class TurningPoints:
    """Phases where the barrier intersects the well level."""

    phi_1: float
    phi_2: float


def _dU(p: CircuitParams, phi_delta: float, phi: float) -> float:
    return p.ejf * np.sin(phi) + 2.0 * p.el * (phi - np.pi * phi_delta)


def _curvature(p: CircuitParams, phi: float) -> float:
    return p.ejf * np.cos(phi) + 2.0 * p.el


def find_extrema(p: CircuitParams, phi_delta: float,
                 scan_step: float = 0.01) -> WellStructure:
    """Locate the two minima and the barrier top by bracketed root-finding
    on U' over [vertex - 2 pi, vertex + 2 pi]."""
    if p.beta_f <= 1.0:
        raise NoDoubleWellError(f"beta = {p.beta_f:.3g} <= 1: single well")
    vertex = np.pi * phi_delta
    xs = np.arange(vertex - 2.0 * np.pi, vertex + 2.0 * np.pi + scan_step,
                   scan_step)
    vals = p.ejf * np.sin(xs) + 2.0 * p.el * (xs - vertex)
    roots = []
    for a, b, fa, fb in zip(xs[:-1], xs[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            roots.append(float(a))
        elif np.sign(fa) != np.sign(fb):
            roots.append(float(brentq(lambda x: _dU(p, phi_delta, x), a, b,
                                      xtol=1e-14, rtol=8.9e-16)))
    minima = [r for r in roots if _curvature(p, r) > 0]
    maxima = [r for r in roots if _curvature(p, r) < 0]
    if len(minima) < 2 or not maxima:
        raise NoDoubleWellError(
            f"no double well at phi_delta={phi_delta} (found {len(minima)} "
            f"minima, {len(maxima)} maxima)")
    # the relevant pair straddles the barrier top nearest the vertex
    top = min(maxima, key=lambda r: abs(r - vertex))
    left = max([r for r in minima if r < top], default=None)
    right = min([r for r in minima if r > top], default=None)
    if left is None or right is None:
        raise NoDoubleWellError("barrier top is not flanked by two minima")
    om_l = well_frequency(p, left)
    om_r = well_frequency(p, right)
    return WellStructure(
        phi_ml=left, phi_mr=right, phi_max=top,
        energy_l=potential_1d(p, phi_delta, left) + om_l / 2.0,
        energy_r=potential_1d(p, phi_delta, right) + om_r / 2.0,
        omega_l=om_l, omega_r=om_r,
        curvature_l=_curvature(p, left), curvature_r=_curvature(p, right),
        curvature_top=_curvature(p, top),
    )


def well_frequency(p: CircuitParams, phi_m_gamma: float) -> float:
    """Harmonic level spacing sqrt(8 ec (2 el + ejf cos phi)) in GHz."""
    curv = _curvature(p, phi_m_gamma)
    if curv <= 0.0:
        raise NotAWellError(f"curvature {curv:.3g} <= 0 at phi={phi_m_gamma:.4g}")
    return float(np.sqrt(8.0 * p.ec * curv))


def turning_points(p: CircuitParams, phi_delta: float,
                   ws: WellStructure) -> TurningPoints:
    """Barrier-side intersections V(phi) = E_well."""
    e = ws.energy_l
    if e >= potential_1d(p, phi_delta, ws.phi_max):
        raise LevelAboveBarrierError(
            f"well level {e:.4g} GHz is above the barrier top "
            f"{potential_1d(p, phi_delta, ws.phi_max):.4g} GHz")
    f = lambda x: potential_1d(p, phi_delta, x) - e
    g1 = brentq(f, ws.phi_ml, ws.phi_max, xtol=1e-14, rtol=8.9e-16)
    g2 = brentq(f, ws.phi_max, ws.phi_mr, xtol=1e-14, rtol=8.9e-16)
    return TurningPoints(phi_1=float(g1), phi_2=float(g2))


def wkb_splitting(p: CircuitParams, phi_delta: float = 1.0) -> float:
    """Ground-doublet tunneling splitting in GHz for symmetric wells.

    Delta = (omega / (e sqrt(pi))) exp(-S) with
    S = integral over the barrier of sqrt((V - E) / (4 ec)).  The endpoint
    sqrt singularities of the integrand's derivative are regularized by the
    substitution phi = c + r sin(theta).
    """
    if abs(phi_delta - 1.0) > 1e-9:
        raise AsymmetricWellsError(
            f"symmetric-well formula requires phi_delta = 1, got {phi_delta}")
    ws = find_extrema(p, phi_delta)
    tp = turning_points(p, phi_delta, ws)
    e, om = ws.energy_l, ws.omega_l
    c = 0.5 * (tp.phi_1 + tp.phi_2)
    r = 0.5 * (tp.phi_2 - tp.phi_1)

    def integrand(theta: float) -> float:
        phi = c + r * np.sin(theta)
        dv = potential_1d(p, phi_delta, phi) - e
        return np.sqrt(max(dv, 0.0) / (4.0 * p.ec)) * r * np.cos(theta)

    action, _ = quad(integrand, -np.pi / 2.0, np.pi / 2.0,
                     epsabs=1e-10, epsrel=1e-12, limit=200)
    return float(om / (np.e * np.sqrt(np.pi)) * np.exp(-action))


def asymptotic_splitting(p: CircuitParams) -> float:
    """Splitting for the periodic cosine potential with coefficients
    renormalized by the inductive parabola (beta = ejf/el)."""
    beta = p.beta_f
    if beta <= 1.0:
        raise NoDoubleWellError(f"invalid beta = {beta:.3g} <= 1")
    ejb = p.ejf * (1.0 - (np.pi**2 / (4.0 * beta)) * (1.0 - 1.0 / beta))
    ecb = p.ec / (1.0 - 1.0 / beta) ** 2
    return float(2.0 * np.sqrt(2.0 / np.pi) * np.sqrt(8.0 * ejb * ecb)
                 * (8.0 * ejb / ecb) ** 0.25 * np.exp(-np.sqrt(8.0 * ejb / ecb)))

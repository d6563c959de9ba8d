"""Reduction of exact spectra to effective few-level models.

Two-cell: current-operator matrix elements and the qubit form
(Delta/2) sigma_x + (eps/2) sigma_z.  The bias slope is obtained from the
off-diagonal current element at the degeneracy point, eps = 2 dphi I01 in
GHz with I01 expressed in units Phi0/L (one unit of which is (2 pi)^2 el
GHz per Phi0 of flux); the saturated large-beta limit of this is the
textbook 4 pi^2 el dphi.

Three-cell: plasma frequencies, qutrit energies and dispersive shifts
J^z extracted from the nine classified |lambda, k, l> states.  J^z is
reported as the full conditional shift of the plasma transition frequency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fluxsim.circuit import CircuitParams
from fluxsim.errors import MissingStatesError
from fluxsim.grids import PhaseGrid1D, Spectrum
from fluxsim.solver import spectrum_1d

__all__ = [
    "CurrentElements",
    "TwoLevelModel",
    "QutritQubitModel",
    "current_elements",
    "two_level_fit",
    "extract_qutrit_qubit",
    "dispersive_estimate",
]

#: conversion: current unit Phi0/L times flux unit Phi0 equals
#: Phi0^2/L = (2 pi)^2 E_L of energy
_PHI0_SQ_OVER_L = (2.0 * np.pi) ** 2


@dataclass(frozen=True)
class CurrentElements:
    """Matrix elements of the junction current operator, units Phi0/L."""

    i00: float
    i11: float
    i01: float


@dataclass(frozen=True)
class TwoLevelModel:
    """(Delta/2) sigma_x + (eps/2) sigma_z description near degeneracy."""

    delta: float          # tunneling splitting, GHz
    epsilon: float        # flux bias at phi_delta, GHz
    eps_slope: float      # d eps / d phi_delta, GHz per Phi0
    phi_delta: float
    phi_delta_ref: float = 1.0

    @property
    def gap(self) -> float:
        return float(np.hypot(self.delta, self.epsilon))

    def gap_at(self, phi_delta) -> np.ndarray:
        eps = self.eps_slope * (np.asarray(phi_delta) - self.phi_delta_ref)
        return np.hypot(self.delta, eps)

    def beats_amplitude(self) -> float:
        """Maximum left-right transfer probability, Delta^2/(Delta^2+eps^2)."""
        return float(self.delta**2 / (self.delta**2 + self.epsilon**2))


@dataclass(frozen=True)
class QutritQubitModel:
    """Two transmon qubits dispersively coupled to the fluxon qutrit."""

    omega_pf: float   # plasma frequency of junction f, GHz
    omega_pm: float
    eps_l: float      # qutrit level energies, GHz
    eps_c: float
    eps_r: float
    jz_f: float       # conditional shift of the f transition, GHz
    jz_m: float
    g_f: float = float("nan")   # transverse coupling estimates, GHz
    g_m: float = float("nan")

    def energy(self, well: str, k: int, ell: int) -> float:
        """Reconstruct E(|well, k, l>) from the model parameters."""
        eps = {"L": self.eps_l, "C": self.eps_c, "R": self.eps_r}[well]
        e = eps + k * self.omega_pf + ell * self.omega_pm
        if well == "R":
            e += k * self.jz_f
        if well == "L":
            e += ell * self.jz_m
        return e


def current_elements(s: Spectrum, g: PhaseGrid1D | None = None) -> CurrentElements:
    """<i| I |j> for the two lowest states, I = (pi - phi)/(2 pi) in units
    Phi0/L, by trapezoidal quadrature."""
    if len(s) < 2:
        raise ValueError("need at least two states for current elements")
    if g is None:
        g = s.grid
    x = g.points
    op = (np.pi - x) / (2.0 * np.pi)
    psi0, psi1 = s.eigenvectors[:, 0], s.eigenvectors[:, 1]
    i00 = np.trapezoid(psi0 * op * psi0, x)
    i11 = np.trapezoid(psi1 * op * psi1, x)
    i01 = np.trapezoid(psi0 * op * psi1, x)
    return CurrentElements(i00=float(i00), i11=float(i11), i01=float(i01))


def two_level_fit(p: CircuitParams, phi_delta: float,
                  delta_at_degeneracy: float | None = None,
                  grid_n: int = 2001) -> TwoLevelModel:
    """Two-level model of the fluxon near the degeneracy flux.

    The bias eps is linear in dphi = phi_delta - 1 with slope
    2 I01(Phi0) (2 pi)^2 el, where I01 is the off-diagonal current element
    between the degenerate doublet states (this is the exact projection of
    the linearized Hamiltonian onto the doublet).  Only |dphi| <= 0.1 is a
    meaningful linearization window.
    """
    dphi = phi_delta - 1.0
    if abs(dphi) > 0.1:
        raise ValueError(f"phi_delta = {phi_delta} outside the linear window "
                         "|phi_delta - 1| <= 0.1")
    s0 = spectrum_1d(p, 1.0, k=2, g=_default_grid(1.0, grid_n))
    if delta_at_degeneracy is None:
        delta_at_degeneracy = float(s0.eigenvalues[1] - s0.eigenvalues[0])
    i01 = abs(current_elements(s0).i01)
    slope = 2.0 * i01 * _PHI0_SQ_OVER_L * p.el
    return TwoLevelModel(delta=delta_at_degeneracy, epsilon=slope * dphi,
                         eps_slope=slope, phi_delta=phi_delta)


def _default_grid(phi_delta: float, n: int) -> PhaseGrid1D:
    return PhaseGrid1D.centered(np.pi * phi_delta, n=n)


def extract_qutrit_qubit(s2d: Spectrum) -> QutritQubitModel:
    """Model parameters from a classified 2D spectrum.

    Requires all nine |lambda, k, l> states with k + l <= 1.  The
    unshifted plasma frequencies are averaged over the wells the paper
    identifies as unshifted (L, C for junction f; C, R for junction m).
    """
    needed = [(w, k, ell) for w in "LCR" for k, ell in ((0, 0), (1, 0), (0, 1))]
    energies = {}
    for lab, e in zip(s2d.labels, s2d.eigenvalues):
        if lab is not None and tuple(lab) not in energies:
            energies[tuple(lab)] = float(e)
    missing = [t for t in needed if t not in energies]
    if missing:
        raise MissingStatesError(f"classification incomplete; missing {missing}")

    def trans_f(w: str) -> float:
        return energies[(w, 1, 0)] - energies[(w, 0, 0)]

    def trans_m(w: str) -> float:
        return energies[(w, 0, 1)] - energies[(w, 0, 0)]

    omega_pf = 0.5 * (trans_f("L") + trans_f("C"))
    omega_pm = 0.5 * (trans_m("C") + trans_m("R"))
    return QutritQubitModel(
        omega_pf=omega_pf, omega_pm=omega_pm,
        eps_l=energies[("L", 0, 0)], eps_c=energies[("C", 0, 0)],
        eps_r=energies[("R", 0, 0)],
        jz_f=trans_f("R") - omega_pf,
        jz_m=trans_m("L") - omega_pm,
    )


def dispersive_estimate(p: CircuitParams) -> tuple[float, float, float, float]:
    """Closed-form (g_f, g_m, jz_f, jz_m) in GHz.

    g = 2 pi el sqrt(omega_p / (2 ej)), jz = 2 g^2 / omega_p with
    omega_p = sqrt(8 ej ec).  Order-of-magnitude only; the authoritative
    J^z comes from extract_qutrit_qubit.
    """
    om_f = np.sqrt(8.0 * p.ejf * p.ec)
    om_m = np.sqrt(8.0 * p.ejm * p.ec)
    g_f = 2.0 * np.pi * p.el * np.sqrt(om_f / (2.0 * p.ejf))
    g_m = 2.0 * np.pi * p.el * np.sqrt(om_m / (2.0 * p.ejm))
    return (float(g_f), float(g_m),
            float(2.0 * g_f**2 / om_f), float(2.0 * g_m**2 / om_m))

"""Circuit parameter records and potential-energy surfaces.

Units convention (used repo-wide):
  * all energies are stored as E/h in GHz (so frequency in GHz equals
    energy in GHz),
  * time is in ns (1 GHz x 1 ns = one phase cycle),
  * Josephson phases are dimensionless radians,
  * external fluxes are dimensionless, in units of the flux quantum,
  * currents are in units of Phi0/L.

With these conventions the inductive parabola coefficient is simply ``el``
and a flux of one quantum shifts the parabola vertex by pi.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "CircuitParams",
    "FluxConfig",
    "potential_1d",
    "potential_2d",
    "validate_params",
    "load_config",
]


@dataclass(frozen=True)
class CircuitParams:
    """Energy scales of the SQUID circuit, each as E/h in GHz.

    ejf, ejm : Josephson energies of the f- and m-junctions (ejm is
               irrelevant in two-cell mode).
    ec       : charging energy e^2/(2C).
    el       : inductive energy Phi0^2 / [L (2 pi)^2] of one loop.
    """

    ejf: float
    ejm: float
    ec: float
    el: float

    def __post_init__(self) -> None:
        for name in ("ejf", "ejm", "ec", "el"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be strictly positive, got {v}")

    @property
    def beta_f(self) -> float:
        return self.ejf / self.el

    @property
    def beta_m(self) -> float:
        return self.ejm / self.el


@dataclass(frozen=True)
class FluxConfig:
    """External fluxes through the three cells, in units of Phi0."""

    phi1: float = 0.0
    phi2: float = 0.0
    phim: float = 0.0

    @property
    def delta_f(self) -> float:
        return self.phi2 - self.phi1

    @property
    def sigma_f(self) -> float:
        return self.phi1 + self.phi2

    @property
    def delta_m(self) -> float:
        return self.phim - self.phi2

    @property
    def sigma_m(self) -> float:
        return self.phi2 + self.phim

    def constraint_residual(self) -> float:
        """The four derived combinations are not independent; this is
        identically zero for any (phi1, phi2, phim)."""
        return self.sigma_m - self.sigma_f - self.delta_f - self.delta_m

    @classmethod
    def from_combinations(cls, delta_f: float, sigma_f: float,
                          phim: float = 0.0) -> "FluxConfig":
        phi1 = (sigma_f - delta_f) / 2.0
        phi2 = (sigma_f + delta_f) / 2.0
        return cls(phi1=phi1, phi2=phi2, phim=phim)


def potential_1d(p: CircuitParams, phi_delta: float, phi_f):
    """Two-cell SQUID potential U(phi_f) in GHz.

    U = ejf (1 - cos phi_f) + el (phi_f - pi phi_delta)^2, with the
    flux-sum constant dropped.  ``phi_delta`` is in units of Phi0.
    Accepts scalar or array ``phi_f``.
    """
    vertex = np.pi * phi_delta
    phi_f = np.asarray(phi_f, dtype=float)
    u = p.ejf * (1.0 - np.cos(phi_f)) + p.el * (phi_f - vertex) ** 2
    return u if u.ndim else float(u)

def potential_2d(p: CircuitParams, f: FluxConfig, phi_f, phi_m,
                 include_constants: bool = False):
    """Three-cell SQUID potential U(phi_f, phi_m) in GHz.

    Sum of both junction/inductive terms plus the inductive coupling
    -el phi_f phi_m.  The flux-sum constants 2 pi^2 el (sigma)^2 shift
    all levels rigidly; they are dropped by default so that absolute
    energies line up with the 1D convention, and can be restored with
    ``include_constants=True``.
    """
    phi_f = np.asarray(phi_f, dtype=float)
    phi_m = np.asarray(phi_m, dtype=float)
    vf = np.pi * f.delta_f
    vm = np.pi * f.delta_m
    u = (p.ejf * (1.0 - np.cos(phi_f)) + p.el * (phi_f - vf) ** 2
         + p.ejm * (1.0 - np.cos(phi_m)) + p.el * (phi_m - vm) ** 2
         - p.el * phi_f * phi_m)
    if include_constants:
        u = u + 2.0 * np.pi**2 * p.el * (f.sigma_f**2 + f.sigma_m**2)
    return u if u.ndim else float(u)


def validate_params(p: CircuitParams, f: FluxConfig | None = None) -> list[str]:
    """Regime diagnostics; returns warnings, never raises for valid energies.

    beta < 1 means the cosine cannot form a double well (no well-defined
    fluxon); ejf/ec < 1 invalidates the quasi-classical treatment.
    """
    warnings = []
    if p.beta_f < 1.0:
        warnings.append(f"beta_f = {p.beta_f:.3g} < 1: fluxon not well-defined")
    if p.ejm / p.el < 1.0:
        warnings.append(f"beta_m = {p.beta_m:.3g} < 1: fluxon not well-defined at junction m")
    if p.ejf / p.ec < 1.0:
        warnings.append(f"ejf/ec = {p.ejf / p.ec:.3g} < 1: quasi-classics invalid")
    return warnings


_CONFIG_KEYS = {
    "ejf_ghz", "ejm_ghz", "ec_ghz", "el_ghz", "phi1", "phi2", "phim",
    "grid1d_min", "grid1d_max", "grid1d_n", "grid2d_n",
    "sweep_start", "sweep_stop", "sweep_steps", "jz_m_ghz",
    "levels", "t_max_ns", "dt_ns", "jz_ghz", "detuning_ghz",
    "shots", "seed", "position", "noise",
}


def load_config(path: str | Path) -> dict:
    """Read a flat key-value JSON config file and validate its keys."""
    with open(path) as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: config must be a flat JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
    return raw


def params_from_config(cfg: dict) -> CircuitParams:
    return CircuitParams(
        ejf=cfg.get("ejf_ghz", 2.0),
        ejm=cfg.get("ejm_ghz", cfg.get("ejf_ghz", 2.0)),
        ec=cfg.get("ec_ghz", 0.5),
        el=cfg.get("el_ghz", 0.15),
    )


def flux_from_config(cfg: dict) -> FluxConfig:
    return FluxConfig(
        phi1=cfg.get("phi1", 0.0),
        phi2=cfg.get("phi2", 0.0),
        phim=cfg.get("phim", 0.0),
    )

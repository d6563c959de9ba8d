"""Phase-space grids and the Spectrum result record."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["PhaseGrid1D", "PhaseGrid2D", "Spectrum", "StateLabel"]


@dataclass(frozen=True)
class PhaseGrid1D:
    """Uniform grid on a truncated phase interval (Dirichlet boundaries)."""

    phi_min: float
    phi_max: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"grid needs n >= 3, got {self.n}")
        if not self.phi_min < self.phi_max:
            raise ValueError("phi_min must be < phi_max")

    @property
    def h(self) -> float:
        return (self.phi_max - self.phi_min) / (self.n - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.phi_min, self.phi_max, self.n)

    @classmethod
    def centered(cls, vertex: float, span: float = 3 * np.pi,
                 n: int = 2001) -> "PhaseGrid1D":
        """Grid centered on the inductive-parabola vertex.

        span = 3 pi covers both cosine wells adjacent to the vertex plus a
        2 pi margin where the parabola dominates.
        """
        return cls(vertex - span, vertex + span, n)

    def refined(self, factor: int = 2) -> "PhaseGrid1D":
        """Same interval with each spacing subdivided (nested points)."""
        return PhaseGrid1D(self.phi_min, self.phi_max, factor * (self.n - 1) + 1)


@dataclass(frozen=True)
class PhaseGrid2D:
    """Tensor product of two 1D phase grids (phi_f, phi_m)."""

    grid_f: PhaseGrid1D
    grid_m: PhaseGrid1D

    @property
    def dim(self) -> int:
        return self.grid_f.n * self.grid_m.n

    def refined(self, factor: int = 2) -> "PhaseGrid2D":
        return PhaseGrid2D(self.grid_f.refined(factor), self.grid_m.refined(factor))


@dataclass(frozen=True)
class StateLabel:
    """|lambda, k, l> label: fluxon cell plus plasmon occupancies."""

    well: str  # 'L', 'C' or 'R'
    k: int     # plasmon number of junction f
    ell: int   # plasmon number of junction m

    def __iter__(self):
        return iter((self.well, self.k, self.ell))


@dataclass
class Spectrum:
    """Sorted eigenpairs of a discretized Hamiltonian.

    ``eigenvectors[..., i]`` is the i-th state sampled on the grid,
    unit-normalized under the trapezoidal weight.  ``labels[i]`` is a
    StateLabel or None when classification was not possible.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    grid: PhaseGrid1D | PhaseGrid2D
    residuals: np.ndarray
    labels: list[StateLabel | None] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def energy_of(self, well: str, k: int, ell: int) -> float:
        """Energy of the state labeled |well, k, ell>."""
        target = (well, k, ell)
        for e, lab in zip(self.eigenvalues, self.labels):
            if lab is not None and tuple(lab) == target:
                return float(e)
        raise KeyError(f"no state labeled {target} in spectrum")

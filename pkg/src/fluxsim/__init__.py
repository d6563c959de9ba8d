"""Numerical simulator for a magnetic fluxon in two- and three-cell
high-kinetic-inductance SQUIDs: spectra vs flux, tunneling splittings,
effective qubit/qutrit models, and the Ramsey-based readout protocol."""

__version__ = "0.1.0"

from fluxsim.circuit import CircuitParams, FluxConfig, potential_1d, potential_2d
from fluxsim.grids import PhaseGrid1D, PhaseGrid2D, Spectrum, StateLabel
from fluxsim.solver import spectrum_1d, spectrum_2d

__all__ = [
    "__version__",
    "CircuitParams",
    "FluxConfig",
    "potential_1d",
    "potential_2d",
    "PhaseGrid1D",
    "PhaseGrid2D",
    "Spectrum",
    "StateLabel",
    "spectrum_1d",
    "spectrum_2d",
]

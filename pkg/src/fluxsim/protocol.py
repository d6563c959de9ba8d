"""Time-domain protocol: quantum beats, Ramsey calibration, readout decode.

Qubits are decoherence-free (the underlying model has no T1/T2); an
optional symmetric bit-flip probability exists purely for histogram
realism.  Ramsey pi/2 pulses are instantaneous and ideal, and the phase
convention is fixed so that zero delay returns the qubit to |0>: the
excited-state population after the sequence is sin^2(pi f dt) with f the
(shifted) detuning in GHz and dt in ns.  With the calibrated delay T this
gives P1 = 0 for an unshifted qubit (phase 2 pi n) and P1 = 1 for a
shifted one (phase 2 pi (n + 1/2)), matching the conditional-flip readout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fluxsim.effective import TwoLevelModel
from fluxsim.errors import NoCommensurateDelayError

__all__ = [
    "BeatsTrace",
    "RamseyCalibration",
    "beats",
    "calibrate_delay",
    "ramsey_fringe",
    "decode_position",
    "run_protocol",
]


@dataclass(frozen=True)
class BeatsTrace:
    """Occupation probabilities of the left/right cells over time (ns)."""

    times: np.ndarray
    p_left: np.ndarray
    p_right: np.ndarray
    #: oscillation frequency sqrt(Delta^2 + eps^2), GHz
    frequency: float = 0.0


@dataclass(frozen=True)
class RamseyCalibration:
    """Solution of T = n / delta = (n + 1/2) / (delta + jz)."""

    detuning: float   # GHz
    jz: float         # GHz
    n: int
    delay: float      # ns
    residual: float   # relative defect of the double equality


def beats(m: TwoLevelModel, t_max: float, dt: float,
          initial: str = "L") -> BeatsTrace:
    """Closed-form two-level evolution of the fluxon occupation.

    Starting in |L>, P_R(t) = (Delta^2/(Delta^2+eps^2)) sin^2(pi Omega t)
    with Omega = sqrt(Delta^2 + eps^2) in GHz and t in ns.
    """
    if dt <= 0 or t_max <= 0:
        raise ValueError("t_max and dt must be positive")
    if initial not in ("L", "R"):
        raise ValueError(f"initial must be 'L' or 'R', got {initial!r}")
    t = np.arange(0.0, t_max + dt / 2.0, dt)
    omega = float(np.hypot(m.delta, m.epsilon))
    p_transfer = m.beats_amplitude() * np.sin(np.pi * omega * t) ** 2
    if initial == "L":
        p_left, p_right = 1.0 - p_transfer, p_transfer
    else:
        p_left, p_right = p_transfer, 1.0 - p_transfer
    return BeatsTrace(times=t, p_left=p_left, p_right=p_right, frequency=omega)


def calibrate_delay(jz: float, detuning: float, n_max: int = 1000,
                    tol: float = 1e-9) -> RamseyCalibration:
    """Smallest positive integer n with n/detuning = (n+1/2)/(detuning+jz).

    Exact when detuning/jz is rational with a small denominator; otherwise
    the closest match within ``tol`` (relative) is returned with its
    residual.
    """
    if jz <= 0 or detuning <= 0:
        raise ValueError("jz and detuning must be positive")
    best = None
    for n in range(1, n_max + 1):
        t1 = n / detuning
        t2 = (n + 0.5) / (detuning + jz)
        resid = abs(t1 - t2) / t1
        if best is None or resid < best[1]:
            best = (n, resid)
        if resid <= tol:
            return RamseyCalibration(detuning=detuning, jz=jz, n=n,
                                     delay=t1, residual=resid)
    raise NoCommensurateDelayError(
        f"no n <= {n_max} satisfies the delay condition within {tol:g} "
        f"(best n={best[0]} with residual {best[1]:.3g})")


def ramsey_fringe(detuning: float, jz: float, fluxon_shifts_this_qubit: bool,
                  dt_grid: np.ndarray) -> np.ndarray:
    """Ideal Ramsey excited-state population over delay times (ns)."""
    f = detuning + (jz if fluxon_shifts_this_qubit else 0.0)
    return np.sin(np.pi * f * np.asarray(dt_grid, dtype=float)) ** 2


def decode_position(f_outcome: int, m_outcome: int) -> str:
    """Joint qubit outcomes -> fluxon cell.

    Qubit f flips when the fluxon sits in the right cell; qubit m flips
    when it sits in the left cell.  (1, 1) lies outside the one-fluxon
    manifold and decodes to 'invalid'.
    """
    return {(0, 0): "C", (1, 0): "R", (0, 1): "L", (1, 1): "invalid"}[
        (int(f_outcome), int(m_outcome))]


def ideal_outcomes(position: str) -> tuple[int, int]:
    """Noise-free (f, m) outcomes for a given fluxon cell."""
    return {"C": (0, 0), "R": (1, 0), "L": (0, 1)}[position]


def run_protocol(true_position: str, shots: int, rng_seed: int = 0,
                 noise: float = 0.0) -> dict:
    """Sample the three-step readout: init, conditional-flip CPS, decode.

    ``noise`` is an independent bit-flip probability per qubit.  Returns a
    histogram over (f, m) outcomes, decoded positions per shot, and the
    decode accuracy.  Deterministic under a fixed seed.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if true_position not in ("L", "C", "R"):
        raise ValueError(f"true_position must be L, C or R, got {true_position!r}")
    rng = np.random.default_rng(rng_seed)
    f0, m0 = ideal_outcomes(true_position)
    flips = rng.random(size=(shots, 2)) < noise
    f_out = np.where(flips[:, 0], 1 - f0, f0)
    m_out = np.where(flips[:, 1], 1 - m0, m0)
    histogram: dict[tuple[int, int], int] = {}
    decoded = []
    for fo, mo in zip(f_out, m_out):
        key = (int(fo), int(mo))
        histogram[key] = histogram.get(key, 0) + 1
        decoded.append(decode_position(*key))
    accuracy = decoded.count(true_position) / shots
    return {"histogram": histogram, "decoded": decoded, "accuracy": accuracy,
            "true_position": true_position, "shots": shots, "seed": rng_seed,
            "noise": noise}

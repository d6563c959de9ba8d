"""Backend selection for the 2D Hamiltonian stencil kernel.

At import time the compiled Cython extension is preferred; if it is not
available (pure-Python install) a vectorized NumPy implementation with
identical semantics is used.  ``BACKEND`` records which one was picked.
"""

from __future__ import annotations

import numpy as np

__all__ = ["BACKEND", "apply_h2d", "apply_h2d_numpy"]


def apply_h2d_numpy(diag: np.ndarray, cf: float, cm: float,
                    x: np.ndarray, out: np.ndarray) -> np.ndarray:
    """5-point stencil matvec with Dirichlet boundaries (NumPy fallback)."""
    np.multiply(diag, x, out=out)
    out[1:, :] -= cf * x[:-1, :]
    out[:-1, :] -= cf * x[1:, :]
    out[:, 1:] -= cm * x[:, :-1]
    out[:, :-1] -= cm * x[:, 1:]
    return out


try:
    from fluxsim._stencil import apply_h2d  # type: ignore[attr-defined]

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    apply_h2d = apply_h2d_numpy
    BACKEND = "numpy"

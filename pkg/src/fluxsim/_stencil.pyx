# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled 5-point-stencil kernel for the 2D phase-space Hamiltonian.

Applies  (H x)_{ij} = diag_{ij} x_{ij} - cf (x_{i-1,j} + x_{i+1,j})
                                      - cm (x_{i,j-1} + x_{i,j+1})
with Dirichlet (zero) values outside the grid.  ``diag`` already contains
the potential plus the stencil's central kinetic contribution.
"""

import numpy as np
cimport numpy as cnp


def apply_h2d(cnp.ndarray[cnp.float64_t, ndim=2] diag,
              double cf, double cm,
              cnp.ndarray[cnp.float64_t, ndim=2] x,
              cnp.ndarray[cnp.float64_t, ndim=2] out):
    cdef Py_ssize_t nf = diag.shape[0]
    cdef Py_ssize_t nm = diag.shape[1]
    cdef Py_ssize_t i, j
    cdef double acc
    with nogil:
        for i in range(nf):
            for j in range(nm):
                acc = diag[i, j] * x[i, j]
                if i > 0:
                    acc -= cf * x[i - 1, j]
                if i < nf - 1:
                    acc -= cf * x[i + 1, j]
                if j > 0:
                    acc -= cm * x[i, j - 1]
                if j < nm - 1:
                    acc -= cm * x[i, j + 1]
                out[i, j] = acc
    return out

"""Finite-difference eigensolvers for the 1D and 2D phase Hamiltonians.

Kinetic term 4 E_C n^2 with n = -i d/dphi becomes -4 E_C times the second
central difference; the potential sits on the diagonal.  Dirichlet (zero)
boundaries are used: the inductive parabola confines the wavefunction, so
periodic conditions would be wrong and truncation is exponentially accurate
once the boundary potential dominates.

1D problems are solved by direct symmetric-tridiagonal diagonalization.
2D problems assemble the 5-point stencil as a sparse matrix and use
shift-invert Lanczos (ARPACK) for the lowest eigenpairs; residuals are
verified with the stencil kernel from :mod:`fluxsim.kernels`.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import minimize

from fluxsim import kernels
from fluxsim.circuit import CircuitParams, FluxConfig, potential_1d, potential_2d
from fluxsim.errors import (
    AmbiguousClassificationError,
    GridTooNarrowError,
    NoConvergenceError,
)
from fluxsim.grids import PhaseGrid1D, PhaseGrid2D, Spectrum, StateLabel

__all__ = [
    "default_grid_1d",
    "default_grid_2d",
    "discretize_1d",
    "spectrum_1d",
    "spectrum_2d",
    "find_wells_2d",
    "classify_state",
    "converge",
    "richardson",
]

#: margin (GHz) by which the boundary potential must exceed the largest
#: requested eigenvalue (pre-solve check in discretize_1d)
_BOUNDARY_MARGIN = 5.0

#: squared boundary amplitude above which a normalized eigenstate is
#: considered clipped by the Dirichlet wall (post-solve check)
_EDGE_MASS_TOL = 1e-7


def default_grid_1d(phi_delta: float, n: int = 2001,
                    span: float = 3 * np.pi) -> PhaseGrid1D:
    """Vertex-centered 1D grid; equals [-2 pi, 4 pi] at phi_delta = 1."""
    return PhaseGrid1D.centered(np.pi * phi_delta, span=span, n=n)


def default_grid_2d(f: FluxConfig, n: int = 201,
                    span: float = 3 * np.pi) -> PhaseGrid2D:
    """Per-axis vertex-centered 2D grid (the m-axis vertex depends on the
    flux configuration, so a fixed interval would clip one of the wells)."""
    return PhaseGrid2D(
        PhaseGrid1D.centered(np.pi * f.delta_f, span=span, n=n),
        PhaseGrid1D.centered(np.pi * f.delta_m, span=span, n=n),
    )


def discretize_1d(p: CircuitParams, phi_delta: float,
                  g: PhaseGrid1D, k_max_energy: float | None = None,
                  potential: Callable[[np.ndarray], np.ndarray] | None = None,
                  ) -> tuple[np.ndarray, np.ndarray]:
    """Symmetric tridiagonal operator: (diagonal, off-diagonal) arrays.

    ``potential`` overrides the two-cell potential (used by the analytic
    solver oracles).  When ``k_max_energy`` is given, the boundary
    potential is checked against it.
    """
    x = g.points
    u = potential(x) if potential is not None else potential_1d(p, phi_delta, x)
    if k_max_energy is not None:
        edge = min(u[0], u[-1])
        if edge < k_max_energy + _BOUNDARY_MARGIN:
            raise GridTooNarrowError(
                f"boundary potential {edge:.3g} GHz does not dominate the "
                f"requested levels (~{k_max_energy:.3g} GHz); widen the grid")
    t = 4.0 * p.ec / g.h**2
    diag = 2.0 * t + u
    off = np.full(g.n - 1, -t)
    return diag, off


def spectrum_1d(p: CircuitParams, phi_delta: float, k: int = 4,
                g: PhaseGrid1D | None = None,
                potential: Callable[[np.ndarray], np.ndarray] | None = None,
                ) -> Spectrum:
    """Lowest k eigenpairs of the two-cell Hamiltonian."""
    if g is None:
        g = default_grid_1d(phi_delta)
    if k > g.n // 4:
        raise ValueError(f"k={k} too large for n={g.n}")
    diag, off = discretize_1d(p, phi_delta, g, potential=potential)
    try:
        w, v = eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NoConvergenceError(f"tridiagonal eigensolver failed: {exc}") from exc
    v = v / np.sqrt(g.h)  # l2 -> trapezoid normalization (Dirichlet edges ~ 0)
    edge_mass = v[0] ** 2 + v[-1] ** 2
    if np.any(edge_mass > _EDGE_MASS_TOL):
        raise GridTooNarrowError(
            f"eigenstates reach the grid boundary (amplitude^2 up to "
            f"{edge_mass.max():.3g}); widen the grid")
    res = np.empty(k)
    for i in range(k):
        hv = diag * v[:, i]
        hv[1:] += off * v[:-1, i]
        hv[:-1] += off * v[1:, i]
        res[i] = np.linalg.norm(hv - w[i] * v[:, i]) * np.sqrt(g.h)
    return Spectrum(eigenvalues=w, eigenvectors=v, grid=g, residuals=res)


def _assemble_2d(p: CircuitParams, f: FluxConfig, g: PhaseGrid2D,
                 coupling: float | None = None):
    """Sparse 5-point operator plus the stencil pieces (diag2d, cf, cm)."""
    xf, xm = g.grid_f.points, g.grid_m.points
    ff, mm = np.meshgrid(xf, xm, indexing="ij")
    u = potential_2d(p, f, ff, mm)
    if coupling is not None:  # override the -el phi_f phi_m cross term
        u = u + (p.el - coupling) * ff * mm
    cf = 4.0 * p.ec / g.grid_f.h**2
    cm = 4.0 * p.ec / g.grid_m.h**2
    diag2d = u + 2.0 * (cf + cm)
    nf, nm = g.grid_f.n, g.grid_m.n
    lap_f = sp.diags([np.ones(nf - 1), np.ones(nf - 1)], [-1, 1])
    lap_m = sp.diags([np.ones(nm - 1), np.ones(nm - 1)], [-1, 1])
    h = (sp.diags(diag2d.ravel())
         - cf * sp.kron(lap_f, sp.identity(nm))
         - cm * sp.kron(sp.identity(nf), lap_m)).tocsc()
    return h, diag2d, cf, cm


def spectrum_2d(p: CircuitParams, f: FluxConfig, k: int = 12,
                g: PhaseGrid2D | None = None,
                classify: bool = True,
                coupling: float | None = None) -> Spectrum:
    """Lowest k eigenpairs of the three-cell Hamiltonian, classified into
    |lambda, k, l> labels where possible.

    ``coupling`` overrides the inductive cross-term coefficient (0 gives the
    separable sanity limit).
    """
    if g is None:
        g = default_grid_2d(f)
    h, diag2d, cf, cm = _assemble_2d(p, f, g, coupling=coupling)
    try:
        w, v = spla.eigsh(h, k=k, sigma=0.0, which="LM")
    except (spla.ArpackNoConvergence, RuntimeError) as exc:
        raise NoConvergenceError(f"2D eigensolver failed: {exc}") from exc
    order = np.argsort(w)
    w, v = w[order], v[:, order]
    nf, nm = g.grid_f.n, g.grid_m.n
    weight = np.sqrt(g.grid_f.h * g.grid_m.h)
    psi = (v / weight).reshape(nf, nm, k)
    # the coupling term tilts far corners below the top requested level, so
    # a raw boundary-potential check is too strict in 2D; instead flag the
    # individual states that touch the truncation boundary (Dirichlet wall
    # artifacts) and never classify them
    boundary_mass = (np.abs(psi[0]).max(axis=0) ** 2
                     + np.abs(psi[-1]).max(axis=0) ** 2
                     + np.abs(psi[:, 0]).max(axis=0) ** 2
                     + np.abs(psi[:, -1]).max(axis=0) ** 2)
    leaky = boundary_mass > 1e-10
    if leaky.sum() > k // 2:
        raise GridTooNarrowError(
            f"{int(leaky.sum())} of {k} eigenstates reach the grid boundary "
            f"(amplitude^2 up to {boundary_mass.max():.3g}); widen the domain")
    res = np.empty(k)
    buf = np.empty((nf, nm))
    for i in range(k):
        kernels.apply_h2d(diag2d, cf, cm, np.ascontiguousarray(psi[:, :, i]), buf)
        res[i] = np.linalg.norm(buf - w[i] * psi[:, :, i]) * weight
    spec = Spectrum(eigenvalues=w, eigenvectors=psi, grid=g, residuals=res)
    if classify:
        wells = find_wells_2d(p, f)
        labels: list[StateLabel | None] = []
        for i in range(k):
            if leaky[i]:
                labels.append(None)
                continue
            try:
                labels.append(classify_state(psi[:, :, i], g, wells))
            except AmbiguousClassificationError:
                labels.append(None)
        spec.labels = labels
    return spec


def find_wells_2d(p: CircuitParams, f: FluxConfig) -> dict[str, tuple[float, float]]:
    """The three lowest minima of the 2D potential, labeled L/C/R.

    C is the well connected to both others; L differs from C by ~2 pi in
    phi_f (fluxon moved across junction f), R by ~2 pi in phi_m.
    """
    vf, vm = np.pi * f.delta_f, np.pi * f.delta_m
    xf = np.linspace(vf - 2.5 * np.pi, vf + 2.5 * np.pi, 121)
    xm = np.linspace(vm - 2.5 * np.pi, vm + 2.5 * np.pi, 121)
    ff, mm = np.meshgrid(xf, xm, indexing="ij")
    u = potential_2d(p, f, ff, mm)
    cand = []
    interior = u[1:-1, 1:-1]
    is_min = ((interior < u[:-2, 1:-1]) & (interior < u[2:, 1:-1])
              & (interior < u[1:-1, :-2]) & (interior < u[1:-1, 2:]))
    for i, j in np.argwhere(is_min):
        r = minimize(lambda z: potential_2d(p, f, z[0], z[1]),
                     x0=[xf[i + 1], xm[j + 1]], method="Nelder-Mead",
                     options={"xatol": 1e-10, "fatol": 1e-12})
        cand.append((r.fun, r.x[0], r.x[1]))
    cand.sort()
    # deduplicate refined minima that collapsed to the same point
    uniq: list[tuple[float, float, float]] = []
    for c in cand:
        if all(np.hypot(c[1] - q[1], c[2] - q[2]) > 0.5 for q in uniq):
            uniq.append(c)
    if len(uniq) < 3:
        raise NoConvergenceError("fewer than three potential wells found")
    three = uniq[:3]
    # identify C: the well from which one neighbor differs mainly in phi_f
    # and the other mainly in phi_m
    for c_idx in range(3):
        _, cf_, cm_ = three[c_idx]
        rest = [three[i] for i in range(3) if i != c_idx]
        d = [(abs(r[1] - cf_) > np.pi, abs(r[2] - cm_) > np.pi) for r in rest]
        if sorted(d) == [(False, True), (True, False)]:
            l_well = rest[0] if d[0] == (True, False) else rest[1]
            r_well = rest[0] if d[0] == (False, True) else rest[1]
            return {"C": (cf_, cm_), "L": (l_well[1], l_well[2]),
                    "R": (r_well[1], r_well[2])}
    raise NoConvergenceError("could not identify the L/C/R well topology")


def _count_nodes(profile: np.ndarray) -> int:
    amax = np.abs(profile).max()
    if amax == 0.0:
        return 0
    s = profile[np.abs(profile) > 0.1 * amax]
    return int(np.count_nonzero(np.sign(s[1:]) != np.sign(s[:-1])))


def classify_state(psi: np.ndarray, g: PhaseGrid2D,
                   wells: dict[str, tuple[float, float]]) -> StateLabel:
    """Assign a |lambda, k, l> label to a 2D eigenvector.

    lambda is the well nearest to the probability centroid; k and l count
    sign changes along grid lines through the state's amplitude maximum
    near that well.  Raises AmbiguousClassificationError when the centroid
    is farther than half the minimum inter-well distance from every well,
    or when an occupancy exceeds 1.
    """
    xf, xm = g.grid_f.points, g.grid_m.points
    prob = psi**2
    tot = prob.sum()
    cf = float((prob.sum(axis=1) * xf).sum() / tot)
    cm = float((prob.sum(axis=0) * xm).sum() / tot)
    names = list(wells)
    dists = {nm: np.hypot(cf - wells[nm][0], cm - wells[nm][1]) for nm in names}
    pts = list(wells.values())
    min_sep = min(np.hypot(a[0] - b[0], a[1] - b[1])
                  for i, a in enumerate(pts) for b in pts[i + 1:])
    best = min(dists, key=dists.get)
    if dists[best] > 0.5 * min_sep:
        raise AmbiguousClassificationError(
            f"centroid ({cf:.2f}, {cm:.2f}) is {dists[best]:.2f} rad from the "
            f"nearest well; limit {0.5 * min_sep:.2f}")
    wf, wm = wells[best]
    # restrict to a window around the well and slice through the amplitude
    # maximum (slicing through the well center would hit nodal lines)
    win_f = np.abs(xf - wf) < np.pi
    win_m = np.abs(xm - wm) < np.pi
    sub = psi[np.ix_(win_f, win_m)]
    i0, j0 = np.unravel_index(np.argmax(np.abs(sub)), sub.shape)
    k = _count_nodes(sub[:, j0])
    ell = _count_nodes(sub[i0, :])
    if k > 1 or ell > 1:
        raise AmbiguousClassificationError(
            f"plasmon occupancies ({k}, {ell}) outside the supported range")
    return StateLabel(well=best, k=k, ell=ell)


def converge(solve: Callable[[int], Spectrum], n0: int,
             target_tol: float = 1e-4, n_cap: int = 50_000,
             ) -> tuple[Spectrum, float, float]:
    """Refine resolution (doubling the interval count) until successive
    eigenvalue changes fall below ``target_tol`` (GHz).

    ``solve`` maps a point count to a Spectrum on a nested grid family.
    Returns (finest spectrum, achieved tolerance, observed convergence
    order); the order should be ~2 for central differences.
    """
    ns = [n0]
    specs = [solve(n0)]
    diffs: list[float] = []
    while True:
        n_next = 2 * (ns[-1] - 1) + 1
        if n_next > n_cap:
            raise NoConvergenceError(
                f"not converging: tol {target_tol} GHz unreachable below "
                f"n={n_cap} (last change {diffs[-1] if diffs else np.inf:.3g})")
        ns.append(n_next)
        specs.append(solve(n_next))
        m = min(len(specs[-1]), len(specs[-2]))
        diffs.append(float(np.max(np.abs(
            specs[-1].eigenvalues[:m] - specs[-2].eigenvalues[:m]))))
        if diffs[-1] < target_tol:
            break
    if len(diffs) >= 2 and diffs[-1] > 0:
        order = float(np.log2(diffs[-2] / diffs[-1]))
    else:
        order = float("nan")
    return specs[-1], diffs[-1], order


def richardson(coarse: Sequence[float], fine: Sequence[float],
               h_coarse: float, h_fine: float, order: int = 2) -> np.ndarray:
    """Richardson-extrapolate eigenvalues assuming E(h) = E* + c h^order."""
    coarse = np.asarray(coarse, dtype=float)
    fine = np.asarray(fine, dtype=float)
    r = (h_coarse / h_fine) ** order
    return (r * fine - coarse) / (r - 1.0)

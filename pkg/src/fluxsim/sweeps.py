"""Parameter sweeps, result tables, and CSV/JSON emission.

Tables are rectangular; a failing row keeps its parameter cell, carries
NaN in the numeric cells and a message in the trailing ``error`` column,
so long sweeps survive isolated failures.  Rows are independent and may be
computed in a process pool; results are assembled in input order, so
parallel and serial runs produce identical tables.
"""

from __future__ import annotations

import csv
import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from fluxsim import __version__
from fluxsim.circuit import CircuitParams, FluxConfig
from fluxsim.effective import (current_elements, extract_qutrit_qubit,
                               two_level_fit)
from fluxsim.errors import FluxsimError
from fluxsim.grids import PhaseGrid1D, PhaseGrid2D
from fluxsim.protocol import beats, calibrate_delay, ramsey_fringe, run_protocol
from fluxsim.semiclassics import asymptotic_splitting, wkb_splitting
from fluxsim.solver import richardson, spectrum_1d, spectrum_2d

__all__ = [
    "SweepTable",
    "PRESETS",
    "sweep_spectrum_1d",
    "sweep_beta",
    "sweep_current",
    "run_three_cell",
    "three_cell_point",
    "beats_table",
    "ramsey_table",
    "protocol_table",
    "emit",
    "parse_csv",
    "write_manifest",
]


@dataclass
class SweepTable:
    columns: list[str]
    rows: list[list]
    metadata: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows], dtype=float)

    def ok_rows(self) -> list[list]:
        if "error" not in self.columns:
            return self.rows
        i = self.columns.index("error")
        return [r for r in self.rows if not r[i]]


def _metadata(config: dict, **extra) -> dict:
    md = {"artifact": "fluxsim", "version": __version__,
          "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
          "config": dict(config)}
    md.update(extra)
    return md


# ---------------------------------------------------------------- presets

PRESETS: dict[str, dict] = {
    # two-cell spectra vs flux difference
    "fig4": {"mode": "spectrum1d", "ejf_ghz": 2.0, "ec_ghz": 0.5,
             "el_ghz": 0.15, "sweep_start": 0.9, "sweep_stop": 1.1,
             "sweep_steps": 81, "levels": 4},
    "fig5": {"mode": "spectrum1d", "ejf_ghz": 15.0, "ec_ghz": 0.5,
             "el_ghz": 0.15, "sweep_start": 0.9, "sweep_stop": 1.1,
             "sweep_steps": 81, "levels": 4},
    # splitting vs beta: ejf = 1..100 GHz at ec = 1, el = 0.15
    "fig6": {"mode": "beta", "ec_ghz": 1.0, "el_ghz": 0.15,
             "sweep_start": 1.0, "sweep_stop": 100.0, "sweep_steps": 25},
    # current matrix elements vs flux difference
    "fig7a": {"mode": "current", "ejf_ghz": 2.0, "ec_ghz": 0.5,
              "el_ghz": 0.15, "sweep_start": 0.9, "sweep_stop": 1.1,
              "sweep_steps": 81},
    "fig7b": {"mode": "current", "ejf_ghz": 15.0, "ec_ghz": 0.5,
              "el_ghz": 0.15, "sweep_start": 0.9, "sweep_stop": 1.1,
              "sweep_steps": 81},
    # three-cell spectrum vs flux difference; phi1 + phi2 = 1 flux quantum
    # traps a single fluxon (the zero-sum choice does not)
    "fig8": {"mode": "spectrum2d", "ejf_ghz": 20.0, "ejm_ghz": 22.0,
             "ec_ghz": 0.5, "el_ghz": 0.15, "phi1": 0.0, "phi2": 1.0,
             "phim": 0.0, "sweep_start": 0.8, "sweep_stop": 1.2,
             "sweep_steps": 21, "grid2d_n": 201, "levels": 14},
    # Ramsey fringes with the extracted dispersive shifts
    "fig11": {"mode": "ramsey", "jz_ghz": 0.0073, "detuning_ghz": 0.0146,
              "t_max_ns": 160.0, "dt_ns": 0.5},
}


# ----------------------------------------------------- row workers (picklable)

def _row_spectrum_1d(args) -> list:
    p, phi_delta, k, grid_n = args
    try:
        g = PhaseGrid1D.centered(np.pi * phi_delta, n=grid_n)
        s = spectrum_1d(p, phi_delta, k=k, g=g)
        e = list(map(float, s.eigenvalues))
        return [phi_delta, *e, e[1] - e[0], ""]
    except FluxsimError as exc:
        return [phi_delta, *([float("nan")] * (k + 1)), str(exc)]


def _row_beta(args) -> list:
    ejf, ec, el, grid_n = args
    p = CircuitParams(ejf=ejf, ejm=ejf, ec=ec, el=el)
    beta = p.beta_f
    g = PhaseGrid1D.centered(np.pi, n=grid_n)
    s = spectrum_1d(p, 1.0, k=2, g=g)
    dnum = float(s.eigenvalues[1] - s.eigenvalues[0])
    err = []
    try:
        dwkb = wkb_splitting(p)
    except FluxsimError as exc:
        dwkb, err = float("nan"), [f"wkb: {exc}"]
    try:
        dasy = asymptotic_splitting(p)
    except FluxsimError as exc:
        dasy = float("nan")
        err.append(f"asymptotic: {exc}")
    return [beta, dnum, dwkb, dasy, "; ".join(err)]


def _row_current(args) -> list:
    p, phi_delta, grid_n = args
    try:
        g = PhaseGrid1D.centered(np.pi * phi_delta, n=grid_n)
        s = spectrum_1d(p, phi_delta, k=2, g=g)
        ce = current_elements(s)
        return [phi_delta, ce.i00, ce.i11, ce.i01, ""]
    except FluxsimError as exc:
        return [phi_delta, *([float("nan")] * 3), str(exc)]


_THREE_CELL_COLS = [
    "phi_delta_f",
    "e_L00", "e_C00", "e_R00", "e_L10", "e_C10", "e_R10",
    "e_L01", "e_C01", "e_R01",
    "omega_pf", "omega_pm", "jz_f", "jz_m",
]


def _row_three_cell(args) -> list:
    p, sigma_f, phim, phi_delta_f, k, grid_n, refine = args
    try:
        if refine:
            point = three_cell_point(p, phi_delta_f, sigma_f=sigma_f,
                                     phim=phim, k=k, n_coarse=grid_n,
                                     n_fine=(3 * grid_n) // 2)
            e, m = point["energies"], point["model"]
        else:
            f = FluxConfig.from_combinations(phi_delta_f, sigma_f, phim)
            s = spectrum_2d(p, f, k=k, g=_grid2d(f, grid_n))
            m = extract_qutrit_qubit(s)
            e = {tuple(lab): float(ev)
                 for lab, ev in zip(s.labels, s.eigenvalues) if lab is not None}
        vals = [e[(w, kk, ll)] for w in "LCR" for kk, ll in
                ((0, 0),)] + [e[(w, 1, 0)] for w in "LCR"] \
            + [e[(w, 0, 1)] for w in "LCR"]
        return [phi_delta_f, *vals, m.omega_pf, m.omega_pm, m.jz_f, m.jz_m, ""]
    except (FluxsimError, KeyError) as exc:
        return [phi_delta_f, *([float("nan")] * (len(_THREE_CELL_COLS) - 1)),
                f"{type(exc).__name__}: {exc}"]


def _grid2d(f: FluxConfig, n: int) -> PhaseGrid2D:
    return PhaseGrid2D(PhaseGrid1D.centered(np.pi * f.delta_f, n=n),
                       PhaseGrid1D.centered(np.pi * f.delta_m, n=n))


def _map_rows(worker, arglist, threads: int) -> list[list]:
    if threads <= 1 or len(arglist) <= 1:
        return [worker(a) for a in arglist]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, arglist))


# ----------------------------------------------------------------- sweeps

def sweep_spectrum_1d(p: CircuitParams, start: float, stop: float, steps: int,
                      k: int = 4, grid_n: int = 2001, threads: int = 1,
                      config: dict | None = None) -> SweepTable:
    """Two-cell energy levels vs flux difference (Fig. 4/5 analogue)."""
    phis = np.linspace(start, stop, steps)
    rows = _map_rows(_row_spectrum_1d,
                     [(p, float(phi), k, grid_n) for phi in phis], threads)
    cols = ["phi_delta", *[f"e{i}" for i in range(k)], "gap", "error"]
    return SweepTable(cols, rows, _metadata(config or {}, mode="spectrum1d"))


def sweep_beta(ec: float = 1.0, el: float = 0.15, ej_start: float = 1.0,
               ej_stop: float = 100.0, steps: int = 25, grid_n: int = 4001,
               threads: int = 1, config: dict | None = None) -> SweepTable:
    """Exact vs WKB vs asymptotic splitting over beta (Fig. 6 analogue).

    beta is swept by varying ejf geometrically at fixed ec, el.
    """
    ejs = np.geomspace(ej_start, ej_stop, steps)
    rows = _map_rows(_row_beta, [(float(ej), ec, el, grid_n) for ej in ejs],
                     threads)
    cols = ["beta", "delta_numeric", "delta_wkb", "delta_asymptotic", "error"]
    return SweepTable(cols, rows, _metadata(config or {}, mode="beta",
                                            ec_ghz=ec, el_ghz=el))


def sweep_current(p: CircuitParams, start: float, stop: float, steps: int,
                  grid_n: int = 2001, threads: int = 1,
                  config: dict | None = None) -> SweepTable:
    """Current matrix elements vs flux difference (Fig. 7 analogue)."""
    phis = np.linspace(start, stop, steps)
    rows = _map_rows(_row_current,
                     [(p, float(phi), grid_n) for phi in phis], threads)
    return SweepTable(["phi_delta", "i00", "i11", "i01", "error"], rows,
                      _metadata(config or {}, mode="current"))


def run_three_cell(p: CircuitParams, start: float = 0.8, stop: float = 1.2,
                   steps: int = 21, sigma_f: float = 1.0, phim: float = 0.0,
                   k: int = 14, grid_n: int = 201, refine: bool = False,
                   threads: int = 1, config: dict | None = None) -> SweepTable:
    """Classified three-cell spectrum vs flux difference (Fig. 8 analogue)."""
    phis = np.linspace(start, stop, steps)
    rows = _map_rows(_row_three_cell,
                     [(p, sigma_f, phim, float(phi), k, grid_n, refine)
                      for phi in phis], threads)
    return SweepTable([*_THREE_CELL_COLS, "error"], rows,
                      _metadata(config or {}, mode="spectrum2d"))


def three_cell_point(p: CircuitParams, phi_delta_f: float = 1.0,
                     sigma_f: float = 1.0, phim: float = 0.0, k: int = 14,
                     n_coarse: int = 201, n_fine: int = 301) -> dict:
    """Converged single-flux-point solve: energies from two grids matched by
    label and Richardson-extrapolated at order 2."""
    f = FluxConfig.from_combinations(phi_delta_f, sigma_f, phim)
    s_lo = spectrum_2d(p, f, k=k, g=_grid2d(f, n_coarse))
    s_hi = spectrum_2d(p, f, k=k, g=_grid2d(f, n_fine))

    def by_label(s) -> dict:
        out = {}
        for lab, e in zip(s.labels, s.eigenvalues):
            if lab is not None and tuple(lab) not in out:
                out[tuple(lab)] = float(e)
        return out

    lo, hi = by_label(s_lo), by_label(s_hi)
    h_lo = 1.0 / (n_coarse - 1)
    h_hi = 1.0 / (n_fine - 1)
    energies = {lab: float(richardson([lo[lab]], [hi[lab]], h_lo, h_hi)[0])
                for lab in lo.keys() & hi.keys()}
    spec = s_hi
    spec.labels = list(spec.labels)
    # re-extract the model from the extrapolated energies
    from fluxsim.effective import QutritQubitModel  # local to avoid cycle

    def tf(w):
        return energies[(w, 1, 0)] - energies[(w, 0, 0)]

    def tm(w):
        return energies[(w, 0, 1)] - energies[(w, 0, 0)]

    omega_pf = 0.5 * (tf("L") + tf("C"))
    omega_pm = 0.5 * (tm("C") + tm("R"))
    model = QutritQubitModel(
        omega_pf=omega_pf, omega_pm=omega_pm,
        eps_l=energies[("L", 0, 0)], eps_c=energies[("C", 0, 0)],
        eps_r=energies[("R", 0, 0)],
        jz_f=tf("R") - omega_pf, jz_m=tm("L") - omega_pm)
    return {"energies": energies, "model": model, "spectrum": spec}


def beats_table(p: CircuitParams, phi_delta: float = 1.0, t_max: float = 50.0,
                dt: float = 0.05, config: dict | None = None) -> SweepTable:
    """Quantum-beats trace for the two-cell circuit at the given flux."""
    m = two_level_fit(p, phi_delta)
    tr = beats(m, t_max=t_max, dt=dt, initial="L")
    rows = [[float(t), float(pl), float(pr), ""]
            for t, pl, pr in zip(tr.times, tr.p_left, tr.p_right)]
    return SweepTable(["t_ns", "p_left", "p_right", "error"], rows,
                      _metadata(config or {}, mode="beats", delta_ghz=m.delta,
                                epsilon_ghz=m.epsilon))


def ramsey_table(jz: float, detuning: float, t_max: float = 160.0,
                 dt: float = 0.5, config: dict | None = None) -> SweepTable:
    """Ramsey fringes with and without the fluxon-conditioned shift."""
    cal = calibrate_delay(jz, detuning)
    ts = np.arange(0.0, t_max + dt / 2.0, dt)
    p_shift = ramsey_fringe(detuning, jz, True, ts)
    p_plain = ramsey_fringe(detuning, jz, False, ts)
    rows = [[float(t), float(a), float(b), ""]
            for t, a, b in zip(ts, p_shift, p_plain)]
    return SweepTable(["dt_ns", "p1_shifted", "p1_unshifted", "error"], rows,
                      _metadata(config or {}, mode="ramsey",
                                delay_ns=cal.delay, n=cal.n))


def protocol_table(jz_f: float = 0.0073, jz_m: float = 0.0061,
                   shots: int = 1000, seed: int = 0, noise: float = 0.0,
                   positions: str = "LCR",
                   config: dict | None = None) -> SweepTable:
    """Shot histograms of the joint readout for each true fluxon position."""
    cal_f = calibrate_delay(jz_f, 2.0 * jz_f)
    cal_m = calibrate_delay(jz_m, 2.0 * jz_m)
    rows = []
    for pos in positions:
        r = run_protocol(pos, shots=shots, rng_seed=seed, noise=noise)
        h = r["histogram"]
        rows.append([pos, float(h.get((0, 0), 0)), float(h.get((1, 0), 0)),
                     float(h.get((0, 1), 0)), float(h.get((1, 1), 0)),
                     float(r["accuracy"]), ""])
    return SweepTable(
        ["true_position", "n_00", "n_10", "n_01", "n_11", "accuracy", "error"],
        rows, _metadata(config or {}, mode="protocol", shots=shots, seed=seed,
                        noise=noise, delay_f_ns=cal_f.delay,
                        delay_m_ns=cal_m.delay))


# --------------------------------------------------------------- emission

def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def emit(table: SweepTable, fmt: str, path: str | Path) -> Path:
    """Write a table as CSV ('#'-prefixed metadata comment lines, then a
    header row) or JSON ({metadata, columns, rows})."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "csv":
            with open(path, "w", newline="") as fh:
                fh.write(f"# {json.dumps(table.metadata, sort_keys=True)}\n")
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(table.columns)
                for r in table.rows:
                    writer.writerow([_fmt(v) for v in r])
        elif fmt == "json":
            path.write_text(json.dumps(
                {"metadata": table.metadata, "columns": table.columns,
                 "rows": table.rows}, sort_keys=True, indent=1) + "\n")
        else:
            raise ValueError(f"unknown format {fmt!r}")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def parse_csv(path: str | Path) -> SweepTable:
    """Inverse of emit(..., 'csv'); numeric cells become floats."""
    lines = Path(path).read_text().splitlines()
    meta = {}
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        meta.update(json.loads(lines[i][1:].strip()))
        i += 1
    reader = csv.reader(lines[i:])
    columns = next(reader)
    rows = []
    for cells in reader:
        if not cells:
            continue
        row = []
        for cell in cells:
            try:
                row.append(float(cell) if cell != "" else "")
            except ValueError:
                row.append(cell)
        rows.append(row)
    return SweepTable(columns, rows, meta)


def write_manifest(paths: list[Path], manifest_path: str | Path) -> Path:
    """List emitted files with content hashes for reproducibility checks."""
    manifest_path = Path(manifest_path)
    entries = []
    for p in paths:
        digest = hashlib.sha256(Path(p).read_bytes()).hexdigest()
        entries.append({"path": str(p), "sha256": digest,
                        "bytes": Path(p).stat().st_size})
    manifest_path.write_text(json.dumps(
        {"version": __version__, "files": entries}, indent=1,
        sort_keys=True) + "\n")
    return manifest_path

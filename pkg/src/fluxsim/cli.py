"""Command-line interface.

    fluxsim <mode> [--config FILE] [--preset NAME] [--out PATH]
                   [--format csv|json] [--levels K] [--threads N]

Modes: spectrum1d, spectrum2d, beta, current, wkb-compare, beats, ramsey,
protocol.  Exit codes: 0 success, 1 configuration error, 2 solver failure
affecting every row.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from fluxsim import __version__
from fluxsim.circuit import load_config, params_from_config
from fluxsim.errors import FluxsimError
from fluxsim.sweeps import (PRESETS, SweepTable, beats_table, emit,
                            protocol_table, ramsey_table, run_three_cell,
                            sweep_beta, sweep_current, sweep_spectrum_1d,
                            write_manifest)

MODES = ["spectrum1d", "spectrum2d", "beta", "current", "wkb-compare",
         "beats", "ramsey", "protocol"]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fluxsim", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("mode", choices=MODES)
    ap.add_argument("--config", type=Path, help="flat JSON config file")
    ap.add_argument("--preset", choices=sorted(PRESETS),
                    help="named parameter set (config keys override it)")
    ap.add_argument("--out", type=Path, default=None, help="output file path")
    ap.add_argument("--format", choices=["csv", "json"], default="csv")
    ap.add_argument("--levels", type=int, default=None, help="eigenstate count")
    ap.add_argument("--threads", type=int, default=1,
                    help="parallel workers for sweep rows")
    return ap


def _build_table(mode: str, cfg: dict, levels: int | None,
                 threads: int) -> SweepTable:
    start = cfg.get("sweep_start", 0.9)
    stop = cfg.get("sweep_stop", 1.1)
    steps = int(cfg.get("sweep_steps", 81))
    k = levels or int(cfg.get("levels", 4))
    if mode == "spectrum1d":
        return sweep_spectrum_1d(params_from_config(cfg), start, stop, steps,
                                 k=k, grid_n=int(cfg.get("grid1d_n", 2001)),
                                 threads=threads, config=cfg)
    if mode in ("beta", "wkb-compare"):
        return sweep_beta(ec=cfg.get("ec_ghz", 1.0), el=cfg.get("el_ghz", 0.15),
                          ej_start=cfg.get("sweep_start", 1.0),
                          ej_stop=cfg.get("sweep_stop", 100.0),
                          steps=int(cfg.get("sweep_steps", 25)),
                          grid_n=int(cfg.get("grid1d_n", 4001)),
                          threads=threads, config=cfg)
    if mode == "current":
        return sweep_current(params_from_config(cfg), start, stop, steps,
                             grid_n=int(cfg.get("grid1d_n", 2001)),
                             threads=threads, config=cfg)
    if mode == "spectrum2d":
        p = params_from_config(cfg)
        sigma_f = cfg.get("phi1", 0.0) + cfg.get("phi2", 1.0)
        return run_three_cell(p, start=cfg.get("sweep_start", 0.8),
                              stop=cfg.get("sweep_stop", 1.2),
                              steps=int(cfg.get("sweep_steps", 21)),
                              sigma_f=sigma_f, phim=cfg.get("phim", 0.0),
                              k=levels or int(cfg.get("levels", 14)),
                              grid_n=int(cfg.get("grid2d_n", 201)),
                              threads=threads, config=cfg)
    if mode == "beats":
        return beats_table(params_from_config(cfg),
                           phi_delta=cfg.get("sweep_start", 1.0),
                           t_max=cfg.get("t_max_ns", 50.0),
                           dt=cfg.get("dt_ns", 0.05), config=cfg)
    if mode == "ramsey":
        return ramsey_table(cfg["jz_ghz"], cfg["detuning_ghz"],
                            t_max=cfg.get("t_max_ns", 160.0),
                            dt=cfg.get("dt_ns", 0.5), config=cfg)
    if mode == "protocol":
        return protocol_table(jz_f=cfg.get("jz_ghz", 0.0073),
                              jz_m=cfg.get("jz_m_ghz", 0.0061),
                              shots=int(cfg.get("shots", 1000)),
                              seed=int(cfg.get("seed", 0)),
                              noise=cfg.get("noise", 0.0), config=cfg)
    raise KeyError(mode)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = {}
        if args.preset:
            cfg.update(PRESETS[args.preset])
        if args.config:
            cfg.update(load_config(args.config))
        if args.preset and cfg.get("mode") not in (None, args.mode) \
                and args.mode != "wkb-compare":
            print(f"note: preset {args.preset} is designed for mode "
                  f"{cfg['mode']}", file=sys.stderr)
        cfg.pop("mode", None)
        if args.mode == "ramsey" and not {"jz_ghz", "detuning_ghz"} <= set(cfg):
            raise ValueError("ramsey mode needs jz_ghz and detuning_ghz")
    except (OSError, ValueError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    try:
        table = _build_table(args.mode, cfg, args.levels, args.threads)
    except (FluxsimError, KeyError, ValueError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2
    if "error" in table.columns and table.rows and not table.ok_rows():
        out = args.out or Path(f"fluxsim_{args.mode}.{args.format}")
        emit(table, args.format, out)
        print(f"solver failure in every row; partial table at {out}",
              file=sys.stderr)
        return 2

    out = args.out or Path(f"fluxsim_{args.mode}.{args.format}")
    emit(table, args.format, out)
    write_manifest([out], out.with_suffix(out.suffix + ".manifest.json"))
    print(f"wrote {out} ({len(table.rows)} rows)")
    return 0


if __name__ == "__main__":
    sys.exit(main())

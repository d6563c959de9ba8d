#!/usr/bin/env python3
"""Render interference fringes: two probability traces vs delay whose
branch separation encodes the conditional shift, with the calibrated
readout delay marked when the table metadata records one.

    plot_fringes.py --in <csv> --out <png/svg> [--title TEXT]

Expects columns dt_ns, p1_shifted, p1_unshifted (extra columns ignored).
"""

import argparse
import sys

import matplotlib.pyplot as plt

import figlib


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="inp", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--title", default=None)
    args = ap.parse_args(argv)

    def render():
        meta, columns, rows = figlib.parse_table(args.inp)
        t = figlib.column(columns, rows, "dt_ns", args.inp)
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        ax.plot(t, figlib.column(columns, rows, "p1_shifted", args.inp),
                label="shifted branch")
        ax.plot(t, figlib.column(columns, rows, "p1_unshifted", args.inp),
                "--", label="unshifted branch")
        delay = meta.get("delay_ns")
        if isinstance(delay, (int, float)):
            ax.axvline(delay, color="0.4", lw=0.8, ls=":",
                       label=f"readout delay {delay:.1f} ns")
        ax.set_xlabel("dt_ns")
        ax.set_ylabel("excited-state probability")
        ax.set_ylim(-0.05, 1.05)
        ax.legend(fontsize=8, loc="upper right")
        ax.grid(True, alpha=0.3)
        if args.title:
            ax.set_title(args.title)
        fig.text(0.99, 0.01, figlib.caption(meta), ha="right", fontsize=6,
                 color="0.5")
        fig.tight_layout()
        return figlib.save(fig, args.out)

    return figlib.run(render)


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Render a log-y multi-series line figure (e.g. tunneling splitting vs
beta: numerical solid, quasi-classical estimates dashed).

    plot_logy_lines.py --in <csv> --out <png/svg>
                       [--x COL] [--y COL1,COL2,...] [--title TEXT]
"""

import argparse
import sys

import matplotlib.pyplot as plt

import figlib

#: series containing these substrings render dashed (analytic estimates)
_DASHED = ("wkb", "asymptotic")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="inp", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--x", default=None)
    ap.add_argument("--y", default=None, help="comma-separated series names")
    ap.add_argument("--title", default=None)
    args = ap.parse_args(argv)

    def render():
        meta, columns, rows = figlib.parse_table(args.inp)
        x_name = args.x or columns[0]
        names = (args.y.split(",") if args.y
                 else [c for c in figlib.numeric_columns(columns)
                       if c != x_name])
        x = figlib.column(columns, rows, x_name, args.inp)
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for name in names:
            y = figlib.column(columns, rows, name, args.inp)
            style = "--" if any(s in name for s in _DASHED) else "-"
            pairs = [(a, b) for a, b in zip(x, y)
                     if isinstance(b, float) and b > 0.0]
            if not pairs:
                raise figlib.FigureError(
                    f"{args.inp}: series {name!r} has no positive values")
            ax.plot(*zip(*pairs), style, label=name)
        ax.set_yscale("log")
        ax.set_xlabel(x_name)
        ax.legend(fontsize=8)
        ax.grid(True, which="both", alpha=0.3)
        if args.title:
            ax.set_title(args.title)
        fig.text(0.99, 0.01, figlib.caption(meta), ha="right", fontsize=6,
                 color="0.5")
        fig.tight_layout()
        return figlib.save(fig, args.out)

    return figlib.run(render)


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Render a linear-axis multi-series line figure from a CLI CSV table.

    plot_lines.py --in <csv> [--in2 <csv>] --out <png/svg>
                  [--x COL] [--y COL1,COL2,...] [--title TEXT]

By default the first column is the x axis and every other numeric column
is a series.  A second input renders as a lower panel (two-panel layout).
"""

import argparse
import sys

import matplotlib.pyplot as plt

import figlib


def _panel(ax, path, x_name, y_names):
    meta, columns, rows = figlib.parse_table(path)
    x_name = x_name or columns[0]
    names = (y_names.split(",") if y_names
             else [c for c in figlib.numeric_columns(columns)
                   if c != x_name])
    x = figlib.column(columns, rows, x_name, path)
    for name in names:
        ax.plot(x, figlib.column(columns, rows, name, path), label=name)
    ax.set_xlabel(x_name)
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    return meta


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="inp", required=True)
    ap.add_argument("--in2", dest="inp2", default=None,
                    help="optional second table (lower panel)")
    ap.add_argument("--out", required=True)
    ap.add_argument("--x", default=None)
    ap.add_argument("--y", default=None, help="comma-separated series names")
    ap.add_argument("--title", default=None)
    args = ap.parse_args(argv)

    def render():
        n = 2 if args.inp2 else 1
        fig, axes = plt.subplots(n, 1, figsize=(6.0, 3.4 * n), squeeze=False)
        meta = _panel(axes[0, 0], args.inp, args.x, args.y)
        if args.inp2:
            _panel(axes[1, 0], args.inp2, args.x, args.y)
        if args.title:
            axes[0, 0].set_title(args.title)
        fig.text(0.99, 0.01, figlib.caption(meta), ha="right", fontsize=6,
                 color="0.5")
        fig.tight_layout()
        return figlib.save(fig, args.out)

    return figlib.run(render)


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Render a heatmap from a long-format table (one row per grid point).

    plot_heatmap.py --in <csv> --out <png/svg>
                    --x COL --y COL --value COL [--title TEXT] [--cmap NAME]

Rows are pivoted onto the rectangular grid spanned by the distinct x and
y values; missing (x, y) combinations render as blanks.
"""

import argparse
import sys

import matplotlib.pyplot as plt
import numpy as np

import figlib


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="inp", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--x", required=True)
    ap.add_argument("--y", required=True)
    ap.add_argument("--value", required=True)
    ap.add_argument("--title", default=None)
    ap.add_argument("--cmap", default="viridis")
    args = ap.parse_args(argv)

    def render():
        meta, columns, rows = figlib.parse_table(args.inp)
        xs = figlib.column(columns, rows, args.x, args.inp)
        ys = figlib.column(columns, rows, args.y, args.inp)
        vs = figlib.column(columns, rows, args.value, args.inp)
        x_ticks = sorted(set(xs))
        y_ticks = sorted(set(ys))
        grid = np.full((len(y_ticks), len(x_ticks)), np.nan)
        xi = {v: i for i, v in enumerate(x_ticks)}
        yi = {v: i for i, v in enumerate(y_ticks)}
        for x, y, v in zip(xs, ys, vs):
            if isinstance(v, float):
                grid[yi[y], xi[x]] = v
        if np.all(np.isnan(grid)):
            raise figlib.FigureError(
                f"{args.inp}: column {args.value!r} has no numeric values")
        fig, ax = plt.subplots(figsize=(6.0, 4.6))
        im = ax.pcolormesh(x_ticks, y_ticks, grid, cmap=args.cmap,
                           shading="nearest")
        fig.colorbar(im, ax=ax, label=args.value)
        ax.set_xlabel(args.x)
        ax.set_ylabel(args.y)
        if args.title:
            ax.set_title(args.title)
        fig.text(0.99, 0.01, figlib.caption(meta), ha="right", fontsize=6,
                 color="0.5")
        fig.tight_layout()
        return figlib.save(fig, args.out)

    return figlib.run(render)


if __name__ == "__main__":
    sys.exit(main())

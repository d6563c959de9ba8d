#!/usr/bin/env python3
"""Regenerate the six preset figures from the shipped CSV fixtures.

    make_figures.py [--out-dir DIR] [--format png|svg]

Each preset is one invocation of a plot_<kind>.py script; the recipes
below are the single source of truth (the test suite imports them).
"""

import argparse
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
FIXTURES = HERE / "fixtures"

ENERGY_COLS = "e_L00,e_C00,e_R00,e_L10,e_C10,e_R10,e_L01,e_C01,e_R01"

#: name -> (script, extra argv); every recipe reads only shipped fixtures
RECIPES = {
    "fig4": ("plot_lines.py",
             ["--in", str(FIXTURES / "fig4.csv"), "--y", "e0,e1,e2,e3",
              "--title", "two-cell spectrum, shallow wells"]),
    "fig5": ("plot_lines.py",
             ["--in", str(FIXTURES / "fig5.csv"), "--y", "e0,e1,e2,e3",
              "--title", "two-cell spectrum, deep wells"]),
    "fig6": ("plot_logy_lines.py",
             ["--in", str(FIXTURES / "fig6.csv"),
              "--title", "tunneling splitting vs beta"]),
    "fig7": ("plot_lines.py",
             ["--in", str(FIXTURES / "fig7a.csv"),
              "--in2", str(FIXTURES / "fig7b.csv"),
              "--title", "current matrix elements"]),
    "fig8": ("plot_lines.py",
             ["--in", str(FIXTURES / "fig8.csv"), "--y", ENERGY_COLS,
              "--title", "three-cell spectrum vs flux"]),
    "fig11": ("plot_fringes.py",
              ["--in", str(FIXTURES / "fig11.csv"),
               "--title", "Ramsey fringes"]),
}


def render(name: str, out: Path) -> None:
    script, extra = RECIPES[name]
    subprocess.run([sys.executable, str(HERE / script), *extra,
                    "--out", str(out)], check=True)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default=".", type=Path)
    ap.add_argument("--format", default="png", choices=("png", "svg"))
    args = ap.parse_args(argv)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name in RECIPES:
        render(name, args.out_dir / f"{name}.{args.format}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

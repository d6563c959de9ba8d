"""Shared plumbing for the figure scripts.

The scripts consume CSV tables produced by the simulator CLI (one
'#'-prefixed JSON metadata line, a header row, then numeric rows) and
render them with matplotlib.  They never import the simulator package and
never recompute physics.

Rendering is byte-deterministic per environment: the Agg backend is
forced, embedded timestamps are pinned via SOURCE_DATE_EPOCH, and SVG
element ids are derived from a fixed hash salt.
"""

from __future__ import annotations

import csv
import json
import os
import sys
from pathlib import Path

os.environ.setdefault("SOURCE_DATE_EPOCH", "0")
os.environ.setdefault("MPLBACKEND", "Agg")

import matplotlib  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "fluxsim-figures"

import matplotlib.pyplot as plt  # noqa: E402


class FigureError(Exception):
    """Input problem (missing file, column, or rows) with context."""


def parse_table(path: str | Path) -> tuple[dict, list[str], list[list]]:
    """Read (metadata, columns, rows) from a CLI CSV table."""
    path = Path(path)
    if not path.exists():
        raise FigureError(f"{path}: no such file")
    lines = path.read_text().splitlines()
    meta: dict = {}
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        try:
            meta.update(json.loads(lines[i][1:].strip()))
        except json.JSONDecodeError as exc:
            raise FigureError(f"{path}:{i + 1}: bad metadata line: {exc}")
        i += 1
    reader = csv.reader(lines[i:])
    try:
        columns = next(reader)
    except StopIteration:
        raise FigureError(f"{path}: missing header row")
    rows = []
    for j, cells in enumerate(reader, start=i + 2):
        if not cells:
            continue
        row = []
        for cell in cells:
            try:
                row.append(float(cell) if cell != "" else "")
            except ValueError:
                row.append(cell)
        if len(row) != len(columns):
            raise FigureError(f"{path}:{j}: expected {len(columns)} cells, "
                              f"got {len(row)}")
        rows.append(row)
    if not rows:
        raise FigureError(f"{path}: table has no data rows")
    return meta, columns, rows


def column(columns: list[str], rows: list[list], name: str,
           path: str = "<table>") -> list[float]:
    if name not in columns:
        raise FigureError(f"{path}: no column {name!r}; have {columns}")
    i = columns.index(name)
    return [r[i] for r in rows]


def numeric_columns(columns: list[str]) -> list[str]:
    return [c for c in columns if c != "error"]


def caption(meta: dict) -> str:
    """One-line provenance stamp from the table metadata."""
    bits = [meta.get("artifact", "table")]
    if "version" in meta:
        bits.append(f"v{meta['version']}")
    if "mode" in meta:
        bits.append(meta["mode"])
    return " ".join(bits)


def save(fig, out: str | Path) -> Path:
    """Write the figure without volatile embedded metadata."""
    out = Path(out)
    ext = out.suffix.lower().lstrip(".")
    if ext not in ("png", "svg"):
        raise FigureError(f"{out}: unsupported format {ext!r} (png or svg)")
    meta = {"Software": None} if ext == "png" else {"Date": None}
    fig.savefig(out, format=ext, metadata=meta, dpi=150)
    plt.close(fig)
    return out


def run(render) -> int:
    """CLI wrapper: render() does the work, input errors exit nonzero."""
    try:
        out = render()
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0

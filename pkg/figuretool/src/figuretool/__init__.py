"""Render scatter plots from CSV sample files.

A pure viewer for the delimited output of the lpsym CLI: it reads one or two
CSV files, plots two chosen columns against each other on square axes, and
writes a PNG.  Two inputs produce side-by-side panels (the left/right figure
comparisons).  The tool performs no sampling or math and its output is
deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

__version__ = "0.1.0"

__all__ = ["FigureToolError", "PlotSpec", "read_columns", "render_scatter", "main"]


class FigureToolError(Exception):
    """Unusable input: missing file, empty CSV, or non-numeric columns."""


@dataclass(frozen=True)
class PlotSpec:
    """What to plot and where to write it."""

    inputs: tuple[str, ...]
    out: str
    columns: tuple[str, str] | None = None  # header names; default: first two
    title: str | None = None
    axis: tuple[float, float] | None = (0.0, 1.0)  # None autoscales
    marker_size: float = 2.0
    dpi: int = 150


def read_columns(path: str, columns: tuple[str, str] | None = None):
    """Load two numeric columns from a headed CSV file.

    Returns (x, y, (xlabel, ylabel)).  Raises :class:`FigureToolError` on a
    missing file, an empty file, fewer than two columns, unknown column
    names, or any non-numeric cell in the chosen columns.
    """
    try:
        with open(path, newline="", encoding="utf-8", errors="replace") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise FigureToolError(f"{path}: file is empty") from None
            rows = [row for row in reader if row]
    except OSError as exc:
        raise FigureToolError(f"{path}: {exc.strerror or exc}") from None
    except csv.Error as exc:
        raise FigureToolError(f"{path}: malformed CSV ({exc})") from None
    header = [h.strip() for h in header]
    if len(header) < 2:
        raise FigureToolError(f"{path}: need at least 2 columns, found {len(header)}")
    if not rows:
        raise FigureToolError(f"{path}: no data rows")
    if columns is None:
        idx = (0, 1)
    else:
        try:
            idx = tuple(header.index(c) for c in columns)
        except ValueError:
            raise FigureToolError(
                f"{path}: columns {columns} not found in header {header}"
            ) from None
    x, y = [], []
    for lineno, row in enumerate(rows, start=2):
        try:
            x.append(float(row[idx[0]]))
            y.append(float(row[idx[1]]))
        except (ValueError, IndexError):
            raise FigureToolError(f"{path}:{lineno}: non-numeric or missing value") from None
    return x, y, (header[idx[0]], header[idx[1]])


def render_scatter(spec: PlotSpec) -> str:
    """Render the spec to a PNG and return the output path.

    One panel per input file, side by side, all square.  Nothing is written
    unless every input parses.
    """
    if not spec.inputs:
        raise FigureToolError("no input files given")
    panels = [read_columns(path, spec.columns) for path in spec.inputs]
    n = len(panels)
    fig, axes = plt.subplots(1, n, figsize=(4.2 * n, 4.4), squeeze=False)
    for ax, path, (x, y, labels) in zip(axes[0], spec.inputs, panels):
        ax.scatter(x, y, s=spec.marker_size, c="black", linewidths=0)
        ax.set_xlabel(labels[0])
        ax.set_ylabel(labels[1])
        if spec.axis is not None:
            ax.set_xlim(*spec.axis)
            ax.set_ylim(*spec.axis)
        ax.set_aspect("equal")
        if n > 1:
            ax.set_title(Path(path).stem)
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    # fixed metadata keeps the PNG byte-identical across runs
    fig.savefig(spec.out, dpi=spec.dpi, metadata={"Software": f"figure_tool {__version__}"})
    plt.close(fig)
    return spec.out


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="figure_tool",
        description="Scatter plots from CSV sample files; two --in files give side-by-side panels.",
    )
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        metavar="CSV", help="input CSV (repeat for a two-panel figure)")
    parser.add_argument("--out", required=True, help="output image path (PNG)")
    parser.add_argument("--title", default=None)
    parser.add_argument("--columns", default=None, metavar="C1,C2",
                        help="two header names to plot (default: first two columns)")
    parser.add_argument("--axis", default="unit", choices=["unit", "auto"],
                        help="unit square axes (default) or autoscale")
    parser.add_argument("--marker-size", type=float, default=2.0)
    parser.add_argument("--dpi", type=int, default=150)
    parser.add_argument("--version", action="version", version=f"figure_tool {__version__}")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = _parse_args(argv)
    columns = None
    if args.columns:
        parts = tuple(c.strip() for c in args.columns.split(","))
        if len(parts) != 2:
            print("figure_tool: error: --columns needs exactly two names", file=sys.stderr)
            return 2
        columns = parts
    spec = PlotSpec(
        inputs=tuple(args.inputs),
        out=args.out,
        columns=columns,
        title=args.title,
        axis=(0.0, 1.0) if args.axis == "unit" else None,
        marker_size=args.marker_size,
        dpi=args.dpi,
    )
    try:
        render_scatter(spec)
    except FigureToolError as exc:
        print(f"figure_tool: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Localization map: final return probability over (theta, phi).

Log color scale with the 1/N delocalization threshold drawn as a contour
(N = 65 by default, matching the standard run length).

Usage: render_fig6.py locmap.csv -o out.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import LogNorm

from common import as_grid, column, load_table, save

DEFAULT_N = 65


def build(csv_path, threshold_n=DEFAULT_N):
    t = load_table(csv_path, ["theta", "phi", "p_final", "log10_p",
                              "classification"])
    xs, ys, grid = as_grid(column(t, "theta"), column(t, "phi"),
                           column(t, "p_final"))
    threshold = 1.0 / threshold_n

    fig, ax = plt.subplots(figsize=(5.4, 4.2))
    floor = max(grid[grid > 0].min(), 1e-300)
    mesh = ax.pcolormesh(xs, ys, np.maximum(grid, floor).T, cmap="magma",
                         norm=LogNorm(vmin=floor, vmax=max(grid.max(), threshold)),
                         shading="nearest")
    fig.colorbar(mesh, ax=ax, label=r"$P(N)$ (log scale)")
    if grid.min() < threshold < grid.max():
        cs = ax.contour(xs, ys, grid.T, levels=[threshold], colors="cyan",
                        linewidths=1.2)
        ax.clabel(cs, fmt={threshold: f"1/{threshold_n}"}, fontsize=7)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(r"$\phi$")
    return fig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("locmap", help="locmap.csv from the CLI")
    ap.add_argument("-o", "--output", required=True)
    ap.add_argument("--threshold-n", type=int, default=DEFAULT_N,
                    help="draw the 1/N contour (default 65)")
    args = ap.parse_args(argv)
    save(build(args.locmap, args.threshold_n), args.output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

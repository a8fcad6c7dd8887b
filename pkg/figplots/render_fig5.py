#!/usr/bin/env python3
"""Final joint position distributions P(x1, x2), one panel per input CSV.

Usage: render_fig5.py joint_a.csv [joint_b.csv ...] -o out.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import LogNorm

from common import as_grid, column, load_table, save


def build(csv_paths):
    fig, axes = plt.subplots(1, len(csv_paths),
                             figsize=(4.2 * len(csv_paths), 3.8),
                             squeeze=False)
    for ax, path in zip(axes[0], csv_paths):
        t = load_table(path, ["x1", "x2", "p"])
        xs, ys, grid = as_grid(column(t, "x1"), column(t, "x2"),
                               column(t, "p"))
        floor = max(grid.max() * 1e-8, 1e-300)
        mesh = ax.pcolormesh(xs, ys, np.maximum(grid, floor).T,
                             cmap="viridis",
                             norm=LogNorm(vmin=floor, vmax=grid.max()),
                             shading="nearest")
        fig.colorbar(mesh, ax=ax, fraction=0.046, label=r"$P(x_1,x_2)$")
        ax.set_xlabel(r"$x_1$")
        ax.set_ylabel(r"$x_2$")
        ax.set_aspect("equal")
        ax.set_title(path, fontsize=8)
    return fig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("joints", nargs="+", help="joint_probability.csv files")
    ap.add_argument("-o", "--output", required=True)
    args = ap.parse_args(argv)
    save(build(args.joints), args.output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

#!/usr/bin/env python3
"""Inverse localization length maps, side-by-side grayscale panels.

Takes one lambdamap CSV per panel (typically phi = 0 and phi = pi/3).
The gray scale is clipped at Lambda = 6 (black); singular cells are
rendered distinctly.

Usage: render_fig4.py lambdamap_a.csv [lambdamap_b.csv ...] -o out.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from common import as_grid, column, load_table, save

LAMBDA_CLIP = 6.0


def build(csv_paths):
    fig, axes = plt.subplots(1, len(csv_paths),
                             figsize=(4.4 * len(csv_paths), 4.0),
                             squeeze=False)
    mesh = None
    for ax, path in zip(axes[0], csv_paths):
        t = load_table(path, ["theta_plus", "theta_minus", "Lambda",
                              "defined_flag"])
        xs, ys, grid = as_grid(column(t, "theta_plus"),
                               column(t, "theta_minus"),
                               column(t, "Lambda"))
        cmap = plt.get_cmap("gray_r").copy()
        cmap.set_bad("tab:red")
        mesh = ax.pcolormesh(xs, ys, np.ma.masked_invalid(grid).T, cmap=cmap,
                             vmin=0.0, vmax=LAMBDA_CLIP, shading="nearest")
        ax.set_xlabel(r"$\theta_+$")
        ax.set_ylabel(r"$\theta_-$")
        ax.set_title(path, fontsize=8)
    cbar = fig.colorbar(mesh, ax=axes[0], fraction=0.04)
    cbar.set_label(r"$\Lambda$ (black at clip $\Lambda=6$)")
    return fig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("lambdamaps", nargs="+", help="lambdamap.csv files")
    ap.add_argument("-o", "--output", required=True)
    args = ap.parse_args(argv)
    save(build(args.lambdamaps), args.output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

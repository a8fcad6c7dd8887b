#!/usr/bin/env python3
"""Topological charge diagram over (theta+, theta-) from a chargemap CSV.

Usage: render_fig1.py chargemap.csv -o out.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from common import as_grid, column, load_table, save


def build(csv_path):
    t = load_table(csv_path, ["theta_plus", "theta_minus", "charge", "min_gap"])
    tp = column(t, "theta_plus")
    tm = column(t, "theta_minus")
    charge = column(t, "charge")  # "undefined" rows become NaN
    xs, ys, grid = as_grid(tp, tm, charge)

    fig, ax = plt.subplots(figsize=(5.2, 4.6))
    cmap = plt.get_cmap("coolwarm", 3).copy()
    cmap.set_bad("black")
    mesh = ax.pcolormesh(xs, ys, np.ma.masked_invalid(grid).T,
                         cmap=cmap, vmin=-1.5, vmax=1.5, shading="nearest")
    cbar = fig.colorbar(mesh, ax=ax, ticks=[-1, 0, 1])
    cbar.set_label("charge c")
    ax.set_xlabel(r"$\theta_+$")
    ax.set_ylabel(r"$\theta_-$")
    ax.set_title("topological charge (black: gap closed)")
    return fig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("chargemap", help="chargemap.csv from the CLI")
    ap.add_argument("-o", "--output", required=True)
    args = ap.parse_args(argv)
    save(build(args.chargemap), args.output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

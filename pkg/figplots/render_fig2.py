#!/usr/bin/env python3
"""Quasienergy eigenvalues on the unit circle from a bands CSV.

Usage: render_fig2.py bands.csv -o out.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from common import column, load_table, save


def build(csv_path, w_min=0.5):
    t = load_table(csv_path, ["n", "p_n", "E", "w"])
    E = column(t, "E")
    w = column(t, "w")

    fig, ax = plt.subplots(figsize=(4.8, 4.8))
    circle = np.linspace(0, 2 * np.pi, 400)
    ax.plot(np.cos(circle), np.sin(circle), color="0.8", lw=1)
    band = w < w_min
    ax.plot(np.cos(-E[band]), np.sin(-E[band]), ".", ms=3, color="tab:blue",
            label="band states")
    if np.any(~band):
        ax.plot(np.cos(-E[~band]), np.sin(-E[~band]), "o", ms=5,
                color="tab:red", label=f"diagonal weight $\\geq$ {w_min}")
    ax.set_aspect("equal")
    ax.set_xlabel(r"Re $e^{-iE}$")
    ax.set_ylabel(r"Im $e^{-iE}$")
    ax.legend(loc="center", fontsize=8)
    return fig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("bands", help="bands.csv from the CLI")
    ap.add_argument("-o", "--output", required=True)
    args = ap.parse_args(argv)
    save(build(args.bands), args.output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

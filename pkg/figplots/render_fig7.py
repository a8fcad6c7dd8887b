#!/usr/bin/env python3
"""Entropy growth: S_x against log t with the fitted law, inset unscaled.

Usage: render_fig7.py entropy_series.csv fit.json -o out.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from common import column, load_json, load_table, save


def build(series_path, fit_path):
    t = load_table(series_path, ["t", "S_x"])
    fit = load_json(fit_path, ["alpha", "S0", "r2", "model", "window"])
    time = column(t, "t")
    S = column(t, "S_x")
    pos = time > 1

    fig, ax = plt.subplots(figsize=(5.2, 4.0))
    x = np.log(time[pos])
    if fit["model"] == "loglog":
        x = np.log(x)
        ax.set_xlabel(r"$\log\log t$")
    else:
        ax.set_xlabel(r"$\log t$")
    ax.plot(x, S[pos], "o", ms=3, color="tab:blue", label=r"$S_x(t)$")
    lo, hi = fit["window"]
    xs = np.linspace(x.min(), x.max(), 100)
    ax.plot(xs, fit["alpha"] * xs + fit["S0"], "-", color="tab:red",
            label=(f"{fit['model']} fit: $\\alpha$ = {fit['alpha']:.3f}, "
                   f"$r^2$ = {fit['r2']:.4f} on t in [{lo}, {hi}]"))
    ax.set_ylabel(r"$S_x$")
    ax.legend(fontsize=8, loc="lower right")

    inset = ax.inset_axes([0.08, 0.58, 0.36, 0.36])
    inset.plot(time, S, "-", lw=1, color="tab:blue")
    inset.set_xlabel("t", fontsize=7)
    inset.set_ylabel(r"$S_x$", fontsize=7)
    inset.tick_params(labelsize=6)
    return fig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("series", help="entropy_series.csv from the CLI")
    ap.add_argument("fit", help="fit.json from the CLI")
    ap.add_argument("-o", "--output", required=True)
    args = ap.parse_args(argv)
    save(build(args.series, args.fit), args.output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

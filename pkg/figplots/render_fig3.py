#!/usr/bin/env python3
"""Two-particle band structure E(p_n) from one or two bands CSVs.

With two inputs the second (interacting) spectrum is overlaid on the first
and its high-diagonal-weight states are highlighted as bound states.

Usage: render_fig3.py bands_free.csv [bands_int.csv] -o out.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from common import column, load_table, save


def build(free_path, interacting_path=None, w_min=0.5):
    fig, ax = plt.subplots(figsize=(5.4, 4.2))
    t = load_table(free_path, ["n", "p_n", "E", "w"])
    ax.plot(column(t, "p_n"), column(t, "E"), ".", ms=2.5, color="0.6",
            label="free")
    if interacting_path is not None:
        t2 = load_table(interacting_path, ["n", "p_n", "E", "w"])
        p, E, w = column(t2, "p_n"), column(t2, "E"), column(t2, "w")
        bound = w >= w_min
        ax.plot(p[~bound], E[~bound], ".", ms=2.5, color="tab:blue",
                label="interacting")
        ax.plot(p[bound], E[bound], "o", ms=4, color="tab:red",
                label=f"bound (w $\\geq$ {w_min})")
    ax.set_xlabel(r"total quasimomentum $p_n$")
    ax.set_ylabel(r"quasienergy $E$")
    ax.legend(fontsize=8)
    return fig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("bands", nargs="+", help="one or two bands.csv files")
    ap.add_argument("-o", "--output", required=True)
    args = ap.parse_args(argv)
    if len(args.bands) > 2:
        ap.error("expected one or two bands CSVs")
    save(build(*args.bands), args.output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

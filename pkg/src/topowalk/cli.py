"""Command-line surface: evolve, bands, locmap, chargemap, lambdamap, fit.

Every command writes CSV artifacts with a fixed deterministic format
(17 significant digits, comma separator, LF line endings) and finishes by
emitting a manifest JSON listing each artifact with its checksum.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import observables, spectrum, topocharge, transfer
from .evolution import StepPlan
from .hilbert import THETA_MINUS, ParamCode, WalkConfig, config_from_code, make_initial

DEFAULT_BUDGET = 1e12

EXIT_OK = 0
EXIT_BAD_ARGS = 2
EXIT_BUDGET = 3


class BudgetExceeded(Exception):
    pass


# ---------------------------------------------------------------- formatting

_PI_RE = re.compile(r"^([+-]?)(\d+(?:\.\d+)?)?\*?pi(?:/(\d+(?:\.\d+)?))?$")


def parse_angle(text: str) -> float:
    """Angle in radians, either decimal ('0.785') or a pi fraction ('3pi/8')."""
    text = text.strip().lower().replace(" ", "")
    m = _PI_RE.match(text)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        num = float(m.group(2)) if m.group(2) else 1.0
        den = float(m.group(3)) if m.group(3) else 1.0
        return sign * num * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"cannot parse angle {text!r}") from None


def fmt(x) -> str:
    """17-significant-digit decimal rendering, stable across runs."""
    return format(float(x), ".17g")


def write_csv(path: Path, header, rows):
    with open(path, "w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(c if isinstance(c, str) else fmt(c) for c in row) + "\n")


def sha256_of(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_manifest(outdir: Path, command: str, params: dict, outputs, t0: float):
    manifest = {
        "command": command,
        "parameters": params,
        "outputs": [
            {"path": p.name, "sha256": sha256_of(p), "bytes": p.stat().st_size}
            for p in outputs
        ],
        "wall_time_s": time.perf_counter() - t0,
    }
    path = outdir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def progress(done: int, total: int):
    if total >= 20 and done % max(1, total // 20) == 0:
        print(f"  {done}/{total} nodes", file=sys.stderr)


def resolve_threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("TOPOWALK_THREADS")
    if env:
        return int(env)
    return os.cpu_count() or 1


def check_budget(cost: float, args):
    if cost > args.budget and not args.force:
        raise BudgetExceeded(
            f"estimated cost {cost:.3g} exceeds budget {args.budget:.3g}; "
            "rerun with --force or raise --budget")


def config_from_args(args, steps: int):
    """WalkConfig + initial-state label from --code or explicit angle flags."""
    L = args.size if args.size else 2 * steps + 5
    if args.code:
        cfg, b = config_from_code(ParamCode.parse(args.code), L, steps)
        if args.bell is not None:
            b = args.bell
        return cfg, b
    missing = [f for f in ("theta_left", "theta_right", "phi")
               if getattr(args, f) is None]
    if missing:
        raise ValueError("give --code or all of --theta-left/--theta-right/--phi "
                         f"(missing: {', '.join(missing)})")
    cfg = WalkConfig(L=L, theta_minus=args.theta_minus,
                     theta_left=args.theta_left, theta_right=args.theta_right,
                     phi=args.phi, steps=steps)
    return cfg, args.bell if args.bell is not None else 0


# ---------------------------------------------------------------- commands

def cmd_evolve(args) -> int:
    t0 = time.perf_counter()
    cfg, b = config_from_args(args, args.steps)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    final, ret, ent = observables.run_observables(cfg, b)

    joint = observables.joint_probability(final)
    pos = cfg.positions()
    p_joint = outdir / "joint_probability.csv"
    write_csv(p_joint, ["x1", "x2", "p"],
              ((int(pos[i]), int(pos[j]), joint.P[i, j])
               for i in range(cfg.L) for j in range(cfg.L)))
    p_ret = outdir / "return_series.csv"
    write_csv(p_ret, ["t", "P", "P0"], zip(ret.t.tolist(), ret.P, ret.P0))
    p_ent = outdir / "entropy_series.csv"
    write_csv(p_ent, ["t", "S_x"], zip(ent.t.tolist(), ent.S))

    params = {"code": args.code, "bell": b, "L": cfg.L, "steps": cfg.steps,
              "theta_left": cfg.theta_left, "theta_right": cfg.theta_right,
              "theta_minus": cfg.theta_minus, "phi": cfg.phi}
    write_manifest(outdir, "evolve", params, [p_joint, p_ret, p_ent], t0)
    return EXIT_OK


def cmd_bands(args) -> int:
    t0 = time.perf_counter()
    L = args.size
    cfg = WalkConfig(L=L, theta_minus=args.theta_minus, theta_left=args.theta_plus,
                     theta_right=args.theta_plus, phi=args.phi, steps=0)
    spec = spectrum.band_structure(cfg)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for n, p_n, E, w in zip(spec.ns.tolist(), spec.p, spec.energies, spec.weights):
        for Ej, wj in zip(E, w):
            rows.append((n, p_n, Ej, wj))
    p_csv = outdir / "bands.csv"
    write_csv(p_csv, ["n", "p_n", "E", "w"],
              ((str(n), p, e, w) for n, p, e, w in rows))
    params = {"theta_plus": args.theta_plus, "theta_minus": args.theta_minus,
              "phi": args.phi, "L": L}
    write_manifest(outdir, "bands", params, [p_csv], t0)
    return EXIT_OK


def _locmap_row(job):
    thetas, phi_vals, theta_left, theta_minus, b, steps, L = job
    return [observables._locmap_node((th, ph, theta_left, theta_minus, b, steps, L))
            for th in thetas for ph in phi_vals]


def cmd_locmap(args) -> int:
    t0 = time.perf_counter()
    steps = args.steps
    L = args.size if args.size else 2 * steps + 5
    n = args.grid
    thetas = np.linspace(args.theta_min, args.theta_max, n)
    phis = np.linspace(args.phi_min, args.phi_max, n)
    check_budget(n * n * steps * (2 * L) ** 2 * 40, args)

    threads = resolve_threads(args)
    jobs = [([float(th)], phis.tolist(), args.theta_left, args.theta_minus,
             args.bell, steps, L) for th in thetas]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows_out = []
            for i, row in enumerate(pool.map(_locmap_row, jobs)):
                rows_out.append(row)
                progress(i + 1, n)
    else:
        rows_out = []
        for i, job in enumerate(jobs):
            rows_out.append(_locmap_row(job))
            progress(i + 1, n)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for i, th in enumerate(thetas):
        for j, ph in enumerate(phis):
            p = rows_out[i][j]
            cls = "localized" if p > 1.0 / steps else "delocalized"
            logp = math.log10(p) if p > 0 else -math.inf
            rows.append((float(th), float(ph), p, logp, cls))
    p_csv = outdir / "locmap.csv"
    write_csv(p_csv, ["theta", "phi", "p_final", "log10_p", "classification"],
              ((fmt(a), fmt(b_), fmt(c), fmt(d), e) for a, b_, c, d, e in rows))
    params = {"theta_left": args.theta_left, "theta_minus": args.theta_minus,
              "bell": args.bell, "steps": steps, "L": L, "grid": n,
              "theta_range": [args.theta_min, args.theta_max],
              "phi_range": [args.phi_min, args.phi_max]}
    write_manifest(outdir, "locmap", params, [p_csv], t0)
    return EXIT_OK


def _chargemap_row(job):
    tp, theta_vals, K = job
    out = []
    for tm in theta_vals:
        res = topocharge.winding_number(tp, tm, K=K)
        out.append((res.charge, res.min_gap))
    return out


def cmd_chargemap(args) -> int:
    t0 = time.perf_counter()
    n = args.grid
    K = args.kpoints
    check_budget(n * n * K * 200, args)
    thetas = np.linspace(-math.pi, math.pi, n)
    threads = resolve_threads(args)
    jobs = [(float(tp), thetas.tolist(), K) for tp in thetas]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows_out = []
            for i, row in enumerate(pool.map(_chargemap_row, jobs, chunksize=2)):
                rows_out.append(row)
                progress(i + 1, n)
    else:
        rows_out = []
        for i, job in enumerate(jobs):
            rows_out.append(_chargemap_row(job))
            progress(i + 1, n)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for i, tp in enumerate(thetas):
        for j, tm in enumerate(thetas):
            charge, min_gap = rows_out[i][j]
            label = "undefined" if charge is None else str(charge)
            rows.append((fmt(tp), fmt(tm), label, fmt(min_gap)))
    p_csv = outdir / "chargemap.csv"
    write_csv(p_csv, ["theta_plus", "theta_minus", "charge", "min_gap"], rows)
    params = {"grid": n, "kpoints": K}
    write_manifest(outdir, "chargemap", params, [p_csv], t0)
    return EXIT_OK


def _lambdamap_row(job):
    tp, theta_vals, E, phi = job
    out = []
    for tm in theta_vals:
        te = transfer.lyapunov(E, tp, tm, phi)
        if te is None:
            out.append((math.nan, math.nan, 0))
        else:
            out.append((abs(te.lambda_plus), te.Lambda, 1))
    return out


def cmd_lambdamap(args) -> int:
    t0 = time.perf_counter()
    n = args.grid
    check_budget(n * n * 2000, args)
    thetas = np.linspace(-math.pi, math.pi, n)
    threads = resolve_threads(args)
    jobs = [(float(tp), thetas.tolist(), args.energy, args.phi) for tp in thetas]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows_out = list(pool.map(_lambdamap_row, jobs, chunksize=8))
    else:
        rows_out = [_lambdamap_row(job) for job in jobs]

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for i, tp in enumerate(thetas):
        for j, tm in enumerate(thetas):
            lam_abs, Lam, defined = rows_out[i][j]
            rows.append((fmt(tp), fmt(tm),
                         fmt(lam_abs) if defined else "nan",
                         fmt(Lam) if defined else "nan",
                         str(defined)))
    p_csv = outdir / "lambdamap.csv"
    write_csv(p_csv, ["theta_plus", "theta_minus", "lambda_abs_max", "Lambda",
                      "defined_flag"], rows)
    params = {"energy": args.energy, "phi": args.phi, "grid": n}
    write_manifest(outdir, "lambdamap", params, [p_csv], t0)
    return EXIT_OK


def cmd_fit(args) -> int:
    t0 = time.perf_counter()
    data = np.genfromtxt(args.input, delimiter=",", names=True)
    if data.dtype.names is None or "t" not in data.dtype.names or \
            "S_x" not in data.dtype.names:
        raise ValueError(f"{args.input}: expected columns t,S_x")
    series = observables.EntropySeries(data["t"], data["S_x"])
    fit = observables.fit_growth(series, args.model, (args.tmin, args.tmax))
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    p_json = outdir / "fit.json"
    p_json.write_text(json.dumps({
        "alpha": fit.alpha, "S0": fit.S0, "r2": fit.r2,
        "model": fit.model, "window": list(fit.window),
    }, indent=2, sort_keys=True) + "\n")
    write_manifest(outdir, "fit", {"input": str(args.input), "model": args.model,
                                   "tmin": args.tmin, "tmax": args.tmax},
                   [p_json], t0)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _add_common(p):
    p.add_argument("--outdir", default=".", help="output directory")
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: TOPOWALK_THREADS or all cores)")
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET,
                   help="cost budget for grid commands")
    p.add_argument("--force", action="store_true",
                   help="run even if the cost budget is exceeded")


def _add_config_flags(p):
    p.add_argument("--code", help="4-digit parameter code, e.g. 0321")
    p.add_argument("--theta-left", type=parse_angle, default=None)
    p.add_argument("--theta-right", type=parse_angle, default=None)
    p.add_argument("--theta-minus", type=parse_angle, default=THETA_MINUS)
    p.add_argument("--phi", type=parse_angle, default=None)
    p.add_argument("--bell", type=int, choices=range(5), default=None,
                   help="initial-state label 0..4")
    p.add_argument("--size", type=int, default=None, help="lattice size L (odd)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="topowalk",
                                 description="two-particle topological quantum walk")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="run dynamics, emit series + final distribution")
    _add_config_flags(p)
    p.add_argument("--steps", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("bands", help="momentum-sector quasienergy spectrum")
    p.add_argument("--theta-plus", type=parse_angle, required=True)
    p.add_argument("--theta-minus", type=parse_angle, default=THETA_MINUS)
    p.add_argument("--phi", type=parse_angle, default=0.0)
    p.add_argument("--size", type=int, default=21)
    _add_common(p)
    p.set_defaults(func=cmd_bands)

    p = sub.add_parser("locmap", help="return-probability map over (theta, phi)")
    p.add_argument("--theta-left", type=parse_angle, required=True)
    p.add_argument("--theta-minus", type=parse_angle, default=THETA_MINUS)
    p.add_argument("--bell", type=int, choices=range(5), required=True)
    p.add_argument("--steps", type=int, default=65)
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--grid", type=int, default=32)
    p.add_argument("--theta-min", type=parse_angle, default=-3 * math.pi / 4)
    p.add_argument("--theta-max", type=parse_angle, default=3 * math.pi / 4)
    p.add_argument("--phi-min", type=parse_angle, default=0.0)
    p.add_argument("--phi-max", type=parse_angle, default=math.pi)
    _add_common(p)
    p.set_defaults(func=cmd_locmap)

    p = sub.add_parser("chargemap", help="topological charge map over (theta+, theta-)")
    p.add_argument("--grid", type=int, default=128)
    p.add_argument("--kpoints", type=int, default=256)
    _add_common(p)
    p.set_defaults(func=cmd_chargemap)

    p = sub.add_parser("lambdamap", help="inverse localization length map")
    p.add_argument("--energy", type=parse_angle, required=True)
    p.add_argument("--phi", type=parse_angle, default=0.0)
    p.add_argument("--grid", type=int, default=256)
    _add_common(p)
    p.set_defaults(func=cmd_lambdamap)

    p = sub.add_parser("fit", help="fit entropy growth law from a series CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--model", choices=["log", "loglog"], required=True)
    p.add_argument("--tmin", type=int, default=10)
    p.add_argument("--tmax", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_fit)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())

"""Probabilities, entanglement entropy and growth-law fits.

All observables are read-only functions of a StateVector.  The reduced
density matrix of particle-1 position is a plain (L, L) matrix thanks to the
flat-index ordering (x1 is the slowest axis).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .evolution import StepPlan, evolve
from .hilbert import StateVector, WalkConfig, make_initial
from .scalarmap import ScalarMap

EIG_FLOOR = 1e-14
PSD_TOL = 1e-8


@dataclass
class JointDistribution:
    P: np.ndarray       # (L, L), sums to 1
    time: int


@dataclass
class ReturnSeries:
    t: np.ndarray
    P: np.ndarray       # particle 1 at the origin
    P0: np.ndarray      # both particles at the origin


@dataclass
class EntropySeries:
    t: np.ndarray
    S: np.ndarray       # nats


@dataclass
class GrowthFit:
    alpha: float
    S0: float
    r2: float
    window: tuple
    model: str


def joint_probability(state: StateVector) -> JointDistribution:
    """P(x1, x2) = sum over spins of |psi|^2."""
    return JointDistribution(np.sum(np.abs(state.amp) ** 2, axis=(1, 3)), state.time)


def p_origin(state: StateVector) -> float:
    """Probability that particle 1 sits at x = 0."""
    h = (state.L - 1) // 2
    return float(np.sum(np.abs(state.amp[h]) ** 2))


def p_both_origin(state: StateVector) -> float:
    """Probability that both particles sit at x = 0."""
    h = (state.L - 1) // 2
    return float(np.sum(np.abs(state.amp[h, :, h, :]) ** 2))


def return_probabilities(trajectory) -> ReturnSeries:
    """Return-probability series over an iterable of states."""
    t, P, P0 = [], [], []
    for st in trajectory:
        t.append(st.time)
        P.append(p_origin(st))
        P0.append(p_both_origin(st))
    return ReturnSeries(np.array(t), np.array(P), np.array(P0))


def reduced_density_x(state: StateVector) -> np.ndarray:
    """rho_x from tracing out spins and particle 2; Hermitian, PSD, trace 1."""
    L = state.L
    psi = state.amp.reshape(L, 4 * L)
    rho = psi @ psi.conj().T
    return rho


def entropy_x(rho: np.ndarray) -> float:
    """von Neumann entropy -Tr rho log rho in nats."""
    lam = np.linalg.eigvalsh(rho)
    if lam.min() < -PSD_TOL:
        raise ValueError(f"density matrix not PSD (min eigenvalue {lam.min():.3e})")
    lam = lam[lam > EIG_FLOOR]
    return float(-np.sum(lam * np.log(lam)))


def entropy_series(state: StateVector, plan: StepPlan, n: int) -> EntropySeries:
    """S_x(t) for t = 0..n along the trajectory of `state`."""
    t, S = [], []

    def record(st):
        t.append(st.time)
        S.append(entropy_x(reduced_density_x(st)))

    evolve(state, plan, n, observer=record)
    return EntropySeries(np.array(t), np.array(S))


def run_observables(cfg: WalkConfig, b: int):
    """One full dynamics run: final state plus return and entropy series."""
    plan = StepPlan.from_config(cfg)
    state = make_initial(b, cfg.L)
    t, P, P0, S = [], [], [], []
    final = [None]

    def record(st):
        t.append(st.time)
        P.append(p_origin(st))
        P0.append(p_both_origin(st))
        S.append(entropy_x(reduced_density_x(st)))
        final[0] = st

    evolve(state, plan, cfg.steps, observer=record)
    ret = ReturnSeries(np.array(t), np.array(P), np.array(P0))
    ent = EntropySeries(np.array(t), np.array(S))
    return final[0], ret, ent


def _locmap_node(args):
    theta, phi, theta_left, theta_minus, b, steps, L = args
    cfg = WalkConfig(L=L, theta_minus=theta_minus, theta_left=theta_left,
                     theta_right=theta, phi=phi, steps=steps)
    plan = StepPlan.from_config(cfg)
    state = evolve(make_initial(b, L), plan, steps)
    return p_origin(state)


def localization_map(theta_vals, phi_vals, theta_left: float, b: int,
                     steps: int = 65, theta_minus: float = math.pi / 4,
                     L: int | None = None, processes: int | None = None) -> ScalarMap:
    """P(N) of a full run at every (theta, phi) node; threshold 1/N classifies."""
    if L is None:
        L = 2 * steps + 5
    theta_vals = np.asarray(theta_vals, dtype=float)
    phi_vals = np.asarray(phi_vals, dtype=float)
    jobs = [(float(th), float(ph), theta_left, theta_minus, b, steps, L)
            for th in theta_vals for ph in phi_vals]
    if processes is not None and processes > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=processes) as pool:
            flat = list(pool.map(_locmap_node, jobs, chunksize=4))
    else:
        flat = [_locmap_node(j) for j in jobs]
    values = np.array(flat).reshape(len(theta_vals), len(phi_vals))
    return ScalarMap(theta_vals, phi_vals, values,
                     xname="theta", yname="phi", vname="p_origin")


def fit_growth(series: EntropySeries, model: str, window=(10, None)) -> GrowthFit:
    """Least-squares fit of S against log t or log log t inside the window."""
    if model not in ("log", "loglog"):
        raise ValueError(f"unknown model {model!r}")
    t_min, t_max = window
    if t_max is None:
        t_max = int(series.t.max())
    mask = (series.t >= t_min) & (series.t <= t_max) & (series.t > 1)
    if mask.sum() < 10:
        raise ValueError(f"fit window [{t_min}, {t_max}] has fewer than 10 points")
    t = series.t[mask].astype(float)
    S = series.S[mask]
    x = np.log(t) if model == "log" else np.log(np.log(t))
    alpha, S0 = np.polyfit(x, S, 1)
    pred = alpha * x + S0
    ss_res = float(np.sum((S - pred) ** 2))
    ss_tot = float(np.sum((S - S.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return GrowthFit(float(alpha), float(S0), r2, (t_min, t_max), model)

"""Quasienergy spectra of homogeneous walks, resolved by total quasimomentum.

The one-step operator commutes with the simultaneous translation of both
particles when the coin angle is uniform, so it decomposes into L sectors of
dimension 4L (relative position x two spins).  Each sector operator is built
by applying the black-box step map to the sector basis vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .evolution import StepPlan, step
from .hilbert import StateVector, WalkConfig

SECTOR_TOL = 1e-10
GAP_MIN = 0.05
W_MIN = 0.5


@dataclass
class MomentumSector:
    """Invariant sector of total quasimomentum p_n = 2 pi n / L."""

    n: int
    p_n: float
    basis: np.ndarray      # (2L)^2 x 4L, orthonormal columns
    operator: np.ndarray   # 4L x 4L unitary
    residual: float        # norm of U*basis outside the sector


@dataclass
class TwoBodySpectrum:
    """Per-sector quasienergies E in (-pi, pi] with diagonal weights."""

    L: int
    ns: np.ndarray                 # sector indices
    p: np.ndarray                  # sector momenta
    energies: list[np.ndarray]     # sorted quasienergies per sector
    weights: list[np.ndarray]      # diagonal weight per eigenstate, same order

    def all_energies(self) -> np.ndarray:
        return np.concatenate(self.energies)


def sector_basis(L: int, n: int) -> np.ndarray:
    """Orthonormal basis of the p_n sector as columns of a (2L)^2 x 4L matrix.

    Column order is (r, s1, s2) with relative position r = 0..L-1; each column
    is (1/sqrt L) sum_X e^{i p_n X} |X, s1, X+r, s2| in lattice coordinates.
    """
    p_n = 2.0 * math.pi * n / L
    X = np.arange(L)
    wave = np.exp(1j * p_n * X) / math.sqrt(L)
    cols = np.zeros((L, 2, L, 2, 4 * L), dtype=complex)
    j = 0
    for r in range(L):
        for s1 in range(2):
            for s2 in range(2):
                cols[X, s1, (X + r) % L, s2, j] = wave
                j += 1
    return cols.reshape((2 * L) ** 2, 4 * L)


def build_sector_operator(cfg: WalkConfig, n: int) -> MomentumSector:
    """Project the step map onto the p_n sector; requires a homogeneous coin."""
    if not cfg.homogeneous:
        raise ValueError("momentum sectors require theta_left == theta_right")
    L = cfg.L
    plan = StepPlan.from_config(cfg)
    S = sector_basis(L, n)
    US = np.empty_like(S)
    for j in range(S.shape[1]):
        st = StateVector(S[:, j].reshape(L, 2, L, 2).copy())
        US[:, j] = step(st, plan).flat()
    op = S.conj().T @ US
    residual = float(np.linalg.norm(US - S @ op))
    if residual > 1e-8:
        raise ValueError(
            f"sector {n} not invariant (residual {residual:.2e}); "
            "is the walk really homogeneous?")
    return MomentumSector(n, 2.0 * math.pi * n / L, S, op, residual)


def _diagonal_weight(vec_full: np.ndarray, L: int) -> float:
    amp = vec_full.reshape(L, 2, L, 2)
    d = np.arange(L)
    return float(np.sum(np.abs(amp[d, :, d, :]) ** 2))


def band_structure(cfg: WalkConfig) -> TwoBodySpectrum:
    """Eigenphases of every sector operator, E = -arg(eigenvalue) in (-pi, pi]."""
    L = cfg.L
    energies, weights = [], []
    ns = np.arange(L)
    for n in ns:
        sec = build_sector_operator(cfg, n)
        dev = np.linalg.norm(sec.operator.conj().T @ sec.operator - np.eye(4 * L))
        if dev > 1e-8:
            raise ValueError(f"sector {n} operator not unitary (deviation {dev:.2e})")
        # Schur form of a normal matrix: diagonal T, orthonormal eigenvectors in Z
        T, Z = scipy.linalg.schur(sec.operator, output="complex")
        lam = np.diag(T)
        E = -np.angle(lam)
        E[E <= -math.pi] += 2 * math.pi
        w = np.array([_diagonal_weight(sec.basis @ Z[:, j], L) for j in range(4 * L)])
        order = np.argsort(E, kind="stable")
        energies.append(E[order])
        weights.append(w[order])
    return TwoBodySpectrum(L, ns, 2.0 * math.pi * ns / L, energies, weights)


def spectral_gaps(energies: np.ndarray, gap_min: float = GAP_MIN):
    """Maximal eigenphase-free arcs of the unit circle wider than gap_min.

    Returns a list of (lo, hi) with hi > lo; arcs may wrap past pi, in which
    case hi > pi and membership is tested modulo 2 pi.
    """
    E = np.sort(np.asarray(energies))
    if E.size == 0:
        return []
    diffs = np.diff(E)
    gaps = [(E[i], E[i + 1]) for i in np.nonzero(diffs > gap_min)[0]]
    wrap = (E[0] + 2 * math.pi) - E[-1]
    if wrap > gap_min:
        gaps.append((E[-1], E[0] + 2 * math.pi))
    return gaps


def _in_gap(E: float, gaps) -> bool:
    for lo, hi in gaps:
        if lo < E < hi or lo < E + 2 * math.pi < hi:
            return True
    return False


def find_gap_bound_states(spec: TwoBodySpectrum, reference: TwoBodySpectrum,
                          gap_min: float = GAP_MIN, w_min: float = W_MIN):
    """Eigenstates of `spec` inside the spectral gaps of `reference`.

    The reference is the non-interacting spectrum; returns (p_n, E, w) triples
    with diagonal weight w >= w_min.  Empty list when there are no gaps.
    """
    gaps = spectral_gaps(reference.all_energies(), gap_min)
    found = []
    for p_n, E, w in zip(spec.p, spec.energies, spec.weights):
        for Ej, wj in zip(E, w):
            if wj >= w_min and _in_gap(float(Ej), gaps):
                found.append((float(p_n), float(Ej), float(wj)))
    return found

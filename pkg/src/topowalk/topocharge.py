"""Numerical topological charge of the one-particle split-step walk.

The Bloch operator U0(k) is an SU(2) matrix, so it can be written as
cos(E_k) 1 - i sin(E_k) n_k . sigma with a real unit vector n_k.  For the
split-step walk the n_k trace a closed loop in a fixed plane; the charge is
the signed winding of that loop about the plane normal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scalarmap import ScalarMap

EPS_GAP = 1e-3
PLANARITY_TOL = 0.05
RESIDUAL_TOL = 0.1

# overall orientation fixed once so that (theta+, theta-) = (3pi/8, pi/4) -> +1
WINDING_SIGN = 1.0


@dataclass
class ChargeResult:
    charge: int | None
    axis: np.ndarray         # winding-plane normal (unit 3-vector)
    min_gap: float           # min over k of |sin E_k|
    residual: float          # distance of the raw winding from the nearest integer
    gap_zero: float          # min over k of |E_k| (gap at E = 0)
    gap_pi: float            # min over k of pi - E_k (gap at E = pi)


def bloch_operator(k, theta_plus: float, theta_minus: float) -> np.ndarray:
    """U0(k) = T-(k) R(theta-) T+(k) R(theta+); vectorized over k.

    Shift convention: spin 0 acquires e^{-ik} under T+, spin 1 acquires
    e^{ik} under T-, matching the position-space x -> x +- 1 shifts.
    Returns shape (2, 2) for scalar k, else k.shape + (2, 2).
    """
    k = np.asarray(k, dtype=float)
    cp, sp = math.cos(theta_plus), math.sin(theta_plus)
    cm, sm = math.cos(theta_minus), math.sin(theta_minus)
    ek = np.exp(1j * k)
    U = np.empty(k.shape + (2, 2), dtype=complex)
    U[..., 0, 0] = cp * cm / ek - sp * sm
    U[..., 0, 1] = sp * cm / ek + cp * sm
    U[..., 1, 0] = -(sm * cp + cm * sp * ek)
    U[..., 1, 1] = cp * cm * ek - sp * sm
    return U


def bloch_axis(U: np.ndarray):
    """Quasienergy branch E in [0, pi] and axis n with U = cos E - i sin E n.sigma.

    Vectorized; n rows are NaN where sin E vanishes.
    """
    cosE = np.clip(np.real(U[..., 0, 0] + U[..., 1, 1]) / 2.0, -1.0, 1.0)
    E = np.arccos(cosE)
    sinE = np.sin(E)
    with np.errstate(divide="ignore", invalid="ignore"):
        nz = np.imag(U[..., 1, 1] - U[..., 0, 0]) / (2.0 * sinE)
        nx = -np.imag(U[..., 0, 1] + U[..., 1, 0]) / (2.0 * sinE)
        ny = np.real(U[..., 1, 0] - U[..., 0, 1]) / (2.0 * sinE)
    n = np.stack([nx, ny, nz], axis=-1)
    return E, n


def winding_number(theta_plus: float, theta_minus: float, K: int = 1024,
                   eps_gap: float = EPS_GAP) -> ChargeResult:
    """Signed winding of n_k over the Brillouin zone; None when undefined."""
    if K < 256:
        raise ValueError("k-grid size must be >= 256")
    k = 2.0 * math.pi * np.arange(K) / K
    U = bloch_operator(k, theta_plus, theta_minus)
    E, n = bloch_axis(U)
    min_gap = float(np.min(np.abs(np.sin(E))))
    gap_zero = float(np.min(E))
    gap_pi = float(np.min(math.pi - E))

    # plane normal: smallest principal direction of the n_k cloud
    ref = np.array([-math.cos(theta_plus), 0.0, math.sin(theta_plus)])
    if min_gap <= eps_gap:
        return ChargeResult(None, ref, min_gap, math.inf, gap_zero, gap_pi)
    M = n.T @ n
    evals, evecs = np.linalg.eigh(M)
    axis = evecs[:, 0]
    # orient the normal continuously in theta+ (sign ambiguity of the eigenvector)
    if axis @ ref < 0:
        axis = -axis
    if float(np.max(np.abs(n @ axis))) >= PLANARITY_TOL:
        return ChargeResult(None, axis, min_gap, math.inf, gap_zero, gap_pi)

    e1 = np.cross([0.0, 0.0, 1.0], axis)
    if np.linalg.norm(e1) < 0.5:
        e1 = np.cross([1.0, 0.0, 0.0], axis)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    ang = np.arctan2(n @ e2, n @ e1)
    d = np.diff(np.append(ang, ang[0]))
    d = (d + math.pi) % (2.0 * math.pi) - math.pi
    raw = WINDING_SIGN * float(np.sum(d)) / (2.0 * math.pi)
    c = round(raw)
    residual = abs(raw - c)
    if residual >= RESIDUAL_TOL:
        return ChargeResult(None, axis, min_gap, residual, gap_zero, gap_pi)
    return ChargeResult(int(c), axis, min_gap, residual, gap_zero, gap_pi)


def charge_map(grid: int = 128, K: int = 256,
               theta_range=(-math.pi, math.pi)) -> ScalarMap:
    """Charge over a (theta+, theta-) grid; NaN on gap closures / boundaries."""
    thetas = np.linspace(theta_range[0], theta_range[1], grid)
    values = np.full((grid, grid), np.nan)
    for i, tp in enumerate(thetas):
        for j, tm in enumerate(thetas):
            res = winding_number(tp, tm, K=K)
            if res.charge is not None:
                values[i, j] = res.charge
    return ScalarMap(thetas, thetas, values,
                     xname="theta_plus", yname="theta_minus", vname="charge")

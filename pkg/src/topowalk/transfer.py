"""Transfer matrix of the molecular (x1 = x2) subspace and localization length.

On the diagonal subspace the walk reduces to an effective one-particle
split-step walk picking up a phase phi per step, so its eigenproblem at
quasienergy E is the free split-step one at E + phi.  The 2x2 block m of the
transfer matrix therefore carries phi only through e^{i(E+phi)}; writing
z = e^{i(E+phi)}, c+- = cos(theta+-), s+- = sin(theta+-):

    m00 = (1/z + 2 s+ s- + z s+^2) / (c+ c-)
    m01 = m10 = (z c+ s+ + c+ s-) / (c+ c-)
    m11 = z c+^2 / (c+ c-)

which has det m = 1 exactly, hence lambda+ lambda- = 1.  The inverse
localization length is Lambda(E) = log max(|lambda+|, |lambda-|).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .scalarmap import ScalarMap

EPS_SING = 1e-6
LAMBDA_CLIP = 6.0


@dataclass
class TransferEigen:
    E: float
    lambda_plus: complex   # larger modulus
    lambda_minus: complex
    Lambda: float          # inverse localization length, >= 0


def transfer_block(E: float, theta_plus: float, theta_minus: float, phi: float,
                   eps_sing: float = EPS_SING):
    """2x2 transfer block m, or None when cos(theta+)cos(theta-) is singular."""
    cp, sp = math.cos(theta_plus), math.sin(theta_plus)
    cm, sm = math.cos(theta_minus), math.sin(theta_minus)
    cc = cp * cm
    if abs(cc) <= eps_sing:
        return None
    z = cmath.exp(1j * (E + phi))
    m00 = (1.0 / z + 2.0 * sp * sm + z * sp * sp) / cc
    m01 = (z * cp * sp + cp * sm) / cc
    m11 = z * cp * cp / cc
    return np.array([[m00, m01], [m01, m11]], dtype=complex)


def lyapunov(E: float, theta_plus: float, theta_minus: float, phi: float,
             eps_sing: float = EPS_SING):
    """Eigenvalues of the transfer block and Lambda(E); None when singular."""
    m = transfer_block(E, theta_plus, theta_minus, phi, eps_sing)
    if m is None:
        return None
    lam = np.linalg.eigvals(m)
    lam = lam[np.argsort(-np.abs(lam))]
    Lambda = math.log(abs(lam[0]))
    return TransferEigen(E, complex(lam[0]), complex(lam[1]), max(Lambda, 0.0))


def closed_form_lambda(E: float, theta_plus: float, theta_minus: float, phi: float,
                       eps_sing: float = EPS_SING):
    """Closed-form (lambda+, lambda-) at E = 0 or pi.

    lambda+- = (a +- sqrt(a^2 - c+^2 c-^2)) / (c+ c-) with
    a = cos(E + phi) + s+ s-, principal square root.
    """
    if E not in (0.0, math.pi):
        raise ValueError("closed form only at E = 0 or pi")
    cp, sp = math.cos(theta_plus), math.sin(theta_plus)
    cm, sm = math.cos(theta_minus), math.sin(theta_minus)
    cc = cp * cm
    if abs(cc) <= eps_sing:
        return None
    a = math.cos(E + phi) + sp * sm
    root = cmath.sqrt(complex(a * a - cc * cc))
    return ((a + root) / cc, (a - root) / cc)


def loc_length_map(E: float, phi: float, grid: int = 256,
                   theta_range=(-math.pi, math.pi)) -> ScalarMap:
    """Lambda(E) over a (theta+, theta-) grid; singular cells are NaN."""
    if grid < 16:
        raise ValueError("grid resolution must be >= 16")
    thetas = np.linspace(theta_range[0], theta_range[1], grid)
    values = np.full((grid, grid), np.nan)
    for i, tp in enumerate(thetas):
        for j, tm in enumerate(thetas):
            te = lyapunov(E, tp, tm, phi)
            if te is not None:
                values[i, j] = te.Lambda
    return ScalarMap(thetas, thetas, values,
                     xname="theta_plus", yname="theta_minus", vname="Lambda")

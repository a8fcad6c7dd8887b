import cmath
import math

import numpy as np
import pytest

from topowalk.transfer import (
    closed_form_lambda,
    loc_length_map,
    lyapunov,
    transfer_block,
)


def sample_angles(rng, n):
    """Angle triples with |cos(theta+)cos(theta-)| >= 0.01.

    Near the singular lines the float64 error of det m grows like
    2e-16 / (c+ c-)^2, so well-conditioned samples are required for
    tight determinant checks.
    """
    out = []
    while len(out) < n:
        tp, tm, phi = rng.uniform(-math.pi, math.pi, 3)
        if abs(math.cos(tp) * math.cos(tm)) >= 0.01:
            out.append((tp, tm, phi))
    return out


def test_block_symmetric():
    m = transfer_block(0.4, 0.3, 0.9, 1.2)
    assert m[0, 1] == m[1, 0]


def test_block_singular_returns_none():
    assert transfer_block(0.0, math.pi / 2, 0.3, 0.0) is None
    assert lyapunov(0.0, 0.1, math.pi / 2, 0.0) is None
    assert closed_form_lambda(0.0, math.pi / 2, 0.2, 0.0) is None


def test_det_is_one():
    rng = np.random.default_rng(17)
    for tp, tm, phi in sample_angles(rng, 200):
        E = rng.uniform(-math.pi, math.pi)
        m = transfer_block(E, tp, tm, phi)
        assert abs(np.linalg.det(m) - 1.0) < 1e-10


def test_eigenvalue_product_is_one():
    rng = np.random.default_rng(23)
    for tp, tm, phi in sample_angles(rng, 200):
        E = rng.uniform(-math.pi, math.pi)
        te = lyapunov(E, tp, tm, phi)
        assert abs(te.lambda_plus * te.lambda_minus - 1.0) < 1e-10


def test_lambda_ordering_and_sign():
    rng = np.random.default_rng(29)
    for tp, tm, phi in sample_angles(rng, 50):
        te = lyapunov(rng.uniform(-math.pi, math.pi), tp, tm, phi)
        assert abs(te.lambda_plus) >= abs(te.lambda_minus) - 1e-12
        assert te.Lambda >= 0.0
        # product 1 means Lambda = log|lambda+| up to rounding
        assert te.Lambda == pytest.approx(
            max(math.log(abs(te.lambda_plus)), 0.0), abs=1e-12)


def test_worked_value():
    # theta+- = pi/4, phi = 0, E = 0: lambda = 3 +- 2 sqrt(2)
    pair = closed_form_lambda(0.0, math.pi / 4, math.pi / 4, 0.0)
    assert pair[0] == pytest.approx(3 + 2 * math.sqrt(2), abs=1e-12)
    assert pair[1] == pytest.approx(3 - 2 * math.sqrt(2), abs=1e-12)
    te = lyapunov(0.0, math.pi / 4, math.pi / 4, 0.0)
    assert te.Lambda == pytest.approx(math.log(3 + 2 * math.sqrt(2)), abs=1e-9)
    assert te.Lambda == pytest.approx(1.7627471740390861, abs=1e-9)


@pytest.mark.parametrize("E", [0.0, math.pi])
def test_closed_form_matches_eigensolver(E):
    rng = np.random.default_rng(31)
    for tp, tm, phi in sample_angles(rng, 100):
        pair = closed_form_lambda(E, tp, tm, phi)
        te = lyapunov(E, tp, tm, phi)
        got = (te.lambda_plus, te.lambda_minus)
        # match pairs irrespective of ordering (moduli can tie)
        d1 = max(abs(pair[0] - got[0]), abs(pair[1] - got[1]))
        d2 = max(abs(pair[0] - got[1]), abs(pair[1] - got[0]))
        assert min(d1, d2) < 1e-9


def test_closed_form_rejects_other_energies():
    with pytest.raises(ValueError):
        closed_form_lambda(0.5, 0.1, 0.2, 0.0)


def test_phi_only_shifts_energy():
    # m depends on E and phi only through E + phi
    a = transfer_block(0.3, 0.7, 0.4, 0.9)
    b = transfer_block(1.2, 0.7, 0.4, 0.0)
    np.testing.assert_allclose(a, b, atol=1e-14)


def test_loc_length_map_shape_and_nan():
    m = loc_length_map(0.0, 0.0, grid=17)
    assert m.values.shape == (17, 17)
    # grid=17 places theta+ = pi/2 exactly on a row, which is singular
    i = np.argmin(np.abs(m.xs - math.pi / 2))
    assert abs(m.xs[i] - math.pi / 2) < 1e-12
    assert np.isnan(m.values[i]).all()
    finite = m.values[np.isfinite(m.values)]
    assert finite.size > 0 and np.all(finite >= 0)


def test_loc_length_map_rejects_tiny_grid():
    with pytest.raises(ValueError):
        loc_length_map(0.0, 0.0, grid=4)

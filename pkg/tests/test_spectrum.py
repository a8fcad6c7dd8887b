import math

import numpy as np
import pytest

from topowalk.hilbert import WalkConfig
from topowalk.spectrum import (
    band_structure,
    build_sector_operator,
    find_gap_bound_states,
    sector_basis,
    spectral_gaps,
)

from oracles import two_particle_operator


def homogeneous(L, theta_plus, theta_minus=math.pi / 4, phi=0.0):
    return WalkConfig(L=L, theta_minus=theta_minus, theta_left=theta_plus,
                      theta_right=theta_plus, phi=phi, steps=1)


def test_sector_basis_orthonormal():
    for n in (0, 1, 3):
        S = sector_basis(5, n)
        G = S.conj().T @ S
        np.testing.assert_allclose(G, np.eye(20), atol=1e-12)


def test_sector_bases_span_everything():
    # the 5 sectors together give a unitary change of basis of the full space
    L = 5
    full = np.hstack([sector_basis(L, n) for n in range(L)])
    G = full.conj().T @ full
    np.testing.assert_allclose(G, np.eye((2 * L) ** 2), atol=1e-12)


def test_sector_operator_unitary():
    cfg = homogeneous(5, 0.7, phi=1.1)
    sec = build_sector_operator(cfg, 2)
    np.testing.assert_allclose(sec.operator.conj().T @ sec.operator,
                               np.eye(20), atol=1e-10)
    assert sec.residual < 1e-10


def test_sector_rejects_interface():
    cfg = WalkConfig(L=5, theta_minus=0.3, theta_left=0.1, theta_right=0.2,
                     phi=0.0, steps=1)
    with pytest.raises(ValueError):
        build_sector_operator(cfg, 0)


@pytest.mark.parametrize("phi", [0.0, math.pi / 3])
def test_sector_union_matches_dense_spectrum(phi):
    # eigenphase multiset over all sectors == dense operator eigenphase multiset
    cfg = homogeneous(5, 3 * math.pi / 8, phi=phi)
    spec = band_structure(cfg)
    got = np.sort(spec.all_energies())

    lam = np.linalg.eigvals(two_particle_operator(cfg))
    E = -np.angle(lam)
    E[E <= -math.pi] += 2 * math.pi
    expected = np.sort(E)
    np.testing.assert_allclose(got, expected, atol=1e-8)


def test_band_energies_in_principal_range():
    spec = band_structure(homogeneous(7, 0.9, phi=2.0))
    E = spec.all_energies()
    assert np.all(E > -math.pi - 1e-12) and np.all(E <= math.pi + 1e-12)


def test_spectral_gaps_simple():
    E = np.array([-1.0, -0.9, 0.5, 0.6])
    gaps = spectral_gaps(E, gap_min=0.5)
    assert gaps == [(-0.9, 0.5), (0.6, -1.0 + 2 * math.pi)]


def test_spectral_gaps_none_when_dense():
    E = np.linspace(-math.pi, math.pi, 200, endpoint=False)
    assert spectral_gaps(E, gap_min=0.1) == []


def test_no_bound_states_without_interaction():
    cfg0 = homogeneous(11, 3 * math.pi / 7, theta_minus=2 * math.pi / 9, phi=0.0)
    spec0 = band_structure(cfg0)
    assert find_gap_bound_states(spec0, spec0) == []


def test_interaction_creates_gap_states():
    theta_plus, theta_minus = 3 * math.pi / 7, 2 * math.pi / 9
    cfg0 = homogeneous(11, theta_plus, theta_minus, phi=0.0)
    cfg1 = homogeneous(11, theta_plus, theta_minus, phi=math.pi / 3)
    spec0 = band_structure(cfg0)
    spec1 = band_structure(cfg1)
    found = find_gap_bound_states(spec1, spec0)
    assert len(found) > 0
    for p_n, E, w in found:
        assert w >= 0.5
        assert -math.pi < E <= math.pi


def test_weights_bounded():
    spec = band_structure(homogeneous(7, 0.5, phi=1.0))
    for w in spec.weights:
        assert np.all(w >= -1e-12) and np.all(w <= 1 + 1e-12)

import math

import numpy as np
import pytest

from topowalk.evolution import StepPlan, evolve
from topowalk.hilbert import StateVector, config_from_code, make_initial
from topowalk.observables import (
    EntropySeries,
    entropy_series,
    entropy_x,
    fit_growth,
    joint_probability,
    localization_map,
    p_both_origin,
    p_origin,
    reduced_density_x,
    run_observables,
)

from oracles import random_state


def test_joint_probability_normalized():
    rng = np.random.default_rng(1)
    st = StateVector(random_state(7, rng))
    dist = joint_probability(st)
    assert dist.P.shape == (7, 7)
    assert dist.P.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(dist.P >= 0)


def test_p_origin_of_initial_state():
    st = make_initial(0, 9)
    assert p_origin(st) == pytest.approx(1.0)
    assert p_both_origin(st) == pytest.approx(1.0)


def test_p_origin_marginal_consistency():
    rng = np.random.default_rng(4)
    st = StateVector(random_state(9, rng))
    dist = joint_probability(st)
    assert p_origin(st) == pytest.approx(dist.P[4].sum(), abs=1e-12)
    assert p_both_origin(st) == pytest.approx(dist.P[4, 4], abs=1e-12)


def test_reduced_density_properties():
    rng = np.random.default_rng(2)
    st = StateVector(random_state(7, rng))
    rho = reduced_density_x(st)
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.eigvalsh(rho).min() > -1e-12


def test_entropy_pure_and_mixed():
    assert entropy_x(np.diag([1.0, 0.0, 0.0])) == pytest.approx(0.0, abs=1e-12)
    assert entropy_x(np.eye(4) / 4) == pytest.approx(math.log(4), abs=1e-12)


def test_entropy_rejects_non_psd():
    with pytest.raises(ValueError):
        entropy_x(np.diag([1.1, -0.1]))


def test_entropy_zero_without_interaction():
    # phi = 0 on a product state keeps the particle cut unentangled; the
    # position cut entropy then only reflects position-spin correlation,
    # but the initial localized state must start at exactly S = 0
    cfg, b = config_from_code("0400", 25, 10)
    series = entropy_series(make_initial(b, 25), StepPlan.from_config(cfg), 10)
    assert series.S[0] == pytest.approx(0.0, abs=1e-10)
    assert series.t.tolist() == list(range(11))


def test_entropy_grows_with_interaction():
    cfg, b = config_from_code("0011", 45, 20)
    series = entropy_series(make_initial(b, 45), StepPlan.from_config(cfg), 20)
    assert series.S[-1] > series.S[0]
    assert np.all(series.S >= -1e-12)


def test_run_observables_shapes():
    cfg, b = config_from_code("0321", 35, 15)
    final, ret, ent = run_observables(cfg, b)
    assert final.time == 15
    assert ret.t.size == 16 and ent.t.size == 16
    assert ret.P[0] == pytest.approx(1.0)
    assert np.all(ret.P0 <= ret.P + 1e-12)


def test_localization_map_grid():
    m = localization_map([0.2, 1.2], [0.0, 1.5], theta_left=-math.pi / 16,
                         b=0, steps=9)
    assert m.values.shape == (2, 2)
    assert np.all(m.values > 0) and np.all(m.values <= 1 + 1e-12)


def test_localization_map_matches_direct_run():
    theta, phi = 0.6, 1.0
    m = localization_map([theta], [phi], theta_left=-math.pi / 16, b=0, steps=9)
    cfg, _ = config_from_code("0000", 2 * 9 + 5, 9)
    from topowalk.hilbert import WalkConfig
    cfg = WalkConfig(L=23, theta_minus=math.pi / 4, theta_left=-math.pi / 16,
                     theta_right=theta, phi=phi, steps=9)
    st = evolve(make_initial(0, 23), StepPlan.from_config(cfg), 9)
    assert m.values[0, 0] == pytest.approx(p_origin(st), abs=1e-12)


def test_fit_growth_recovers_exact_log_law():
    t = np.arange(0, 200)
    S = 0.37 * np.log(np.maximum(t, 1)) + 0.21
    fit = fit_growth(EntropySeries(t, S), "log", window=(10, None))
    assert fit.alpha == pytest.approx(0.37, abs=1e-12)
    assert fit.S0 == pytest.approx(0.21, abs=1e-12)
    assert fit.r2 == pytest.approx(1.0, abs=1e-12)


def test_fit_growth_loglog():
    t = np.arange(0, 200)
    S = 1.4 * np.log(np.log(np.maximum(t, 3))) + 0.5
    fit = fit_growth(EntropySeries(t, S), "loglog", window=(10, 150))
    assert fit.alpha == pytest.approx(1.4, abs=1e-12)
    assert fit.model == "loglog"


def test_fit_growth_validation():
    t = np.arange(0, 30)
    S = np.log(np.maximum(t, 1))
    with pytest.raises(ValueError):
        fit_growth(EntropySeries(t, S), "exp")
    with pytest.raises(ValueError):
        fit_growth(EntropySeries(t[:8], S[:8]), "log", window=(0, 8))

import json
import math

import numpy as np
import pytest

import locstat


def test_version():
    assert locstat.__version__.startswith("0.1.0")


def test_asymp_variance_closed_form():
    assert locstat.lse_asymp_variance(0.5, 1.0, 1.0) == pytest.approx((math.e - 1) / 2, rel=1e-14)
    assert locstat.lse_asymp_variance(0.5, 1.0, 1.0, "O2") == pytest.approx((math.e - 1) / 2, rel=1e-12)


def test_simulate_and_estimate_lse():
    path = locstat.simulate_ou(rate=0.8, noise="gauss", N=16, horizon=300.0, sim_ratio=50, seed=3)
    assert path.values.shape == (16 * 300 + 1,)
    assert path.times[-1] == pytest.approx(300.0)
    assert path.values[0] == 0.0
    window = locstat.extract_window(path, locstat.SamplingGrid.standard_o1(16, 150.0))
    assert len(window.values) == 2 * window.grid.m() + 1
    est = locstat.lse_estimate(window)
    assert abs(est.a_hat - 0.8) < 0.3
    assert est.sigma_u_hat == pytest.approx(locstat.lse_asymp_variance(est.a_hat))


def test_same_seed_same_path():
    a = locstat.simulate_ou(N=4, horizon=50.0, sim_ratio=10, seed=9, stream=2)
    b = locstat.simulate_ou(N=4, horizon=50.0, sim_ratio=10, seed=9, stream=2)
    c = locstat.simulate_ou(N=4, horizon=50.0, sim_ratio=10, seed=9, stream=3)
    np.testing.assert_array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)


def test_state_space_estimators():
    path = locstat.simulate_statespace(theta=[-0.5, -3.0, 0.2], N=4, horizon=1000.0, sim_ratio=20, seed=5)
    window = locstat.extract_window(path, locstat.SamplingGrid.standard_o1(4, 500.0))
    q = locstat.qmle_estimate(window, max_gens=40)
    w = locstat.whittle_estimate(window, max_gens=40)
    for est in (q, w):
        assert len(est.theta) == 3
        assert est.riccati_residual < 1e-10
        assert -0.7 <= est.theta[0] <= -0.3


def test_scalar_riccati():
    omega, k, v = locstat.riccati(np.array([[0.6]]), np.array([[2.0]]), np.array([1.0]))
    assert omega[0, 0] == pytest.approx(2.0, rel=1e-12)
    assert k[0] == pytest.approx(0.6, rel=1e-12)
    assert v == pytest.approx(2.0, rel=1e-12)


def test_spectral_density_ar1():
    a, s = 0.7, 0.4
    phi = math.exp(-a)
    q = s * (1 - phi * phi) / (2 * a)
    for om in (0.0, 1.0, math.pi):
        expected = q / (2 * math.pi * (1 + phi * phi - 2 * phi * math.cos(om)))
        assert locstat.spectral_density_sampled("car1", [a, s], om) == pytest.approx(expected, rel=1e-10)


def test_run_study_small():
    cfg = json.loads(locstat.default_config("lse"))
    cfg.update(N=[1, 4], replications=10, horizon=1000.0, u_points=[400.0, 500.0, 600.0],
               sim_ratio=10, threads=1)
    out = locstat.run_study(json.dumps(cfg))
    assert out["rows"] == 2 * 10 * 3
    assert len(out["mise"]) == 2 and all(m[0] > 0 for m in out["mise"])
    assert len(out["standardized_errors"][1]) == 30


def test_config_errors_map_to_value_error():
    with pytest.raises(ValueError):
        locstat.run_study(json.dumps({"replications": 0}))
    with pytest.raises(ValueError):
        locstat.simulate_ou(noise="cauchy")

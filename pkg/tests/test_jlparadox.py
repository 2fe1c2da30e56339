import math

import numpy as np
import pytest
from scipy import stats
from scipy.integrate import quad

from pplane import specfun as sf
from pplane.errors import DomainError, NoSolutionError
from pplane.jlparadox import (
    JLConfig,
    bayes_factor_interval_null,
    bayes_factor_point_null,
    bayes_factor_point_null_harmonic,
    classify_jl_region,
    integrated_pdf,
    kass_raftery_label,
    ockham_factor,
    p0_variants,
    p1_prior_predictive,
    solve_tau_for_b01,
)

FIVE_SIGMA_P0 = 2.87e-7
T5 = float(sf.p_to_z(FIVE_SIGMA_P0))  # observation with p0 exactly at 5 sigma


def test_p1pp_collapses_to_point_alternative():
    cfg = JLConfig(0.0, 1.0, 1e-9)
    assert p1_prior_predictive(cfg, 0.0) == pytest.approx(0.5, abs=1e-6)


def test_p1pp_equals_integrated_pdf_left_tail():
    # interchange of integration order: average of tails = tail of averages
    for tau, t0 in ((100.0, 2.0), (1.0, 0.3), (10.0, -1.0)):
        cfg = JLConfig(0.0, 1.0, tau)
        direct = p1_prior_predictive(cfg, t0)
        lo = -40.0  # the integrand mass below this is < 1e-300
        via_quad, _ = quad(
            lambda x: integrated_pdf(tau, x), lo, t0,
            points=[0.0, min(t0, tau)], limit=300, epsabs=0.0, epsrel=1e-12,
        )
        assert direct == pytest.approx(via_quad, rel=1e-10)


def test_p1pp_quadrature_oracle_over_prior():
    # straight double-check of the closed form via the defining integral
    cfg = JLConfig(0.0, 1.0, 100.0)
    t0 = 2.0
    val, _ = quad(
        lambda mu: (1.0 / cfg.tau) * float(sf.z_to_p((mu - t0) / cfg.sigma)),
        0.0, cfg.tau, limit=300, epsabs=0.0, epsrel=1e-12,
    )
    assert p1_prior_predictive(cfg, t0) == pytest.approx(val, rel=1e-10)


def test_p1pp_not_uniform_under_fixed_mu():
    # under a fixed mu in H1 the prior-predictive p-value is NOT uniform
    rng = np.random.default_rng(42)
    cfg = JLConfig(0.0, 1.0, 10.0)
    draws = rng.normal(3.0, 1.0, size=4000)
    vals = np.asarray(p1_prior_predictive(cfg, draws))
    assert stats.kstest(vals, "uniform").pvalue < 0.01


def test_bayes_factor_five_sigma_paradox_widths():
    for tau, expected in ((6.7e5, 1.0), (2.0e6, 3.0), (1.3e7, 20.0), (1.0e8, 150.0)):
        b01 = bayes_factor_point_null(JLConfig(0.0, 1.0, tau), T5)
        assert b01 == pytest.approx(expected, rel=0.10)
    assert bayes_factor_point_null(JLConfig(0.0, 1.0, 6.7e5), T5) == pytest.approx(1.0, rel=0.05)


def test_bayes_factor_tau_to_zero():
    assert bayes_factor_point_null(JLConfig(0.0, 1.0, 1e-12), 0.0) == pytest.approx(1.0, rel=1e-6)


def test_harmonic_mean_identity():
    for tau in (1.0, 10.0, 1e4):
        cfg = JLConfig(0.0, 1.0, tau)
        for t0 in np.linspace(-2.0, 6.0, 20):
            direct = bayes_factor_point_null(cfg, float(t0))
            harmonic = bayes_factor_point_null_harmonic(cfg, float(t0))
            assert direct == pytest.approx(harmonic, rel=1e-9)


def test_bayes_factor_is_test2_likelihood_ratio():
    cfg = JLConfig(0.0, 1.0, 100.0)
    for t0 in (0.5, 2.0, 4.0):
        lr = sf.gauss_pdf(t0, 0.0, 1.0) / integrated_pdf(cfg.tau, t0, 0.0, 1.0)
        assert bayes_factor_point_null(cfg, t0) == pytest.approx(lr, rel=1e-10)


def test_integrated_pdf_values():
    assert integrated_pdf(0.0, 0.0) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), rel=1e-14)
    # x=2 under the theta=0 null: 2.3% tail; ratio to theta=100 is 5.5
    assert float(sf.z_to_p(2.0)) == pytest.approx(0.023, abs=1e-3)
    ratio = integrated_pdf(0.0, 2.0) / integrated_pdf(100.0, 2.0)
    assert ratio == pytest.approx(5.5, abs=0.1)


def test_integrated_pdf_normalization():
    for theta in (1.0, 10.0, 100.0):
        val, _ = quad(
            lambda x: integrated_pdf(theta, x), -13.0, theta + 13.0,
            points=[0.0, theta], limit=400, epsabs=0.0, epsrel=1e-12,
        )
        assert val == pytest.approx(1.0, abs=1e-9)


def test_integrated_pdf_deep_tail_stability():
    # far above the window the density must stay positive and decreasing
    vals = np.asarray(integrated_pdf(10.0, np.array([20.0, 25.0, 30.0])))
    assert np.all(vals > 0.0) and np.all(np.diff(vals) < 0)


def test_p0_variants_point_null_coincide():
    cfg = JLConfig(0.0, 1.0, 10.0, 0.0)
    v = p0_variants(cfg, 2.0)
    assert v["p0_simple"] == v["p0_sup"] == v["p0_pp"]
    assert v["p0_simple"] == pytest.approx(float(sf.z_to_p(2.0)), rel=1e-14)


def test_p0_variants_interval_null():
    cfg = JLConfig(0.0, 1.0, 10.0, 100.0)
    t0 = 5.0
    v = p0_variants(cfg, t0)
    assert v["p0_sup"] == v["p0_simple"]  # supremum attained at mu = mu0
    assert v["p0_pp"] < v["p0_simple"]  # averaging over lower means shrinks it
    # quadrature oracle for the prior-predictive average
    oracle, _ = quad(
        lambda mu: float(sf.z_to_p(t0 - mu)) / cfg.epsilon,
        -cfg.epsilon, 0.0, points=[t0 - 8.0], limit=400,
        epsabs=0.0, epsrel=1e-11,
    )
    assert v["p0_pp"] == pytest.approx(oracle, rel=1e-8)


def test_interval_null_bayes_factor_limits():
    # epsilon -> 0 recovers the point null; the leading bias of the
    # prior-averaged numerator is exactly (1 - e^(-t0 eps)) / (t0 eps)
    t0 = T5
    point = bayes_factor_point_null(JLConfig(0.0, 1.0, 1e4), t0)
    for eps in (0.01, 1e-3, 1e-4):
        narrow = bayes_factor_interval_null(JLConfig(0.0, 1.0, 1e4, eps), t0)
        bias = -math.expm1(-t0 * eps) / (t0 * eps)
        assert narrow == pytest.approx(point * bias, rel=1e-4)
    narrow = bayes_factor_interval_null(JLConfig(0.0, 1.0, 1e4, 1e-4), t0)
    assert narrow == pytest.approx(point, rel=0.01)
    # epsilon ~ tau, both huge: B01 approaches the ratio of tail masses,
    # i.e. p0/(1-p0), and the paradox disappears
    wide = bayes_factor_interval_null(JLConfig(0.0, 1.0, 1e4, 1e4), t0)
    p0 = float(sf.z_to_p(t0))
    assert wide == pytest.approx(p0 / (1.0 - p0), rel=1e-3)
    assert wide < 1.0  # agrees with the small p-value


def test_interval_null_symmetric_config():
    b01 = bayes_factor_interval_null(JLConfig(0.0, 1.0, 3.0, 3.0), 0.0)
    assert b01 == pytest.approx(1.0, rel=1e-12)


def test_interval_null_requires_epsilon():
    with pytest.raises(DomainError):
        bayes_factor_interval_null(JLConfig(0.0, 1.0, 1.0, 0.0), 1.0)
    with pytest.raises(DomainError):
        bayes_factor_point_null(JLConfig(0.0, 1.0, 1.0, 1.0), 1.0)


def test_ockham_factor_asymptotic():
    cfg = JLConfig(0.0, 1.0, 1e4)
    expected = 1e4 / math.sqrt(2.0 * math.pi)
    assert ockham_factor(cfg, 5.0) == pytest.approx(expected, rel=0.01)


def test_ockham_factor_peak_inside_support():
    # for t0 > mu0 the maximized H1 likelihood is the Gaussian peak value
    cfg = JLConfig(0.0, 1.0, 50.0)
    t0 = 3.0
    max_l1 = sf.gauss_pdf(t0, t0, 1.0)
    b01 = bayes_factor_point_null(cfg, t0)
    assert ockham_factor(cfg, t0) == pytest.approx(
        b01 / (sf.gauss_pdf(t0, 0.0, 1.0) / max_l1), rel=1e-12
    )


def test_type_ii_rate_tracks_inverse_ockham():
    # Type-II rate of the simple-vs-simple test at threshold alpha0 is
    # approximately N_sigma * sigma / tau at large tau/sigma
    tau = 1e4
    n_sigma = float(sf.p_to_z(1.35e-3))  # 3 sigma
    cfg = JLConfig(0.0, 1.0, tau)
    type_ii = p1_prior_predictive(cfg, n_sigma)
    assert type_ii == pytest.approx(n_sigma / tau, rel=0.01)


def test_kass_raftery_labels():
    assert kass_raftery_label(150.0) == "very strong (favors H0)"
    assert kass_raftery_label(20.0) == "strong (favors H0)"
    assert kass_raftery_label(3.0) == "positive (favors H0)"
    assert kass_raftery_label(1.5) == "bare mention (favors H0)"
    assert kass_raftery_label(1.0 / 25.0) == "strong (favors H1)"


def test_classify_regions():
    assert classify_jl_region(2.87e-7, 0.5, 150.0).region == "paradox"
    assert classify_jl_region(2.87e-7, 0.5, 150.0).bayes_label.startswith("very strong")
    assert classify_jl_region(2.87e-7, 0.5, 0.2).region == "agree-reject-h0"
    assert classify_jl_region(0.4, 0.5, 1.0).region == "no-decision"
    assert classify_jl_region(0.6, 0.01, 50.0).region == "agree-reject-h1"


def test_solve_tau_roundtrip():
    for t0 in (2.0, T5, 8.0):
        for target in (1.0, 3.0, 20.0, 150.0):
            tau = solve_tau_for_b01(t0, target)
            assert bayes_factor_point_null(JLConfig(0.0, 1.0, tau), t0) == pytest.approx(
                target, rel=1e-8
            )


def test_solve_tau_reproduces_paper_widths():
    for target, tau_expected in ((1.0, 6.7e5), (3.0, 2.0e6), (20.0, 1.3e7), (150.0, 1.0e8)):
        tau = solve_tau_for_b01(T5, target)
        assert tau == pytest.approx(tau_expected, rel=0.05)


def test_solve_tau_interval_null_roundtrip():
    tau = solve_tau_for_b01(3.0, 5.0, epsilon=2.0)
    b01 = bayes_factor_interval_null(JLConfig(0.0, 1.0, tau, 2.0), 3.0)
    assert b01 == pytest.approx(5.0, rel=1e-8)


def test_solve_tau_below_one_rejected():
    with pytest.raises(NoSolutionError):
        solve_tau_for_b01(2.0, 0.5)


def test_sqrt_n_threshold_tracks_constant_b01_contours():
    # along the alpha0/sqrt(n) threshold (n = (tau/sigma)^2) the Bayes
    # factor stays within a bounded band: its spread over tau/sigma in
    # [1e2, 1e4] is less than a factor of 3
    alpha0 = 0.01
    vals = []
    for r in np.geomspace(1e2, 1e4, 25):
        t0 = float(sf.p_to_z(alpha0 / r))
        vals.append(bayes_factor_point_null(JLConfig(0.0, 1.0, r), t0))
    assert max(vals) / min(vals) < 3.0

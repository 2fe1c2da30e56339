import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pplane.errors import DomainError
from pplane.families import Cauchy, Gauss, Poisson
from pplane.limits import (
    LimitRequest,
    bayes_upper_limit,
    cls_upper_limit,
    frequentist_upper_limit,
    verify_bayes_cls_equality,
)

CREDS = (0.68, 0.90, 0.95, 0.99)


def test_gauss_unbounded_frequentist_limit():
    req = LimitRequest(Gauss(1.0), 0.0, 0.95, -math.inf)
    assert frequentist_upper_limit(req) == pytest.approx(1.645, abs=1e-3)


def test_gauss_median_limit():
    req = LimitRequest(Gauss(1.0), 0.0, 0.5, -math.inf)
    assert frequentist_upper_limit(req) == pytest.approx(0.0, abs=1e-9)


def test_gauss_cls_limit_with_floor():
    req = LimitRequest(Gauss(1.0), 0.0, 0.95, 0.0)
    assert cls_upper_limit(req) == pytest.approx(1.960, abs=1e-3)
    assert bayes_upper_limit(req) == pytest.approx(1.960, abs=1e-3)


def test_poisson_zero_count_limits():
    req = LimitRequest(Poisson(), 0, 0.95, 0.0)
    expected = -math.log(0.05)
    assert frequentist_upper_limit(req) == pytest.approx(expected, abs=1e-9)
    assert cls_upper_limit(req) == pytest.approx(expected, abs=1e-9)
    assert bayes_upper_limit(req) == pytest.approx(expected, abs=1e-3)


def test_cls_weaker_than_frequentist():
    for obs in (-1.0, 0.0, 0.7, 3.0):
        req = LimitRequest(Gauss(1.0), obs, 0.95, 0.0)
        assert cls_upper_limit(req) >= frequentist_upper_limit(req) - 1e-12
    for n in (0, 2, 7):
        req = LimitRequest(Poisson(), n, 0.90, 0.5)
        assert cls_upper_limit(req) >= frequentist_upper_limit(req) - 1e-12


def test_floor_to_minus_inf_makes_cls_frequentist():
    req = LimitRequest(Gauss(2.0), 1.0, 0.9, -math.inf)
    assert cls_upper_limit(req) == pytest.approx(frequentist_upper_limit(req), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    obs=st.floats(-3.0, 6.0),
    cred=st.floats(0.5, 0.995),
    floor=st.floats(-2.0, 1.0),
)
def test_ordering_property(obs, cred, floor):
    req = LimitRequest(Gauss(1.0), obs, cred, floor)
    assert cls_upper_limit(req) >= frequentist_upper_limit(req) - 1e-12


def test_equality_gauss_grid():
    report = verify_bayes_cls_equality(Gauss(1.0), np.linspace(-2.0, 5.0, 8), CREDS, 0.0)
    assert report.passed, report.as_record()
    assert report.max_rel_diff <= 1e-6


def test_equality_poisson_grid():
    report = verify_bayes_cls_equality(Poisson(), range(0, 21), CREDS, 0.0)
    assert report.passed, report.as_record()


def test_equality_cauchy_grid():
    report = verify_bayes_cls_equality(Cauchy(1.0), np.linspace(-2.0, 5.0, 8), CREDS, 0.0)
    assert report.passed, report.as_record()


def test_equality_report_record_shape():
    report = verify_bayes_cls_equality(Gauss(1.0), [0.0], [0.95], 0.0)
    case = report.cases[0]
    assert set(case) == {
        "family", "observation", "gamma", "freq_ul", "cls_ul", "bayes_ul", "abs_diff",
    }
    rec = report.as_record()
    assert rec["family"] == "gauss" and rec["n_cases"] == 1


def test_frequentist_coverage_and_cls_conservatism():
    # 10^4 pseudo-experiments at true mu*: the 95% frequentist limit should
    # exclude mu* about 5% of the time; the CLs limit at most that often
    rng = np.random.default_rng(314159)
    mu_star, sigma = 1.3, 1.0
    n = 10000
    x0 = rng.normal(mu_star, sigma, size=n)
    excl_freq = 0
    excl_cls = 0
    for x in x0:
        req = LimitRequest(Gauss(sigma), float(x), 0.95, 0.0)
        if frequentist_upper_limit(req) < mu_star:
            excl_freq += 1
        if cls_upper_limit(req) < mu_star:
            excl_cls += 1
    se = math.sqrt(0.05 * 0.95 / n)
    assert abs(excl_freq / n - 0.05) <= 3.0 * se
    assert excl_cls <= excl_freq
    assert excl_cls / n <= 0.05 + 3.0 * se


def test_request_validation():
    with pytest.raises(DomainError):
        LimitRequest(Gauss(1.0), 0.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        LimitRequest(Poisson(), 1.5, 0.9, 0.0)
    with pytest.raises(DomainError):
        LimitRequest(Poisson(), 2, 0.9, -1.0)

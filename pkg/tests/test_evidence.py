import math

import numpy as np
import pytest
from scipy.optimize import brentq, minimize_scalar

from pplane.contours import GaussSep, fixed_contour, lr_contour
from pplane.errors import DomainError
from pplane.evidence import (
    LR_FAIRLY_STRONG,
    LR_STRONG,
    max_misleading_separation,
    prob_misleading_for_h0,
    prob_misleading_for_h1,
)

# benchmark planning probabilities: rows (sep, k, probability)
TABLE = [
    (1.67, 32.0, 0.0018),
    (1.67, 8.0, 0.019),
    (3.33, 8.0, 0.011),
    (3.33, 32.0, 0.0034),
]


@pytest.mark.parametrize("sep,k,expected", TABLE)
def test_table_values(sep, k, expected):
    assert prob_misleading_for_h0(sep, k) == pytest.approx(expected, rel=0.05)
    assert prob_misleading_for_h1(sep, k) == pytest.approx(expected, rel=0.05)


def test_symmetry_between_directions():
    for sep in (0.3, 1.67, 3.33, 6.0):
        for k in (1.5, LR_FAIRLY_STRONG, LR_STRONG, 1000.0):
            a = prob_misleading_for_h0(sep, k)
            b = prob_misleading_for_h1(sep, k)
            assert a == pytest.approx(b, rel=1e-12)


def test_monotone_decreasing_in_k():
    for sep in (1.0, 2.0, 4.0):
        ks = np.geomspace(1.2, 1e4, 30)
        ps = [prob_misleading_for_h0(sep, k) for k in ks]
        assert all(x > y for x, y in zip(ps, ps[1:]))


def test_spec_accepts_contour_spec():
    assert prob_misleading_for_h0(GaussSep(1.67), 8.0) == prob_misleading_for_h0(1.67, 8.0)


def test_vanishes_at_large_separation():
    assert prob_misleading_for_h0(50.0, 8.0) < 1e-100


def test_max_misleading_separation_against_numeric_oracle():
    for k in (8.0, 32.0, 200.0):
        s_star = max_misleading_separation(k)
        assert s_star == pytest.approx(math.sqrt(2.0 * math.log(k)), rel=1e-12)
        res = minimize_scalar(
            lambda s: -prob_misleading_for_h0(s, k), bounds=(0.05, 20.0), method="bounded",
            options={"xatol": 1e-10},
        )
        assert s_star == pytest.approx(res.x, abs=1e-6)


def test_peak_values():
    assert max_misleading_separation(8.0) == pytest.approx(2.039, abs=1e-3)
    assert max_misleading_separation(32.0) == pytest.approx(2.633, abs=1e-3)
    peak = prob_misleading_for_h0(max_misleading_separation(8.0), 8.0)
    assert peak == pytest.approx(0.0207, abs=2e-4)
    # the peak is exactly the tail at sqrt(2 ln k)
    from pplane.specfun import z_to_p

    assert peak == pytest.approx(float(z_to_p(math.sqrt(2 * math.log(8.0)))), rel=1e-12)


def test_probability_is_intersection_ordinate():
    # P(L0/L1 > k | H1) equals p1 where the lambda=k contour crosses the
    # fixed contour of the same separation
    for sep, k in ((1.67, 8.0), (3.33, 32.0), (2.5, 5.0)):
        spec = GaussSep(sep)

        def gap(p0):
            return float(lr_contour(spec, k, p0, "lower")) - float(fixed_contour(spec, p0))

        p0x = brentq(gap, 1e-12, 1.0 - 1e-9, xtol=1e-15, rtol=8.9e-16)
        p1x = float(fixed_contour(spec, p0x))
        assert prob_misleading_for_h0(sep, k) == pytest.approx(p1x, rel=1e-8)


def test_domain_errors():
    with pytest.raises(DomainError):
        prob_misleading_for_h0(0.0, 8.0)
    with pytest.raises(DomainError):
        prob_misleading_for_h0(1.0, -2.0)
    with pytest.raises(DomainError):
        max_misleading_separation(1.0)


def test_non_gauss_specs_rejected():
    from pplane.contours import CauchySep
    from pplane.errors import FamilyMismatchError

    with pytest.raises(FamilyMismatchError):
        prob_misleading_for_h0(CauchySep(1.0), 8.0)

"""Contours and regions in the (p0, p1) plane.

Two kinds of contour are provided.  A *fixed-hypothesis* contour is traced
by varying the observation while both hypotheses stay fixed; it depends on
the family only through a separation parameter (dmu/sigma for Gauss,
dmu/gamma for Cauchy, the rate ratio and sample size for Gamma, the pair
of means for Poisson).  A *constant-likelihood-ratio* contour collects the
observations whose likelihood ratio lambda01 = L0/L1 has a given value; for
Gauss and Cauchy it is independent of the hypothesis parameters, for Gamma
it depends only on the sample size, and for Poisson it must be solved
numerically point by point.

Poisson contours are inherently discrete and are returned as point lists;
the continuous families evaluate pointwise and accept numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Tuple, Union

import numpy as np
from scipy.optimize import brentq

from . import specfun
from .errors import DomainError, NoSolutionError
from .families import Cauchy, Gauss, GammaRate, Poisson, PPoint, SimpleTest

__all__ = [
    "GaussSep",
    "CauchySep",
    "GammaSep",
    "PoissonSep",
    "ContourSpec",
    "PPoint",
    "fixed_contour",
    "poisson_fixed_points",
    "lr_contour",
    "poisson_lr_points",
    "cls",
    "classify_region",
    "punzi_separation",
    "AsimovMedians",
    "asimov_medians",
    "solve_p0_for_p1",
    "canonical_test",
    "observation_for_p0",
    "default_p0_grid",
]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class GaussSep:
    dmu_over_sigma: float

    def __post_init__(self):
        if self.dmu_over_sigma < 0.0 or not math.isfinite(self.dmu_over_sigma):
            raise DomainError("Gauss separation must be finite and >= 0")


@dataclass(frozen=True)
class CauchySep:
    dmu_over_gamma: float

    def __post_init__(self):
        if self.dmu_over_gamma < 0.0 or not math.isfinite(self.dmu_over_gamma):
            raise DomainError("Cauchy separation must be finite and >= 0")


@dataclass(frozen=True)
class GammaSep:
    n: int
    rate_ratio: float  # mu1 / mu0 >= 1

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise DomainError("Gamma sample size must be an integer >= 1")
        if not (self.rate_ratio >= 1.0 and math.isfinite(self.rate_ratio)):
            raise DomainError("Gamma rate ratio must be finite and >= 1")


@dataclass(frozen=True)
class PoissonSep:
    mu0: float
    mu1: float

    def __post_init__(self):
        if self.mu0 <= 0.0 or self.mu1 <= 0.0:
            raise DomainError("Poisson means must be positive")


ContourSpec = Union[GaussSep, CauchySep, GammaSep, PoissonSep]


def _check_open_unit(p0) -> np.ndarray:
    arr = np.asarray(p0, dtype=float)
    if np.any((arr <= 0.0) | (arr >= 1.0)):
        raise DomainError(f"p0 must lie strictly inside (0, 1), got {p0!r}")
    return arr


def _scalar_or_array(out, like):
    if np.ndim(like) == 0:
        return float(out)
    return out


# Stable helpers for the Cauchy contour algebra.  u_of_p maps a p-value to
# the slope tan((1-2p) pi/2) without losing precision near p = 0 or 1, and
# p_of_u is its inverse.

def _u_of_p(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    lo = np.tan(np.pi * np.minimum(p, 0.5))
    hi = np.tan(np.pi * (1.0 - np.maximum(p, 0.5)))
    return np.where(p <= 0.5, 1.0 / np.where(lo == 0.0, 1.0, lo), -1.0 / np.where(hi == 0.0, 1.0, hi))


def _p_of_u(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    safe = np.where(u == 0.0, 1.0, np.abs(u))
    base = np.arctan(1.0 / safe) / np.pi
    return np.where(u > 0.0, base, np.where(u < 0.0, 1.0 - base, 0.5))


def fixed_contour(spec: ContourSpec, p0):
    """p1 on the fixed-hypothesis contour of ``spec`` at abscissa p0.

    Accepts scalar or array p0 in (0, 1).  Poisson contours are discrete;
    use :func:`poisson_fixed_points` for them.
    """
    arr = _check_open_unit(p0)
    if isinstance(spec, GaussSep):
        a = specfun.erfc_inv(2.0 * arr)  # erf_inv(1 - 2 p0), tail-stable
        out = 0.5 * specfun.erfc(spec.dmu_over_sigma / _SQRT2 - np.asarray(a))
    elif isinstance(spec, CauchySep):
        out = _p_of_u(spec.dmu_over_gamma - _u_of_p(arr))
    elif isinstance(spec, GammaSep):
        x0 = specfun.reg_gamma_p_inv(spec.n, arr)
        out = specfun.reg_gamma_q(spec.n, spec.rate_ratio * np.asarray(x0))
    elif isinstance(spec, PoissonSep):
        raise DomainError("Poisson contours are discrete; use poisson_fixed_points")
    else:  # pragma: no cover
        raise DomainError(f"unknown contour spec {spec!r}")
    return _scalar_or_array(out, p0)


def _poisson_n_range(spec: PoissonSep) -> range:
    hi = max(spec.mu0, spec.mu1)
    n_hi = int(math.ceil(hi + 12.0 * math.sqrt(hi) + 25.0))
    return range(0, n_hi + 1)


def poisson_fixed_points(spec: PoissonSep, n_values=None) -> List[Tuple[int, PPoint]]:
    """Discrete (n, (p0, p1)) points of a Poisson fixed-hypothesis contour."""
    if n_values is None:
        n_values = _poisson_n_range(spec)
    out = []
    for n in n_values:
        p0 = specfun.poisson_right_tail(spec.mu0, n)
        p1 = specfun.poisson_left_tail(spec.mu1, n)
        out.append((int(n), PPoint(p0, p1)))
    return out


def lr_contour(spec: ContourSpec, lambda01: float, p0, branch: str = "lower"):
    """p1 on the constant-likelihood-ratio contour through abscissa p0.

    The contour generally has two branches meeting where the discriminant
    vanishes; ``branch="lower"`` picks the small-p1 solution, ``"upper"``
    the mirrored one.  Gauss and Cauchy contours do not depend on the
    separation stored in ``spec``; Gamma contours depend on the sample size
    only.  Poisson contours require :func:`poisson_lr_points`.
    """
    if lambda01 <= 0.0 or not math.isfinite(lambda01):
        raise DomainError("lambda01 must be positive and finite")
    if branch not in ("lower", "upper"):
        raise DomainError(f"branch must be 'lower' or 'upper', got {branch!r}")
    arr = _check_open_unit(p0)
    log_lam = math.log(lambda01)

    if isinstance(spec, GaussSep):
        a = np.asarray(specfun.erfc_inv(2.0 * arr))
        disc = a * a + log_lam
        if np.any(disc < 0.0):
            raise NoSolutionError(
                f"lambda01={lambda01} is unattainable at p0={p0!r} for the Gauss family"
            )
        b = np.sqrt(disc) if branch == "lower" else -np.sqrt(disc)
        out = 0.5 * specfun.erfc(b)
    elif isinstance(spec, CauchySep):
        u0 = _u_of_p(arr)
        disc = lambda01 * (1.0 + u0 * u0) - 1.0
        if np.any(disc < 0.0):
            raise NoSolutionError(
                f"lambda01={lambda01} is unattainable at p0={p0!r} for the Cauchy family"
            )
        u1 = np.sqrt(disc) if branch == "lower" else -np.sqrt(disc)
        out = _p_of_u(u1)
    elif isinstance(spec, GammaSep):
        out = np.vectorize(
            lambda q: _gamma_lr_point(spec.n, log_lam, q, branch), otypes=[float]
        )(arr)
    elif isinstance(spec, PoissonSep):
        raise DomainError("Poisson contours are discrete; use poisson_lr_points")
    else:  # pragma: no cover
        raise DomainError(f"unknown contour spec {spec!r}")
    return _scalar_or_array(out, p0)


def _gamma_lr_point(n: int, log_lam: float, p0: float, branch: str) -> float:
    # With x0 = P^-1(n, p0) = mu0*t and x1 = mu1*t, the contour condition is
    # n*ln(x0/x1) + (x1 - x0) = ln(lambda01).  phi is decreasing on (0, n]
    # and increasing on [n, inf); each monotone segment holds one root.
    x0 = specfun.reg_gamma_p_inv(n, p0)

    def phi(x1: float) -> float:
        return n * math.log(x0 / x1) + (x1 - x0) - log_lam

    if phi(n) > 0.0:
        raise NoSolutionError(
            f"lambda01=exp({log_lam:g}) is unattainable at p0={p0:g} for Gamma(n={n})"
        )
    if branch == "lower":
        hi = float(n)
        while phi(hi) < 0.0:
            hi = 2.0 * hi + max(x0, abs(log_lam)) + 10.0
        x1 = brentq(phi, n, hi, xtol=1e-14, rtol=8.9e-16)
    else:
        lo = float(n)
        while phi(lo) < 0.0:
            lo /= 2.0
            if lo < 1e-300:
                raise NoSolutionError("no upper-branch solution above underflow")
        x1 = brentq(phi, lo, n, xtol=1e-300, rtol=8.9e-16)
    return float(specfun.reg_gamma_q(n, x1))


def poisson_lr_points(
    mu0: float, lambda01: float, n_values=None, branch: str = "lower"
) -> List[Tuple[int, float, PPoint]]:
    """Discrete points of a Poisson constant-likelihood-ratio contour.

    The null mean mu0 is held fixed; for each count n the alternative mean
    solving lambda01 = f0(n)/f1(n) is found on the requested monotone
    segment (mu1 >= n for "lower", mu1 <= n for "upper") and mapped to the
    (p0, p1) pair.  Counts where the target ratio is unattainable are
    skipped.  Returns (n, mu1, (p0, p1)) triples.
    """
    if mu0 <= 0.0:
        raise DomainError("mu0 must be positive")
    if lambda01 <= 0.0 or not math.isfinite(lambda01):
        raise DomainError("lambda01 must be positive and finite")
    if branch not in ("lower", "upper"):
        raise DomainError(f"branch must be 'lower' or 'upper', got {branch!r}")
    if n_values is None:
        n_values = _poisson_n_range(PoissonSep(mu0, max(mu0, 1.0)))
    log_lam = math.log(lambda01)
    out = []
    for n in n_values:
        n = int(n)

        def phi(mu1: float) -> float:
            return (mu1 - mu0) - n * math.log(mu1 / mu0) - log_lam

        if n == 0:
            mu1 = mu0 + log_lam
            if mu1 <= 0.0 or branch == "upper":
                continue
        else:
            if phi(n) > 0.0:
                continue
            if branch == "lower":
                hi = float(n)
                while phi(hi) < 0.0:
                    hi = 2.0 * hi + mu0 + abs(log_lam) + 10.0
                mu1 = brentq(phi, n, hi, xtol=1e-10, rtol=8.9e-16)
            else:
                lo = float(n)
                while phi(lo) < 0.0:
                    lo /= 2.0
                    if lo < 1e-300:
                        lo = None
                        break
                if lo is None:
                    continue
                mu1 = brentq(phi, lo, n, xtol=1e-10, rtol=8.9e-16)
        p0 = specfun.poisson_right_tail(mu0, n)
        p1 = specfun.poisson_left_tail(mu1, n)
        out.append((n, float(mu1), PPoint(p0, p1)))
    return out


def cls(p) -> float:
    """CLs = p1 / (1 - p0); exceeds p1 and equals it only at p0 = 0."""
    p0, p1 = float(p[0]), float(p[1])
    if p0 >= 1.0:
        raise DomainError("CLs is undefined at p0 = 1")
    return p1 / (1.0 - p0)


_REGION_RULES = {"p1": "p1", "p1-cut": "p1", "cls": "cls", "cls-cut": "cls"}


def classify_region(p, alpha0: float, alpha1: float, exclusion_rule: str = "p1") -> str:
    """Assign a plane point to one of the four double-test regions.

    H0 is rejected when p0 <= alpha0.  H1 is rejected when p1 <= alpha1
    (rule "p1") or CLs <= alpha1 (rule "cls"); since CLs >= p1 the CLs
    exclusion set is contained in the plain-p1 one.
    """
    rule = _REGION_RULES.get(exclusion_rule)
    if rule is None:
        raise DomainError(f"unknown exclusion rule {exclusion_rule!r}")
    if not (0.0 < alpha0 < 1.0 and 0.0 < alpha1 < 1.0):
        raise DomainError("alpha0 and alpha1 must lie in (0, 1)")
    p0, p1 = float(p[0]), float(p[1])
    reject_h0 = p0 <= alpha0
    excluded = (p1 <= alpha1) if rule == "p1" else (cls((p0, p1)) <= alpha1)
    if reject_h0 and excluded:
        return "double-rejection"
    if reject_h0:
        return "discovery"
    if excluded:
        return "exclusion"
    return "no-decision"


def punzi_separation(alpha0: float, alpha1: float) -> float:
    """Gauss separation whose fixed contour passes through (alpha0, alpha1).

    Contours with larger separation miss the no-decision region entirely,
    guaranteeing discovery or exclusion (or both) for every outcome.
    """
    if not (0.0 < alpha0 < 0.5 and 0.0 < alpha1 < 0.5):
        raise DomainError("thresholds must lie in (0, 0.5)")
    return _SQRT2 * (specfun.erfc_inv(2.0 * alpha0) + specfun.erfc_inv(2.0 * alpha1))


class AsimovMedians(NamedTuple):
    median_p1_h0: float
    median_p0_h1: float
    median_cls_h0: float


def asimov_medians(spec: ContourSpec) -> AsimovMedians:
    """Median p-values under each hypothesis, plus the median CLs under H0.

    For continuous families these are the contour values at the median
    abscissa 0.5; the median CLs under H0 equals twice the median p1.  For
    Poisson the discrete median count is used instead.
    """
    if isinstance(spec, PoissonSep):
        n_med0 = _poisson_median_count(spec.mu0)
        n_med1 = _poisson_median_count(spec.mu1)
        med_p1 = specfun.poisson_left_tail(spec.mu1, n_med0)
        med_p0 = specfun.poisson_right_tail(spec.mu0, n_med1)
    else:
        med_p1 = fixed_contour(spec, 0.5)
        med_p0 = solve_p0_for_p1(spec, 0.5)
    return AsimovMedians(float(med_p1), float(med_p0), 2.0 * float(med_p1))


def _poisson_median_count(mu: float) -> int:
    n = int(mu)
    while specfun.poisson_left_tail(mu, n) < 0.5:
        n += 1
    while n > 0 and specfun.poisson_left_tail(mu, n - 1) >= 0.5:
        n -= 1
    return n


def solve_p0_for_p1(spec: ContourSpec, p1_target: float) -> float:
    """Abscissa p0 at which the fixed contour reaches a given p1.

    Gauss and Cauchy contours are symmetric under p0 <-> p1, so the answer
    is the contour value itself; the Gamma contour is solved by bracketed
    root-finding on the monotone map.
    """
    if not (0.0 < p1_target < 1.0):
        raise DomainError("p1 target must lie in (0, 1)")
    if isinstance(spec, (GaussSep, CauchySep)):
        return float(fixed_contour(spec, p1_target))
    if isinstance(spec, PoissonSep):
        raise DomainError("Poisson contours are discrete; enumerate poisson_fixed_points")

    # Parametrize p0 = z_to_p(x) so that both tails stay well conditioned.
    # The bracket keeps p0 inside (1e-284, 1 - 1.3e-12), clear of erfc
    # underflow on one side and saturation at 1.0 on the other.
    def g(x: float) -> float:
        return float(fixed_contour(spec, specfun.z_to_p(x))) - p1_target

    lo, hi = -7.0, 36.0
    glo, ghi = g(lo), g(hi)
    if glo > 0.0 or ghi < 0.0:
        raise NoSolutionError(
            f"fixed contour of {spec!r} does not reach p1={p1_target:g} "
            f"within p0 in [{specfun.z_to_p(hi):.3g}, {specfun.z_to_p(lo):.9g}]"
        )
    x = brentq(g, lo, hi, xtol=1e-13, rtol=8.9e-16)
    return float(specfun.z_to_p(x))


def canonical_test(spec: ContourSpec) -> SimpleTest:
    """A concrete SimpleTest whose fixed contour realizes ``spec``."""
    if isinstance(spec, GaussSep):
        return SimpleTest(Gauss(1.0), 0.0, spec.dmu_over_sigma)
    if isinstance(spec, CauchySep):
        return SimpleTest(Cauchy(1.0), 0.0, spec.dmu_over_gamma)
    if isinstance(spec, GammaSep):
        return SimpleTest(GammaRate(spec.n), 1.0, spec.rate_ratio)
    if isinstance(spec, PoissonSep):
        return SimpleTest(Poisson(), spec.mu0, spec.mu1)
    raise DomainError(f"unknown contour spec {spec!r}")  # pragma: no cover


def observation_for_p0(spec: ContourSpec, p0: float) -> float:
    """Observation of the canonical test that produces the abscissa p0."""
    arr = _check_open_unit(p0)
    if isinstance(spec, GaussSep):
        out = specfun.p_to_z(arr)
    elif isinstance(spec, CauchySep):
        out = _u_of_p(arr)
    elif isinstance(spec, GammaSep):
        out = specfun.reg_gamma_p_inv(spec.n, arr)  # canonical mu0 = 1
    else:
        raise DomainError("Poisson observations are discrete counts")
    return _scalar_or_array(out, p0)


def default_p0_grid(n: int = 512) -> np.ndarray:
    """Emission grid: log-spaced points over [1e-16, 1-1e-6], their
    reflections about one, and the median abscissa 0.5."""
    g = np.geomspace(1e-16, 1.0 - 1e-6, n)
    return np.unique(np.concatenate([g, 1.0 - g, [0.5]]))

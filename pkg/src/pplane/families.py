"""Hypothesis families and per-observation quantities.

Four sampling families are supported for the simple-versus-simple test
H0: mu = mu0 against H1: mu = mu1:

* ``Gauss(sigma)``   - mu is the mean of a Gaussian of known width.
* ``Cauchy(gamma)``  - mu is the mode of a Cauchy of known half-width.
* ``GammaRate(n)``   - mu is an exponential decay rate; the statistic is the
  sum of n decay times, distributed Gamma(n, mu).
* ``Poisson()``      - mu is a Poisson mean; the statistic is the count.

Tail orientation is fixed once and for all: each p-value is the one-sided
tail in the direction of the rival hypothesis.  For Gauss, Cauchy and
Poisson with mu1 >= mu0 that means p0 is the upper tail of H0 and p1 the
lower tail of H1.  For GammaRate a larger rate concentrates the statistic
at *smaller* t, so the roles of the tails are reversed.  Poisson tails both
include the probability of the observed count itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from . import specfun
from .errors import DomainError, FamilyMismatchError

__all__ = [
    "Gauss",
    "Cauchy",
    "GammaRate",
    "Poisson",
    "HypothesisFamily",
    "SimpleTest",
    "PPoint",
    "p_values",
    "log_likelihood_ratio",
    "likelihood_ratio",
    "pdf",
    "loglr_pdf",
    "gauss_to_cauchy",
    "transformed_pdf",
]


class PPoint(NamedTuple):
    """A point in the (p0, p1) plane."""

    p0: float
    p1: float


@dataclass(frozen=True)
class Gauss:
    sigma: float = 1.0

    def __post_init__(self):
        if not (self.sigma > 0.0 and math.isfinite(self.sigma)):
            raise DomainError(f"Gauss width must be positive, got {self.sigma}")


@dataclass(frozen=True)
class Cauchy:
    gamma: float = 1.0

    def __post_init__(self):
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise DomainError(f"Cauchy half-width must be positive, got {self.gamma}")


@dataclass(frozen=True)
class GammaRate:
    n: int = 1  # number of pooled decay-time measurements

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise DomainError(f"GammaRate sample size must be an integer >= 1, got {self.n}")


@dataclass(frozen=True)
class Poisson:
    pass


HypothesisFamily = Union[Gauss, Cauchy, GammaRate, Poisson]


@dataclass(frozen=True)
class SimpleTest:
    """A family together with the two simple hypothesis values (mu0, mu1)."""

    family: HypothesisFamily
    mu0: float
    mu1: float

    def __post_init__(self):
        if not (math.isfinite(self.mu0) and math.isfinite(self.mu1)):
            raise DomainError("hypothesis values must be finite")
        if isinstance(self.family, GammaRate) and (self.mu0 <= 0.0 or self.mu1 <= 0.0):
            raise DomainError("Gamma rate parameters must be positive")
        if isinstance(self.family, Poisson) and (self.mu0 < 0.0 or self.mu1 < 0.0):
            raise DomainError("Poisson means must be nonnegative")
        if self.mu1 < self.mu0:
            raise DomainError("tests are oriented with mu1 >= mu0")

    @property
    def delta_mu(self) -> float:
        return self.mu1 - self.mu0


def _check_obs(test: SimpleTest, obs):
    fam = test.family
    if isinstance(fam, Poisson):
        if obs < 0 or obs != int(obs):
            raise DomainError(f"Poisson observation must be a nonnegative integer, got {obs!r}")
        return int(obs)
    t = float(obs)
    if not math.isfinite(t):
        raise DomainError(f"observation must be finite, got {obs!r}")
    if isinstance(fam, GammaRate) and t <= 0.0:
        raise DomainError(f"Gamma observation must be positive, got {obs!r}")
    return t


def p_values(test: SimpleTest, obs) -> PPoint:
    """One-sided p-values (p0, p1) of an observation under both hypotheses."""
    fam = test.family
    t = _check_obs(test, obs)
    if isinstance(fam, Gauss):
        p0 = specfun.z_to_p((t - test.mu0) / fam.sigma)
        p1 = specfun.z_to_p((test.mu1 - t) / fam.sigma)
    elif isinstance(fam, Cauchy):
        p0 = 0.5 - math.atan((t - test.mu0) / fam.gamma) / math.pi
        p1 = 0.5 + math.atan((t - test.mu1) / fam.gamma) / math.pi
    elif isinstance(fam, GammaRate):
        # Larger rate pushes the statistic toward 0, so H1 sits to the left.
        p0 = specfun.reg_gamma_p(fam.n, test.mu0 * t)
        p1 = specfun.reg_gamma_q(fam.n, test.mu1 * t)
    elif isinstance(fam, Poisson):
        p0 = specfun.poisson_right_tail(test.mu0, t)
        p1 = specfun.poisson_left_tail(test.mu1, t)
    else:  # pragma: no cover
        raise FamilyMismatchError(f"unknown family {fam!r}")
    return PPoint(float(p0), float(p1))


def logpdf(test: SimpleTest, hypothesis: str, t) -> float:
    """Log density (mass for Poisson) of the statistic under 'h0' or 'h1'."""
    mu = {"h0": test.mu0, "h1": test.mu1}.get(hypothesis.lower())
    if mu is None:
        raise DomainError(f"hypothesis must be 'h0' or 'h1', got {hypothesis!r}")
    fam = test.family
    t = _check_obs(test, t)
    if isinstance(fam, Gauss):
        u = (t - mu) / fam.sigma
        return -0.5 * u * u - math.log(math.sqrt(2.0 * math.pi) * fam.sigma)
    if isinstance(fam, Cauchy):
        return math.log(fam.gamma / math.pi) - math.log(fam.gamma**2 + (t - mu) ** 2)
    if isinstance(fam, GammaRate):
        n = fam.n
        return n * math.log(mu) + (n - 1) * math.log(t) - mu * t - math.lgamma(n)
    if isinstance(fam, Poisson):
        if mu == 0.0:
            return 0.0 if t == 0 else -math.inf
        return t * math.log(mu) - mu - math.lgamma(t + 1.0)
    raise FamilyMismatchError(f"unknown family {fam!r}")  # pragma: no cover


def pdf(test: SimpleTest, hypothesis: str, t) -> float:
    """Density (mass for Poisson) of the statistic under 'h0' or 'h1'."""
    return math.exp(logpdf(test, hypothesis, t))


def log_likelihood_ratio(test: SimpleTest, obs) -> float:
    """ln of lambda01 = f0(t) / f1(t).  Kept in log form to span many decades."""
    fam = test.family
    t = _check_obs(test, obs)
    if isinstance(fam, Gauss):
        return ((t - test.mu1) ** 2 - (t - test.mu0) ** 2) / (2.0 * fam.sigma**2)
    if isinstance(fam, Cauchy):
        g2 = fam.gamma**2
        return math.log(g2 + (t - test.mu1) ** 2) - math.log(g2 + (t - test.mu0) ** 2)
    if isinstance(fam, GammaRate):
        # t^(n-1) and the Gamma(n) normalization cancel in the ratio.
        return fam.n * math.log(test.mu0 / test.mu1) + (test.mu1 - test.mu0) * t
    if isinstance(fam, Poisson):
        if test.mu0 == test.mu1:
            return 0.0
        if test.mu0 == 0.0 or test.mu1 == 0.0:
            l0 = logpdf(test, "h0", t)
            l1 = logpdf(test, "h1", t)
            if l0 == -math.inf and l1 == -math.inf:
                raise DomainError("both probability masses vanish at this observation")
            return l0 - l1
        return t * math.log(test.mu0 / test.mu1) + (test.mu1 - test.mu0)
    raise FamilyMismatchError(f"unknown family {fam!r}")  # pragma: no cover


def likelihood_ratio(test: SimpleTest, obs) -> float:
    """lambda01 = f0(t) / f1(t); invariant under one-to-one transformations."""
    return math.exp(log_likelihood_ratio(test, obs))


def loglr_pdf(test: SimpleTest, hypothesis: str, q) -> float:
    """Density of q = ln lambda01 under 'h0' or 'h1' for the Gauss family.

    With s = (mu1 - mu0)/sigma > 0 the two densities are Gaussians of width
    s centered at +s^2/2 (under H0) and -s^2/2 (under H1); they satisfy
    h0(q) = exp(q) * h1(q) pointwise.
    """
    if not isinstance(test.family, Gauss):
        raise FamilyMismatchError("the log-likelihood-ratio pdf is provided for the Gauss family")
    s = test.delta_mu / test.family.sigma
    if s <= 0.0:
        raise DomainError("loglr_pdf requires separated hypotheses (mu1 > mu0)")
    sign = {"h0": 1.0, "h1": -1.0}.get(hypothesis.lower())
    if sign is None:
        raise DomainError(f"hypothesis must be 'h0' or 'h1', got {hypothesis!r}")
    q_arr = np.asarray(q, dtype=float)
    u = (q_arr - sign * 0.5 * s * s) / s
    out = np.exp(-0.5 * u * u) / (math.sqrt(2.0 * math.pi) * s)
    if out.ndim == 0:
        return float(out)
    return out


def gauss_to_cauchy(x, mu0, sigma, mu_c, gamma):
    """One-to-one map sending an H0 Gaussian variate to a Cauchy(mu_c, gamma) variate."""
    if sigma <= 0.0 or gamma <= 0.0:
        raise DomainError("sigma and gamma must be positive")
    u = specfun.erf((np.asarray(x, dtype=float) - mu0) / (math.sqrt(2.0) * sigma))
    out = mu_c + gamma * np.tan(0.5 * math.pi * np.asarray(u))
    if np.ndim(out) == 0:
        return float(out)
    return out


def transformed_pdf(y, mu_c, gamma, dmu_over_sigma):
    """Density of the image of an H1 Gaussian variate under ``gauss_to_cauchy``.

    An asymmetric three-parameter density; it reduces to the Cauchy density
    as dmu_over_sigma -> 0.
    """
    if gamma <= 0.0 or dmu_over_sigma < 0.0:
        raise DomainError("gamma must be positive and dmu_over_sigma nonnegative")
    s = dmu_over_sigma
    v = (np.asarray(y, dtype=float) - mu_c) / gamma
    w = specfun.erf_inv(2.0 / math.pi * np.arctan(v))
    out = np.exp(-0.5 * s * s + math.sqrt(2.0) * s * np.asarray(w)) / (
        math.pi * gamma * (1.0 + v * v)
    )
    if np.ndim(out) == 0:
        return float(out)
    return out

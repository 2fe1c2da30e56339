"""Bayes factors, prior-predictive p-values and the Jeffreys-Lindley regions.

The testing problem is H0: mu = mu0 (optionally widened to the interval
(mu0-epsilon, mu0]) against the composite H1: mu > mu0, with a Gaussian
measurement of width sigma and a uniform prior of width tau for mu under
H1.  Only the length-scale ratios tau/sigma and epsilon/sigma matter.

All prior integrals over the Gaussian kernel reduce to error-function
differences, so every quantity here has a closed form that stays accurate
at five-sigma-deep tails; an adaptive-quadrature evaluation of the Bayes
factor through its weighted-harmonic-mean form is kept as an independent
cross-check path.

The paradox is the configuration where p0 is small enough to reject H0
while the Bayes factor B01 favors H0; it needs tau/sigma to be enormous
once the discovery threshold is the five-sigma convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, NamedTuple

import numpy as np
from scipy.integrate import quad

from . import specfun
from .errors import DomainError, NoSolutionError
from .sequential import ALPHA_5SIGMA

__all__ = [
    "JLConfig",
    "p1_prior_predictive",
    "integrated_pdf",
    "bayes_factor_point_null",
    "bayes_factor_point_null_harmonic",
    "bayes_factor_interval_null",
    "p0_variants",
    "ockham_factor",
    "kass_raftery_label",
    "JLClassification",
    "classify_jl_region",
    "solve_tau_for_b01",
]


@dataclass(frozen=True)
class JLConfig:
    """Gaussian kernel of width sigma, uniform H1 prior on (mu0, mu0+tau],
    optional interval null of width epsilon below mu0."""

    mu0: float = 0.0
    sigma: float = 1.0
    tau: float = 1.0
    epsilon: float = 0.0

    def __post_init__(self):
        if self.sigma <= 0.0 or not math.isfinite(self.sigma):
            raise DomainError("sigma must be positive and finite")
        if self.tau <= 0.0 or not math.isfinite(self.tau):
            raise DomainError("tau must be positive and finite")
        if self.epsilon < 0.0 or not math.isfinite(self.epsilon):
            raise DomainError("epsilon must be >= 0 and finite")


def _phi_cdf(v):
    """Standard normal CDF, tail-stable on both sides."""
    return specfun.z_to_p(-np.asarray(v, dtype=float))


def _phi_cdf_antideriv(v):
    """Antiderivative of the normal CDF: v*Phi(v) + phi(v)."""
    v = np.asarray(v, dtype=float)
    return v * _phi_cdf(v) + specfun.gauss_pdf(v)


def _upper_tail_antideriv(w):
    """Antiderivative of the upper tail Q(w) = 1 - Phi(w): w*Q(w) - phi(w)."""
    w = np.asarray(w, dtype=float)
    return w * specfun.z_to_p(w) - specfun.gauss_pdf(w)


def p1_prior_predictive(config: JLConfig, t0):
    """Prior-weighted average of the lower-tail p-value over H1.

    Equals the lower tail of the integrated pdf at theta = tau, i.e. the
    two orders of integration agree.  Not uniformly distributed under any
    fixed mu in H1.
    """
    t0 = np.asarray(t0, dtype=float)
    v0 = (t0 - config.mu0) / config.sigma
    v1 = (t0 - config.mu0 - config.tau) / config.sigma
    out = (_phi_cdf_antideriv(v0) - _phi_cdf_antideriv(v1)) * config.sigma / config.tau
    if out.ndim == 0:
        return float(out)
    return out


def integrated_pdf(theta: float, x, mu0: float = 0.0, sigma: float = 1.0):
    """Density of a Gaussian whose mean is uniform on (mu0, mu0+theta].

    (Phi((x-mu0)/sigma) - Phi((x-mu0-theta)/sigma)) / theta, evaluated
    through whichever tail stays accurate; theta = 0 returns the plain
    Gaussian density at mu0.
    """
    if theta < 0.0 or sigma <= 0.0:
        raise DomainError("theta must be >= 0 and sigma positive")
    x = np.asarray(x, dtype=float)
    if theta < 1e-6 * sigma:
        # CDF differencing cancels catastrophically for narrow windows; the
        # midpoint density is exact to O((theta/sigma)^2) there
        out = specfun.gauss_pdf(x, mu0 + 0.5 * theta, sigma)
    else:
        hi = (x - mu0) / sigma
        lo = (x - mu0 - theta) / sigma
        upper = specfun.z_to_p(lo) - specfun.z_to_p(hi)  # for x above the window
        lower = _phi_cdf(hi) - _phi_cdf(lo)  # for x below the window
        out = np.where(hi + lo > 0.0, upper, lower) / theta
    if np.ndim(out) == 0:
        return float(out)
    return out


def bayes_factor_point_null(config: JLConfig, t0: float) -> float:
    """B01 = L0 / (prior-averaged L1) for the point null (epsilon = 0).

    Identical to the simple-versus-simple likelihood ratio of the Gaussian
    density at mu0 to the integrated pdf with theta = tau.
    """
    if config.epsilon != 0.0:
        raise DomainError("point-null Bayes factor requires epsilon = 0")
    num = specfun.gauss_pdf(t0, config.mu0, config.sigma)
    den = integrated_pdf(config.tau, t0, config.mu0, config.sigma)
    return float(num / den)


def bayes_factor_point_null_harmonic(config: JLConfig, t0: float) -> float:
    """B01 evaluated as the prior-weighted harmonic mean of lambda01(mu).

    Adaptive-quadrature path kept as an independent check of the closed
    form; relative tolerance 1e-10.
    """
    if config.epsilon != 0.0:
        raise DomainError("point-null Bayes factor requires epsilon = 0")
    mu0, sigma, tau = config.mu0, config.sigma, config.tau

    def inv_lambda(mu: float) -> float:
        # f(t0|mu) / f(t0|mu0); bounded by exp(w^2/2) at mu = t0
        return math.exp(((t0 - mu0) ** 2 - (t0 - mu) ** 2) / (2.0 * sigma * sigma))

    # the integrand is a Gaussian bump at mu = t0, possibly a thin boundary
    # layer of the window; hand its footprint to the subdivision
    pts = [p for p in (t0 - 8 * sigma, t0, t0 + 8 * sigma) if mu0 < p < mu0 + tau] or None
    integral, _ = quad(
        inv_lambda, mu0, mu0 + tau, points=pts, limit=400, epsabs=0.0, epsrel=1e-10
    )
    return float(tau / integral)


def bayes_factor_interval_null(config: JLConfig, t0: float) -> float:
    """B01 with uniform priors on the interval null (mu0-epsilon, mu0] and
    on (mu0, mu0+tau]; converges to the point-null value as epsilon -> 0."""
    if config.epsilon <= 0.0:
        raise DomainError("interval-null Bayes factor requires epsilon > 0")
    num = integrated_pdf(config.epsilon, t0, config.mu0 - config.epsilon, config.sigma)
    den = integrated_pdf(config.tau, t0, config.mu0, config.sigma)
    return float(num / den)


def p0_variants(config: JLConfig, t0: float) -> Dict[str, float]:
    """The three p0 definitions for an interval null of width epsilon.

    The supremum over mu in [mu0-epsilon, mu0] of the upper tail is
    attained at mu = mu0, so p0_sup always equals the simple p0; the
    prior-predictive average is smaller for observations above mu0.
    """
    w1 = (t0 - config.mu0) / config.sigma
    p0_simple = float(specfun.z_to_p(w1))
    if config.epsilon == 0.0:
        p0_pp = p0_simple
    else:
        w0 = (t0 - config.mu0 + config.epsilon) / config.sigma
        p0_pp = float(
            (_upper_tail_antideriv(w0) - _upper_tail_antideriv(w1))
            * config.sigma
            / config.epsilon
        )
    return {"p0_simple": p0_simple, "p0_sup": p0_simple, "p0_pp": p0_pp}


def ockham_factor(config: JLConfig, t0: float) -> float:
    """Bayes factor divided by the maximized likelihood ratio.

    The denominator maximizes L1 over mu > mu0 (at mu = t0 when t0 > mu0).
    For tau >> sigma and t0 well inside the prior window the factor
    approaches tau / (sqrt(2 pi) sigma), the volume penalty H1 pays for
    its free parameter.
    """
    if config.epsilon != 0.0:
        raise DomainError("the Ockham factor is defined for the point null")
    b01 = bayes_factor_point_null(config, t0)
    w = (t0 - config.mu0) / config.sigma
    max_lr = math.exp(-0.5 * w * w) if w > 0.0 else 1.0
    return float(b01 / max_lr)


_KASS_RAFTERY_BANDS = [
    (150.0, "very strong"),
    (20.0, "strong"),
    (3.0, "positive"),
    (1.0, "bare mention"),
]


def kass_raftery_label(b01: float) -> str:
    """Verbal strength of the evidence carried by a Bayes factor."""
    if b01 <= 0.0 or not math.isfinite(b01):
        raise DomainError("Bayes factor must be positive and finite")
    magnitude = max(b01, 1.0 / b01)
    direction = "H0" if b01 >= 1.0 else "H1"
    for edge, label in _KASS_RAFTERY_BANDS:
        if magnitude >= edge:
            return f"{label} (favors {direction})"
    return "even"


class JLClassification(NamedTuple):
    region: str
    bayes_label: str


def classify_jl_region(
    p0: float,
    p1pp: float,
    b01: float,
    alpha0: float = ALPHA_5SIGMA,
    alpha1: float = 0.05,
) -> JLClassification:
    """Four-quadrant reading of a (p0, p1pp, B01) triple.

    ``paradox`` is the corner where the p-value rejects H0 while the Bayes
    factor favors it; ``agree-reject-h0`` and ``agree-reject-h1`` are the
    corners where both methods point the same way, and everything else is
    ``no-decision``.
    """
    if not (0.0 <= p0 <= 1.0 and 0.0 <= p1pp <= 1.0):
        raise DomainError("p-values must lie in [0, 1]")
    label = kass_raftery_label(b01)
    if p0 <= alpha0:
        region = "paradox" if b01 > 1.0 else "agree-reject-h0"
    elif p1pp <= alpha1 and b01 > 1.0:
        region = "agree-reject-h1"
    else:
        region = "no-decision"
    return JLClassification(region, label)


def solve_tau_for_b01(
    t0: float,
    b01_target: float,
    mu0: float = 0.0,
    sigma: float = 1.0,
    epsilon: float = 0.0,
    log_tau_tol: float = 1e-10,
) -> float:
    """Prior width tau at which B01 reaches a target value >= 1.

    For t0 > mu0 the Bayes factor starts at 1 for tau -> 0, dips below 1
    while the prior window crosses the observation, then grows without
    bound; the root is taken on that final rising branch, by bisection in
    ln(tau).  For t0 <= mu0 the factor increases monotonically from 1.
    """
    if b01_target < 1.0:
        raise NoSolutionError("only targets >= 1 sit on the rising branch")
    if sigma <= 0.0:
        raise DomainError("sigma must be positive")

    if epsilon == 0.0:
        num = specfun.gauss_pdf(t0, mu0, sigma)
    else:
        num = integrated_pdf(epsilon, t0, mu0 - epsilon, sigma)

    def b01_of(tau: float) -> float:
        return num / integrated_pdf(tau, t0, mu0, sigma)

    # Locate the start of the rising branch (the prior width maximizing the
    # averaged density, where B01 is smallest).
    if t0 > mu0:
        scan = np.geomspace(1e-8, max(10.0, 10.0 * (t0 - mu0) / sigma), 256) * sigma
        w_hi = (t0 - mu0) / sigma
        w_lo = (t0 - mu0 - scan) / sigma
        dens = (_phi_cdf(w_hi) - _phi_cdf(w_lo)) / scan
        lo = float(scan[int(np.argmax(dens))])
    else:
        lo = 1e-12 * sigma
    if b01_of(lo) >= b01_target:
        # target below the branch start: only reachable in the tau -> 0 limit
        if b01_target <= 1.0:
            raise NoSolutionError("B01 = 1 is only attained as tau -> 0 here")
        lo = 1e-12 * sigma
        if b01_of(lo) > b01_target:
            raise NoSolutionError(
                f"B01 target {b01_target:g} below the attainable range at t0={t0:g}"
            )
    hi = lo
    for _ in range(400):
        hi *= 4.0
        if b01_of(hi) >= b01_target:
            break
        if hi > 1e300:
            raise NoSolutionError(
                f"B01 target {b01_target:g} not reached below the tau cap at t0={t0:g}"
            )
    log_lo, log_hi = math.log(lo), math.log(hi)
    while log_hi - log_lo > log_tau_tol:
        mid = 0.5 * (log_lo + log_hi)
        if b01_of(math.exp(mid)) < b01_target:
            log_lo = mid
        else:
            log_hi = mid
    return math.exp(0.5 * (log_lo + log_hi))

"""Frequentist, CLs and Bayesian upper limits on a bounded parameter.

The setting is a family of tests H0[mu*]: mu = mu* against
H1[mu*]: mu > mu*, with the parameter space bounded below at mu_floor.
Three upper-limit constructions are provided:

* frequentist : smallest mu whose lower-tail p-value p1(mu) drops to 1-gamma;
* CLs         : same but on p1(mu) / (1 - p0(mu_floor)), always weaker;
* Bayesian    : gamma-quantile of the flat-prior posterior truncated to
  mu > mu_floor.

For location families (Gauss, Cauchy) and for the Poisson family the CLs
and Bayesian limits agree exactly; ``verify_bayes_cls_equality`` checks
the two independently coded routes against each other over a grid.

Poisson tails include the observed count on both sides, so the CLs
denominator is the left tail P(N <= n | mu_floor).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Union

from scipy.integrate import quad
from scipy.optimize import brentq

from . import specfun
from .errors import DomainError, NoSolutionError
from .families import Cauchy, Gauss, Poisson

__all__ = [
    "LimitRequest",
    "frequentist_upper_limit",
    "cls_upper_limit",
    "bayes_upper_limit",
    "EqualityReport",
    "verify_bayes_cls_equality",
]

LimitFamily = Union[Gauss, Cauchy, Poisson]

# Upper limits are searched below mu_floor + _MU_CAP_FACTOR * scale.
_MU_CAP_FACTOR = 1e6


@dataclass(frozen=True)
class LimitRequest:
    family: LimitFamily
    observation: float
    credibility: float  # gamma, in (0, 1)
    mu_floor: float = 0.0  # may be -inf for location families

    def __post_init__(self):
        if not (0.0 < self.credibility < 1.0):
            raise DomainError("credibility must lie in (0, 1)")
        if isinstance(self.family, Poisson):
            n = self.observation
            if n < 0 or n != int(n):
                raise DomainError("Poisson observation must be a nonnegative integer")
            if not (self.mu_floor >= 0.0):
                raise DomainError("Poisson mu_floor must be >= 0")
        else:
            if not math.isfinite(self.observation):
                raise DomainError("observation must be finite")
            if math.isnan(self.mu_floor) or self.mu_floor == math.inf:
                raise DomainError("mu_floor must be finite or -inf")

    @property
    def scale(self) -> float:
        if isinstance(self.family, Gauss):
            return self.family.sigma
        if isinstance(self.family, Cauchy):
            return self.family.gamma
        return max(1.0, math.sqrt(self.observation + 1.0))


def _p1_of_mu(req: LimitRequest, mu: float) -> float:
    """Lower-tail p-value of the observation when mu is the tested value."""
    fam = req.family
    if isinstance(fam, Gauss):
        return float(specfun.z_to_p((mu - req.observation) / fam.sigma))
    if isinstance(fam, Cauchy):
        return 0.5 - math.atan((mu - req.observation) / fam.gamma) / math.pi
    return float(specfun.poisson_left_tail(mu, req.observation))


def _cls_denominator(req: LimitRequest) -> float:
    """1 - p0 at the floor hypothesis; equals 1 when the floor is -inf."""
    fam = req.family
    if req.mu_floor == -math.inf:
        return 1.0
    if isinstance(fam, Gauss):
        return float(specfun.z_to_p((req.mu_floor - req.observation) / fam.sigma))
    if isinstance(fam, Cauchy):
        return 0.5 - math.atan((req.mu_floor - req.observation) / fam.gamma) / math.pi
    # discrete case: the complement of the inclusive right tail is the
    # inclusive left tail, which is what makes the Bayes equality exact
    return float(specfun.poisson_left_tail(req.mu_floor, req.observation))


def _solve_p1_target(req: LimitRequest, target: float) -> float:
    """Smallest mu with p1(mu) = target; p1 decreases monotonically in mu."""
    if target <= 0.0 or target >= 1.0:
        raise NoSolutionError(f"tail target {target:g} outside (0, 1)")
    scale = req.scale
    lo = req.mu_floor if req.mu_floor != -math.inf else req.observation - 1e3 * scale
    lo = max(lo, 0.0) if isinstance(req.family, Poisson) else lo
    cap = lo + _MU_CAP_FACTOR * scale
    f_lo = _p1_of_mu(req, lo) - target
    if f_lo <= 0.0:
        # already at or below the target at the floor: the limit is the floor
        return float(lo)
    hi = lo + scale
    while _p1_of_mu(req, hi) > target:
        hi = lo + 2.0 * (hi - lo)
        if hi > cap:
            raise NoSolutionError(
                f"no upper limit below the parameter cap {cap:g} "
                f"(family={req.family!r}, obs={req.observation!r}, target={target:g})"
            )
    return float(
        brentq(lambda mu: _p1_of_mu(req, mu) - target, lo, hi, xtol=1e-10, rtol=8.9e-16)
    )


def frequentist_upper_limit(req: LimitRequest) -> float:
    """Upper limit at confidence level gamma: solves p1(mu) = 1 - gamma."""
    return _solve_p1_target(req, 1.0 - req.credibility)


def cls_upper_limit(req: LimitRequest) -> float:
    """CLs upper limit: solves p1(mu) / (1 - p0(mu_floor)) = 1 - gamma.

    The denominator is at most 1, so this limit is never below the
    frequentist one.
    """
    return _solve_p1_target(req, (1.0 - req.credibility) * _cls_denominator(req))


def bayes_upper_limit(req: LimitRequest) -> float:
    """gamma-quantile of the flat-prior posterior truncated to mu > mu_floor.

    The flat prior may be improper; only the truncated normalization
    matters.  Gauss and Poisson use closed-form posteriors; Cauchy falls
    back to adaptive quadrature of the location-family posterior.
    """
    fam = req.family
    gamma_cred = req.credibility
    if isinstance(fam, Gauss):
        a = _phi((req.mu_floor - req.observation) / fam.sigma)
        q = a + gamma_cred * (1.0 - a)
        return req.observation + fam.sigma * float(specfun.p_to_z(1.0 - q))
    if isinstance(fam, Poisson):
        # posterior of mu given n with flat prior: Gamma(n+1, 1), truncated
        n = req.observation
        base = float(specfun.reg_gamma_p(n + 1.0, req.mu_floor)) if req.mu_floor > 0 else 0.0
        return float(specfun.reg_gamma_p_inv(n + 1.0, base + gamma_cred * (1.0 - base)))
    # Cauchy: quadrature on the posterior density
    x0, scale = req.observation, fam.gamma
    floor = req.mu_floor if req.mu_floor != -math.inf else x0 - 1e6 * scale

    def density(mu: float) -> float:
        return scale / (math.pi * (scale**2 + (x0 - mu) ** 2))

    norm, _ = quad(density, floor, math.inf, epsabs=0.0, epsrel=1e-12, limit=200)

    def posterior_cdf(mu: float) -> float:
        val, _ = quad(density, floor, mu, epsabs=0.0, epsrel=1e-12, limit=200)
        return val / norm

    lo, hi = floor, max(x0, floor) + scale
    while posterior_cdf(hi) < gamma_cred:
        hi = floor + 2.0 * (hi - floor)
        if hi > floor + _MU_CAP_FACTOR * scale:
            raise NoSolutionError("posterior quantile beyond the parameter cap")
    return float(
        brentq(lambda mu: posterior_cdf(mu) - gamma_cred, lo, hi, xtol=1e-10, rtol=8.9e-16)
    )


def _phi(v: float) -> float:
    return float(specfun.z_to_p(-v))


@dataclass(frozen=True)
class EqualityReport:
    family: str
    n_cases: int
    max_abs_diff: float
    max_rel_diff: float
    tolerance: float
    cases: List[dict]

    @property
    def passed(self) -> bool:
        return self.max_rel_diff <= self.tolerance

    def as_record(self) -> dict:
        return {
            "family": self.family,
            "n_cases": self.n_cases,
            "max_abs_diff": self.max_abs_diff,
            "max_rel_diff": self.max_rel_diff,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def verify_bayes_cls_equality(
    family: LimitFamily,
    observations,
    credibilities,
    mu_floor: float = 0.0,
    tolerance: float = 1e-6,
) -> EqualityReport:
    """Compare CLs and Bayesian upper limits over an observation grid.

    Both routes are computed independently (tail-ratio root-finding versus
    posterior quantile); for location families and Poisson they must agree
    to the stated relative tolerance.
    """
    cases = []
    max_abs = 0.0
    max_rel = 0.0
    for obs in observations:
        for cred in credibilities:
            req = LimitRequest(family, obs, cred, mu_floor)
            ul_freq = frequentist_upper_limit(req)
            ul_cls = cls_upper_limit(req)
            ul_bayes = bayes_upper_limit(req)
            diff = abs(ul_cls - ul_bayes)
            rel = diff / (1.0 + abs(ul_bayes))
            max_abs = max(max_abs, diff)
            max_rel = max(max_rel, rel)
            cases.append(
                {
                    "family": type(family).__name__.lower(),
                    "observation": obs,
                    "gamma": cred,
                    "freq_ul": ul_freq,
                    "cls_ul": ul_cls,
                    "bayes_ul": ul_bayes,
                    "abs_diff": diff,
                }
            )
    return EqualityReport(
        family=type(family).__name__.lower(),
        n_cases=len(cases),
        max_abs_diff=max_abs,
        max_rel_diff=max_rel,
        tolerance=tolerance,
        cases=cases,
    )

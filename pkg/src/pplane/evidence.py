"""Probabilities of misleading evidence for likelihood-ratio benchmarks.

When hypotheses are compared through the likelihood ratio L0/L1 rather
than p-values, the analogue of an error rate is the probability of
*misleading* evidence: observing L0/L1 above a benchmark k when H1 is
true, or below 1/k when H0 is true.  For equal-width Gaussian hypotheses
the log-likelihood ratio is itself Gaussian, so these probabilities are
plain normal tails in the separation s = dmu/sigma.

These are planning quantities.  They describe the sampling behaviour of
the likelihood ratio before data are taken and carry no post-data meaning.
"""

from __future__ import annotations

import math

from . import specfun
from .contours import CauchySep, GammaSep, GaussSep, PoissonSep
from .errors import DomainError, FamilyMismatchError

__all__ = [
    "LR_FAIRLY_STRONG",
    "LR_STRONG",
    "prob_misleading_for_h0",
    "prob_misleading_for_h1",
    "max_misleading_separation",
]

# Conventional likelihood-ratio benchmarks: 8 is 'fairly strong' evidence,
# 32 is 'strong'.
LR_FAIRLY_STRONG = 8.0
LR_STRONG = 32.0


def _separation(spec) -> float:
    if isinstance(spec, (CauchySep, GammaSep, PoissonSep)):
        raise FamilyMismatchError(
            "misleading-evidence probabilities are closed-form for the Gauss "
            "family only; for other families intersect lr_contour with "
            "fixed_contour"
        )
    s = spec.dmu_over_sigma if isinstance(spec, GaussSep) else float(spec)
    if not (s > 0.0 and math.isfinite(s)):
        raise DomainError("separation dmu/sigma must be positive and finite")
    return s


def prob_misleading_for_h0(spec, k: float) -> float:
    """P(L0/L1 > k | H1): evidence favoring H0 although H1 is true.

    Under H1 the log ratio q is Gaussian with mean -s^2/2 and width s, so
    the probability is the upper normal tail at z = ln(k)/s + s/2.  It is
    also the p1 coordinate where the fixed contour of separation s crosses
    the lambda01 = k contour.
    """
    s = _separation(spec)
    if not (k > 0.0 and math.isfinite(k)):
        raise DomainError("benchmark k must be positive and finite")
    return float(specfun.z_to_p(math.log(k) / s + 0.5 * s))


def prob_misleading_for_h1(spec, k: float) -> float:
    """P(L0/L1 < 1/k | H0): evidence favoring H1 although H0 is true.

    Under H0 the log ratio is Gaussian with mean +s^2/2 and width s; by the
    mirror symmetry of the two densities this equals
    ``prob_misleading_for_h0`` at the same (s, k).
    """
    s = _separation(spec)
    if not (k > 0.0 and math.isfinite(k)):
        raise DomainError("benchmark k must be positive and finite")
    # lower tail of N(+s^2/2, s) at -ln(k)
    return float(1.0 - specfun.z_to_p(-(math.log(k) + 0.5 * s * s) / s))


def max_misleading_separation(k: float) -> float:
    """Separation s* maximizing the misleading-evidence probability.

    The tail argument ln(k)/s + s/2 is minimized at s* = sqrt(2 ln k); the
    probability rises to the peak value there and falls off again for
    larger separations.
    """
    if not (k > 1.0 and math.isfinite(k)):
        raise DomainError("benchmark k must exceed 1")
    return math.sqrt(2.0 * math.log(k))

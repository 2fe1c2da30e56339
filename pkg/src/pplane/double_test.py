"""Outcome probabilities, error rates and power of the four-outcome double test.

Testing H0 and H1 independently at thresholds alpha0 and alpha1 yields four
outcomes: discovery (reject H0 only), exclusion (reject H1 only),
double rejection, and no decision.  For a fixed-hypothesis contour the
probabilities of all four outcomes under either hypothesis are simple
max/min expressions of four numbers: the thresholds and the contour
ordinates beta0 = p1 at p0=alpha0 and beta1 = p0 at p1=alpha1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List

from .contours import ContourSpec, fixed_contour, solve_p0_for_p1
from .errors import DomainError

__all__ = [
    "DoubleTestRates",
    "OutcomeRow",
    "OutcomeTable",
    "rates_from_contour",
    "outcome_table",
    "error_rates",
]


@dataclass(frozen=True)
class DoubleTestRates:
    alpha0: float
    alpha1: float
    beta0: float  # p1 ordinate of the contour at p0 = alpha0
    beta1: float  # p0 abscissa of the contour at p1 = alpha1

    def __post_init__(self):
        for name in ("alpha0", "alpha1", "beta0", "beta1"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0) or not math.isfinite(v):
                raise DomainError(f"{name} must lie in (0, 1), got {v}")


@dataclass(frozen=True)
class OutcomeRow:
    outcome: str  # double-rejection | discovery | exclusion | no-decision
    condition: str
    prob_h0: float
    prob_h1: float


@dataclass(frozen=True)
class OutcomeTable:
    rows: List[OutcomeRow]

    def column_sums(self):
        return (
            sum(r.prob_h0 for r in self.rows),
            sum(r.prob_h1 for r in self.rows),
        )

    def as_records(self) -> List[Dict[str, object]]:
        return [
            {"outcome": r.outcome, "prob_h0": r.prob_h0, "prob_h1": r.prob_h1}
            for r in self.rows
        ]


def rates_from_contour(spec: ContourSpec, alpha0: float, alpha1: float) -> DoubleTestRates:
    """beta0 and beta1 of the given contour at thresholds (alpha0, alpha1)."""
    if not (0.0 < alpha0 < 1.0 and 0.0 < alpha1 < 1.0):
        raise DomainError("alpha0 and alpha1 must lie in (0, 1)")
    beta0 = float(fixed_contour(spec, alpha0))
    beta1 = float(solve_p0_for_p1(spec, alpha1))
    return DoubleTestRates(alpha0, alpha1, beta0, beta1)


def _clip01(x: float) -> float:
    # absorbs 1-ulp noise from the max/min arithmetic
    return min(1.0, max(0.0, x))


def outcome_table(rates: DoubleTestRates) -> OutcomeTable:
    """Probabilities of the four double-test outcomes under H0 and under H1.

    The probability of rejection of H0 is the measure of the contour
    segment with p0 <= alpha0, which is alpha0 under H0 (p0 is uniform) and
    1 - beta0 under H1 (p1 is uniform); the joint outcomes follow from how
    that segment overlaps the p1 <= alpha1 segment, which depends on
    whether the contour passes above or below the Punzi point.
    """
    a0, a1, b0, b1 = rates.alpha0, rates.alpha1, rates.beta0, rates.beta1
    rows = [
        OutcomeRow(
            "double-rejection",
            "p0<=alpha0 & p1<=alpha1",
            _clip01(max(0.0, a0 - b1)),
            _clip01(max(0.0, a1 - b0)),
        ),
        OutcomeRow(
            "discovery",
            "p0<=alpha0 & p1>alpha1",
            _clip01(min(a0, b1)),
            _clip01(min(1.0 - a1, 1.0 - b0)),
        ),
        OutcomeRow(
            "exclusion",
            "p0>alpha0 & p1<=alpha1",
            _clip01(min(1.0 - a0, 1.0 - b1)),
            _clip01(min(a1, b0)),
        ),
        OutcomeRow(
            "no-decision",
            "p0>alpha0 & p1>alpha1",
            _clip01(max(0.0, b1 - a0)),
            _clip01(max(0.0, b0 - a1)),
        ),
    ]
    return OutcomeTable(rows)


def error_rates(rates: DoubleTestRates) -> Dict[str, float]:
    """Named error rates of the double test.

    Type Ia/Ib are wrong decisions under H0 (rejecting H0, failing to
    reject H1); Type IIa/IIb the mirror images under H1.  The rate of
    committing both errors of a type simultaneously is the minimum of the
    individual rates, not their product.  Power is the probability of
    committing neither Type-II error.  No Type-III rate is reported: it is
    not computable without specifying a third hypothesis.
    """
    return {
        "type_ia": rates.alpha0,
        "type_ib": rates.beta1,
        "type_iia": rates.alpha1,
        "type_iib": rates.beta0,
        "both_type_i": min(rates.alpha0, rates.beta1),
        "both_type_ii": min(rates.alpha1, rates.beta0),
        "power": min(1.0 - rates.alpha1, 1.0 - rates.beta0),
    }

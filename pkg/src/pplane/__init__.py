"""pplane: hypothesis-testing geometry in the (p0, p1) plane.

A library and CLI for two-hypothesis searches: one-sided p-values and
likelihood ratios for four sampling families, fixed-hypothesis and
constant-likelihood-ratio contours, CLs exclusion and upper limits,
double-test error rates, misleading-evidence probabilities, sequential
stopping rules against the law-of-the-iterated-logarithm boundary, and
Bayes-factor analysis of the Jeffreys-Lindley paradox.
"""

from .errors import DomainError, FamilyMismatchError, NoSolutionError, PPlaneError
from .families import (
    Cauchy,
    Gauss,
    GammaRate,
    HypothesisFamily,
    Poisson,
    PPoint,
    SimpleTest,
    likelihood_ratio,
    log_likelihood_ratio,
    loglr_pdf,
    p_values,
)
from .contours import (
    AsimovMedians,
    CauchySep,
    ContourSpec,
    GammaSep,
    GaussSep,
    PoissonSep,
    asimov_medians,
    classify_region,
    cls,
    default_p0_grid,
    fixed_contour,
    lr_contour,
    poisson_fixed_points,
    poisson_lr_points,
    punzi_separation,
)
from .double_test import DoubleTestRates, OutcomeTable, error_rates, outcome_table, rates_from_contour
from .evidence import (
    LR_FAIRLY_STRONG,
    LR_STRONG,
    max_misleading_separation,
    prob_misleading_for_h0,
    prob_misleading_for_h1,
)
from .sequential import (
    ALPHA_3SIGMA,
    ALPHA_5SIGMA,
    Schedule,
    WalkConfig,
    WalkTrace,
    alpha_lil,
    lil_boundary_points,
    run_walk,
    run_walk_batch,
)
from .jlparadox import (
    JLConfig,
    bayes_factor_interval_null,
    bayes_factor_point_null,
    classify_jl_region,
    integrated_pdf,
    ockham_factor,
    p0_variants,
    p1_prior_predictive,
)
from .limits import (
    LimitRequest,
    bayes_upper_limit,
    cls_upper_limit,
    frequentist_upper_limit,
    verify_bayes_cls_equality,
)

__version__ = "0.1.0"

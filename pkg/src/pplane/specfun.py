"""Special-function kernel: error function, regularized incomplete gamma,
chi-squared quantiles, Gaussian and Poisson tail probabilities.

Everything here is a thin, domain-checked wrapper around scipy.special
primitives, organized so that the rest of the package never touches scipy
directly.  All functions accept floats or numpy arrays and are pure.

Tail conventions used throughout the package:

* ``z_to_p`` is the one-sided upper Gaussian tail, computed via ``erfc`` so
  that it stays accurate down to p ~ 1e-300.
* Poisson tails are inclusive: both ``poisson_left_tail`` and
  ``poisson_right_tail`` include the probability of the observed count
  itself, which is the convention needed for discrete p-values.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as _sp

from .errors import DomainError

__all__ = [
    "erf",
    "erf_inv",
    "erfc",
    "erfc_inv",
    "z_to_p",
    "p_to_z",
    "reg_gamma_p",
    "reg_gamma_p_inv",
    "reg_gamma_q",
    "reg_gamma_q_inv",
    "chi2_quantile",
    "poisson_left_tail",
    "poisson_right_tail",
    "gauss_pdf",
]

_SQRT2 = math.sqrt(2.0)


def _as_float(x):
    """Return a python float for scalar input, ndarray otherwise."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        return float(arr)
    return arr


def erf(x):
    """Standard error function; odd, strictly increasing, range (-1, 1)."""
    return _as_float(_sp.erf(np.asarray(x, dtype=float)))


def erfc(x):
    """Complementary error function 1 - erf(x), accurate in the far tail."""
    return _as_float(_sp.erfc(np.asarray(x, dtype=float)))


def erf_inv(y):
    """Inverse of erf.  Requires -1 < y < 1."""
    y_arr = np.asarray(y, dtype=float)
    if np.any(np.abs(y_arr) >= 1.0):
        raise DomainError(f"erf_inv requires |y| < 1, got {y!r}")
    return _as_float(_sp.erfinv(y_arr))


def erfc_inv(y):
    """Inverse of erfc.  Requires 0 < y < 2."""
    y_arr = np.asarray(y, dtype=float)
    if np.any((y_arr <= 0.0) | (y_arr >= 2.0)):
        raise DomainError(f"erfc_inv requires 0 < y < 2, got {y!r}")
    return _as_float(_sp.erfcinv(y_arr))


def z_to_p(z):
    """One-sided upper Gaussian tail probability of a standard z-value.

    Equals erfc(z / sqrt(2)) / 2; strictly decreasing in z.
    """
    z_arr = np.asarray(z, dtype=float)
    if np.any(np.isnan(z_arr)):
        raise DomainError("z_to_p requires finite z")
    return _as_float(0.5 * _sp.erfc(z_arr / _SQRT2))


def p_to_z(p):
    """z-value whose upper Gaussian tail is p.  Requires 0 < p < 1."""
    p_arr = np.asarray(p, dtype=float)
    if np.any((p_arr <= 0.0) | (p_arr >= 1.0)):
        raise DomainError(f"p_to_z requires 0 < p < 1, got {p!r}")
    return _as_float(_SQRT2 * _sp.erfcinv(2.0 * p_arr))


def gauss_pdf(x, mu=0.0, sigma=1.0):
    """Gaussian density with mean mu and width sigma."""
    x_arr = np.asarray(x, dtype=float)
    u = (x_arr - mu) / sigma
    return _as_float(np.exp(-0.5 * u * u) / (math.sqrt(2.0 * math.pi) * sigma))


def reg_gamma_p(n, z):
    """Regularized lower incomplete gamma function P(n, z), n > 0, z >= 0."""
    n_arr = np.asarray(n, dtype=float)
    z_arr = np.asarray(z, dtype=float)
    if np.any(n_arr <= 0.0):
        raise DomainError(f"reg_gamma_p requires shape n > 0, got {n!r}")
    if np.any(z_arr < 0.0):
        raise DomainError(f"reg_gamma_p requires z >= 0, got {z!r}")
    return _as_float(_sp.gammainc(n_arr, z_arr))


def reg_gamma_q(n, z):
    """Regularized upper incomplete gamma function Q(n, z) = 1 - P(n, z)."""
    n_arr = np.asarray(n, dtype=float)
    z_arr = np.asarray(z, dtype=float)
    if np.any(n_arr <= 0.0):
        raise DomainError(f"reg_gamma_q requires shape n > 0, got {n!r}")
    if np.any(z_arr < 0.0):
        raise DomainError(f"reg_gamma_q requires z >= 0, got {z!r}")
    return _as_float(_sp.gammaincc(n_arr, z_arr))


def reg_gamma_p_inv(n, p):
    """Solve P(n, z) = p for z.  Requires n > 0 and 0 <= p < 1."""
    n_arr = np.asarray(n, dtype=float)
    p_arr = np.asarray(p, dtype=float)
    if np.any(n_arr <= 0.0):
        raise DomainError(f"reg_gamma_p_inv requires shape n > 0, got {n!r}")
    if np.any((p_arr < 0.0) | (p_arr >= 1.0)):
        raise DomainError(f"reg_gamma_p_inv requires 0 <= p < 1, got {p!r}")
    return _as_float(_sp.gammaincinv(n_arr, p_arr))


def reg_gamma_q_inv(n, q):
    """Solve Q(n, z) = q for z.  Requires n > 0 and 0 < q <= 1."""
    n_arr = np.asarray(n, dtype=float)
    q_arr = np.asarray(q, dtype=float)
    if np.any(n_arr <= 0.0):
        raise DomainError(f"reg_gamma_q_inv requires shape n > 0, got {n!r}")
    if np.any((q_arr <= 0.0) | (q_arr > 1.0)):
        raise DomainError(f"reg_gamma_q_inv requires 0 < q <= 1, got {q!r}")
    return _as_float(_sp.gammainccinv(n_arr, q_arr))


def chi2_quantile(dof, p):
    """p-quantile of a chi-squared distribution with dof degrees of freedom."""
    return _as_float(2.0 * reg_gamma_p_inv(np.asarray(dof, dtype=float) / 2.0, p))


def _check_poisson_args(mu, n):
    mu_arr = np.asarray(mu, dtype=float)
    n_arr = np.asarray(n)
    if np.any(mu_arr < 0.0):
        raise DomainError(f"Poisson mean must be >= 0, got {mu!r}")
    if np.any(n_arr < 0) or not np.all(np.equal(np.mod(n_arr, 1), 0)):
        raise DomainError(f"Poisson count must be a nonnegative integer, got {n!r}")
    return mu_arr, n_arr.astype(float)


def poisson_left_tail(mu, n):
    """P(N <= n) for N ~ Poisson(mu), the observed count included.

    Computed through the gamma-integral identity
    sum_{i<=n} mu^i e^-mu / i! = Q(n+1, mu), exact for all mu and n.
    """
    mu_arr, n_arr = _check_poisson_args(mu, n)
    return _as_float(_sp.gammaincc(n_arr + 1.0, mu_arr))


def poisson_right_tail(mu, n):
    """P(N >= n) for N ~ Poisson(mu), the observed count included.

    Equals P(n, mu) for n >= 1 and exactly 1 for n = 0.
    """
    mu_arr, n_arr = _check_poisson_args(mu, n)
    out = np.where(n_arr == 0, 1.0, _sp.gammainc(np.maximum(n_arr, 1.0), mu_arr))
    return _as_float(out)

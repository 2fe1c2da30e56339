"""Sequential testing: stopping schedules, LIL boundary, seeded random walks.

A sequential search adds one Gaussian event at a time and recomputes the
standardized partial mean Z_n against mu0; the pair (p0(n), p1(n)) then
performs a random walk in the plane, moving at step n along the fixed
contour of separation sqrt(n)*dmu/sigma.  The law of the iterated
logarithm guarantees that any *constant* threshold on p0 is eventually
crossed under H0, so the interesting comparisons are between the constant
schedule and boundaries that shrink with n.

Randomness comes from the Philox counter-based 64-bit generator.  Walk i
of a batch with master seed s draws from the stream keyed (s, i), so
results are reproducible and independent of chunking or thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np

from . import specfun
from .contours import GaussSep, PPoint, fixed_contour
from .errors import DomainError

__all__ = [
    "ALPHA_5SIGMA",
    "ALPHA_3SIGMA",
    "alpha_lil",
    "lil_is_degenerate",
    "Schedule",
    "parse_schedule",
    "WalkConfig",
    "WalkTrace",
    "run_walk",
    "WalkBatch",
    "run_walk_batch",
    "lil_boundary_points",
]

# Conventional discovery thresholds: one-sided 5 sigma and 3 sigma tails.
ALPHA_5SIGMA = 2.87e-7
ALPHA_3SIGMA = 1.35e-3


def alpha_lil(n):
    """LIL boundary (1 - erf(sqrt(ln ln n)))/2 for sample size n >= 2.

    For n = 2 the iterated logarithm is negative; the square root is
    clamped at zero, giving the degenerate value 0.5 (see
    ``lil_is_degenerate``).  Strictly decreasing from n = 3 on.
    """
    n_arr = np.asarray(n)
    if np.any(n_arr < 2):
        raise DomainError("the LIL boundary needs n >= 2")
    arg = np.sqrt(np.maximum(np.log(np.log(n_arr.astype(float))), 0.0))
    out = 0.5 * specfun.erfc(arg)
    if np.ndim(n) == 0:
        return float(out)
    return out


def lil_is_degenerate(n: int) -> bool:
    """True where ln ln n <= 0 (n < 3), i.e. where the boundary is clamped."""
    return n < 3


@dataclass(frozen=True)
class Schedule:
    """Stopping rule evaluated after every event.

    kind:
      * "constant": stop when p0 <= threshold
      * "sqrt_n":   stop when p0 <= threshold / sqrt(n)
      * "lr":       stop when lambda01 crosses the threshold (downward for
        threshold < 1, i.e. evidence against H0; upward for threshold >= 1)
      * "cls":      stop when CLs = p1/(1-p0) <= threshold
    """

    kind: str
    threshold: float

    def __post_init__(self):
        if self.kind not in ("constant", "sqrt_n", "lr", "cls"):
            raise DomainError(f"unknown schedule kind {self.kind!r}")
        if not (self.threshold > 0.0 and math.isfinite(self.threshold)):
            raise DomainError("schedule threshold must be positive and finite")
        if self.kind in ("constant", "sqrt_n", "cls") and self.threshold >= 1.0:
            raise DomainError(f"{self.kind} schedule threshold must be < 1")


_SCHEDULE_ALIASES = {"constant": "constant", "sqrt_n": "sqrt_n", "lr": "lr",
                     "lr_contour": "lr", "cls": "cls"}


def parse_schedule(text: str) -> Optional[Schedule]:
    """Parse 'kind:threshold' strings such as 'constant:0.05' or 'lr:0.125'.

    'none' yields no stopping rule (the walk runs to n_max).
    """
    if text.strip().lower() == "none":
        return None
    kind, sep, value = text.partition(":")
    kind = _SCHEDULE_ALIASES.get(kind.strip().lower())
    if kind is None or not sep:
        raise DomainError(f"cannot parse schedule {text!r}; expected kind:threshold")
    return Schedule(kind, float(value))


@dataclass(frozen=True)
class WalkConfig:
    truth: str  # "h0" or "h1"
    mu0: float = 0.0
    mu1: float = 1.0
    sigma: float = 1.0
    n_max: int = 1000
    seed: int = 0
    schedule: Optional[Schedule] = Schedule("constant", 0.05)

    def __post_init__(self):
        if self.truth not in ("h0", "h1"):
            raise DomainError(f"truth must be 'h0' or 'h1', got {self.truth!r}")
        if self.sigma <= 0.0:
            raise DomainError("sigma must be positive")
        if self.mu1 < self.mu0:
            raise DomainError("walks are oriented with mu1 >= mu0")
        if self.n_max < 2:
            raise DomainError("n_max must be at least 2")
        if not (0 <= self.seed < 2**64):
            raise DomainError("seed must fit in an unsigned 64-bit integer")


@dataclass
class WalkTrace:
    """State sequence of one walk; arrays are aligned and stop-truncated."""

    n: np.ndarray
    z: np.ndarray
    p0: np.ndarray
    p1: np.ndarray
    log_lr: np.ndarray
    stop_n: Optional[int]

    @property
    def stopped(self) -> bool:
        return self.stop_n is not None

    @property
    def lambda01(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_lr)

    def rows(self) -> Iterator[Tuple[int, float, float, float, float, bool]]:
        lam = self.lambda01
        for i in range(len(self.n)):
            yield (
                int(self.n[i]),
                float(self.z[i]),
                float(self.p0[i]),
                float(self.p1[i]),
                float(lam[i]),
                self.stopped and i == len(self.n) - 1,
            )


def _stream(seed: int, walk_index: int) -> np.random.Generator:
    key = np.array([seed, walk_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _walk_states(config: WalkConfig, walk_index: int):
    rng = _stream(config.seed, walk_index)
    mu_true = config.mu0 if config.truth == "h0" else config.mu1
    x = rng.normal(loc=mu_true, scale=config.sigma, size=config.n_max)
    n = np.arange(1, config.n_max + 1, dtype=float)
    csum = np.cumsum(x)
    root_n = np.sqrt(n)
    z0 = (csum - n * config.mu0) / (config.sigma * root_n)
    z1 = (n * config.mu1 - csum) / (config.sigma * root_n)
    return n, z0, z1


def _z_thresholds(schedule: Optional[Schedule], n: np.ndarray):
    """Precompute the per-step z threshold for p0-based schedules."""
    if schedule is None or schedule.kind not in ("constant", "sqrt_n"):
        return None
    if schedule.kind == "constant":
        return float(specfun.p_to_z(schedule.threshold))
    return np.asarray(specfun.p_to_z(schedule.threshold / np.sqrt(n)))


def _stop_mask(schedule: Optional[Schedule], n, z0, z1, z_thr=None) -> np.ndarray:
    if schedule is None:
        return np.zeros(len(n), dtype=bool)
    if schedule.kind in ("constant", "sqrt_n"):
        if z_thr is None:
            z_thr = _z_thresholds(schedule, n)
        return z0 >= z_thr
    if schedule.kind == "lr":
        log_lr = 0.5 * (z1 * z1 - z0 * z0)
        if schedule.threshold < 1.0:
            return log_lr <= math.log(schedule.threshold)
        return log_lr >= math.log(schedule.threshold)
    # cls
    p0 = specfun.z_to_p(z0)
    p1 = specfun.z_to_p(z1)
    return p1 <= schedule.threshold * (1.0 - p0)


def run_walk(config: WalkConfig, walk_index: int = 0) -> WalkTrace:
    """Simulate one walk; deterministic given (config.seed, walk_index).

    The trace ends at the first step where the schedule's rejection
    condition holds, or at n_max if it never does.
    """
    n, z0, z1 = _walk_states(config, walk_index)
    mask = _stop_mask(config.schedule, n, z0, z1)
    stop_n: Optional[int] = None
    last = len(n)
    if mask.any():
        idx = int(np.argmax(mask))
        stop_n = idx + 1
        last = idx + 1
    sl = slice(0, last)
    return WalkTrace(
        n=n[sl].astype(int),
        z=z0[sl],
        p0=np.asarray(specfun.z_to_p(z0[sl])),
        p1=np.asarray(specfun.z_to_p(z1[sl])),
        log_lr=0.5 * (z1[sl] * z1[sl] - z0[sl] * z0[sl]),
        stop_n=stop_n,
    )


@dataclass
class WalkBatch:
    """Stopping summary of many independent walks under one config."""

    config: WalkConfig
    n_walks: int
    stop_n: np.ndarray  # float; nan where the walk never stopped

    @property
    def stop_fraction(self) -> float:
        return float(np.mean(~np.isnan(self.stop_n)))

    @property
    def mean_stop_n(self) -> float:
        stopped = self.stop_n[~np.isnan(self.stop_n)]
        return float(np.mean(stopped)) if stopped.size else float("nan")

    def stop_fraction_by(self, n_max: int) -> float:
        """Fraction of walks that had stopped by step n_max."""
        with np.errstate(invalid="ignore"):
            return float(np.mean(self.stop_n <= n_max))

    def summary_record(self) -> dict:
        s = self.config.schedule
        return {
            "schedule": "none" if s is None else f"{s.kind}:{s.threshold:g}",
            "truth": self.config.truth,
            "n_walks": self.n_walks,
            "n_max": self.config.n_max,
            "stop_fraction": self.stop_fraction,
            "mean_stop_n": self.mean_stop_n,
        }


def _batch_chunk(config: WalkConfig, indices: np.ndarray, z_thr=None) -> np.ndarray:
    out = np.full(len(indices), np.nan)
    for j, walk_index in enumerate(indices):
        n, z0, z1 = _walk_states(config, int(walk_index))
        mask = _stop_mask(config.schedule, n, z0, z1, z_thr)
        if mask.any():
            out[j] = float(np.argmax(mask) + 1)
    return out


def run_walk_batch(config: WalkConfig, n_walks: int, threads: int = 1) -> WalkBatch:
    """Run n_walks independent walks (streams keyed by walk index).

    Aggregation is order-independent, so the result does not depend on the
    thread count.
    """
    if n_walks < 1:
        raise DomainError("n_walks must be positive")
    indices = np.arange(n_walks)
    steps = np.arange(1, config.n_max + 1, dtype=float)
    z_thr = _z_thresholds(config.schedule, steps)
    if threads <= 1 or n_walks < 4:
        stop_n = _batch_chunk(config, indices, z_thr)
    else:
        chunks = np.array_split(indices, min(threads * 4, n_walks))
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: _batch_chunk(config, c, z_thr), chunks))
        stop_n = np.concatenate(parts)
    return WalkBatch(config=config, n_walks=n_walks, stop_n=stop_n)


def lil_boundary_points(
    base_sep: float, n_values, side: str = "h0"
) -> List[Tuple[int, PPoint]]:
    """LIL boundary in the plane for a sample-mean test of base separation.

    At sample size n the test works on the fixed contour of separation
    sqrt(n)*base_sep; the H0-side boundary point is the intersection of
    that contour with the line p0 = alpha_lil(n), and the H1 side mirrors
    it at p1 = alpha_lil(n).
    """
    if side not in ("h0", "h1"):
        raise DomainError(f"side must be 'h0' or 'h1', got {side!r}")
    if base_sep <= 0.0:
        raise DomainError("base separation must be positive")
    out = []
    for n in n_values:
        n = int(n)
        if n < 3:
            raise DomainError("LIL boundary points need n >= 3 (boundary degenerate below)")
        a = alpha_lil(n)
        other = float(fixed_contour(GaussSep(base_sep * math.sqrt(n)), a))
        point = PPoint(a, other) if side == "h0" else PPoint(other, a)
        out.append((n, point))
    return out

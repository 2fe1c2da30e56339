"""Figure presets: deterministic data series behind each reproducible plot.

Each builder returns a :class:`FigureData` whose series are plain (x, y)
polylines (or point sets for the discrete Poisson family).  The CLI emits
them as CSV with columns ``series,x,y`` and can render them to PNG/SVG
with matplotlib.  Figure identifiers name the fixed catalogue of
reproducible plots documented in the README; the registry maps each
identifier to the CLI command it belongs to.

Where a plot's parameters are free choices (Cauchy/Gamma/Poisson panel
parameter sets, walk separations), representative values are baked in and
recorded in the series labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from . import contours, families, jlparadox, sequential, specfun
from .errors import NoSolutionError

__all__ = ["Series", "FigureData", "FIGURE_COMMANDS", "build_figure", "figure_ids"]


@dataclass
class Series:
    name: str
    x: np.ndarray
    y: np.ndarray
    style: str = "line"  # line | points

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)


@dataclass
class FigureData:
    figure_id: str
    title: str
    xlabel: str
    ylabel: str
    xscale: str = "linear"
    yscale: str = "linear"
    series: List[Series] = field(default_factory=list)

    def rows(self):
        for s in self.series:
            for x, y in zip(s.x, s.y):
                yield (s.name, float(x), float(y))


_GAUSS_SEPS = (0.0, 1.67, 3.33)
_LR_SET_MAIN = (0.37, 0.83, 1.0, 1.2, 2.7)
_LR_SET_DEEP = (1.0 / 32.0, 1.0 / 8.0, 8.0, 32.0)
_JL_TAUS = (1.0, 10.0, 100.0, 1000.0, 10000.0)
_JL_B01S = (1.0, 3.0, 20.0, 150.0)


def _grid(n: int = 512) -> np.ndarray:
    return contours.default_p0_grid(n)


def _fixed_series(spec, name: str, grid=None) -> Series:
    g = _grid() if grid is None else grid
    return Series(name, g, np.asarray(contours.fixed_contour(spec, g)))


def _lr_series(spec, lam: float, name: str, grid=None) -> List[Series]:
    g = _grid(256) if grid is None else grid
    out = []
    for branch in ("lower", "upper"):
        xs, ys = [], []
        for p0 in g:
            try:
                ys.append(float(contours.lr_contour(spec, lam, float(p0), branch)))
                xs.append(float(p0))
            except NoSolutionError:
                continue
        if xs:
            out.append(Series(f"{name}/{branch}", np.array(xs), np.array(ys)))
    return out


def _vline(x: float, name: str, lo: float = 1e-300, hi: float = 1.0) -> Series:
    return Series(name, np.array([x, x]), np.array([lo, hi]))


def _hline(y: float, name: str, lo: float = 1e-300, hi: float = 1.0) -> Series:
    return Series(name, np.array([lo, hi]), np.array([y, y]))


def fig2(**_) -> FigureData:
    """Decision regions: p0 and p1 thresholds and the CLs boundary."""
    fd = FigureData("fig2", "Decision regions in the (p0, p1) plane", "p0", "p1")
    a0, a1 = 0.05, 0.10
    g = np.linspace(0.0, 1.0, 513)
    fd.series = [
        _vline(a0, f"alpha0={a0:g}", 0.0, 1.0),
        _hline(a1, f"alpha1={a1:g}", 0.0, 1.0),
        Series(f"cls={a1:g}", g, a1 * (1.0 - g)),
        Series("diagonal", g, 1.0 - g),
    ]
    return fd


def fig3a(**_) -> FigureData:
    fd = FigureData("fig3a", "Fixed-hypothesis contours: Gauss", "p0", "p1")
    fd.series = [_fixed_series(contours.GaussSep(s), f"dmu/sigma={s:g}") for s in _GAUSS_SEPS]
    return fd


def fig3b(**_) -> FigureData:
    fd = FigureData("fig3b", "Fixed-hypothesis contours: Cauchy", "p0", "p1")
    fd.series = [_fixed_series(contours.CauchySep(s), f"dmu/gamma={s:g}") for s in _GAUSS_SEPS]
    return fd


def fig3c(**_) -> FigureData:
    fd = FigureData("fig3c", "Fixed-hypothesis contours: Gamma", "p0", "p1")
    for n, r in ((1, 2.0), (1, 8.0), (4, 2.0)):
        fd.series.append(_fixed_series(contours.GammaSep(n, r), f"n={n},mu1/mu0={r:g}"))
    fd.series.append(_fixed_series(contours.GammaSep(1, 1.0), "n=1,mu1/mu0=1"))
    return fd


def fig3d(**_) -> FigureData:
    fd = FigureData("fig3d", "Fixed-hypothesis contours: Poisson", "p0", "p1")
    for mu0, mu1 in ((10.0, 10.0), (1.0, 10.0), (10.0, 20.0)):
        pts = contours.poisson_fixed_points(contours.PoissonSep(mu0, mu1))
        xs = np.array([p.p0 for _, p in pts])
        ys = np.array([p.p1 for _, p in pts])
        fd.series.append(Series(f"mu0={mu0:g},mu1={mu1:g}", xs, ys, style="points"))
    return fd


def fig4(**_) -> FigureData:
    """Gauss contours with the alpha cuts and the Punzi point."""
    fd = fig3a()
    fd.figure_id = "fig4"
    fd.title = "Gauss contours, thresholds and the Punzi point"
    a0, a1 = 0.05, 0.10
    fd.series += [
        _vline(a0, f"alpha0={a0:g}", 0.0, 1.0),
        _hline(a1, f"alpha1={a1:g}", 0.0, 1.0),
        Series("punzi-point", np.array([a0]), np.array([a1]), style="points"),
    ]
    return fd


def _pdf_grid(lo, hi, n=801):
    return np.linspace(lo, hi, n)


def fig9(**_) -> FigureData:
    """Densities (and Poisson probabilities) behind the fig3 contours."""
    fd = FigureData("fig9", "Sampling distributions of the four families", "t", "density")
    x = _pdf_grid(-5.0, 7.0)
    tg = families.SimpleTest(families.Gauss(1.0), 0.0, 1.67)
    tc = families.SimpleTest(families.Cauchy(1.0), 0.0, 1.67)
    fd.series.append(Series("gauss:h0", x, [families.pdf(tg, "h0", v) for v in x]))
    fd.series.append(Series("gauss:h1", x, [families.pdf(tg, "h1", v) for v in x]))
    fd.series.append(Series("cauchy:h0", x, [families.pdf(tc, "h0", v) for v in x]))
    fd.series.append(Series("cauchy:h1", x, [families.pdf(tc, "h1", v) for v in x]))
    xt = _pdf_grid(1e-3, 8.0)
    tga = families.SimpleTest(families.GammaRate(1), 1.0, 2.0)
    fd.series.append(Series("gamma:h0", xt, [families.pdf(tga, "h0", v) for v in xt]))
    fd.series.append(Series("gamma:h1", xt, [families.pdf(tga, "h1", v) for v in xt]))
    tp = families.SimpleTest(families.Poisson(), 10.0, 20.0)
    ns = np.arange(0, 41)
    fd.series.append(
        Series("poisson:h0", ns, [families.pdf(tp, "h0", int(n)) for n in ns], style="points")
    )
    fd.series.append(
        Series("poisson:h1", ns, [families.pdf(tp, "h1", int(n)) for n in ns], style="points")
    )
    return fd


def fig6a(**_) -> FigureData:
    fd = FigureData("fig6a", "Likelihood-ratio contours: Gauss", "p0", "p1")
    for lam in _LR_SET_MAIN:
        fd.series += _lr_series(contours.GaussSep(1.0), lam, f"lambda={lam:g}")
    return fd


def fig6b(**_) -> FigureData:
    fd = FigureData("fig6b", "Likelihood-ratio contours: Cauchy", "p0", "p1")
    for lam in _LR_SET_MAIN:
        fd.series += _lr_series(contours.CauchySep(1.0), lam, f"lambda={lam:g}")
    return fd


def fig6c(**_) -> FigureData:
    fd = FigureData("fig6c", "Likelihood-ratio contours: Gamma (n=1)", "p0", "p1")
    for lam in _LR_SET_MAIN:
        fd.series += _lr_series(contours.GammaSep(1, 1.0), lam, f"lambda={lam:g}")
    return fd


def fig6d(**_) -> FigureData:
    fd = FigureData("fig6d", "Likelihood-ratio contours: Poisson (mu0=10)", "p0", "p1")
    mu0 = 10.0
    for lam in _LR_SET_MAIN:
        for branch in ("lower", "upper"):
            pts = contours.poisson_lr_points(mu0, lam, branch=branch)
            if not pts:
                continue
            xs = np.array([p.p0 for _, _, p in pts])
            ys = np.array([p.p1 for _, _, p in pts])
            fd.series.append(Series(f"lambda={lam:g}/{branch}", xs, ys, style="points"))
    return fd


def fig7(**_) -> FigureData:
    """Gamma likelihood-ratio contours approaching the Gauss limit."""
    fd = FigureData(
        "fig7", "Gamma vs Gauss likelihood-ratio contours", "p0", "p1", "log", "log"
    )
    for lam in _LR_SET_DEEP:
        fd.series += _lr_series(contours.GaussSep(1.0), lam, f"gauss lambda={lam:g}")
        for n in (1, 4, 16, 64):
            fd.series += _lr_series(contours.GammaSep(n, 1.0), lam, f"gamma n={n} lambda={lam:g}")
    return fd


def fig8(**_) -> FigureData:
    """Poisson likelihood-ratio contours approaching the Gauss limit.

    n unit-mean measurements pool into a Poisson(n) count under H0.
    """
    fd = FigureData(
        "fig8", "Poisson vs Gauss likelihood-ratio contours", "p0", "p1", "log", "log"
    )
    for lam in _LR_SET_DEEP:
        fd.series += _lr_series(contours.GaussSep(1.0), lam, f"gauss lambda={lam:g}")
        for n in (1, 4, 16, 64):
            for branch in ("lower", "upper"):
                pts = contours.poisson_lr_points(float(n), lam, branch=branch)
                if not pts:
                    continue
                xs = np.array([p.p0 for _, _, p in pts])
                ys = np.array([p.p1 for _, _, p in pts])
                fd.series.append(
                    Series(f"poisson n={n} lambda={lam:g}/{branch}", xs, ys, style="points")
                )
    return fd


def fig10(**_) -> FigureData:
    fd = FigureData("fig10", "Gauss likelihood-ratio contours (linear)", "p0", "p1")
    for lam in _LR_SET_MAIN:
        fd.series += _lr_series(contours.GaussSep(1.0), lam, f"lambda={lam:g}")
    fd.series.append(_fixed_series(contours.GaussSep(1.67), "dmu/sigma=1.67"))
    return fd


def fig11(**_) -> FigureData:
    fd = FigureData(
        "fig11", "Gauss likelihood-ratio contours (log-log)", "p0", "p1", "log", "log"
    )
    for lam in (1.0 / 32.0, 1.0 / 8.0, 1.0, 8.0, 32.0):
        fd.series += _lr_series(contours.GaussSep(1.0), lam, f"lambda={lam:g}")
    for s in (1.67, 3.33):
        fd.series.append(_fixed_series(contours.GaussSep(s), f"dmu/sigma={s:g}"))
    return fd


def _walk_series(name: str, truth: str, seed: int, walk_index: int, n_max: int) -> Series:
    cfg = sequential.WalkConfig(
        truth=truth, mu0=0.0, mu1=1.0, sigma=1.0, n_max=n_max, seed=seed, schedule=None
    )
    tr = sequential.run_walk(cfg, walk_index)
    return Series(name, tr.p0, tr.p1)


def _lil_series(name: str, side: str, n_max: int) -> Series:
    ns = np.unique(np.geomspace(3, n_max, 120).astype(int))
    pts = sequential.lil_boundary_points(1.0, ns, side)
    return Series(name, np.array([p.p0 for _, p in pts]), np.array([p.p1 for _, p in pts]))


def fig12(seed: int = 0, **_) -> FigureData:
    """Sequential-test walks with LIL, likelihood-ratio and CLs boundaries."""
    fd = FigureData(
        "fig12", "Sequential testing walks (dmu/sigma=1)", "p0", "p1", "log", "log"
    )
    n_max = 500
    for panel, truth, widx in (("a", "h0", 0), ("b", "h1", 0), ("c", "h0", 1), ("d", "h1", 1)):
        fd.series.append(_walk_series(f"{panel}:walk[{truth}]", truth, seed, widx, n_max))
        side = "h0" if truth == "h0" else "h1"
        fd.series.append(_lil_series(f"{panel}:lil[{side}]", side, n_max))
        lam = 1.0 / 8.0 if truth == "h0" else 8.0
        fd.series += [
            Series(f"{panel}:{s.name}", s.x, s.y)
            for s in _lr_series(contours.GaussSep(1.0), lam, f"lambda={lam:g}", _grid(128))
        ]
        if truth == "h1":
            g = _grid(128)
            fd.series.append(Series(f"{panel}:cls=0.05", g, 0.05 * (1.0 - g)))
    return fd


def fig13(seed: int = 0, **_) -> FigureData:
    """One H0-truth walk crossing per-n contours, with the LIL boundary and
    constant versus 1/sqrt(n) thresholds."""
    fd = FigureData(
        "fig13", "Random walk across fixed contours (truth H0)", "p0", "p1", "log", "log"
    )
    n_max = 2500
    alpha0 = 0.05
    fd.series.append(_walk_series("walk[h0]", "h0", seed, 0, n_max))
    ns = np.unique(np.geomspace(1, n_max, 64).astype(int))
    ns = ns[np.linspace(0, len(ns) - 1, 50).astype(int)]  # exactly fifty contours
    g = _grid(128)
    for n in ns:
        fd.series.append(
            _fixed_series(contours.GaussSep(math.sqrt(n)), f"contour n={n}", g)
        )
    fd.series.append(_lil_series("lil[h0]", "h0", n_max))
    fd.series.append(_vline(alpha0, f"alpha0={alpha0:g}", 1e-300, 1.0))
    ns_all = np.arange(1, n_max + 1)
    xs = alpha0 / np.sqrt(ns_all)
    ys = np.array(
        [float(contours.fixed_contour(contours.GaussSep(math.sqrt(n)), x)) for n, x in zip(ns_all, xs)]
    )
    fd.series.append(Series("alpha0/sqrt(n)", xs, ys))
    return fd


def _jl_fixed_series(tau: float, name: str, grid) -> Series:
    cfg = jlparadox.JLConfig(0.0, 1.0, tau)
    t0 = specfun.p_to_z(grid)
    return Series(name, grid, np.asarray(jlparadox.p1_prior_predictive(cfg, t0)))


def _jl_bayes_series(target: float, name: str, grid) -> Optional[Series]:
    xs, ys = [], []
    for p0 in grid:
        t0 = float(specfun.p_to_z(p0))
        try:
            tau = jlparadox.solve_tau_for_b01(t0, target)
        except NoSolutionError:
            continue
        cfg = jlparadox.JLConfig(0.0, 1.0, tau)
        xs.append(float(p0))
        ys.append(float(jlparadox.p1_prior_predictive(cfg, t0)))
    if not xs:
        return None
    return Series(name, np.array(xs), np.array(ys))


def _jl_figure(figure_id: str, xscale: str, yscale: str, grid) -> FigureData:
    fd = FigureData(
        figure_id,
        "p0 versus prior-predictive p1 with Bayes-factor contours",
        "p0",
        "p1pp",
        xscale,
        yscale,
    )
    for tau in _JL_TAUS:
        fd.series.append(_jl_fixed_series(tau, f"fixed:tau/sigma={tau:g}", grid))
    for b in _JL_B01S:
        s = _jl_bayes_series(b, f"bayes:B01={b:g}", grid)
        if s is not None:
            fd.series.append(s)
    return fd


def fig14(**_) -> FigureData:
    g = np.linspace(1e-4, 1.0 - 1e-4, 257)
    return _jl_figure("fig14", "linear", "linear", g)


def fig15(**_) -> FigureData:
    fd = _jl_figure("fig15", "log", "log", _grid(192))
    alpha0 = 0.01
    fd.series.append(_vline(alpha0, f"threshold:alpha0={alpha0:g}", 1e-300, 1.0))
    # n-dependent threshold: on the tau/sigma = r contour the cut sits at
    # alpha0/sqrt(n) with n = r^2
    rs = np.geomspace(1.0, 1e6, 200)
    xs, ys = [], []
    for r in rs:
        p0 = alpha0 / r
        t0 = float(specfun.p_to_z(p0))
        cfg = jlparadox.JLConfig(0.0, 1.0, r)
        xs.append(p0)
        ys.append(float(jlparadox.p1_prior_predictive(cfg, t0)))
    fd.series.append(Series("threshold:alpha0/sqrt(n)", np.array(xs), np.array(ys)))
    return fd


def fig16(**_) -> FigureData:
    fd = FigureData(
        "fig16",
        "Gaussian densities integrated over uniform mean windows",
        "x",
        "density",
    )
    for theta, hi in ((0.0, 6.0), (1.0, 7.0), (10.0, 16.0), (100.0, 106.0)):
        x = np.linspace(-6.0, hi, 1024)
        fd.series.append(
            Series(f"pdf:theta={theta:g}", x, np.asarray(jlparadox.integrated_pdf(theta, x)))
        )
    return fd


def _jl_interval_figure(figure_id: str, p0_kind: str) -> FigureData:
    label = "p0pp" if p0_kind == "pp" else "p0sup"
    fd = FigureData(
        figure_id,
        f"Interval-null variant: {label} versus prior-predictive p1",
        label,
        "p1pp",
        "log",
        "log",
    )
    grid = _grid(96)
    for eps in (0.01, 1.0, 100.0, 1e4):
        for tau in _JL_TAUS:
            cfg = jlparadox.JLConfig(0.0, 1.0, tau, eps)
            t0 = specfun.p_to_z(grid)
            ys = np.asarray(jlparadox.p1_prior_predictive(cfg, t0))
            if p0_kind == "pp":
                xs = np.array(
                    [jlparadox.p0_variants(cfg, float(t))["p0_pp"] for t in np.atleast_1d(t0)]
                )
            else:
                xs = grid
            fd.series.append(Series(f"fixed:eps={eps:g},tau/sigma={tau:g}", xs, ys))
        for b in _JL_B01S:
            xs, ys = [], []
            for p0 in grid:
                t0 = float(specfun.p_to_z(p0))
                try:
                    tau = jlparadox.solve_tau_for_b01(t0, b, epsilon=eps)
                except NoSolutionError:
                    continue
                cfg = jlparadox.JLConfig(0.0, 1.0, tau, eps)
                x = jlparadox.p0_variants(cfg, t0)["p0_pp"] if p0_kind == "pp" else p0
                xs.append(float(x))
                ys.append(float(jlparadox.p1_prior_predictive(cfg, t0)))
            if xs:
                fd.series.append(Series(f"bayes:eps={eps:g},B01={b:g}", np.array(xs), np.array(ys)))
    return fd


def fig18(**_) -> FigureData:
    return _jl_interval_figure("fig18", "pp")


def fig19(**_) -> FigureData:
    return _jl_interval_figure("fig19", "sup")


_BUILDERS: Dict[str, Callable[..., FigureData]] = {
    "fig2": fig2,
    "fig3a": fig3a,
    "fig3b": fig3b,
    "fig3c": fig3c,
    "fig3d": fig3d,
    "fig4": fig4,
    "fig6a": fig6a,
    "fig6b": fig6b,
    "fig6c": fig6c,
    "fig6d": fig6d,
    "fig7": fig7,
    "fig8": fig8,
    "fig9": fig9,
    "fig10": fig10,
    "fig11": fig11,
    "fig12": fig12,
    "fig13": fig13,
    "fig14": fig14,
    "fig15": fig15,
    "fig16": fig16,
    "fig18": fig18,
    "fig19": fig19,
}

# command that owns each preset on the CLI
FIGURE_COMMANDS: Dict[str, str] = {
    "fig2": "regions",
    "fig3a": "contour",
    "fig3b": "contour",
    "fig3c": "contour",
    "fig3d": "contour",
    "fig4": "contour",
    "fig9": "contour",
    "fig6a": "lr-contour",
    "fig6b": "lr-contour",
    "fig6c": "lr-contour",
    "fig6d": "lr-contour",
    "fig7": "lr-contour",
    "fig8": "lr-contour",
    "fig10": "lr-contour",
    "fig11": "lr-contour",
    "fig12": "walk",
    "fig13": "walk",
    "fig14": "jl",
    "fig15": "jl",
    "fig16": "jl",
    "fig18": "jl",
    "fig19": "jl",
}


def figure_ids() -> List[str]:
    return sorted(_BUILDERS)


def build_figure(figure_id: str, seed: Optional[int] = None) -> FigureData:
    builder = _BUILDERS.get(figure_id)
    if builder is None:
        raise KeyError(f"unknown figure id {figure_id!r}; known: {', '.join(figure_ids())}")
    kwargs = {}
    if seed is not None:
        kwargs["seed"] = seed
    return builder(**kwargs)

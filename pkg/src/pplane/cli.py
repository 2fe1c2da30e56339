"""Command-line surface: every table and figure as deterministic files.

Subcommands map one-to-one onto the library modules: ``contour``,
``lr-contour``, ``regions``, ``outcomes``, ``misleading``, ``walk``,
``lil``, ``jl`` and ``limits``.  Outputs are CSV or JSON (``--format``),
written atomically to ``--out`` with a manifest alongside; ``--format
svg`` and ``--plot`` route the same data through the matplotlib renderer.
Exit codes: 0 ok, 2 usage, 3 numeric failure, 4 I/O failure.

Parameter precedence is flags > ``--config`` TOML file > built-in
defaults.  Stochastic commands require an explicit ``--seed``.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import os
import sys
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__, contours, double_test, emit, evidence, families
from . import figures as figmod
from . import jlparadox, limits, sequential, specfun
from .errors import NoSolutionError, PPlaneError

try:
    import tomllib  # py >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


class _Output:
    """What a handler produced: tabular data and optionally a figure."""

    def __init__(self, csv_header=None, csv_rows=None, json_obj=None, figdata=None):
        self.csv_header = csv_header
        self.csv_rows = csv_rows
        self.json_obj = json_obj
        self.figdata = figdata


def _figure_output(fd) -> _Output:
    if fd.figure_id.startswith(("fig14", "fig15", "fig16", "fig18", "fig19")):
        header = ["kind", "label", "x", "y"]
        rows = []
        for name, x, y in fd.rows():
            kind, _, label = name.partition(":")
            rows.append([kind, label, x, y])
    else:
        header = ["series", "x", "y"]
        rows = [list(r) for r in fd.rows()]
    json_obj = {
        "figure": fd.figure_id,
        "series": [
            {"name": s.name, "x": [float(v) for v in s.x], "y": [float(v) for v in s.y]}
            for s in fd.series
        ],
    }
    return _Output(csv_header=header, csv_rows=rows, json_obj=json_obj, figdata=fd)


def _contour_spec(args, parser) -> contours.ContourSpec:
    fam = args.family
    if fam == "gauss":
        return contours.GaussSep(args.sep)
    if fam == "cauchy":
        return contours.CauchySep(args.sep)
    if fam == "gamma":
        return contours.GammaSep(args.nshape, args.ratio)
    if fam == "poisson":
        return contours.PoissonSep(args.mu0, args.mu1)
    parser.error(f"unknown family {fam!r}")


def _check_figure(args, parser, command: str) -> None:
    if args.figure is None:
        return
    owner = figmod.FIGURE_COMMANDS.get(args.figure)
    if owner is None:
        parser.error(
            f"unknown figure {args.figure!r}; known: {', '.join(figmod.figure_ids())}"
        )
    if owner != command:
        parser.error(f"figure {args.figure!r} belongs to the '{owner}' command")


def _cmd_contour(args, parser) -> _Output:
    _check_figure(args, parser, "contour")
    if args.figure:
        return _figure_output(figmod.build_figure(args.figure))
    spec = _contour_spec(args, parser)
    header = ["p0", "p1", "label"]
    rows: List[list] = []
    if isinstance(spec, contours.PoissonSep):
        label = f"poisson mu0={spec.mu0:g} mu1={spec.mu1:g}"
        for _, pt in contours.poisson_fixed_points(spec):
            rows.append([pt.p0, pt.p1, label])
    else:
        label = {
            contours.GaussSep: lambda s: f"gauss dmu/sigma={s.dmu_over_sigma:g}",
            contours.CauchySep: lambda s: f"cauchy dmu/gamma={s.dmu_over_gamma:g}",
            contours.GammaSep: lambda s: f"gamma n={s.n} ratio={s.rate_ratio:g}",
        }[type(spec)](spec)
        grid = contours.default_p0_grid(args.grid)
        p1 = np.asarray(contours.fixed_contour(spec, grid))
        rows = [[float(a), float(b), label] for a, b in zip(grid, p1)]
    medians = None
    if not isinstance(spec, contours.PoissonSep):
        m = contours.asimov_medians(spec)
        medians = {
            "median_p1_h0": m.median_p1_h0,
            "median_p0_h1": m.median_p0_h1,
            "median_cls_h0": m.median_cls_h0,
        }
    json_obj = {
        "label": rows[0][2] if rows else "",
        "asimov_medians": medians,
        "points": [[r[0], r[1]] for r in rows],
    }
    return _Output(header, rows, json_obj)


def _cmd_lr_contour(args, parser) -> _Output:
    _check_figure(args, parser, "lr-contour")
    if args.figure:
        return _figure_output(figmod.build_figure(args.figure))
    header = ["p0", "p1", "label"]
    rows: List[list] = []
    branches = ("lower", "upper") if args.branch == "both" else (args.branch,)
    if args.family == "poisson":
        for branch in branches:
            label = f"poisson mu0={args.mu0:g} lambda={args.lam:g} {branch}"
            for _, _, pt in contours.poisson_lr_points(args.mu0, args.lam, branch=branch):
                rows.append([pt.p0, pt.p1, label])
    else:
        spec = {
            "gauss": contours.GaussSep(0.0),
            "cauchy": contours.CauchySep(0.0),
            "gamma": contours.GammaSep(args.nshape, 1.0),
        }[args.family]
        grid = contours.default_p0_grid(args.grid)
        for branch in branches:
            label = f"{args.family} lambda={args.lam:g} {branch}"
            if args.family == "gamma":
                label = f"gamma n={args.nshape} lambda={args.lam:g} {branch}"
            for p0 in grid:
                try:
                    p1 = float(contours.lr_contour(spec, args.lam, float(p0), branch))
                except NoSolutionError:
                    continue
                rows.append([float(p0), p1, label])
    if not rows:
        raise NoSolutionError(
            f"lambda01={args.lam:g} has no attainable contour points for {args.family}"
        )
    json_obj = {"lambda01": args.lam, "points": [[r[0], r[1], r[2]] for r in rows]}
    return _Output(header, rows, json_obj)


def _cmd_regions(args, parser) -> _Output:
    _check_figure(args, parser, "regions")
    if args.figure:
        return _figure_output(figmod.build_figure(args.figure))
    if (args.p0 is None) != (args.p1 is None):
        parser.error("point classification needs both --p0 and --p1")
    if args.p0 is not None:
        point = (args.p0, args.p1)
        record = {
            "p0": args.p0,
            "p1": args.p1,
            "alpha0": args.alpha0,
            "alpha1": args.alpha1,
            "rule": args.rule,
            "cls": contours.cls(point),
            "region": contours.classify_region(point, args.alpha0, args.alpha1, args.rule),
        }
        header = ["p0", "p1", "alpha0", "alpha1", "rule", "cls", "region"]
        rows = [[record[k] for k in header]]
        return _Output(header, rows, record)
    # boundary polylines at the configured thresholds
    header = ["p0", "p1", "label"]
    g = np.linspace(0.0, 1.0, 513)
    rows = [[args.alpha0, 0.0, "alpha0"], [args.alpha0, 1.0, "alpha0"]]
    rows += [[0.0, args.alpha1, "alpha1"], [1.0, args.alpha1, "alpha1"]]
    rows += [[float(x), float(args.alpha1 * (1.0 - x)), "cls"] for x in g]
    rows += [[float(x), float(1.0 - x), "diagonal"] for x in g]
    json_obj = {"alpha0": args.alpha0, "alpha1": args.alpha1, "rule": args.rule}
    return _Output(header, rows, json_obj)


def _cmd_outcomes(args, parser) -> _Output:
    if args.family == "poisson":
        parser.error("outcome rates need a continuous-family contour")
    spec = _contour_spec(args, parser)
    rates = double_test.rates_from_contour(spec, args.alpha0, args.alpha1)
    table = double_test.outcome_table(rates)
    errors = double_test.error_rates(rates)
    header = ["outcome", "prob_h0", "prob_h1"]
    rows = [[r.outcome, r.prob_h0, r.prob_h1] for r in table.rows]
    json_obj = {
        "rates": {
            "alpha0": rates.alpha0,
            "alpha1": rates.alpha1,
            "beta0": rates.beta0,
            "beta1": rates.beta1,
        },
        "error_rates": errors,
        "table": table.as_records(),
    }
    return _Output(header, rows, json_obj)


_MISLEADING_PRESET_SEPS = (1.67, 3.33)
_MISLEADING_PRESET_KS = (8.0, 32.0)


def _cmd_misleading(args, parser) -> _Output:
    # fig11's plot data lives under lr-contour; here the preset means the
    # benchmark probability table printed with that figure
    if args.figure is not None and args.figure != "fig11":
        parser.error("misleading supports only --figure fig11 (the benchmark table)")
    header = ["sep", "k", "direction", "probability"]
    rows: List[list] = []
    if args.figure == "fig11" or (args.sep is None and args.k is None):
        for k in _MISLEADING_PRESET_KS:
            for sep in _MISLEADING_PRESET_SEPS:
                rows.append([sep, k, "favors_h1_under_h0", evidence.prob_misleading_for_h1(sep, k)])
        for k in _MISLEADING_PRESET_KS:
            for sep in _MISLEADING_PRESET_SEPS:
                rows.append([sep, k, "favors_h0_under_h1", evidence.prob_misleading_for_h0(sep, k)])
    else:
        if args.sep is None or args.k is None:
            parser.error("need both --sep and --k (or --figure fig11)")
        rows.append(
            [args.sep, args.k, "favors_h1_under_h0", evidence.prob_misleading_for_h1(args.sep, args.k)]
        )
        rows.append(
            [args.sep, args.k, "favors_h0_under_h1", evidence.prob_misleading_for_h0(args.sep, args.k)]
        )
    json_obj = [
        {"sep": r[0], "k": r[1], "direction": r[2], "probability": r[3]} for r in rows
    ]
    return _Output(header, rows, json_obj)


def _cmd_walk(args, parser) -> _Output:
    _check_figure(args, parser, "walk")
    if args.figure:
        return _figure_output(figmod.build_figure(args.figure, seed=args.seed))
    try:
        schedule = sequential.parse_schedule(args.schedule)
    except (NoSolutionError, ValueError) as exc:
        parser.error(str(exc))
    config = sequential.WalkConfig(
        truth=args.truth,
        mu0=args.mu0,
        mu1=args.mu1,
        sigma=args.sigma,
        n_max=args.nmax,
        seed=args.seed,
        schedule=schedule,
    )
    if args.batch:
        batch = sequential.run_walk_batch(config, args.batch, threads=args.threads)
        record = batch.summary_record()
        header = list(record)
        return _Output(header, [[record[k] for k in header]], record)
    trace = sequential.run_walk(config, args.walk_index)
    header = ["n", "Z", "p0", "p1", "lambda01", "stopped"]
    rows = [list(r) for r in trace.rows()]
    json_obj = {
        "config": {
            "truth": args.truth,
            "mu0": args.mu0,
            "mu1": args.mu1,
            "sigma": args.sigma,
            "n_max": args.nmax,
            "seed": args.seed,
            "schedule": args.schedule,
        },
        "stop_n": trace.stop_n,
        "rows": rows,
    }
    return _Output(header, rows, json_obj)


def _cmd_lil(args, parser) -> _Output:
    ns = np.unique(np.geomspace(max(3, args.nmin), args.nmax, args.points).astype(int))
    pts = sequential.lil_boundary_points(args.sep, ns, args.side)
    header = ["n", "alpha_lil", "p0", "p1", "side"]
    rows = [
        [int(n), float(sequential.alpha_lil(n)), pt.p0, pt.p1, args.side] for n, pt in pts
    ]
    json_obj = [
        {"n": r[0], "alpha_lil": r[1], "p0": r[2], "p1": r[3], "side": r[4]} for r in rows
    ]
    return _Output(header, rows, json_obj)


def _table2_rows() -> List[list]:
    rows = []
    for name, mu0, mu1, n in (("first", 1.0, 10.0, 10), ("second", 10.0, 100.0, 30)):
        test = families.SimpleTest(families.Poisson(), mu0, mu1)
        pt = families.p_values(test, n)
        rows.append(
            [
                name,
                mu0,
                mu1,
                n,
                pt.p0,
                float(specfun.p_to_z(pt.p0)),
                pt.p1,
                float(specfun.p_to_z(pt.p1)),
                families.likelihood_ratio(test, n),
            ]
        )
    return rows


def _cmd_jl(args, parser) -> _Output:
    _check_figure(args, parser, "jl")
    if args.figure:
        return _figure_output(figmod.build_figure(args.figure))
    if args.table2:
        header = ["dataset", "mu0", "mu1", "n_obs", "p0", "z0", "p1", "z1", "lr"]
        rows = _table2_rows()
        json_obj = [dict(zip(header, r)) for r in rows]
        return _Output(header, rows, json_obj)
    if args.tau is None or args.t0 is None:
        parser.error("need --tau and --t0 (or --table2 / --figure)")
    cfg = jlparadox.JLConfig(args.mu0, args.sigma, args.tau, args.epsilon)
    variants = jlparadox.p0_variants(cfg, args.t0)
    p1pp = jlparadox.p1_prior_predictive(cfg, args.t0)
    if args.epsilon > 0.0:
        b01 = jlparadox.bayes_factor_interval_null(cfg, args.t0)
        ockham = None
    else:
        b01 = jlparadox.bayes_factor_point_null(cfg, args.t0)
        ockham = jlparadox.ockham_factor(cfg, args.t0)
    cl = jlparadox.classify_jl_region(
        variants["p0_simple"], p1pp, b01, alpha0=args.alpha0
    )
    record = {
        "mu0": args.mu0,
        "sigma": args.sigma,
        "tau": args.tau,
        "epsilon": args.epsilon,
        "t0": args.t0,
        **variants,
        "p1pp": p1pp,
        "b01": b01,
        "ockham_factor": ockham,
        "region": cl.region,
        "bayes_label": cl.bayes_label,
    }
    header = list(record)
    return _Output(header, [[record[k] for k in header]], record)


_LIMIT_FAMILIES = {
    "gauss": lambda scale: families.Gauss(scale),
    "cauchy": lambda scale: families.Cauchy(scale),
    "poisson": lambda scale: families.Poisson(),
}


def _cmd_limits(args, parser) -> _Output:
    header = ["family", "observation", "gamma", "freq_ul", "cls_ul", "bayes_ul", "max_abs_diff"]
    if args.verify:
        creds = (0.68, 0.90, 0.95, 0.99)
        reports = [
            limits.verify_bayes_cls_equality(families.Gauss(1.0), np.linspace(-2, 5, 8), creds, 0.0),
            limits.verify_bayes_cls_equality(families.Poisson(), range(0, 21), creds, 0.0),
            limits.verify_bayes_cls_equality(families.Cauchy(1.0), np.linspace(-2, 5, 8), creds, 0.0),
        ]
        rows = []
        for rep in reports:
            for c in rep.cases:
                rows.append(
                    [
                        c["family"],
                        c["observation"],
                        c["gamma"],
                        c["freq_ul"],
                        c["cls_ul"],
                        c["bayes_ul"],
                        c["abs_diff"],
                    ]
                )
        json_obj = [rep.as_record() for rep in reports]
        return _Output(header, rows, json_obj)
    family = _LIMIT_FAMILIES[args.family](args.scale)
    if args.family == "poisson" and args.obs != int(args.obs):
        parser.error("Poisson observations are integer counts")
    obs = int(args.obs) if args.family == "poisson" else args.obs
    try:
        floor = -math.inf if args.mu_floor == "-inf" else float(args.mu_floor)
    except ValueError:
        parser.error(f"--mu-floor must be a number or '-inf', got {args.mu_floor!r}")
    req = limits.LimitRequest(family, obs, args.gamma, floor)
    freq = limits.frequentist_upper_limit(req)
    ul_cls = limits.cls_upper_limit(req)
    ul_bayes = limits.bayes_upper_limit(req)
    record = {
        "family": args.family,
        "observation": obs,
        "gamma": args.gamma,
        "freq_ul": freq,
        "cls_ul": ul_cls,
        "bayes_ul": ul_bayes,
        "max_abs_diff": abs(ul_cls - ul_bayes),
    }
    return _Output(header, [[record[k] for k in header]], record)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    sub.add_argument("--out", default=None, help="output path (default: stdout)")
    sub.add_argument(
        "--plot",
        nargs="?",
        const="auto",
        default=None,
        metavar="PATH",
        help="also render a PNG next to the data (or at PATH)",
    )
    sub.add_argument("--config", default=None, help="TOML config file")
    sub.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("PPLANE_THREADS", "1")),
        help="parallelism for batch Monte Carlo (env PPLANE_THREADS)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pplane", description="hypothesis-testing geometry in the (p0, p1) plane"
    )
    parser.add_argument("--version", action="version", version=f"pplane {__version__}")
    subs = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = subs.add_parser("contour", help="fixed-hypothesis contours")
    p.add_argument("--family", choices=("gauss", "cauchy", "gamma", "poisson"), default="gauss")
    p.add_argument("--sep", type=float, default=1.67, help="dmu/sigma or dmu/gamma")
    p.add_argument("--nshape", type=int, default=1, help="gamma sample size")
    p.add_argument("--ratio", type=float, default=2.0, help="gamma rate ratio mu1/mu0")
    p.add_argument("--mu0", type=float, default=10.0, help="poisson null mean")
    p.add_argument("--mu1", type=float, default=20.0, help="poisson alternative mean")
    p.add_argument("--grid", type=int, default=512)
    p.add_argument("--figure", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_contour)

    p = subs.add_parser("lr-contour", help="constant likelihood-ratio contours")
    p.add_argument("--family", choices=("gauss", "cauchy", "gamma", "poisson"), default="gauss")
    p.add_argument("--lam", type=float, default=8.0, help="lambda01 = L0/L1")
    p.add_argument("--branch", choices=("lower", "upper", "both"), default="both")
    p.add_argument("--nshape", type=int, default=1, help="gamma sample size")
    p.add_argument("--mu0", type=float, default=10.0, help="poisson null mean")
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--figure", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_lr_contour)

    p = subs.add_parser("regions", help="decision regions and point classification")
    p.add_argument("--alpha0", type=float, default=0.05)
    p.add_argument("--alpha1", type=float, default=0.10)
    p.add_argument("--rule", choices=("p1", "cls"), default="p1")
    p.add_argument("--p0", type=float, default=None)
    p.add_argument("--p1", type=float, default=None)
    p.add_argument("--figure", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_regions)

    p = subs.add_parser("outcomes", help="double-test outcome probabilities and error rates")
    p.add_argument("--family", choices=("gauss", "cauchy", "gamma"), default="gauss")
    p.add_argument("--sep", type=float, default=1.67)
    p.add_argument("--nshape", type=int, default=1)
    p.add_argument("--ratio", type=float, default=2.0)
    p.add_argument("--alpha0", type=float, default=0.05)
    p.add_argument("--alpha1", type=float, default=0.10)
    _add_common(p)
    p.set_defaults(func=_cmd_outcomes)

    p = subs.add_parser("misleading", help="probabilities of misleading evidence")
    p.add_argument("--sep", type=float, default=None, help="dmu/sigma")
    p.add_argument("--k", type=float, default=None, help="likelihood-ratio benchmark")
    p.add_argument("--figure", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_misleading)

    p = subs.add_parser("walk", help="sequential-test random walks")
    p.add_argument("--truth", choices=("h0", "h1"), default="h0")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--nmax", type=int, default=1000)
    p.add_argument("--schedule", default="constant:0.05", help="kind:threshold or 'none'")
    p.add_argument("--mu0", type=float, default=0.0)
    p.add_argument("--mu1", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--walk-index", type=int, default=0)
    p.add_argument("--batch", type=int, default=None, help="summarize this many walks")
    p.add_argument("--figure", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_walk)

    p = subs.add_parser("lil", help="law-of-the-iterated-logarithm boundary")
    p.add_argument("--nmin", type=int, default=3)
    p.add_argument("--nmax", type=int, default=10000)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--sep", type=float, default=1.0, help="per-event dmu/sigma")
    p.add_argument("--side", choices=("h0", "h1"), default="h0")
    _add_common(p)
    p.set_defaults(func=_cmd_lil)

    p = subs.add_parser("jl", help="Jeffreys-Lindley analysis; --table2 prints the two-dataset counting benchmark")
    p.add_argument("--table2", action="store_true")
    p.add_argument("--mu0", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--t0", type=float, default=None, help="observed statistic")
    p.add_argument("--alpha0", type=float, default=sequential.ALPHA_5SIGMA)
    p.add_argument("--figure", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_jl)

    p = subs.add_parser("limits", help="frequentist, CLs and Bayesian upper limits")
    p.add_argument("--family", choices=("gauss", "cauchy", "poisson"), default="gauss")
    p.add_argument("--obs", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.95, help="credibility / confidence")
    p.add_argument("--mu-floor", default="0", help="parameter floor (or -inf)")
    p.add_argument("--scale", type=float, default=1.0, help="sigma (gauss) / gamma (cauchy)")
    p.add_argument("--verify", action="store_true", help="run the equality grid report")
    _add_common(p)
    p.set_defaults(func=_cmd_limits)

    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> None:
    """Install config-file values as subcommand defaults (flags still win)."""
    if "--config" not in argv:
        return
    idx = list(argv).index("--config")
    if idx + 1 >= len(argv):
        return  # argparse will report the missing value
    path = argv[idx + 1]
    try:
        with open(path, "rb") as fh:
            config = tomllib.load(fh)
    except OSError as exc:
        parser.error(f"cannot read config file: {exc}")
    except tomllib.TOMLDecodeError as exc:
        parser.error(f"invalid config file: {exc}")
    command = next((a for a in argv if not a.startswith("-")), None)
    section = config.get(command, {}) if command else {}
    if not isinstance(section, dict):
        parser.error(f"config section [{command}] must be a table")
    # find the subparser to validate keys against
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction) and command in action.choices:
            sub = action.choices[command]
            valid = {a.dest for a in sub._actions}
            mapped = {k.replace("-", "_"): v for k, v in section.items()}
            unknown = set(mapped) - valid
            if unknown:
                parser.error(f"unknown config keys for [{command}]: {sorted(unknown)}")
            sub.set_defaults(**mapped)
            return


def _params_for_manifest(args) -> Dict:
    skip = {"func", "out", "plot", "config"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        out[k] = v if (v is None or isinstance(v, (bool, int, float, str))) else str(v)
    return out


def _emit(args, output: _Output, parser) -> None:
    from . import plotting  # deferred: pulls in matplotlib

    outputs: Dict[str, Optional[str]] = {}
    if args.format == "svg":
        if output.figdata is None:
            parser.error(f"command '{args.command}' has no figure to render as svg")
        if not args.out:
            parser.error("--format svg requires --out")
        plotting.render_figure(output.figdata, args.out, fmt="svg")
        with open(args.out, "rb") as fh:
            outputs[args.out] = hashlib.sha256(fh.read()).hexdigest()
    elif args.format == "json":
        data = emit.json_bytes(output.json_obj)
        outputs[args.out or "-"] = emit.write_bytes(args.out, data)
    else:
        data = emit.csv_bytes(output.csv_header, output.csv_rows)
        outputs[args.out or "-"] = emit.write_bytes(args.out, data)

    if args.plot is not None:
        if output.figdata is None:
            parser.error(f"command '{args.command}' has no figure to plot")
        if args.plot == "auto":
            if not args.out:
                parser.error("--plot without a path requires --out")
            plot_path = os.path.splitext(args.out)[0] + ".png"
        else:
            plot_path = args.plot
        plotting.render_figure(output.figdata, plot_path, fmt="png")
        with open(plot_path, "rb") as fh:
            outputs[plot_path] = hashlib.sha256(fh.read()).hexdigest()

    if args.out:
        emit.write_manifest(
            args.out, args.command, _params_for_manifest(args), outputs, __version__
        )


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    _apply_config(parser, argv)
    args = parser.parse_args(argv)
    try:
        output = args.func(args, parser)
        _emit(args, output, parser)
    except PPlaneError as exc:
        print(f"pplane: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ArithmeticError, FloatingPointError) as exc:
        print(f"pplane: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"pplane: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

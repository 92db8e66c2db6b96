"""Command-line front end: every module operation plus the figure data series.

Exit codes: 0 success, 1 usage error, 2 infeasible, 3 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .core import (
    INFEASIBLE,
    ChannelModel,
    Family,
    ParameterError,
    SystemParams,
    as_fraction,
    breakpoints,
    mbr_point,
    msr_point,
    tradeoff_alpha_star,
)
from .optimize import DEFAULT_GRID, Budget, optimize_helpers, optimize_twolayer, region_map
from .reliability import (
    HelperScheme,
    RepetitionScheme,
    TwoLayerAllocation,
    p_success_helpers,
    p_success_repetition,
    p_success_twolayer,
)

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_VALIDATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _counts(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


# --- output ------------------------------------------------------------------

def _cells(name: str, value) -> dict:
    """Decimal column (12 significant digits) plus an exact p/q column for rationals."""
    if value is INFEASIBLE:
        return {name: "INFEASIBLE", f"{name}_exact": "INFEASIBLE"}
    if value is None:
        return {name: ""}
    if isinstance(value, Fraction):
        return {name: f"{float(value):.12g}", f"{name}_exact": str(value)}
    if isinstance(value, float):
        return {name: f"{value:.12g}"}
    if isinstance(value, Family):
        return {name: value.value}
    return {name: value}


def _row(**fields) -> dict:
    row = {}
    for k, v in fields.items():
        row.update(_cells(k, v))
    return row


def _json_value(v):
    if isinstance(v, str):
        try:
            f = float(v)
        except ValueError:
            return v
        return int(f) if v.lstrip("-").isdigit() else f
    return v


def emit(args, inputs: dict, rows: list[dict], *, single: bool = False) -> None:
    if args.format == "json":
        body = [{k: v if k.endswith("_exact") else _json_value(v) for k, v in r.items()}
                for r in rows]
        doc = {"inputs": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in inputs.items()}}
        doc["result" if single else "series"] = body[0] if single and body else body
        doc["meta"] = {"version": __version__, "seed": getattr(args, "seed", None),
                       "command": args.command}
        text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    else:
        header = []
        for r in rows:
            for k in r:
                if k not in header:
                    header.append(k)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n", restval="")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- helpers -----------------------------------------------------------------

def _params(args, d: Optional[int] = None) -> SystemParams:
    for name in ("n", "k"):
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required")
    d = d if d is not None else args.d
    if d is None:
        raise UsageError("--d is required")
    return SystemParams(args.M, args.n, args.k, d)


def _eps_list(args, default) -> list[Fraction]:
    return list(args.eps) if args.eps else list(default)


def _uniform(lo: Fraction, hi: Fraction, points: int) -> list[Fraction]:
    if points < 2:
        raise UsageError("--grid must be at least 2")
    if hi <= lo:
        raise UsageError(f"empty range [{lo}, {hi}]")
    return [lo + (hi - lo) * Fraction(j, points - 1) for j in range(points)]


# --- commands ----------------------------------------------------------------

def cmd_tradeoff(args) -> int:
    p = _params(args)
    eps = _eps_list(args, [Fraction(0), Fraction(1, 10), Fraction(2, 10), Fraction(3, 10)])
    g_lo = args.gamma_min if args.gamma_min is not None else mbr_point(p).gamma * Fraction(9, 10)
    g_hi = args.gamma_max if args.gamma_max is not None else \
        msr_point(p).gamma / (1 - max(eps)) * Fraction(6, 5)
    grid = _uniform(g_lo, g_hi, args.grid)
    rows = []
    for e in eps:
        ch = ChannelModel(e)
        gammas = sorted(set(grid) | {b for b in breakpoints(p, ch) if g_lo <= b <= g_hi})
        for g in gammas:
            a = tradeoff_alpha_star(p, g, ch)
            rows.append(_row(eps=e, gamma=g, alpha_star=a,
                             status="INFEASIBLE" if a is INFEASIBLE else "ok"))
    emit(args, {"M": p.M, "n": p.n, "k": p.k, "d": p.d, "eps": [str(e) for e in eps],
                "gamma_min": g_lo, "gamma_max": g_hi, "grid": args.grid}, rows)
    return EXIT_OK


def cmd_point(args) -> int:
    p = _params(args)
    rows = [_row(family=pt.family, alpha=pt.alpha, beta=pt.beta, gamma=pt.gamma)
            for pt in (msr_point(p), mbr_point(p))]
    emit(args, {"M": p.M, "n": p.n, "k": p.k, "d": p.d}, rows)
    return EXIT_OK


def cmd_psucc(args) -> int:
    if args.d is None or args.d_prime is None:
        raise UsageError("--d and --d-prime are required")
    s = HelperScheme(args.d, args.d_prime, 1)
    eps = _eps_list(args, [Fraction(1, 10)])
    rows = [_row(eps=e, d=s.d, d_prime=s.d_prime, p_success=p_success_helpers(s, ChannelModel(e)))
            for e in eps]
    emit(args, {"d": s.d, "d_prime": s.d_prime, "eps": [str(e) for e in eps]}, rows)
    return EXIT_OK


def cmd_psucc_rep(args) -> int:
    if not args.counts:
        raise UsageError("--counts is required")
    s = RepetitionScheme(args.counts)
    eps = _eps_list(args, [Fraction(1, 10)])
    counts = ",".join(map(str, s.counts))
    rows = [_row(eps=e, counts=counts, p_success=p_success_repetition(s, ChannelModel(e)))
            for e in eps]
    emit(args, {"counts": list(s.counts), "eps": [str(e) for e in eps]}, rows)
    return EXIT_OK


def _allocation(args) -> TwoLayerAllocation:
    if args.alpha1 is None or args.beta1 is None:
        raise UsageError("--alpha1 and --beta1 are required")
    return TwoLayerAllocation(args.alpha1, args.alpha2 or 0, args.beta1, args.beta2 or 0)


def cmd_psucc_2layer(args) -> int:
    p = _params(args)
    a = _allocation(args)
    eps = _eps_list(args, [Fraction(1, 10)])
    rows = [_row(eps=e, alpha1=a.alpha1, alpha2=a.alpha2, beta1=a.beta1, beta2=a.beta2,
                 p_success=p_success_twolayer(p, a, ChannelModel(e))) for e in eps]
    emit(args, {"M": p.M, "n": p.n, "k": p.k, "d": p.d, "eps": [str(e) for e in eps]}, rows)
    return EXIT_OK


def cmd_opt_helpers(args) -> int:
    # d is searched, so any valid placeholder works
    p = _params(args, d=args.k)
    if args.gamma_th is None:
        raise UsageError("--gamma-th is required")
    family = Family(args.family)
    eps = _eps_list(args, [Fraction(2 * j, 100) for j in range(1, 26)])
    rows = []
    feasible = 0
    for e in eps:
        r = optimize_helpers(p, family, Budget(args.gamma_th), ChannelModel(e))
        if r is INFEASIBLE:
            rows.append(_row(eps=e, status="INFEASIBLE"))
            continue
        feasible += 1
        s = r.argmax
        rows.append(_row(eps=e, status="ok", d=s.d, d_prime=s.d_prime, beta=s.beta,
                         gamma_prime=s.gamma_prime, p_star=r.p_star,
                         feasible_count=r.feasible_count))
    emit(args, {"M": p.M, "n": p.n, "k": p.k, "family": family.value,
                "gamma_th": args.gamma_th, "eps": [str(e) for e in eps]}, rows)
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def cmd_opt_storage(args) -> int:
    p = _params(args)
    if args.gamma_th is None or args.alpha_th is None:
        raise UsageError("--gamma-th and --alpha-th are required")
    eps = _eps_list(args, [Fraction(1, 10)])
    rows = []
    feasible = 0
    for e in eps:
        r = optimize_twolayer(p, Budget(args.gamma_th, args.alpha_th), ChannelModel(e), args.grid)
        if r is INFEASIBLE:
            rows.append(_row(eps=e, status="INFEASIBLE"))
            continue
        feasible += 1
        a = r.argmax
        rows.append(_row(eps=e, status="ok", family=r.family, alpha1=a.alpha1, alpha2=a.alpha2,
                         beta1=a.beta1, beta2=a.beta2, p_star=r.p_star,
                         feasible_count=r.feasible_count))
    emit(args, {"M": p.M, "n": p.n, "k": p.k, "d": p.d, "alpha_th": args.alpha_th,
                "gamma_th": args.gamma_th, "grid": args.grid, "eps": [str(e) for e in eps]},
         rows, single=len(rows) == 1)
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def cmd_region_map(args) -> int:
    p = _params(args)
    eps = _eps_list(args, [Fraction(1, 10)])
    if len(eps) != 1:
        raise UsageError("region-map takes a single --eps")
    msr, mbr = msr_point(p), mbr_point(p)
    g_lo = args.gamma_min if args.gamma_min is not None else msr.gamma
    g_hi = args.gamma_max if args.gamma_max is not None else 4 * msr.gamma
    a_lo = args.alpha_min if args.alpha_min is not None else msr.alpha
    a_hi = args.alpha_max if args.alpha_max is not None else 4 * mbr.alpha
    gammas, alphas = _uniform(g_lo, g_hi, args.cells), _uniform(a_lo, a_hi, args.cells)
    rm = region_map(p, ChannelModel(eps[0]), gammas, alphas, args.grid)
    rows = []
    for i, a_th in enumerate(rm.alpha_grid):
        for j, g_th in enumerate(rm.gamma_grid):
            rows.append(_row(alpha_th=a_th, gamma_th=g_th, tag=rm.tags[i][j],
                             p_msr=rm.p_msr[i][j], p_mbr=rm.p_mbr[i][j]))
    emit(args, {"M": p.M, "n": p.n, "k": p.k, "d": p.d, "eps": str(eps[0]), "cells": args.cells,
                "grid": args.grid}, rows)
    return EXIT_OK


def cmd_simulate(args) -> int:
    from .gfsim.trials import ErasureMode, run_trials

    if args.alpha1 is not None:
        p = _params(args)
        scheme = _allocation(args)
    else:
        if args.d is None:
            raise UsageError("--d is required")
        p = _params(args)
        family = Family(args.family)
        pt = msr_point(p) if family is Family.MSR else mbr_point(p)
        scheme = HelperScheme(p.d, args.d_prime or p.d, pt.beta)
    eps = _eps_list(args, [Fraction(1, 10)])
    rows = []
    for e in eps:
        r = run_trials(p, scheme, ChannelModel(e), args.trials, args.seed,
                       erasure_mode=ErasureMode(args.erasure_mode))
        rows.append(_row(eps=e, trials=r.trials, successes=r.successes, p_hat=r.p_hat,
                         ci95=r.ci95, p_analytic=r.p_analytic, deviation=r.deviation,
                         sigma=r.sigma, erasure_mode=r.erasure_mode,
                         scheme=r.scheme_descriptor))
    emit(args, {"M": p.M, "n": p.n, "k": p.k, "d": p.d, "trials": args.trials,
                "eps": [str(e) for e in eps], "erasure_mode": args.erasure_mode},
         rows, single=len(rows) == 1)
    return EXIT_OK


def cmd_validate(args) -> int:
    from .validation import run_all

    checks = run_all(quick=args.quick, trials=args.trials, seed=args.seed)
    rows = [{"criterion": c.criterion, "check": c.name, "expected": c.expected,
             "observed": c.observed, "tolerance": c.tolerance,
             "status": "PASS" if c.passed else "FAIL"} for c in checks]
    emit(args, {"quick": args.quick, "trials": args.trials}, rows)
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed", file=sys.stderr)
    return EXIT_VALIDATION if failed else EXIT_OK


COMMANDS = {
    "tradeoff": (cmd_tradeoff, "minimal storage vs repair bandwidth under erasure"),
    "point": (cmd_point, "MSR and MBR operating points"),
    "psucc": (cmd_psucc, "success probability with d' helpers"),
    "psucc-rep": (cmd_psucc_rep, "success probability with repeated fragments"),
    "psucc-2layer": (cmd_psucc_2layer, "success probability of a two-layer allocation"),
    "opt-helpers": (cmd_opt_helpers, "best (d, d') under a bandwidth cap, swept over eps"),
    "opt-storage": (cmd_opt_storage, "best two-layer allocation under storage and bandwidth caps"),
    "region-map": (cmd_region_map, "which base family wins over a budget grid"),
    "simulate": (cmd_simulate, "Monte-Carlo repair over GF(2^8)"),
    "validate": (cmd_validate, "run the acceptance checks"),
}


def build_parser() -> argparse.ArgumentParser:
    from .validation import DEFAULT_SEED, DEFAULT_TRIALS

    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=10)
    common.add_argument("--k", type=int, default=5)
    common.add_argument("--d", type=int, default=None)
    common.add_argument("--d-prime", type=int, default=None)
    common.add_argument("--M", type=_rational, help="file size (rational); default 1, or 10 for opt-helpers")
    common.add_argument("--eps", type=_rational, action="append",
                        help="erasure probability; repeat for several")
    common.add_argument("--gamma-th", type=_rational)
    common.add_argument("--alpha-th", type=_rational)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--erasure-mode", choices=("batch", "fragment"), default="batch")
    common.add_argument("--grid", type=int, default=None,
                        help="resolution: tradeoff samples or beta2 grid steps")
    common.add_argument("--quick", action="store_true", help="validate: skip Monte-Carlo")

    parser = _Parser(prog="erasure-repair", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name in ("tradeoff", "region-map"):
            sp.add_argument("--gamma-min", type=_rational)
            sp.add_argument("--gamma-max", type=_rational)
        if name == "region-map":
            sp.add_argument("--alpha-min", type=_rational)
            sp.add_argument("--alpha-max", type=_rational)
            sp.add_argument("--cells", type=int, default=8, help="grid points per budget axis")
        if name == "psucc-rep":
            sp.add_argument("--counts", type=_counts, help="comma-separated copies per fragment")
        if name in ("psucc-2layer", "simulate"):
            for field in ("alpha1", "alpha2", "beta1", "beta2"):
                sp.add_argument(f"--{field}", type=_rational)
        if name in ("opt-helpers", "simulate"):
            sp.add_argument("--family", choices=("MSR", "MBR"), default="MBR")
    return parser


# Per-command defaults.  Not set on the subparsers: parent actions are shared,
# so set_defaults on one subcommand would leak into all of them.
DEFAULT_M = {"opt-helpers": Fraction(10)}
DEFAULT_D = {"tradeoff": 9, "region-map": 9}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.M is None:
        args.M = DEFAULT_M.get(args.command, Fraction(1))
    if args.d is None:
        args.d = DEFAULT_D.get(args.command)
    if args.grid is None:
        args.grid = 200 if args.command == "tradeoff" else DEFAULT_GRID
    if args.trials < 1:
        parser.error("--trials must be >= 1")
    if args.eps:
        for e in args.eps:
            if not 0 <= e < 1:
                parser.error(f"--eps must lie in [0, 1), got {e}")
    try:
        return COMMANDS[args.command][0](args)
    except (UsageError, ParameterError) as exc:
        print(f"erasure-repair {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command line front-end.

    cubicdirac solve    --mass 1 --omega 0 --spin 1
    cubicdirac bubble   --spin 1,2,3 --delta 2
    cubicdirac dual-gap --mass 1 --omega 0.5 --spin 1
    cubicdirac decay    --mass 1 --omega 0.9 --spin 1
    cubicdirac greens
    cubicdirac report

Exit status: 0 when every asserted entry passes, 2 when one fails, 1 on error.
"""
from __future__ import annotations

import argparse
import csv
import platform
import sys
import time
from typing import List, Optional

import numpy as np

from . import __version__
from .checks import (bubble_report, decay_identity_report, greens_report, integral_report,
                     shooting_for_grid, solve_report)
from .config import RunConfig, build_config, load_toml
from .domain import PhysParams, RadialProfile, make_params
from .errors import DiracError
from .report import DiagnosticsReport
from .shooting import solve_bound_state
from .spectral import dual_gap_report

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


def write_profile_csv(path: str, profile: RadialProfile) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["r", "u", "v"])
        for r, u, v in zip(profile.r, profile.u, profile.v):
            w.writerow([f"{r:.17g}", f"{u:.17g}", f"{v:.17g}"])


def read_profile_csv(path: str) -> RadialProfile:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return RadialProfile(data[:, 0], data[:, 1], data[:, 2])


def _params(cfg: RunConfig, solver_grade: bool = True) -> PhysParams:
    return make_params(cfg.m, cfg.omega, cfg.spin, solver_grade=solver_grade)


def _solve(cfg: RunConfig, extent: Optional[float] = None):
    params = _params(cfg)
    scfg = cfg.shooting if extent is None else shooting_for_grid(cfg.shooting, params, extent)
    return params, solve_bound_state(params, scfg)


def cmd_solve(cfg: RunConfig, out: List[str]) -> DiagnosticsReport:
    params, profile = _solve(cfg)
    rep = solve_report(profile, params)
    rep.extend(decay_identity_report(profile, params), prefix="decay.")
    path = f"{cfg.out_prefix}_profile.csv"
    write_profile_csv(path, profile)
    out.append(path)
    return rep


def cmd_bubble(cfg: RunConfig, out: List[str]) -> DiagnosticsReport:
    return bubble_report(cfg.S, cfg.m, cfg.omega, cfg.delta)


def cmd_dual_gap(cfg: RunConfig, out: List[str]) -> DiagnosticsReport:
    return dual_gap_report(_params(cfg), cfg.eps, cfg.dual_grid.n, cfg.dual_grid.L)


def cmd_decay(cfg: RunConfig, out: List[str]) -> DiagnosticsReport:
    params, profile = _solve(cfg)
    return decay_identity_report(profile, params)


def cmd_greens(cfg: RunConfig, out: List[str]) -> DiagnosticsReport:
    params = make_params(cfg.m, cfg.omega, cfg.spin, solver_grade=False)
    return greens_report(params)


def cmd_report(cfg: RunConfig, out: List[str]) -> DiagnosticsReport:
    rep = DiagnosticsReport(title="full report")
    rep.extend(bubble_report(cfg.S, cfg.m, cfg.omega, cfg.delta), prefix="bubble.")
    params, profile = _solve(cfg, extent=cfg.grid.L)
    rep.extend(solve_report(profile, params), prefix="solve.")
    rep.extend(decay_identity_report(profile, params), prefix="decay.")
    rep.extend(integral_report(profile, params, cfg.grid.n, cfg.grid.L), prefix="integral.")
    rep.extend(dual_gap_report(params, cfg.eps, cfg.dual_grid.n, cfg.dual_grid.L),
               prefix="dual.")
    rep.extend(greens_report(params), prefix="greens.")
    path = f"{cfg.out_prefix}_profile.csv"
    write_profile_csv(path, profile)
    out.append(path)
    return rep


COMMANDS = {
    "solve": cmd_solve,
    "bubble": cmd_bubble,
    "dual-gap": cmd_dual_gap,
    "decay": cmd_decay,
    "greens": cmd_greens,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubicdirac",
                                 description="Bound states and checks for the cubic Dirac equation")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="TOML configuration file (flags override it)")
        p.add_argument("--mass", type=float)
        p.add_argument("--omega", type=float)
        p.add_argument("--spin", help="angular index; bubble accepts a comma-separated list")
        p.add_argument("--rmax", type=float, help="shooting truncation radius R")
        p.add_argument("--grid-n", type=int, dest="grid_n")
        p.add_argument("--extent", type=float, help="grid extent L")
        p.add_argument("--eps", help="comma-separated concentration parameters")
        p.add_argument("--delta", help="comma-separated scaling factors (bubble)")
        p.add_argument("--tol", type=float, help="integrator relative tolerance")
        p.add_argument("--out-prefix", dest="out_prefix")
        p.add_argument("--quiet", action="store_true")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        data = load_toml(args.config) if args.config else {}
        over = {k: getattr(args, k) for k in ("mass", "omega", "spin", "rmax", "grid_n",
                                              "extent", "eps", "delta", "tol", "out_prefix")}
        cfg = build_config(data, over)
        if args.command != "bubble" and len(cfg.S) != 1:
            raise ValueError(f"{args.command} takes a single --spin")
        outputs: List[str] = []
        rep = COMMANDS[args.command](cfg, outputs)
        rep.meta.update({
            "command": args.command,
            "config": cfg.to_dict(),
            "config_hash": cfg.digest(),
            "version": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "elapsed_s": time.perf_counter() - t0,
        })
        path = f"{cfg.out_prefix}_{args.command}.json"
        rep.meta["outputs"] = outputs + [path]
        with open(path, "w") as fh:
            fh.write(rep.to_json())
            fh.write("\n")
    except (DiracError, ValueError, OSError, KeyError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if not args.quiet:
        for line in rep.summary_lines():
            print(line)
        print(f"wrote {', '.join(rep.meta['outputs'])}")
    return EXIT_OK if rep.all_passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

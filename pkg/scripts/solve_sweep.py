"""Bound states over a frequency sweep: amplitude, action, tail rate, nodes.

    python3 scripts/solve_sweep.py --spin 1 --omega 0,0.3,0.6,0.9
    python3 scripts/solve_sweep.py --spin -2 --omega 0.5 --csv sweep.csv
"""
import argparse
import csv
import time

from cubicdirac import PhysParams, ShootingConfig, solve_bound_state
from cubicdirac.bubbles import bubble_threshold
from cubicdirac.decay import tail_fit
from cubicdirac.shooting import node_count


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mass", type=float, default=1.0)
    ap.add_argument("--omega", default="0,0.3,0.6,0.9")
    ap.add_argument("--spin", type=int, default=1)
    ap.add_argument("--dr", type=float, default=ShootingConfig.dr)
    ap.add_argument("--csv", help="also write the table here")
    args = ap.parse_args()

    cfg = ShootingConfig(dr=args.dr)
    rows = []
    header = ("omega", "mu", "c_star", "action", "threshold", "rate", "rate_err", "nodes_u",
              "nodes_v", "residual_rms", "seconds")
    print(" ".join(f"{h:>12}" for h in header))
    for w in (float(x) for x in args.omega.split(",")):
        params = PhysParams(args.mass, w, args.spin)
        t0 = time.perf_counter()
        prof = solve_bound_state(params, cfg)
        dt = time.perf_counter() - t0
        fit = tail_fit(prof)
        nu, nv = node_count(prof)
        row = (w, params.mu, prof.meta["c_star"], prof.meta["action"],
               bubble_threshold(args.spin), fit.rate, abs(fit.rate - params.mu) / params.mu,
               nu, nv, prof.meta["residual_rms"], dt)
        rows.append(row)
        print(" ".join(f"{x:>12d}" if isinstance(x, int) else f"{x:>12.6g}" for x in row))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)


if __name__ == "__main__":
    main()

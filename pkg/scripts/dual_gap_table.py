"""J(phi_eps) against the bubble level for the test-spinor construction,
including weakly concentrated eps where the gap closes.

    python3 scripts/dual_gap_table.py
    python3 scripts/dual_gap_table.py --case 1,0.5,-2 --eps 0.05,0.1,0.2,0.5,1 --n 1024
"""
import argparse

from cubicdirac import PhysParams
from cubicdirac.spectral import dual_gap_report

DEFAULT_CASES = ("1,0,1", "1,0.5,1", "1,0.5,-2")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--case", action="append", help="m,omega,S (repeatable)")
    ap.add_argument("--eps", default="0.05,0.1,0.2,0.5,1")
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--L", type=float, default=12.0)
    args = ap.parse_args()

    eps = [float(e) for e in args.eps.split(",")]
    for case in args.case or DEFAULT_CASES:
        m, w, S = case.split(",")
        rep = dual_gap_report(PhysParams(float(m), float(w), int(S)), eps, args.n, args.L)
        print(f"\nm={m} omega={w} S={S}  M={rep.value('M'):.6g}  branch={rep.value('branch')}  "
              f"level={rep.value('threshold'):.6f}")
        for e in rep.entries:
            if e.name.startswith("J["):
                val = "skipped" if e.value is None else f"{e.value:.6f}"
                print(f"  {e.name:<24} {val}")
        print(f"  margin {rep.value('margin'):.6f}  ({'PASS' if rep.all_passed else 'FAIL'})")


if __name__ == "__main__":
    main()

"""Sweep the brute-force enumeration against the residue engine.

Runs on the projective line (the only curve the enumeration covers) over a
range of twist degrees and field sizes, printing one line per table cell.
Useful for probing windows beyond what the test suite pins down; expect the
enumeration to dominate the runtime as r and d grow.

    python3 scripts/oracle_sweep.py --lmin -2 --lmax 0 --q 2 3 --rmax 2 --dmax 4
"""

import argparse
import time

from higgscount.curve import CurveModel
from higgscount.engine import nil_bundle_series
from higgscount.oracle import DEFAULT_CAP, oracle_series
from higgscount.series import Window


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lmin", type=int, default=-2, help="smallest twist degree")
    parser.add_argument("--lmax", type=int, default=0, help="largest twist degree (<= 0)")
    parser.add_argument("--q", type=int, nargs="+", default=[2, 3], help="field sizes")
    parser.add_argument("--rmax", type=int, default=2)
    parser.add_argument("--dmax", type=int, default=4)
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="abort threshold for a single enumeration")
    args = parser.parse_args()

    window = Window(args.rmax, args.dmax)
    curve = CurveModel(0)
    mismatches = 0
    for l in range(args.lmin, args.lmax + 1):
        start = time.time()
        series = nil_bundle_series(l, curve, window)
        for q0 in args.q:
            truth = oracle_series(l, q0, window, cap=args.cap)
            for (r, d), want in sorted(truth.items()):
                got = series.get(r, d).specialize(q0)
                ok = got == want
                mismatches += not ok
                tag = "ok " if ok else "BAD"
                print(f"{tag} l={l:3d} q0={q0} (r,d)=({r},{d})  "
                      f"engine={got}  enumeration={want}")
        print(f"# l={l} finished in {time.time() - start:.1f}s")
    print(f"# mismatches: {mismatches}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())

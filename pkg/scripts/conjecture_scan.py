"""Scan the degree-independence conjecture for stabilized DT invariants.

For each genus and twist degree the scan stabilizes Omega on a window large
enough to cover one full period per rank and reports the stable value when
the rows are constant in d.  Values are compared after imposing the zeta
functional equation on the Weil symbols, since constancy is a statement
about actual curves.  Non-constant rows print their witnesses; see the
triage notes in the README before reading one as a counterexample.

    python3 scripts/conjecture_scan.py --genus 0 1 2 --rmax 2 --above 2
"""

import argparse

from higgscount.curve import CurveModel
from higgscount.invariants import compute_table
from higgscount.series import Window


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--genus", type=int, nargs="+", default=[0, 1, 2])
    parser.add_argument("--rmax", type=int, default=2)
    parser.add_argument("--above", type=int, default=2,
                        help="scan twist degrees 2g-2 .. 2g-2+above")
    args = parser.parse_args()

    broken = 0
    for genus in args.genus:
        edge = 2 * genus - 2
        for l in range(edge, edge + args.above + 1):
            canonical = l == edge
            # stabilization reads (r,d) at a representative <= C(r,2)l + r
            dmax = max(args.rmax, 2,
                       args.rmax * (args.rmax - 1) // 2 * l + args.rmax)
            window = Window(args.rmax, dmax)
            table = compute_table("omega", l, canonical, CurveModel(genus), window)
            for r in range(1, args.rmax + 1):
                seen = {table.entries[(r, d)].apply_functional_equation().render()
                        for d in range(dmax + 1)}
                tag = " (K)" if canonical else ""
                if len(seen) == 1:
                    print(f"genus {genus} l={l:2d}{tag} r={r}: Omega = {seen.pop()}")
                else:
                    broken += 1
                    print(f"genus {genus} l={l:2d}{tag} r={r}: "
                          f"NOT CONSTANT, {len(seen)} values over d <= {dmax}")
                    for val in sorted(seen):
                        print(f"    {val}")
    if broken:
        print(f"# {broken} non-constant rows; triage before reporting")
    return 1 if broken else 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Batch-export invariant tables for one twist across several kinds.

Writes one file per kind into the output directory, in JSON or CSV.  With
--q0 and --zeta-coeffs the tables also carry exact numeric specializations
at a concrete curve (the coefficients are those of the zeta numerator).

    python3 scripts/export_tables.py --genus 1 --canonical --rmax 2 --dmax 4 \
        --kinds omega h volume --format csv --outdir tables/
"""

import argparse
import pathlib

from higgscount.curve import CurveModel
from higgscount.invariants import KINDS, compute_table
from higgscount.series import Window


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--genus", type=int, default=0)
    parser.add_argument("--deg", type=int, default=None, help="twist degree l")
    parser.add_argument("--canonical", action="store_true")
    parser.add_argument("--rmax", type=int, default=2)
    parser.add_argument("--dmax", type=int, default=4)
    parser.add_argument("--kinds", nargs="+", default=["omega", "h", "volume"],
                        choices=list(KINDS))
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--outdir", type=pathlib.Path, default=pathlib.Path("tables"))
    parser.add_argument("--q0", type=int, default=None)
    parser.add_argument("--zeta-coeffs", type=int, nargs="+", default=None,
                        help="integer coefficients of the zeta numerator")
    args = parser.parse_args()

    l = args.deg
    if l is None:
        if not args.canonical:
            parser.error("missing --deg (or use --canonical)")
        l = 2 * args.genus - 2
    if args.q0 is not None or args.zeta_coeffs is not None:
        if args.q0 is None or args.zeta_coeffs is None:
            parser.error("numeric mode needs both --q0 and --zeta-coeffs")
        curve = CurveModel(args.genus, numerator_coeffs=tuple(args.zeta_coeffs),
                           q0=args.q0)
    else:
        curve = CurveModel(args.genus)
    numeric = curve.specialize if curve.numeric else None
    window = Window(args.rmax, args.dmax)

    args.outdir.mkdir(parents=True, exist_ok=True)
    for kind in args.kinds:
        table = compute_table(kind, l, args.canonical, curve, window)
        if args.format == "json":
            text = table.to_json_text(numeric=numeric)
        else:
            text = table.to_csv_text(numeric=numeric)
        path = args.outdir / f"{kind}_g{args.genus}_l{l}.{args.format}"
        path.write_text(text)
        print(f"wrote {path} ({len(table.entries)} entries)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

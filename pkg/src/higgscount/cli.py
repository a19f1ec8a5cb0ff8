"""Command-line front end: compute invariant tables, run verification suites.

Exit codes: 0 ok, 1 config error, 2 unsupported regime, 3 verification
failure.  Output is deterministic for a fixed config: keys are sorted,
scalars rendered canonically, and worker count only affects wall time.
"""

import json
import random
import sys
from dataclasses import dataclass

import click

from .curve import CurveModel, pic_zero
from .engine import nil_bundle_series
from .errors import EnumerationCapExceeded, UnsupportedRegime, WindowTooSmall
from .invariants import (
    KINDS,
    compute_table,
    omega_from_i,
    omega_plus_for_divisor,
)
from .oracle import DEFAULT_CAP, oracle_breakdown, oracle_series
from .partitions import ChernClass, chi, lam_of_tuple, rho, rho0
from .scalars import ScalarExpr
from .series import GradedSeries, Window

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_UNSUPPORTED = 2
EXIT_VERIFY = 3

MULTI_SCHEMA = "higgscount-tables/1"


@dataclass(frozen=True)
class JobConfig:
    """Everything a compute run depends on; validation is all here."""

    genus: int
    l: int
    canonical: bool = False
    rmax: int = 2
    dmax: int = 4
    kinds: tuple = ("omega",)
    fmt: str = "json"
    out: str = None
    q0: int = None
    zeta_coeffs: tuple = None
    cap: int = DEFAULT_CAP
    workers: int = 1

    def validate(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if self.rmax < 1 or self.dmax < 0:
            raise ValueError("window needs rmax >= 1 and dmax >= 0")
        bad = [k for k in self.kinds if k not in KINDS]
        if bad:
            raise ValueError(f"unknown kind(s) {', '.join(bad)}; choose from {', '.join(KINDS)}")
        if not self.kinds:
            raise ValueError("need at least one --kind")
        if (self.q0 is None) != (self.zeta_coeffs is None):
            raise ValueError("numeric mode needs both --q0 and --zeta-coeffs")
        if self.canonical and self.l != 2 * self.genus - 2:
            raise ValueError(
                f"canonical divisor has degree 2g-2 = {2 * self.genus - 2}, got --deg {self.l}"
            )
        if self.fmt not in ("json", "csv"):
            raise ValueError("format must be json or csv")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.cap < 1:
            raise ValueError("cap must be >= 1")

    def curve(self):
        return CurveModel(self.genus, self.zeta_coeffs, self.q0)

    def window(self):
        return Window(self.rmax, self.dmax)


def _fail(code, message):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _parse_coeffs(text):
    if text is None:
        return None
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse zeta coefficients {text!r}; expected e.g. 1,-3,2")


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
def main():
    """Exact counts of twisted Higgs pairs on curves over finite fields."""


@main.command()
@click.option("--genus", type=int, required=True, help="genus of the base curve")
@click.option("--deg", "l", type=int, default=None, help="degree l of the twisting divisor")
@click.option("--canonical", type=click.BOOL, is_flag=False, flag_value="true", default=False,
              help="twist by the canonical divisor (degree 2g-2)")
@click.option("--rmax", type=int, default=2, help="largest rank in the window")
@click.option("--dmax", type=int, default=4, help="largest degree in the window")
@click.option("--kind", "kinds", multiple=True, default=("omega",),
              help="table kind(s): " + ", ".join(KINDS))
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--q0", type=int, default=None, help="field size for the numeric column")
@click.option("--zeta-coeffs", default=None,
              help="comma-separated zeta numerator coefficients c_0,...,c_{2g}")
@click.option("--workers", type=int, default=1, help="threads for per-stratum precomputation")
@click.option("--cap", type=int, default=DEFAULT_CAP, help="brute-force enumeration cap")
def compute(genus, l, canonical, rmax, dmax, kinds, fmt, out, q0, zeta_coeffs, workers, cap):
    """Compute invariant tables and export them as JSON or CSV."""
    try:
        coeffs = _parse_coeffs(zeta_coeffs)
        if l is None:
            if not canonical:
                raise ValueError("missing --deg (or use --canonical)")
            l = 2 * genus - 2
        config = JobConfig(genus, l, canonical, rmax, dmax, tuple(kinds), fmt, out,
                           q0, coeffs, cap, workers)
        config.validate()
        curve = config.curve()
        window = config.window()
    except ValueError as exc:
        _fail(EXIT_CONFIG, exc)
    numeric = curve.specialize if curve.numeric else None
    try:
        if config.workers > 1:
            # warm the per-stratum cache in parallel; assembly stays ordered
            nil_bundle_series(min(config.l, 0), curve, window, workers=config.workers)
        tables = [compute_table(kind, config.l, config.canonical, curve, window)
                  for kind in config.kinds]
    except UnsupportedRegime as exc:
        _fail(EXIT_UNSUPPORTED, exc)
    except (WindowTooSmall, EnumerationCapExceeded) as exc:
        _fail(EXIT_CONFIG, exc)
    if config.fmt == "json":
        if len(tables) == 1:
            text = tables[0].to_json_text(numeric=numeric)
        else:
            wrapped = {
                "schema": MULTI_SCHEMA,
                "tables": [t.to_json_dict(numeric=numeric) for t in tables],
            }
            text = json.dumps(wrapped, indent=2) + "\n"
    else:
        chunks = [tables[0].to_csv_text(numeric=numeric)]
        for t in tables[1:]:
            body = t.to_csv_text(numeric=numeric).split("\n", 1)[1]
            chunks.append(body)
        text = "".join(chunks)
    _emit(text, config.out)


@main.command()
@click.option("--suite", type=click.Choice(["oracle", "identities", "conjecture"]), required=True)
@click.option("--genus", type=int, default=0)
@click.option("--q", "q0", type=int, default=2, help="field size for enumeration checks")
@click.option("--deg", "l", type=int, default=None)
@click.option("--canonical", type=click.BOOL, is_flag=False, flag_value="true", default=False)
@click.option("--rmax", type=int, default=2)
@click.option("--dmax", type=int, default=4)
@click.option("--trials", type=int, default=100, help="randomized checks per identity")
@click.option("--seed", type=int, default=0)
@click.option("--cap", type=int, default=DEFAULT_CAP)
def verify(suite, genus, q0, l, canonical, rmax, dmax, trials, seed, cap):
    """Run a verification suite and report per-check pass/fail lines."""
    if l is None:
        l = 2 * genus - 2 if canonical else 0
    if canonical and l != 2 * genus - 2:
        _fail(EXIT_CONFIG, f"canonical divisor has degree 2g-2 = {2 * genus - 2}, got --deg {l}")
    window = Window(rmax, dmax)
    try:
        if suite == "oracle":
            checks = _oracle_suite(q0, l, window, cap)
        elif suite == "identities":
            checks = _identities_suite(genus, window, trials, seed)
        else:
            checks = _conjecture_suite(genus, l, canonical, window)
    except (UnsupportedRegime,) as exc:
        _fail(EXIT_UNSUPPORTED, exc)
    except (ValueError, WindowTooSmall, EnumerationCapExceeded) as exc:
        _fail(EXIT_CONFIG, exc)
    failed = False
    for name, ok, detail in checks:
        if ok:
            click.echo(f"PASS {name}")
        else:
            failed = True
            click.echo(f"FAIL {name}: {detail}")
    if failed and suite == "conjecture":
        click.echo(
            "note: a conjecture failure is either an engine defect or a genuine "
            "counterexample; rerun the oracle and identities suites before reporting it"
        )
    sys.exit(EXIT_VERIFY if failed else EXIT_OK)


def _oracle_suite(q0, l, window, cap):
    """Engine vs brute-force enumeration on the projective line."""
    if l > 0:
        raise UnsupportedRegime(f"enumeration oracle needs twist degree l <= 0, got {l}")
    curve = CurveModel(0)
    checks = []

    nil = nil_bundle_series(l, curve, window)
    truth = oracle_series(l, q0, window, nil_only=True, cap=cap)
    bad = []
    for (r, d), want in sorted(truth.items()):
        got = nil.get(r, d).specialize(q0)
        if got != want:
            bad.append((r, d, got, want))
    detail = ""
    if bad:
        r, d, got, want = bad[0]
        rows = oracle_breakdown(r, d, l, q0, nil_only=True, cap=cap)
        detail = (f"{len(bad)} mismatching entries, first at (r,d)=({r},{d}): "
                  f"engine {got}, enumeration {want}; per-splitting-type contributions "
                  + "; ".join(f"{a}: {num}/{den}" for a, num, den, _ in rows[:6]))
    checks.append((f"nil series vs enumeration (l={l}, q0={q0}, "
                   f"r<={window.rmax}, d<={window.dmax})", not bad, detail))

    a_plus = omega_from_i(nil_bundle_series(0, curve, window))
    scal = (ScalarExpr.one(0) - ScalarExpr.q_power(-1, 0)).inverse()
    recon = a_plus.scale(scal).pleth_exp()
    truth_all = oracle_series(0, q0, window, nil_only=False, cap=cap)
    bad = []
    for (r, d), want in sorted(truth_all.items()):
        got = recon.get(r, d).specialize(q0)
        if got != want:
            bad.append((r, d, got, want))
    detail = ""
    if bad:
        r, d, got, want = bad[0]
        rows = oracle_breakdown(r, d, 0, q0, nil_only=False, cap=cap)
        detail = (f"{len(bad)} mismatching entries, first at (r,d)=({r},{d}): "
                  f"reconstruction {got}, enumeration {want}; contributions "
                  + "; ".join(f"{a}: {num}/{den}" for a, num, den, _ in rows[:6]))
    checks.append((f"all-maps reconstruction vs enumeration (q0={q0}, "
                   f"r<={window.rmax}, d<={window.dmax})", not bad, detail))
    return checks


def _identities_suite(genus, window, trials, seed):
    """Symbolic identities: rho routes, Exp/Log, rank 1, canonical two-route."""
    rng = random.Random(seed)
    checks = []

    bad = None
    for _ in range(trials):
        s = rng.randint(1, 4)
        alphas = [ChernClass(rng.randint(0, 3), rng.randint(-5, 5)) for _ in range(s)]
        tl = rng.randint(-3, 3)
        tg = rng.randint(0, 2)
        direct = rho(tl, alphas, tg)
        chain = -sum(
            chi(alphas[i - 1].twist(-k * tl), alphas[j - 1].twist((1 - j) * tl), tg)
            for k in range(s)
            for i in range(k + 1, s + 1)
            for j in range(k + 2, s + 1)
        )
        lam = lam_of_tuple(alphas)
        corr = rho0(alphas, tg) + tl * (lam.size() ** 2 - lam.pairing()) // 2
        if not direct == chain == corr:
            bad = (tl, alphas, tg, direct, chain, corr)
            break
    checks.append((f"rho closed form vs chain sum vs correction ({trials} tuples)",
                   bad is None, f"witness {bad}" if bad else ""))

    g2 = 2 * genus
    small = Window(min(window.rmax, 3), min(window.dmax, 3))
    bad = None
    for _ in range(trials):
        f = _random_series(rng, g2, small)
        if not (f.pleth_exp().pleth_log() - f).is_zero():
            bad = f
            break
        h = _random_series(rng, g2, small)
        lhs = (f + h).pleth_exp()
        rhs = f.pleth_exp().mul(h.pleth_exp())
        if not (lhs - rhs).is_zero():
            bad = (f, h)
            break
    checks.append((f"plethystic Exp/Log roundtrip and additivity ({trials} series)",
                   bad is None, f"witness {bad}" if bad else ""))

    curve = CurveModel(genus)
    pic = pic_zero(curve)
    qm1 = ScalarExpr.q(g2) - ScalarExpr.one(g2)
    bad = None
    for tl in (0, -1, -2):
        nil = nil_bundle_series(tl, curve, Window(1, window.dmax))
        want = ScalarExpr.minus_v_power(-tl, g2) * pic * qm1.inverse()
        for d in range(window.dmax + 1):
            if not (nil.get(1, d) - want).is_zero():
                bad = (tl, d, nil.get(1, d).render())
                break
        if bad:
            break
    checks.append((f"rank-1 nil closed form (genus {genus}, l in 0,-1,-2)",
                   bad is None, f"witness {bad}" if bad else ""))

    omk = omega_plus_for_divisor(2 * genus - 2, True, curve, window)
    a_plus = omega_from_i(nil_bundle_series(0, curve, window))
    q = ScalarExpr.q(g2)
    bad = None
    for r, d in window.keys():
        if r < 1:
            continue
        if not (omk.get(r, d) - q * a_plus.get(r, d)).is_zero():
            bad = (r, d)
            break
    checks.append((f"canonical two-route: Omega+_K = q * A+ (genus {genus})",
                   bad is None, f"witness {bad}" if bad else ""))
    return checks


def _conjecture_suite(genus, l, canonical, window):
    """Degree-independence report for the stabilized DT invariants.

    Values are compared after imposing the zeta functional equation:
    the statement is about actual curves, and with free e-variables it
    can fail off that locus even when the engine is right.
    """
    curve = CurveModel(genus)
    table = compute_table("omega", l, canonical, curve, window)
    checks = []
    for r in range(1, window.rmax + 1):
        # canonical rendering, so distinct strings are distinct values
        seen = {table.entries[(r, d)].apply_functional_equation().render()
                for d in range(window.dmax + 1)}
        ok = len(seen) == 1
        detail = "" if ok else ("distinct values over d: " + " | ".join(sorted(seen)))
        checks.append((f"Omega(l={l}, r={r}) constant in d (genus {genus}, "
                       f"d<={window.dmax})", ok, detail))
    return checks


def _random_series(rng, g2, window):
    """Random polynomial-coefficient series with zero constant term."""
    coeffs = {}
    for r, d in window.keys():
        if (r, d) == (0, 0) or rng.random() < 0.3:
            continue
        val = ScalarExpr.zero(g2)
        for _ in range(rng.randint(1, 2)):
            term = ScalarExpr.coerce(rng.randint(-3, 3), g2)
            term = term * ScalarExpr.v_power(rng.randint(0, 2), g2)
            if g2:
                term = term * ScalarExpr.e(rng.randint(1, g2), g2) ** rng.randint(0, 1)
            val = val + term
        coeffs[(r, d)] = val
    return GradedSeries(g2, window, coeffs)


if __name__ == "__main__":
    main()

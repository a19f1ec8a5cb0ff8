"""Wall-crossing pipeline: DT-style invariants and moduli volumes.

The chain is

    nil-pair series  --(q-1)*Log-->  Omega+  --slope-wise Exp-->  H+
        --periodicity past the stability bound-->  Omega, H
        --sign-normalized rigidification-->  moduli volumes.

Everything is keyed by the twist degree l = deg D only; the canonical
divisor is distinguished by a flag because degree 2g-2 alone does not
determine whether the D = K shortcut applies.
"""

import csv
import io
import json
from dataclasses import dataclass, field

from .engine import nil_bundle_series
from .errors import UnsupportedRegime, WindowTooSmall
from .scalars import ScalarExpr

KINDS = ("inil", "iplus", "omegaplus", "hplus", "omega", "h", "aplus", "volume")

# display names for reports; the slug is the canonical identifier
KIND_LABELS = {
    "inil": "I+_nil",
    "iplus": "I+",
    "omegaplus": "Omega+",
    "hplus": "H+",
    "omega": "Omega",
    "h": "H",
    "aplus": "A+",
    "volume": "moduli-volume",
}

STABLE = "stable-region"
EXTENDED = "extended-by-periodicity"

JSON_SCHEMA = "higgscount-table/1"


def omega_from_i(i_series):
    """(q-1) * plethystic Log of a series with constant term 1."""
    g2 = i_series.g2
    qm1 = ScalarExpr.q(g2) - ScalarExpr.one(g2)
    return i_series.pleth_log().scale(qm1)


def h_plus_from_omega(omega_plus):
    """Slope-wise Exp of Omega+/(q-1); input needs zero constant term."""
    if not omega_plus.get(0, 0).is_zero():
        raise ValueError("Omega+ series must have zero constant term")
    return omega_plus.slope_exp_all()


def omega_plus_for_divisor(l, is_canonical, curve, window):
    """Omega+ for a twist of degree l, via the dual nil-pair series.

    Degrees above 2g-2 route through the twist of degree 2g-2-l; the
    canonical divisor itself picks up an extra factor of q relative to
    the untwisted nil-pair series.  Degree 2g-2 without the canonical
    flag has no route, and lower degrees are out of scope.
    """
    edge = 2 * curve.genus - 2
    if is_canonical and l != edge:
        raise ValueError(f"canonical divisor has degree {edge}, got l={l}")
    if l > edge:
        return omega_from_i(nil_bundle_series(edge - l, curve, window))
    if l == edge:
        if not is_canonical:
            raise UnsupportedRegime(
                "pipeline has no route for non-canonical divisors of degree 2g-2"
            )
        base = omega_from_i(nil_bundle_series(0, curve, window))
        return base.scale(ScalarExpr.q(curve.g2))
    raise UnsupportedRegime(f"unsupported divisor degree {l} < 2g-2 = {edge}")


def a_plus_from_nil(curve, window):
    """Indecomposable-bundle counts A+ as a table (twist degree 0)."""
    series = omega_from_i(nil_bundle_series(0, curve, window))
    return series_to_table(series, "aplus", 0, curve.genus, window)


def i_plus_from_omega(omega_plus):
    """Reconstruct the full pair-count series: Exp(Omega+/(q-1))."""
    g2 = omega_plus.g2
    inv = (ScalarExpr.q(g2) - ScalarExpr.one(g2)).inverse()
    return omega_plus.scale(inv).pleth_exp()


def _stable_rep(r, d, l):
    """Smallest d' >= 0 with d' = d (mod r) and d' > C(r,2)*l.

    May overflow the window; the caller decides whether that is an error.
    """
    bound = r * (r - 1) // 2 * l
    lo = max(0, bound + 1)
    return lo + (d - lo) % r


def stabilize_and_extend(plus_table, window):
    """Turn an Omega+ or H+ table into Omega or H via periodicity.

    Each (r,d) is read at its smallest stable representative; entries
    whose representative is d itself are tagged stable-region, the rest
    extended-by-periodicity.  If any representative overflows the
    window the call fails, naming the d_max that would have sufficed.
    """
    kind = {"omegaplus": "omega", "hplus": "h"}.get(plus_table.kind)
    if kind is None:
        raise ValueError(f"cannot stabilize a table of kind {plus_table.kind!r}")
    l = plus_table.l
    entries, provenance = {}, {}
    needed = window.dmax
    for r, d in window.keys():
        if r < 1:
            continue
        dp = _stable_rep(r, d, l)
        if dp > window.dmax:
            needed = max(needed, dp)
            continue
        entries[(r, d)] = plus_table.entries[(r, dp)]
        provenance[(r, d)] = STABLE if dp == d else EXTENDED
    if needed > window.dmax:
        raise WindowTooSmall(
            f"stabilization of {plus_table.kind} at l={l} needs d_max >= {needed},"
            f" window has {window.dmax}",
            needed,
        )
    return InvariantTable(l, plus_table.genus, kind, entries, provenance)


def moduli_volume(h_table, l=None):
    """Volumes [M(r,d)] = (-v)^(l r^2) * (q-1) * H(r,d).

    The (q-1) removes the global scaling-automorphism stack factor; the
    sign-normalized half-power of q clears the symplectic shift.
    """
    if h_table.kind != "h":
        raise ValueError(f"moduli volumes need an H table, got {h_table.kind!r}")
    if l is None:
        l = h_table.l
    elif l != h_table.l:
        raise ValueError(f"table was built for l={h_table.l}, got l={l}")
    g2 = 2 * h_table.genus
    qm1 = ScalarExpr.q(g2) - ScalarExpr.one(g2)
    entries = {
        (r, d): ScalarExpr.minus_v_power(l * r * r, g2) * qm1 * val
        for (r, d), val in h_table.entries.items()
    }
    return InvariantTable(l, h_table.genus, "volume", entries, dict(h_table.provenance))


def series_to_table(series, kind, l, genus, window, provenance=None):
    """Materialize the rank >= 1 window of a series as a full-grid table."""
    if kind not in KINDS:
        raise ValueError(f"unknown table kind {kind!r}")
    entries = {(r, d): series.get(r, d) for r, d in window.keys() if r >= 1}
    prov = {key: STABLE for key in entries} if provenance is None else dict(provenance)
    return InvariantTable(l, genus, kind, entries, prov)


@dataclass
class InvariantTable:
    """One invariant kind on a (rank, degree) grid, with provenance.

    Entries are exact scalars; provenance records whether a value was
    computed at its own (r,d) or filled in through d -> d+r periodicity.
    Tables list ranks >= 1 only; torsion components stay inside the
    series algebra.
    """

    l: int
    genus: int
    kind: str
    entries: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown table kind {self.kind!r}")
        for key in self.entries:
            r, d = key
            if r < 1 or d < 0:
                raise ValueError(f"table keys need rank >= 1 and degree >= 0, got {key}")
            self.provenance.setdefault(key, STABLE)

    @property
    def label(self):
        return KIND_LABELS[self.kind]

    def sorted_keys(self):
        return sorted(self.entries)

    def check_periodicity(self):
        """Triples (r, d, d+r) where present Omega/H entries disagree."""
        if self.kind not in ("omega", "h", "volume"):
            raise ValueError(f"{self.kind!r} tables carry no periodicity claim")
        breaks = []
        for (r, d), val in sorted(self.entries.items()):
            other = self.entries.get((r, d + r))
            if other is not None and not (val - other).is_zero():
                breaks.append((r, d, d + r))
        return breaks

    # -- export -------------------------------------------------------

    def to_json_dict(self, numeric=None):
        rows = []
        for r, d in self.sorted_keys():
            row = {
                "r": r,
                "d": d,
                "value": self.entries[(r, d)].render(),
                "provenance": self.provenance[(r, d)],
            }
            if numeric is not None:
                row["numeric"] = str(numeric(self.entries[(r, d)]))
            rows.append(row)
        return {
            "schema": JSON_SCHEMA,
            "kind": self.kind,
            "l": self.l,
            "genus": self.genus,
            "entries": rows,
        }

    def to_json_text(self, numeric=None):
        return json.dumps(self.to_json_dict(numeric), indent=2) + "\n"

    def to_csv_text(self, numeric=None):
        buf = io.StringIO()
        writer = csv.writer(buf, quoting=csv.QUOTE_ALL, lineterminator="\n")
        header = ["l", "r", "d", "kind", "value", "provenance"]
        if numeric is not None:
            header.append("numeric")
        writer.writerow(header)
        for r, d in self.sorted_keys():
            row = [
                self.l,
                r,
                d,
                self.kind,
                self.entries[(r, d)].render(),
                self.provenance[(r, d)],
            ]
            if numeric is not None:
                row.append(str(numeric(self.entries[(r, d)])))
            writer.writerow(row)
        return buf.getvalue()

    @staticmethod
    def from_json_dict(data):
        if data.get("schema") != JSON_SCHEMA:
            raise ValueError(f"unrecognized table schema {data.get('schema')!r}")
        genus = int(data["genus"])
        g2 = 2 * genus
        entries, provenance = {}, {}
        for row in data["entries"]:
            key = (int(row["r"]), int(row["d"]))
            entries[key] = ScalarExpr.parse(row["value"], g2)
            provenance[key] = row["provenance"]
        return InvariantTable(int(data["l"]), genus, data["kind"], entries, provenance)

    @staticmethod
    def from_json_text(text):
        return InvariantTable.from_json_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, InvariantTable):
            return NotImplemented
        if (self.l, self.genus, self.kind) != (other.l, other.genus, other.kind):
            return False
        if set(self.entries) != set(other.entries) or self.provenance != other.provenance:
            return False
        return all((self.entries[k] - other.entries[k]).is_zero() for k in self.entries)


def compute_table(kind, l, is_canonical, curve, window):
    """Build the requested kind for a twist of degree l on the window.

    This is the single entry point the CLI goes through; every kind is
    derived from the nil-pair series of the appropriate dual twist.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown table kind {kind!r}")
    genus = curve.genus
    if kind == "aplus":
        return a_plus_from_nil(curve, window)
    if kind == "inil":
        if l > 0:
            raise UnsupportedRegime(
                f"nilpotent pair counting needs twist degree l <= 0, got {l}"
            )
        series = nil_bundle_series(l, curve, window)
        return series_to_table(series, kind, l, genus, window)
    omega_plus = omega_plus_for_divisor(l, is_canonical, curve, window)
    if kind == "omegaplus":
        return series_to_table(omega_plus, kind, l, genus, window)
    if kind == "iplus":
        return series_to_table(i_plus_from_omega(omega_plus), kind, l, genus, window)
    h_plus = h_plus_from_omega(omega_plus)
    if kind == "hplus":
        return series_to_table(h_plus, kind, l, genus, window)
    plus_kind = "omegaplus" if kind == "omega" else "hplus"
    plus_series = omega_plus if kind == "omega" else h_plus
    plus_table = series_to_table(plus_series, plus_kind, l, genus, window)
    table = stabilize_and_extend(plus_table, window)
    if kind == "volume":
        return moduli_volume(table)
    return table

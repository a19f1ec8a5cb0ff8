"""Bigraded truncated power series over the scalar field.

Keys are (r, d) in Z>=0 x Z>=0 with r <= rmax, d <= dmax; r grades by rank
(variable w), d by degree (variable z).  The plethystic exponential twists by
Adams operations:

    Exp(f) = exp(sum_{n>=1} psi_n(f)/n),   psi_n: coeff -> adams(coeff, n),
                                           key (r, d) -> (n r, n d),

and Log is its inverse via Mobius inversion.  A slope slice holds the keys on
one ray d/r = theta; the torsion ray r = 0 counts as the slope-infinity slice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import ScalarExpr

TORSION_SLOPE = Fraction(-1)  # sentinel for the r = 0 ray; compares distinct


@dataclass(frozen=True)
class Window:
    rmax: int
    dmax: int

    def __post_init__(self):
        if self.rmax < 0 or self.dmax < 0:
            raise ValueError("window bounds must be nonnegative")

    def keys(self):
        for r in range(self.rmax + 1):
            for d in range(self.dmax + 1):
                yield (r, d)


def _mobius(n):
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


class GradedSeries:
    """Truncated series sum coeff[(r,d)] w^r z^d with ScalarExpr coefficients."""

    __slots__ = ("g2", "window", "coeffs")

    def __init__(self, g2, window, coeffs=None):
        self.g2 = g2
        self.window = window
        clean = {}
        for (r, d), c in (coeffs or {}).items():
            if r < 0 or d < 0 or r > window.rmax or d > window.dmax:
                raise ValueError(f"key ({r},{d}) outside window {window}")
            if not c.is_zero():
                clean[(r, d)] = c
        self.coeffs = clean

    @staticmethod
    def zero(g2, window):
        return GradedSeries(g2, window, {})

    @staticmethod
    def one(g2, window):
        return GradedSeries(g2, window, {(0, 0): ScalarExpr.one(g2)})

    def get(self, r, d):
        return self.coeffs.get((r, d), ScalarExpr.zero(self.g2))

    def is_zero(self):
        return not self.coeffs

    def _check(self, other):
        if not isinstance(other, GradedSeries):
            raise TypeError("expected a GradedSeries")
        if other.window != self.window:
            raise ValueError("truncation mismatch")
        if other.g2 != self.g2:
            raise ValueError("mixed curve-parameter contexts")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ScalarExpr.zero(self.g2)) + c
        return GradedSeries(self.g2, self.window, out)

    def __neg__(self):
        return GradedSeries(self.g2, self.window, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = ScalarExpr.coerce(s, self.g2)
        return GradedSeries(self.g2, self.window, {k: c * s for k, c in self.coeffs.items()})

    def mul(self, other):
        self._check(other)
        out = {}
        for (r1, d1), c1 in self.coeffs.items():
            for (r2, d2), c2 in other.coeffs.items():
                r, d = r1 + r2, d1 + d2
                if r > self.window.rmax or d > self.window.dmax:
                    continue
                key = (r, d)
                prod = c1 * c2
                out[key] = out.get(key, ScalarExpr.zero(self.g2)) + prod
        return GradedSeries(self.g2, self.window, out)

    def __mul__(self, other):
        if isinstance(other, GradedSeries):
            return self.mul(other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (
            self.g2 == other.g2 and self.window == other.window and self.coeffs == other.coeffs
        )

    def __hash__(self):
        raise TypeError("GradedSeries is unhashable")

    def __repr__(self):
        terms = ", ".join(f"({r},{d}): {c.render()}" for (r, d), c in sorted(self.coeffs.items()))
        return f"GradedSeries[{self.window.rmax},{self.window.dmax}]{{{terms}}}"

    # -- plethystic operations ------------------------------------------------

    def psi(self, n):
        """Adams operation: coefficients through adams(., n), keys scaled by n."""
        out = {}
        for (r, d), c in self.coeffs.items():
            rn, dn = n * r, n * d
            if rn > self.window.rmax or dn > self.window.dmax:
                continue
            out[(rn, dn)] = c.adams(n)
        return GradedSeries(self.g2, self.window, out)

    def _max_psi(self):
        """Largest n for which psi_n of some nonzero key lands in the window."""
        best = 1
        for (r, d) in self.coeffs:
            if r == 0 and d == 0:
                continue
            if r == 0:
                n = self.window.dmax // d
            elif d == 0:
                n = self.window.rmax // r
            else:
                n = min(self.window.rmax // r, self.window.dmax // d)
            best = max(best, n)
        return best

    def _exp(self):
        """Ordinary exp of a series with zero constant term, exact on window."""
        out = GradedSeries.one(self.g2, self.window)
        top = self.window.rmax + self.window.dmax
        power = GradedSeries.one(self.g2, self.window)
        fact = 1
        for k in range(1, top + 1):
            power = power.mul(self)
            if power.is_zero():
                break
            fact *= k
            out = out + power.scale(Fraction(1, fact))
        return out

    def _log(self):
        """Ordinary log of a series with constant term 1, exact on window."""
        h = self - GradedSeries.one(self.g2, self.window)
        out = GradedSeries.zero(self.g2, self.window)
        top = self.window.rmax + self.window.dmax
        power = GradedSeries.one(self.g2, self.window)
        for k in range(1, top + 1):
            power = power.mul(h)
            if power.is_zero():
                break
            out = out + power.scale(Fraction((-1) ** (k + 1), k))
        return out

    def pleth_exp(self):
        """Exp(f) = exp(sum psi_n(f)/n); needs zero (0,0) coefficient."""
        if not self.get(0, 0).is_zero():
            raise ValueError("plethystic Exp needs zero constant term")
        acc = GradedSeries.zero(self.g2, self.window)
        for n in range(1, self._max_psi() + 1):
            p = self.psi(n)
            if p.is_zero():
                continue
            acc = acc + p.scale(Fraction(1, n))
        return acc._exp()

    def pleth_log(self):
        """Log, inverse of pleth_exp; needs (0,0) coefficient 1."""
        if not self.get(0, 0).is_one():
            raise ValueError("plethystic Log needs constant term 1")
        lg = self._log()
        acc = GradedSeries.zero(self.g2, self.window)
        for n in range(1, max(lg._max_psi(), 1) + 1):
            mu = _mobius(n)
            if mu == 0:
                continue
            p = lg.psi(n)
            if p.is_zero():
                continue
            acc = acc + p.scale(Fraction(mu, n))
        return acc

    # -- slope decomposition ----------------------------------------------------

    def slope_of(self, key):
        r, d = key
        if r == 0:
            return TORSION_SLOPE
        return Fraction(d, r)

    def slopes(self):
        """Distinct slopes of the nonzero keys, torsion ray included."""
        return sorted({self.slope_of(k) for k in self.coeffs if k != (0, 0)})

    def slope_slice(self, theta):
        """Sub-series of keys on the ray d/r = theta (r=0 ray for torsion)."""
        if theta == TORSION_SLOPE:
            keep = {k: c for k, c in self.coeffs.items() if k[0] == 0}
        else:
            theta = Fraction(theta)
            d0, r0 = theta.numerator, theta.denominator
            keep = {k: c for k, c in self.coeffs.items() if k[1] * r0 == k[0] * d0}
        return GradedSeries(self.g2, self.window, keep)

    def slope_exp_all(self):
        """Slope-wise Exp(slice/(q-1)); the assembled series has constant term 1."""
        if not self.get(0, 0).is_zero():
            raise ValueError("slope-wise Exp needs zero constant term")
        inv = (ScalarExpr.q(self.g2) - 1).inverse()
        out = GradedSeries.one(self.g2, self.window)
        for theta in self.slopes():
            piece = self.slope_slice(theta).scale(inv).pleth_exp()
            out = out + (piece - GradedSeries.one(self.g2, self.window))
        return out

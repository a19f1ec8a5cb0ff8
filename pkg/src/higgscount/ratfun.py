"""Multivariate rational functions in z_1..z_n over the scalar field.

Everything lives in one flat polynomial ring QQ[v, e1..e{2g}, z1..zn].  A
rational function keeps its denominator as a multiset of polynomial factors
(each normalized to leading coefficient 1 under grlex); reduction is by trial
exact division of the numerator by those factors.  No multivariate
factorization and no big gcd is ever attempted: equality is decided by
cross-multiplication, which is exact.

Residues at a point z_var = center are supported for poles of any finite
order: the vanishing denominator factors are split off as powers of the
linear form (R*z_var - p) for center p/R, and the residue is extracted with
exact derivatives (Leibniz form of the Laurent coefficient).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.rings import ring as _ring

from .errors import SpecializationPole
from .scalars import ScalarExpr, scalar_ring, _eval_v_poly, _to_qq


@lru_cache(maxsize=None)
def flat_ring(g2, nz):
    names = ["v"] + [f"e{k}" for k in range(1, g2 + 1)] + [f"z{i}" for i in range(1, nz + 1)]
    return _ring(",".join(names), QQ, order="grlex")[0]


def _zgen(g2, nz, i):
    """Generator z_i (1-indexed) of the flat ring."""
    return flat_ring(g2, nz).gens[g2 + i]


def _convert(poly, g2_from, nz_from, g2, nz):
    """Move a flat-ring element between rings with the same g2, checking that
    dropped z-variables do not occur."""
    if (g2_from, nz_from) == (g2, nz):
        return poly
    if g2_from != g2:
        raise ValueError("mixed curve-parameter contexts")
    R = flat_ring(g2, nz)
    width = 1 + g2 + nz
    out = {}
    for monom, coeff in poly.iterterms():
        head = monom[: 1 + g2 + min(nz_from, nz)]
        if any(monom[1 + g2 + nz:]):
            raise ValueError("polynomial uses a z-variable outside the target context")
        out[head + (0,) * (width - len(head))] = coeff
    return R.from_dict(out)


def _scalar_lift(poly, g2, nz):
    """Lift an element of QQ[v,e*] into the flat ring."""
    R = flat_ring(g2, nz)
    pad = (0,) * nz
    return R.from_dict({m + pad: c for m, c in poly.iterterms()})


def _scalar_drop(poly, g2, nz):
    """Project a z-free flat-ring element back into QQ[v,e*]."""
    R = scalar_ring(g2)
    out = {}
    for monom, coeff in poly.iterterms():
        if any(monom[1 + g2:]):
            raise ValueError("polynomial is not z-free")
        out[monom[: 1 + g2]] = coeff
    return R.from_dict(out)


class MvRatFun:
    """num / prod(factor**mult) in the flat ring; immutable by convention."""

    __slots__ = ("g2", "nz", "num", "den")

    def __init__(self, g2, nz, num, den=None):
        den = dict(den or {})
        clean = {}
        for f, m in den.items():
            if m == 0:
                continue
            if m < 0:
                raise ValueError("negative factor multiplicity")
            if f == 0:
                raise ZeroDivisionError("division by zero")
            if f.is_ground:
                num = num.quo_ground(f.LC ** m)
                continue
            lc = f.LC
            if lc != 1:
                f = f.quo_ground(lc)
                num = num.quo_ground(lc ** m)
            clean[f] = clean.get(f, 0) + m
        if num == 0:
            clean = {}
        self.g2 = g2
        self.nz = nz
        self.num = num
        self.den = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(g2, nz):
        return MvRatFun(g2, nz, flat_ring(g2, nz).zero)

    @staticmethod
    def one(g2, nz):
        return MvRatFun(g2, nz, flat_ring(g2, nz).one)

    @staticmethod
    def z(i, g2, nz):
        return MvRatFun(g2, nz, _zgen(g2, nz, i))

    @staticmethod
    def from_scalar(s, nz):
        num = _scalar_lift(s.num, s.g2, nz)
        if s.den == 1:
            return MvRatFun(s.g2, nz, num)
        return MvRatFun(s.g2, nz, num, {_scalar_lift(s.den, s.g2, nz): 1})

    @staticmethod
    def q_power(k, g2, nz):
        """q**k = v**(2k) as a rational function (k may be negative)."""
        R = flat_ring(g2, nz)
        vgen = R.gens[0]
        if k >= 0:
            return MvRatFun(g2, nz, vgen ** (2 * k))
        return MvRatFun(g2, nz, R.one, {vgen: -2 * k})

    # -- structure ----------------------------------------------------------

    def den_poly(self):
        R = flat_ring(self.g2, self.nz)
        out = R.one
        for f, m in self.den.items():
            out *= f ** m
        return out

    def reduced(self):
        """Cancel denominator factors that divide the numerator exactly."""
        if not self.den or self.num == 0:
            return self
        num = self.num
        den = {}
        for f, m in self.den.items():
            while m > 0:
                quo, rem = divmod(num, f)
                if rem != 0:
                    break
                num = quo
                m -= 1
            if m:
                den[f] = m
        return MvRatFun(self.g2, self.nz, num, den)

    def is_zero(self):
        return self.num == 0

    def uses_var(self, i):
        idx = self.g2 + i
        if self.num.degree(idx) > 0:
            return True
        return any(f.degree(idx) > 0 for f in self.den)

    # -- arithmetic ----------------------------------------------------------

    def _coerced(self, other):
        if isinstance(other, MvRatFun):
            if (other.g2, other.nz) != (self.g2, self.nz):
                raise ValueError("mixed ring contexts")
            return other
        if isinstance(other, ScalarExpr):
            return MvRatFun.from_scalar(other, self.nz)
        if isinstance(other, (int, Fraction)):
            R = flat_ring(self.g2, self.nz)
            return MvRatFun(self.g2, self.nz, R.ground_new(_to_qq(other)))
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        union = dict(self.den)
        for f, m in other.den.items():
            union[f] = max(union.get(f, 0), m)
        R = flat_ring(self.g2, self.nz)

        def complement(den):
            out = R.one
            for f, m in union.items():
                extra = m - den.get(f, 0)
                if extra:
                    out *= f ** extra
            return out

        num = self.num * complement(self.den) + other.num * complement(other.den)
        return MvRatFun(self.g2, self.nz, num, union).reduced()

    __radd__ = __add__

    def __neg__(self):
        return MvRatFun(self.g2, self.nz, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        den = dict(self.den)
        for f, m in other.den.items():
            den[f] = den.get(f, 0) + m
        return MvRatFun(self.g2, self.nz, self.num * other.num, den).reduced()

    __rmul__ = __mul__

    def mul_unreduced(self, other):
        """Product skipping factor cancellation (for results that are only expanded)."""
        other = self._coerced(other)
        den = dict(self.den)
        for f, m in other.den.items():
            den[f] = den.get(f, 0) + m
        return MvRatFun(self.g2, self.nz, self.num * other.num, den)

    def reciprocal(self):
        if self.num == 0:
            raise ZeroDivisionError("division by zero")
        return MvRatFun(self.g2, self.nz, self.den_poly(), {self.num: 1})

    def __truediv__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self * other.reciprocal()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.reciprocal()
        out = MvRatFun.one(self.g2, self.nz)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.num * other.den_poly() == other.num * self.den_poly()

    def __hash__(self):
        raise TypeError("MvRatFun is unhashable (equality is by cross-multiplication)")

    def __repr__(self):
        if not self.den:
            return f"MvRatFun({self.num})"
        dens = " * ".join(f"({f})**{m}" if m > 1 else f"({f})" for f, m in self.den.items())
        return f"MvRatFun(({self.num}) / ({dens}))"

    # -- substitution ---------------------------------------------------------

    def substitute(self, i, center):
        """Exact substitution z_i := center.

        center may itself involve z_i, in which case this is composition
        (every original occurrence of z_i is replaced at once).
        """
        center = self._coerced(center)
        idx = self.g2 + i
        p = center.num
        rden = center.den
        R = flat_ring(self.g2, self.nz)
        rpoly = center.den_poly()

        def eval_poly(poly):
            """poly(z_i := p/R) = (result, power of rpoly cleared)."""
            deg = poly.degree(idx)
            if deg <= 0:
                return poly, 0
            buckets = {}
            for monom, coeff in poly.iterterms():
                k = monom[idx]
                reduced = monom[:idx] + (0,) + monom[idx + 1:]
                buckets.setdefault(k, {})[reduced] = coeff
            parts = {k: R.from_dict(d) for k, d in buckets.items()}
            out = R.zero
            ppow = {0: R.one}
            rpow = {0: R.one}
            for k in range(1, deg + 1):
                ppow[k] = ppow[k - 1] * p
                rpow[k] = rpow[k - 1] * rpoly
            for k, part in parts.items():
                out += part * ppow[k] * rpow[deg - k]
            return out, deg

        num, dnum = eval_poly(self.num)
        den = {}
        rexp = -dnum
        for f, m in self.den.items():
            fnew, df = eval_poly(f)
            if fnew == 0:
                raise ZeroDivisionError("substitution hits a pole")
            den[fnew] = den.get(fnew, 0) + m
            rexp += m * df
        if rexp >= 0:
            for f, m in rden.items():
                if rexp:
                    num *= f ** (m * rexp)
        else:
            for f, m in rden.items():
                den[f] = den.get(f, 0) + m * (-rexp)
        return MvRatFun(self.g2, self.nz, num, den).reduced()

    # -- calculus -------------------------------------------------------------

    def diff(self, i):
        """Exact partial derivative in z_i."""
        idx = self.g2 + i
        R = flat_ring(self.g2, self.nz)
        if not self.den:
            return MvRatFun(self.g2, self.nz, self.num.diff(R.gens[idx]))
        x = R.gens[idx]
        prod_all = R.one
        for f in self.den:
            prod_all *= f
        num = self.num.diff(x) * prod_all
        for f, m in self.den.items():
            cof = prod_all.quo(f)
            num -= self.num * (m * f.diff(x)) * cof
        den = {f: m + 1 for f, m in self.den.items()}
        return MvRatFun(self.g2, self.nz, num, den).reduced()

    def residue_at(self, i, center, with_dlog=False):
        """Coefficient of (z_i - center)**(-1); 0 when there is no pole.

        center must be free of z_i.  With with_dlog the residue is taken of
        self * dz_i/z_i, i.e. the integrand gains a 1/z_i.
        """
        center = self._coerced(center)
        if center.uses_var(i):
            raise ValueError("residue center depends on the variable")
        idx = self.g2 + i
        R = flat_ring(self.g2, self.nz)
        x = R.gens[idx]
        f = self
        if with_dlog:
            den = dict(f.den)
            den[x] = den.get(x, 0) + 1
            f = MvRatFun(f.g2, f.nz, f.num, den).reduced()
        # linear form  L = R*x - p  vanishing exactly at the center
        rpoly = center.den_poly()
        lin = rpoly * x - center.num
        if lin == 0:
            raise ValueError("degenerate residue center")
        k = 0
        rest_num = f.num
        rest = {}
        for h, m in f.den.items():
            t = 0
            while True:
                # h vanishes along x = center iff lin divides h
                quo, rem = divmod(h, lin)
                if rem != 0:
                    break
                h = quo
                t += 1
            k += t * m
            if h.is_ground:
                rest_num = rest_num.quo_ground(h.LC ** m)
            else:
                rest[h] = rest.get(h, 0) + m
        if k == 0:
            return MvRatFun.zero(self.g2, self.nz)
        den = dict(rest)
        # f*(x-center)**k = num / (R**k * rest): lin**k = R**k (x-center)**k
        for fac, m in center.den.items():
            den[fac] = den.get(fac, 0) + m * k
        g = MvRatFun(self.g2, self.nz, rest_num, den).reduced()
        fact = 1
        for j in range(1, k):
            g = g.diff(i)
            fact *= j
        g = g.substitute(i, center)
        if fact != 1:
            g = g * Fraction(1, fact)
        return g

    # -- series expansion -------------------------------------------------------

    def expand_at_zero(self, order):
        """Taylor coefficients [c_0..c_order] at z=0 (single-z context only)."""
        if self.nz != 1:
            raise ValueError("expand_at_zero needs a single z-variable")
        if self.num == 0:
            return [ScalarExpr.zero(self.g2)] * (order + 1)
        g2 = self.g2
        idx = g2 + 1
        R = flat_ring(g2, 1)
        x = R.gens[idx]

        def zval(poly):
            return min(m[idx] for m in poly.itermonoms())

        sring = scalar_ring(g2)
        nu = zval(self.num)
        num = self.num.quo(x ** nu) if nu else self.num
        mu = 0
        den = {}
        sden = sring.one
        for f, m in self.den.items():
            val = zval(f)
            if val:
                mu += val * m
                f = f.quo(x ** val)
            if f.is_ground:
                num = num.quo_ground(f.LC ** m)
            elif max(mo[idx] for mo in f.itermonoms()) == 0:
                # z-free factor: divide it out of the coefficients at the
                # end instead of dragging it through the series division
                s = sring.from_dict({mo[:idx]: c for mo, c in f.iterterms()})
                sden *= s ** m
            else:
                den[f] = den.get(f, 0) + m
        shift = nu - mu
        if shift < 0:
            raise SpecializationPole(f"pole of order {-shift} at z=0")
        top = order - shift
        if top < 0:
            return [ScalarExpr.zero(g2)] * (order + 1)

        def ztrunc(poly):
            return R.from_dict({m: c for m, c in poly.iterterms() if m[idx] <= top})

        dpoly = R.one
        for f, m in den.items():
            for _ in range(m):
                dpoly = ztrunc(dpoly * f)

        def zcoeffs(poly):
            buckets = [dict() for _ in range(top + 1)]
            for monom, coeff in poly.iterterms():
                k = monom[idx]
                if k <= top:
                    buckets[k][monom[:idx]] = coeff
            return [scalar_ring(g2).from_dict(b) for b in buckets]

        N = zcoeffs(num)
        D = zcoeffs(dpoly)
        if D[0] == 0:
            raise SpecializationPole("pole at z=0")
        # series division with reduced coefficients: keeping each c_k
        # canonical beats one giant cancellation at the end
        one = sring.one
        inv = ScalarExpr.make(g2, one, D[0])
        Ds = [ScalarExpr.make(g2, d, one) for d in D]
        cs = []
        for k in range(top + 1):
            acc = ScalarExpr.make(g2, N[k], one)
            for j in range(1, k + 1):
                if D[j] == 0:
                    continue
                acc = acc - Ds[j] * cs[k - j]
            cs.append(acc * inv)
        inv_s = None if sden == one else ScalarExpr.make(g2, one, sden)
        coeffs = [ScalarExpr.zero(g2)] * (order + 1)
        for k in range(top + 1):
            coeffs[k + shift] = cs[k] if inv_s is None else cs[k] * inv_s
        return coeffs

    # -- conversions --------------------------------------------------------------

    def to_scalar(self):
        """Collapse a z-free rational function to a ScalarExpr."""
        num = _scalar_drop(self.num, self.g2, self.nz)
        den = _scalar_drop(self.den_poly(), self.g2, self.nz)
        return ScalarExpr.make(self.g2, num, den)

    def with_context(self, nz):
        num = _convert(self.num, self.g2, self.nz, self.g2, nz)
        den = {_convert(f, self.g2, self.nz, self.g2, nz): m for f, m in self.den.items()}
        return MvRatFun(self.g2, nz, num, den)

    def evaluate_numeric(self, q0, e_vals=(), z_vals=()):
        """Exact numeric value in Q(sqrt(q0)) at v=sqrt(q0), given e and z values."""
        z_vals = [Fraction(t) for t in z_vals]
        if len(z_vals) != self.nz:
            raise ValueError("wrong number of z values")
        width = 1 + self.g2

        def value(poly):
            acc = {}
            for monom, coeff in poly.iterterms():
                c = Fraction(int(QQ.numer(coeff)), int(QQ.denom(coeff)))
                for j in range(self.nz):
                    exp = monom[width + j]
                    if exp:
                        c *= z_vals[j] ** exp
                key = monom[:width]
                acc[key] = acc.get(key, Fraction(0)) + c
            num = scalar_ring(self.g2).from_dict(
                {k: QQ(c.numerator, c.denominator) for k, c in acc.items() if c}
            )
            return ScalarExpr(self.g2, num, scalar_ring(self.g2).one).specialize(q0, e_vals)

        num = value(self.num)
        den = value(self.den_poly())
        if den.is_zero():
            raise SpecializationPole("specialization pole")
        return num / den

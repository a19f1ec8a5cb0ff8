"""Exact coefficient field for the counting pipeline.

Scalars are rational functions over Q in the variables

    v, e1, ..., e{2g}

where v is a square root of q (q is always represented as v**2, never as a
separate symbol) and the e_k are the elementary symmetric functions of the 2g
Weil numbers of the curve.  Keeping the e_k as free parameters makes the Adams
operations (v -> v**n, e_k -> elementary symmetric functions of n-th powers)
a finite exact computation via Newton's identities, and numeric specialization
needs nothing beyond the integer coefficients of the zeta numerator.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

import sympy
from sympy.polys.domains import QQ
from sympy.polys.rings import ring as _ring

from .errors import SpecializationPole


@lru_cache(maxsize=None)
def scalar_ring(g2):
    """Polynomial ring QQ[v, e1..e{g2}] under graded lex order."""
    if g2 < 0:
        raise ValueError("negative number of curve parameters")
    names = ["v"] + [f"e{k}" for k in range(1, g2 + 1)]
    R = _ring(",".join(names), QQ, order="grlex")[0]
    return R


def _to_qq(value):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(value)


class ScalarExpr:
    """Canonical rational function in v, e1..e{2g} over Q.

    Invariants: gcd(num, den) is a unit and the denominator's leading
    coefficient under grlex is 1, so equality is structural.
    """

    __slots__ = ("g2", "num", "den")

    def __init__(self, g2, num, den):
        # raw constructor; use make() for anything unnormalized
        self.g2 = g2
        self.num = num
        self.den = den

    @staticmethod
    def make(g2, num, den):
        if den == 0:
            raise ZeroDivisionError("division by zero")
        if num == 0:
            R = scalar_ring(g2)
            return ScalarExpr(g2, R.zero, R.one)
        g = num.gcd(den)
        if g != 1:
            num = num.quo(g)
            den = den.quo(g)
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        return ScalarExpr(g2, num, den)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def coerce(value, g2):
        if isinstance(value, ScalarExpr):
            if value.g2 != g2:
                raise ValueError("mixed curve-parameter contexts")
            return value
        R = scalar_ring(g2)
        return ScalarExpr(g2, R.ground_new(_to_qq(value)), R.one)

    @staticmethod
    def zero(g2):
        R = scalar_ring(g2)
        return ScalarExpr(g2, R.zero, R.one)

    @staticmethod
    def one(g2):
        R = scalar_ring(g2)
        return ScalarExpr(g2, R.one, R.one)

    @staticmethod
    def v(g2):
        R = scalar_ring(g2)
        return ScalarExpr(g2, R.gens[0], R.one)

    @staticmethod
    def q(g2):
        R = scalar_ring(g2)
        return ScalarExpr(g2, R.gens[0] ** 2, R.one)

    @staticmethod
    def e(k, g2):
        if not 1 <= k <= g2:
            raise ValueError(f"unknown parameter e{k} in context with {g2} e-variables")
        R = scalar_ring(g2)
        return ScalarExpr(g2, R.gens[k], R.one)

    @staticmethod
    def v_power(k, g2):
        """v**k for any integer k (negative exponents give fractions)."""
        R = scalar_ring(g2)
        if k >= 0:
            return ScalarExpr(g2, R.gens[0] ** k, R.one)
        return ScalarExpr(g2, R.one, R.gens[0] ** (-k))

    @staticmethod
    def minus_v_power(k, g2):
        """(-v)**k for any integer k."""
        x = ScalarExpr.v_power(k, g2)
        return -x if k % 2 else x

    @staticmethod
    def q_power(k, g2):
        return ScalarExpr.v_power(2 * k, g2)

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == self.den

    # -- arithmetic --------------------------------------------------------

    def _coerced(self, other):
        if isinstance(other, ScalarExpr):
            if other.g2 != self.g2:
                raise ValueError("mixed curve-parameter contexts")
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, type(QQ(1))):
            return ScalarExpr.coerce(other, self.g2)
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1 == d2:
            return ScalarExpr.make(self.g2, n1 + n2, d1)
        # operands are canonical, so the only possible cancellation in
        # (n1 d2 + n2 d1)/(d1 d2) sits inside g = gcd(d1, d2)
        g = d1.gcd(d2)
        if g == 1:
            num = n1 * d2 + n2 * d1
            den = d1 * d2
        else:
            d2r = d2.quo(g)
            num = n1 * d2r + n2 * d1.quo(g)
            if num == 0:
                return ScalarExpr.zero(self.g2)
            t = num.gcd(g)
            if t != 1:
                num = num.quo(t)
                den = d1.quo(t) * d2r
            else:
                den = d1 * d2r
        if num == 0:
            return ScalarExpr.zero(self.g2)
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        return ScalarExpr(self.g2, num, den)

    __radd__ = __add__

    def __neg__(self):
        return ScalarExpr(self.g2, -self.num, self.den)

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
        if self.is_zero() or other.is_zero():
            return ScalarExpr.zero(self.g2)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        # operands are canonical, so only the cross gcds can cancel
        g = n1.gcd(d2)
        if g != 1:
            n1 = n1.quo(g)
            d2 = d2.quo(g)
        h = n2.gcd(d1)
        if h != 1:
            n2 = n2.quo(h)
            d1 = d1.quo(h)
        num = n1 * n2
        den = d1 * d2
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        return ScalarExpr(self.g2, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        num, den = self.den, self.num
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        return ScalarExpr(self.g2, num, den)

    def __truediv__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return ScalarExpr.one(self.g2)
        base = self if k > 0 else self.inverse()
        return ScalarExpr(base.g2, base.num ** abs(k), base.den ** abs(k))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ScalarExpr.coerce(other, self.g2)
        if not isinstance(other, ScalarExpr):
            return NotImplemented
        return self.g2 == other.g2 and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.g2, self.num, self.den))

    def __repr__(self):
        return f"ScalarExpr({self.render()})"

    # -- rendering / parsing ----------------------------------------------

    def render(self):
        """Canonical text form "num/den" (den omitted when 1)."""
        num = str(self.num)
        if self.den == 1:
            return num
        return f"({num})/({self.den})"

    @staticmethod
    def parse(text, g2):
        """Inverse of render; accepts any rational expression in v, e1..e{g2}."""
        R = scalar_ring(g2)
        names = {"v"} | {f"e{k}" for k in range(1, g2 + 1)}
        expr = sympy.parse_expr(text, evaluate=True)
        bad = {str(s) for s in expr.free_symbols} - names
        if bad:
            raise ValueError(f"unknown parameter {sorted(bad)[0]} in context with {g2} e-variables")
        num, den = expr.as_numer_denom()
        return ScalarExpr.make(g2, R.from_expr(num), R.from_expr(den))

    # -- Adams operations ---------------------------------------------------

    def adams(self, n):
        """Ring homomorphism v -> v**n, e_k -> e_k of the n-th powers."""
        if n <= 0:
            raise ValueError("adams index must be a positive integer")
        if n == 1:
            return self
        images = list(adams_images(self.g2, n))
        num = self.num.compose(images)
        den = self.den.compose(images)
        return ScalarExpr.make(self.g2, num, den)

    def apply_functional_equation(self):
        """Substitute e_{2g-k} -> q^{g-k} e_k (the zeta functional equation).

        Every honest curve numerator satisfies these relations, so
        identities that hold curve-by-curve but not for free e-variables
        become exact after this substitution.  Leaves v and e_1..e_g free.
        """
        g2 = self.g2
        if g2 == 0:
            return self
        g = g2 // 2
        R = scalar_ring(g2)
        v = R.gens[0]
        images = []
        for j in range(g + 1, g2 + 1):
            target = R.one if j == g2 else R.gens[g2 - j]
            images.append((R.gens[j], v ** (2 * (j - g)) * target))
        num = self.num.compose(images)
        den = self.den.compose(images)
        if den == 0:
            raise SpecializationPole("denominator vanishes on the functional-equation locus")
        return ScalarExpr.make(g2, num, den)

    # -- specialization ------------------------------------------------------

    def specialize_e(self, e_vals):
        """Substitute integers (or rationals) for e1..e{2g}; keeps v symbolic."""
        e_vals = list(e_vals)
        if len(e_vals) != self.g2:
            raise ValueError(
                f"unknown parameter count: expected {self.g2} e-values, got {len(e_vals)}"
            )
        R0 = scalar_ring(0)

        def down(p):
            if self.g2 == 0:
                return p
            subs = [(scalar_ring(self.g2).gens[k + 1], _to_qq(e_vals[k])) for k in range(self.g2)]
            q = p.evaluate(subs)
            # evaluate() drops the substituted gens; rebuild in the v-only ring
            return R0.from_dict({m: c for m, c in q.iterterms()})

        num = down(self.num)
        den = down(self.den)
        if den == 0:
            raise SpecializationPole("specialization pole")
        return ScalarExpr.make(0, num, den)

    def specialize(self, q0, e_vals=()):
        """Exact value at v = sqrt(q0) as a QuadValue; e_vals fix e1..e{2g}."""
        x = self.specialize_e(e_vals) if self.g2 else self
        num = _eval_v_poly(x.num, q0)
        den = _eval_v_poly(x.den, q0)
        if den.is_zero():
            raise SpecializationPole("specialization pole")
        return num / den


def _eval_v_poly(p, q0):
    """Evaluate a QQ[v] element at v = sqrt(q0), exactly."""
    rat = Fraction(0)
    irr = Fraction(0)
    for monom, coeff in p.iterterms():
        a = monom[0]
        c = Fraction(int(QQ.numer(coeff)), int(QQ.denom(coeff)))
        if a % 2 == 0:
            rat += c * Fraction(q0) ** (a // 2)
        else:
            irr += c * Fraction(q0) ** ((a - 1) // 2)
    return QuadValue(q0, rat, irr)


@lru_cache(maxsize=None)
def adams_images(g2, n):
    """Generator images [(gen, image)] of the n-th Adams operation on QQ[v, e*].

    e_k goes to the k-th elementary symmetric function of the n-th powers of
    the underlying 2g roots, expressed back in e_1..e_{2g} through Newton's
    identities (e -> power sums, p_m -> p_{nm}, power sums -> e).
    """
    R = scalar_ring(g2)
    v = R.gens[0]
    images = [(v, v ** n)]
    if g2 == 0:
        return tuple(images)
    e = [R.one] + [R.gens[k] for k in range(1, g2 + 1)]

    def e_at(i):
        return e[i] if 0 <= i <= g2 else R.zero

    # power sums p_1..p_{n*g2} of the roots
    top = n * g2
    p = [R.zero] * (top + 1)
    for m in range(1, top + 1):
        acc = R.zero
        for i in range(1, m):
            term = e_at(i) * p[m - i]
            acc = acc - term if i % 2 == 0 else acc + term
        tail = m * e_at(m)
        acc = acc - tail if m % 2 == 0 else acc + tail
        p[m] = acc
    # elementary symmetric functions of the n-th powers from p_{nm}
    enew = [R.one] + [R.zero] * g2
    for m in range(1, g2 + 1):
        acc = R.zero
        for i in range(1, m + 1):
            term = enew[m - i] * p[n * i]
            acc = acc - term if i % 2 == 0 else acc + term
        enew[m] = acc.quo_ground(QQ(m))
    for k in range(1, g2 + 1):
        images.append((R.gens[k], enew[k]))
    return tuple(images)


class QuadValue:
    """Exact element rat + irr*sqrt(q0) of Q(sqrt(q0))."""

    __slots__ = ("q0", "rat", "irr")

    def __init__(self, q0, rat, irr=Fraction(0)):
        if q0 <= 0:
            raise ValueError("q0 must be positive")
        rat = Fraction(rat)
        irr = Fraction(irr)
        s = isqrt(q0)
        if s * s == q0 and irr:
            rat += irr * s
            irr = Fraction(0)
        self.q0 = q0
        self.rat = rat
        self.irr = irr

    def is_zero(self):
        return not self.rat and not self.irr

    def is_rational(self):
        return not self.irr

    def as_fraction(self):
        if self.irr:
            raise ValueError(f"irrational value {self}")
        return self.rat

    def _coerced(self, other):
        if isinstance(other, QuadValue):
            if other.q0 != self.q0:
                raise ValueError("mixed sqrt contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadValue(self.q0, Fraction(other))
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return QuadValue(self.q0, self.rat + other.rat, self.irr + other.irr)

    __radd__ = __add__

    def __neg__(self):
        return QuadValue(self.q0, -self.rat, -self.irr)

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
        return QuadValue(
            self.q0,
            self.rat * other.rat + self.q0 * self.irr * other.irr,
            self.rat * other.irr + self.irr * other.rat,
        )

    __rmul__ = __mul__

    def inverse(self):
        norm = self.rat * self.rat - self.q0 * self.irr * self.irr
        if norm == 0:
            if self.is_zero():
                raise ZeroDivisionError("division by zero")
            # rat = +-irr*sqrt(q0) with q0 a perfect square was folded already
            raise ZeroDivisionError("division by zero")
        return QuadValue(self.q0, self.rat / norm, -self.irr / norm)

    def __truediv__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        out = QuadValue(self.q0, 1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadValue(self.q0, Fraction(other))
        if not isinstance(other, QuadValue):
            return NotImplemented
        return self.q0 == other.q0 and self.rat == other.rat and self.irr == other.irr

    def __hash__(self):
        return hash((self.q0, self.rat, self.irr))

    def __repr__(self):
        if not self.irr:
            return f"{self.rat}"
        return f"{self.rat}+{self.irr}*sqrt({self.q0})"

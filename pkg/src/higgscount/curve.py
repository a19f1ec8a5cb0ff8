"""Curve data and zeta machinery.

A curve enters the computation only through its genus and the numerator
P(z) = 1 + sum_k (-1)^k e_k z^k of its zeta function

    Z_X(z) = P(z) / ((1-z)(1-q z)).

Symbolically the e_k stay free parameters; numeric mode additionally records
the integer coefficients of P and the field size q0, which are used only when
specializing final answers (the engine itself always runs symbolically so the
Adams operations act correctly on the e_k).
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import isprime

from .ratfun import MvRatFun
from .scalars import ScalarExpr


def _is_prime_power(n):
    if n < 2:
        return False
    for p in range(2, n + 1):
        if p * p > n:
            return isprime(n)
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
    return False


@dataclass(frozen=True)
class CurveModel:
    """genus plus optional numeric zeta data (numerator coefficients and q0)."""

    genus: int
    numerator_coeffs: tuple | None = None  # (c_0,...,c_{2g}) with P(z)=sum c_k z^k
    q0: int | None = None

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if self.numerator_coeffs is not None:
            coeffs = tuple(int(c) for c in self.numerator_coeffs)
            object.__setattr__(self, "numerator_coeffs", coeffs)
            if len(coeffs) != 2 * self.genus + 1:
                raise ValueError("zeta numerator must have degree exactly 2g")
            if coeffs[0] != 1:
                raise ValueError("zeta numerator must satisfy P(0) = 1")
        if self.q0 is not None and not _is_prime_power(self.q0):
            raise ValueError("q0 must be a prime power >= 2")

    @property
    def g2(self):
        return 2 * self.genus

    @property
    def numeric(self):
        return self.numerator_coeffs is not None and self.q0 is not None

    def e_vals(self):
        """Integer values of e_1..e_{2g} from the numeric numerator, via
        c_k = (-1)^k e_k."""
        if self.numerator_coeffs is None:
            raise ValueError("curve has no numeric numerator")
        return [(-1) ** k * self.numerator_coeffs[k] for k in range(1, self.g2 + 1)]

    def specialize(self, x):
        """Numeric value of a ScalarExpr for this curve."""
        if not self.numeric:
            raise ValueError("curve is not numeric")
        return x.specialize(self.q0, self.e_vals())


def zeta_numerator_at(curve, arg):
    """P(arg) for an MvRatFun argument (symbolic e coefficients)."""
    g2 = curve.g2
    out = MvRatFun.one(g2, arg.nz)
    if g2 == 0:
        return out
    power = MvRatFun.one(g2, arg.nz)
    for k in range(1, g2 + 1):
        power = power * arg
        term = MvRatFun.from_scalar(ScalarExpr.e(k, g2), arg.nz) * power
        out = out - term if k % 2 else out + term
    return out


def zeta_at(curve, arg):
    """Z_X(arg) = P(arg)/((1-arg)(1-q arg)) for a rational-function argument."""
    g2 = curve.g2
    one = MvRatFun.one(g2, arg.nz)
    q = MvRatFun.q_power(1, g2, arg.nz)
    den = (one - arg) * (one - q * arg)
    if den.is_zero():
        raise ZeroDivisionError("zeta evaluated at a pole")
    return zeta_numerator_at(curve, arg) / den


def zeta_closed(curve):
    """Z_X as a rational function of a single variable z."""
    return zeta_at(curve, MvRatFun.z(1, curve.g2, 1))


def zeta_tilde_at(curve, num_var_fun):
    """z^{1-g} Z_X(z) evaluated at a rational argument.

    The Laurent prefactor arg^{1-g} is rational in the argument, so the
    result is again an MvRatFun.
    """
    arg = num_var_fun
    return arg ** (1 - curve.genus) * zeta_at(curve, arg)


def zeta_tilde(curve):
    return zeta_tilde_at(curve, MvRatFun.z(1, curve.g2, 1))


def pic_zero(curve):
    """[Pic^0] = P(1) as a scalar."""
    g2 = curve.g2
    out = ScalarExpr.one(g2)
    for k in range(1, g2 + 1):
        term = ScalarExpr.e(k, g2)
        out = out - term if k % 2 else out + term
    return out


def point_count(curve):
    """[X] = 1 + q - e_1."""
    g2 = curve.g2
    out = ScalarExpr.one(g2) + ScalarExpr.q(g2)
    if g2:
        out = out - ScalarExpr.e(1, g2)
    return out


def zeta_star_at(curve, m):
    """Regularized Z*_X at the z-free argument q^{-1-m} (m = leg length >= 0).

    m = 0 is the residue-regularized value q^{1-g} [Pic^0]/(q-1); m > 0
    evaluates Z_X honestly (the argument then avoids both poles).
    """
    if m < 0:
        raise ValueError("leg length must be nonnegative (the z=q branch of Z* is unreachable)")
    g2 = curve.g2
    if m == 0:
        qm1 = ScalarExpr.q(g2) - 1
        return ScalarExpr.q_power(1 - curve.genus, g2) * pic_zero(curve) / qm1
    # P(q^{-1-m}) / ((1 - q^{-1-m})(1 - q^{-m})), all exact scalars
    argv = ScalarExpr.q_power(-1 - m, g2)
    p = ScalarExpr.one(g2)
    power = ScalarExpr.one(g2)
    for k in range(1, g2 + 1):
        power = power * argv
        term = ScalarExpr.e(k, g2) * power
        p = p - term if k % 2 else p + term
    den = (ScalarExpr.one(g2) - argv) * (ScalarExpr.one(g2) - ScalarExpr.q_power(-m, g2))
    if den.is_zero():
        raise ZeroDivisionError("regularized zeta hit an unexpected pole")
    return p / den

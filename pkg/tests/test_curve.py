"""Curve zeta data: symbolic models, numeric models, regularized values."""

from fractions import Fraction

import pytest

from higgscount.curve import (
    CurveModel,
    pic_zero,
    point_count,
    zeta_at,
    zeta_star_at,
    zeta_tilde,
)
from higgscount.ratfun import MvRatFun
from higgscount.scalars import QuadValue, ScalarExpr


def test_model_validation():
    with pytest.raises(ValueError):
        CurveModel(genus=-1)
    with pytest.raises(ValueError):
        CurveModel(genus=1, numerator_coeffs=(1, -1), q0=2)  # wrong degree
    with pytest.raises(ValueError):
        CurveModel(genus=1, numerator_coeffs=(2, -1, 2), q0=2)  # P(0) != 1
    with pytest.raises(ValueError):
        CurveModel(genus=1, numerator_coeffs=(1, -1, 6), q0=6)  # 6 not a prime power
    assert not CurveModel(genus=2).numeric
    assert CurveModel(genus=1, numerator_coeffs=(1, -1, 2), q0=2).numeric


def test_e_vals_sign_convention():
    # P(z) = 1 - a z + q z^2 gives e1 = a, e2 = q
    curve = CurveModel(genus=1, numerator_coeffs=(1, -3, 5), q0=5)
    assert curve.e_vals() == [3, 5]


def test_point_count_and_pic_zero_genus_zero():
    line = CurveModel(genus=0)
    assert point_count(line) == ScalarExpr.q(0) + 1
    assert pic_zero(line) == ScalarExpr.one(0)


def test_point_count_matches_numeric_curve():
    # 5 + 1 - a points over F_5 for an elliptic curve with trace a
    curve = CurveModel(genus=1, numerator_coeffs=(1, -2, 5), q0=5)
    assert curve.specialize(point_count(curve)) == QuadValue(5, Fraction(4))
    assert curve.specialize(pic_zero(curve)) == QuadValue(5, Fraction(4))


def test_pic_zero_alternating_sum():
    g2 = 4
    expected = (
        ScalarExpr.one(g2)
        - ScalarExpr.e(1, g2)
        + ScalarExpr.e(2, g2)
        - ScalarExpr.e(3, g2)
        + ScalarExpr.e(4, g2)
    )
    assert pic_zero(CurveModel(genus=2)) == expected


def test_zeta_genus_zero_closed_form():
    line = CurveModel(genus=0)
    z = MvRatFun.z(1, 0, 1)
    got = zeta_at(line, z)
    expect = (1 - z).reciprocal() * (1 - MvRatFun.q_power(1, 0, 1) * z).reciprocal()
    assert (got - expect).is_zero()


def test_zeta_tilde_normalization():
    # u^{1-g} P(u) / ((1-u)(1-qu)): at genus 0 this is zeta times an extra u
    line = CurveModel(genus=0)
    z = MvRatFun.z(1, 0, 1)
    assert (zeta_tilde(line) - z * zeta_at(line, z)).is_zero()


def test_zeta_star_regularized_value():
    # m = 0 removes the simple pole at u = q^{-1}: q^{1-g} [Pic^0] / (q-1)
    for genus in (0, 1, 2):
        curve = CurveModel(genus=genus)
        g2 = curve.g2
        expect = ScalarExpr.q_power(1 - genus, g2) * pic_zero(curve) / (ScalarExpr.q(g2) - 1)
        assert zeta_star_at(curve, 0) == expect


def test_zeta_star_honest_value():
    # m = 1 avoids both poles, so it is a plain evaluation at u = q^{-2}
    line = CurveModel(genus=0)
    q = ScalarExpr.q(0)
    expect = (1 - q ** -2).inverse() * (1 - q ** -1).inverse()
    assert zeta_star_at(line, 1) == expect


def test_zeta_star_rejects_negative_leg():
    with pytest.raises(ValueError):
        zeta_star_at(CurveModel(genus=0), -1)


def test_specialize_requires_numeric_model():
    with pytest.raises(ValueError):
        CurveModel(genus=1).specialize(ScalarExpr.q(2))

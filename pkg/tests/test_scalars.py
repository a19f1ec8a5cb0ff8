"""Exact scalar arithmetic in v and the Weil symbols e_1..e_{2g}."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from higgscount.errors import SpecializationPole
from higgscount.scalars import QuadValue, ScalarExpr


def S(text, g2=2):
    return ScalarExpr.parse(text, g2)


# -- canonical form and arithmetic -------------------------------------------


def test_v_squared_is_q():
    assert ScalarExpr.v(0) * ScalarExpr.v(0) == ScalarExpr.q(0)


def test_cancellation_is_automatic():
    q = ScalarExpr.q(0)
    one = ScalarExpr.one(0)
    assert (q * q - one) / (q - one) == q + one


def test_power_constructors():
    v = ScalarExpr.v(2)
    assert ScalarExpr.v_power(3, 2) == v * v * v
    assert ScalarExpr.v_power(-2, 2) == (v * v).inverse()
    assert ScalarExpr.minus_v_power(3, 2) == -(v ** 3)
    assert ScalarExpr.minus_v_power(2, 2) == v ** 2
    assert ScalarExpr.q_power(-1, 2) * ScalarExpr.q(2) == ScalarExpr.one(2)


def test_pow_negative_exponent():
    q = ScalarExpr.q(0)
    assert (q + 1) ** -2 == ((q + 1) * (q + 1)).inverse()
    assert q ** 0 == ScalarExpr.one(0)


def test_inverse_of_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        ScalarExpr.zero(2).inverse()


@st.composite
def scalars(draw, g2=2):
    """Small random scalar: ratio of sparse polynomials in v, e_1..e_g2."""
    atoms = [ScalarExpr.v(g2)] + [ScalarExpr.e(k, g2) for k in range(1, g2 + 1)]
    coeffs = st.integers(min_value=-4, max_value=4)

    def poly():
        out = ScalarExpr.coerce(draw(coeffs), g2)
        for _ in range(draw(st.integers(0, 2))):
            term = ScalarExpr.coerce(draw(coeffs), g2)
            for _ in range(draw(st.integers(1, 2))):
                term = term * atoms[draw(st.integers(0, len(atoms) - 1))]
            out = out + term
        return out

    num = poly()
    den = poly()
    if den.is_zero():
        den = ScalarExpr.one(g2)
    return num / den


@given(scalars(), scalars(), scalars())
def test_field_axioms_sample(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    if not a.is_zero():
        assert a * a.inverse() == ScalarExpr.one(2)


@given(scalars())
def test_render_parse_roundtrip(x):
    assert ScalarExpr.parse(x.render(), 2) == x


def test_parse_rejects_unknown_symbols():
    with pytest.raises(ValueError):
        ScalarExpr.parse("e3", 2)  # g2 = 2 only has e1, e2
    with pytest.raises(ValueError):
        ScalarExpr.parse("w + 1", 2)


# -- Adams operations ----------------------------------------------------------


def test_adams_on_v():
    v = ScalarExpr.v(0)
    assert v.adams(3) == v ** 3
    assert ScalarExpr.q(0).adams(2) == ScalarExpr.q(0) ** 2


@given(scalars(), scalars(), st.integers(min_value=1, max_value=4))
def test_adams_is_ring_map(a, b, n):
    assert (a + b).adams(n) == a.adams(n) + b.adams(n)
    assert (a * b).adams(n) == a.adams(n) * b.adams(n)


@given(scalars(), st.integers(min_value=1, max_value=3), st.integers(min_value=1, max_value=3))
def test_adams_composes(a, m, n):
    assert a.adams(m).adams(n) == a.adams(m * n)


def _power_sums(alphas, top):
    return [sum(a ** n for a in alphas) for n in range(1, top + 1)]


def test_adams_matches_root_powers_numerically():
    # elliptic curve with P(z) = 1 - z + 2 z^2: roots alpha, beta satisfy
    # alpha + beta = 1, alpha * beta = 2; psi_n sends e_k to the k-th
    # elementary symmetric function of the n-th root powers
    e1, e2 = ScalarExpr.e(1, 2), ScalarExpr.e(2, 2)
    vals = (1, 2)
    # p_2 = e1^2 - 2 e2 = -3, p_3 = e1^3 - 3 e1 e2 = -5
    assert e1.adams(2).specialize(2, vals) == QuadValue(2, Fraction(-3))
    assert e1.adams(3).specialize(2, vals) == QuadValue(2, Fraction(-5))
    # e2 is the product of the roots, so psi_n multiplies its value n-fold
    assert e2.adams(2).specialize(2, vals) == QuadValue(2, Fraction(4))
    assert e2.adams(3).specialize(2, vals) == QuadValue(2, Fraction(8))


# -- functional equation --------------------------------------------------------


def test_functional_equation_genus_one():
    # e2 |-> q on the honest locus
    x = S("e2 - 3*e1", 2)
    assert x.apply_functional_equation() == S("v**2 - 3*e1", 2)


def test_functional_equation_genus_two():
    # e3 |-> q e1 and e4 |-> q^2
    x = S("e4 + e3 + e2", 4)
    assert x.apply_functional_equation() == S("v**4 + v**2*e1 + e2", 4)


def test_functional_equation_idempotent():
    x = S("(e2 + e1) / (e2 + 1)", 2)
    y = x.apply_functional_equation()
    assert y.apply_functional_equation() == y


def test_functional_equation_genus_zero_is_identity():
    x = ScalarExpr.q(0) + 1
    assert x.apply_functional_equation() == x


def test_functional_equation_pole():
    x = ScalarExpr.one(2) / S("e2 - v**2", 2)
    with pytest.raises(SpecializationPole):
        x.apply_functional_equation()


def test_functional_equation_commutes_with_honest_specialization():
    # on a numeric elliptic curve e2 = q already, so substituting first
    # cannot change the value
    x = S("(e1*e2 - 2) / (e2 + e1 + 1)", 2)
    vals = (-2, 3)  # P(z) = 1 + 2 z + 3 z^2 over q0 = 3
    assert x.apply_functional_equation().specialize(3, vals) == x.specialize(3, vals)


# -- specialization -------------------------------------------------------------


def test_specialize_splits_rational_and_sqrt_parts():
    v = ScalarExpr.v(0)
    got = (v * (ScalarExpr.q(0) + 1) + 3).specialize(2)
    assert got == QuadValue(2, Fraction(3), Fraction(3))


def test_specialize_pole_detected():
    x = ScalarExpr.one(0) / (ScalarExpr.q(0) - 2)
    with pytest.raises(SpecializationPole):
        x.specialize(2)


def test_specialize_e_partial():
    x = S("e1 + v*e2", 2)
    got = x.specialize_e((5, 7))
    assert got == ScalarExpr.coerce(5, 0) + ScalarExpr.v(0) * 7


# -- QuadValue ------------------------------------------------------------------


def test_quadvalue_arithmetic():
    a = QuadValue(2, Fraction(1), Fraction(1))   # 1 + sqrt(2)
    b = QuadValue(2, Fraction(1), Fraction(-1))  # 1 - sqrt(2)
    assert a * b == QuadValue(2, Fraction(-1))
    assert a + b == QuadValue(2, Fraction(2))
    assert (a * a) == QuadValue(2, Fraction(3), Fraction(2))


def test_quadvalue_inverse():
    a = QuadValue(3, Fraction(2), Fraction(1))  # 2 + sqrt(3)
    assert a * a.inverse() == QuadValue(3, Fraction(1))
    with pytest.raises(ZeroDivisionError):
        QuadValue(3, Fraction(0)).inverse()


def test_quadvalue_as_fraction():
    assert QuadValue(2, Fraction(5, 3)).as_fraction() == Fraction(5, 3)
    with pytest.raises(ValueError):
        QuadValue(2, Fraction(0), Fraction(1)).as_fraction()

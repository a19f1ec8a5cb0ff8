"""Multivariate rational functions: arithmetic, residues, Taylor expansion."""

from fractions import Fraction

import pytest

from higgscount.errors import SpecializationPole
from higgscount.ratfun import MvRatFun
from higgscount.scalars import ScalarExpr


def one(nz=1, g2=0):
    return MvRatFun.one(g2, nz)


def z(i=1, nz=1, g2=0):
    return MvRatFun.z(i, g2, nz)


def qq(k=1, nz=1, g2=0):
    return MvRatFun.q_power(k, g2, nz)


# -- arithmetic -------------------------------------------------------------------


def test_mul_cancels_shared_factor():
    f = (one() - z()).reciprocal()
    assert (f * (one() - z()) - one()).is_zero()


def test_add_over_common_denominator():
    f = (one() - z()).reciprocal()
    g = (one() + z()).reciprocal()
    total = f + g
    expect = (one() + one()) * ((one() - z()) * (one() + z())).reciprocal()
    assert (total - expect).is_zero()


def test_division_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        MvRatFun.zero(0, 1).reciprocal()


def test_mul_unreduced_matches_mul_after_expansion():
    f = (one() - z()).reciprocal()
    g = (one() - qq() * z()).reciprocal() * (one() - z())
    assert [c.render() for c in f.mul_unreduced(g).expand_at_zero(5)] == [
        c.render() for c in (f * g).expand_at_zero(5)
    ]


def test_substitute_composes():
    f = (one() - z()).reciprocal()
    g = f.substitute(1, qq() * z())
    expect = (one() - qq() * z()).reciprocal()
    assert (g - expect).is_zero()


def test_substitute_rejects_self_reference():
    f = (one() - z()).reciprocal()
    with pytest.raises(ValueError):
        f.residue_at(1, z())


# -- residues ----------------------------------------------------------------------


def test_residue_simple_pole():
    # 1/((1-z)(1-qz)) has residue 1/(q-1) at z=1 and -1/(q-1) at z=1/q
    f = ((one() - z()) * (one() - qq() * z())).reciprocal()
    q = ScalarExpr.q(0)
    r1 = f.residue_at(1, 1).to_scalar()
    r2 = f.residue_at(1, qq(-1)).to_scalar()
    assert r1 == (q - 1).inverse()
    assert r2 == -((q - 1).inverse())
    # no further poles and decay at infinity force the residues to cancel
    assert (r1 + r2).is_zero()


def test_residue_absent_pole_is_zero():
    f = (one() - z()).reciprocal()
    assert f.residue_at(1, qq(-1)).is_zero()


def test_residue_double_pole_uses_derivative():
    # 1/(1-z)^2 * 1/z around z=1: d/dz [1/z] at 1 gives -(-1) = 1... the
    # sign convention: Res_{z=1} 1/((1-z)^2 z) = d/dz[1/z]|_{z=1} = -1
    f = ((one() - z()) * (one() - z()) * z()).reciprocal()
    got = f.residue_at(1, 1).to_scalar()
    assert got == ScalarExpr.coerce(-1, 0)


def test_residue_with_dlog_adds_inverse_z():
    f = (one() - z()).reciprocal()
    with_dlog = f.residue_at(1, 1, with_dlog=True).to_scalar()
    manual = (f * z().reciprocal()).residue_at(1, 1).to_scalar()
    assert with_dlog == manual == ScalarExpr.coerce(-1, 0)


def test_residue_in_two_variables_keeps_other_variable():
    # Res_{z1 = z2} 1/(z1 - z2) = 1, as a function of z2
    f = (z(1, 2) - z(2, 2)).reciprocal()
    got = f.residue_at(1, z(2, 2))
    assert (got - one(2)).is_zero()


# -- Taylor expansion ---------------------------------------------------------------


def expand_strings(f, order):
    return [c.render() for c in f.expand_at_zero(order)]


def test_expand_geometric():
    f = (one() - z()).reciprocal()
    assert expand_strings(f, 4) == ["1"] * 5


def test_expand_product_of_geometrics():
    # coefficients (q^{k+1} - 1)/(q - 1)
    f = ((one() - z()) * (one() - qq() * z())).reciprocal()
    q = ScalarExpr.q(0)
    got = f.expand_at_zero(4)
    for k, c in enumerate(got):
        assert c == (q ** (k + 1) - 1) / (q - 1)


def test_expand_matches_convolution():
    f = (one() - z()).reciprocal()
    g = (one() - qq() * z()).reciprocal()
    a = f.expand_at_zero(5)
    b = g.expand_at_zero(5)
    c = (f * g).expand_at_zero(5)
    for k in range(6):
        conv = ScalarExpr.zero(0)
        for j in range(k + 1):
            conv = conv + a[j] * b[k - j]
        assert c[k] == conv


def test_expand_shifted_numerator():
    f = z() * z() * (one() - z()).reciprocal()
    assert expand_strings(f, 4) == ["0", "0", "1", "1", "1"]


def test_expand_with_z_free_denominator_factor():
    # (q-1) in the denominator must not disturb the z-expansion
    f = ((one() - z()) * (qq() - one())).reciprocal()
    q = ScalarExpr.q(0)
    for c in f.expand_at_zero(3):
        assert c == (q - 1).inverse()


def test_expand_detects_pole_at_zero():
    f = z().reciprocal()
    with pytest.raises(SpecializationPole):
        f.expand_at_zero(2)


def test_expand_cancelled_pole_is_fine():
    # z/(z(1-z)) is regular at 0 even though the denominator vanishes there
    f = z() * (z() * (one() - z())).reciprocal()
    assert expand_strings(f, 3) == ["1", "1", "1", "1"]


def test_expand_zero_function():
    f = MvRatFun.zero(0, 1)
    assert expand_strings(f, 2) == ["0", "0", "0"]


def test_expand_residue_cross_check():
    # c_k equals the residue of f(z)/z^{k+1} at z = 0
    f = ((one() - z()) * (one() - qq() * z())).reciprocal()
    coeffs = f.expand_at_zero(3)
    for k in range(4):
        integrand = f * (z() ** (k + 1)).reciprocal()
        got = integrand.residue_at(1, 0).to_scalar()
        assert got == coeffs[k]


def test_expand_requires_single_z():
    f = (one(2) - z(1, 2)).reciprocal()
    with pytest.raises(ValueError):
        f.expand_at_zero(2)


def test_expand_with_weil_symbols():
    # numerator carrying e-symbols flows through to the coefficients
    g2 = 2
    e1 = MvRatFun.from_scalar(ScalarExpr.e(1, g2), 1)
    f = e1 * (one(1, g2) - z(1, 1, g2)).reciprocal()
    for c in f.expand_at_zero(2):
        assert c == ScalarExpr.e(1, g2)

import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from dirac_matel.errors import BranchCutError, DomainError, PoleError
from dirac_matel.numerics import (
    assoc_legendre,
    gamma_c,
    hankel_sum_coefficients,
    hyp1f1,
    hyp2f1,
    laguerre,
    laguerre_coefficients,
    log_gamma_c,
    sph_bessel,
)

finite = st.floats(-5, 5, allow_nan=False)


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


# gamma ---------------------------------------------------------------------

def test_gamma_examples():
    assert gamma_c(1) == pytest.approx(1, abs=1e-15)
    assert gamma_c(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    g = gamma_c(1 + 1j)
    assert abs(g) ** 2 == pytest.approx(math.pi / math.sinh(math.pi), rel=1e-13)


def test_gamma_pole_and_overflow():
    with pytest.raises(PoleError):
        gamma_c(-3)
    with pytest.raises(OverflowError):
        gamma_c(200)
    assert log_gamma_c(200).real == pytest.approx(math.lgamma(200), rel=1e-14)


@given(st.floats(-30, 30), st.floats(-30, 30))
def test_gamma_recurrence(x, y):
    z = complex(x, y)
    if abs(z) > 30 or min(abs(z - n) for n in range(-31, 1)) < 1e-3:
        return
    try:
        lhs = gamma_c(z + 1)
        rhs = z * gamma_c(z)
    except OverflowError:
        return
    assert rel(lhs, rhs) < 1e-13


# 1F1 ---------------------------------------------------------------------

def test_hyp1f1_examples():
    assert hyp1f1(2, 5, 0)[0] == 1
    assert hyp1f1(1, 2, 1)[0].real == pytest.approx(math.e - 1, rel=1e-14)
    a, c, z = 1.3, 2.7, 0.9 + 0.4j
    lhs = hyp1f1(a, c, z)[0]
    rhs = np.exp(z) * hyp1f1(c - a, c, -z)[0]
    assert rel(lhs, rhs) < 1e-12


def test_hyp1f1_pole():
    with pytest.raises(PoleError):
        hyp1f1(1, -2, 0.3)


@pytest.mark.parametrize("a,c,z", [(1.5 + 0.5j, 3.1, 20j), (2.2 + 1j, 5.3, -30 + 4j), (0.7, 1.9, 45.0),
                                   (1 + 3j, 3, 12 - 12j), (3.3 - 0.2j, 7.1 + 1j, 80j)])
def test_hyp1f1_against_mpmath(a, c, z):
    ref = complex(mpmath.hyp1f1(a, c, z))
    assert rel(hyp1f1(a, c, z)[0], ref) < 1e-11


@given(finite, finite, finite, finite, st.floats(-5, 5))
def test_kummer_transformation(ar, ai, cr, ci, zr):
    a, c, z = complex(ar, ai), complex(cr, ci), complex(zr, ai / 2)
    if min(abs(c - n) for n in range(-6, 1)) < 0.05:
        return
    lhs = hyp1f1(a, c, z)[0]
    rhs = np.exp(z) * hyp1f1(c - a, c, -z)[0]
    scale = max(abs(lhs), abs(rhs))
    assert abs(lhs - rhs) <= 1e-12 * max(scale, 1e-3)


# 2F1 ---------------------------------------------------------------------

def test_hyp2f1_examples():
    assert hyp2f1(1.2, 0.3, 2.5, 0)[0] == 1
    assert hyp2f1(1, 1, 2, -1)[0].real == pytest.approx(math.log(2), rel=1e-14)
    assert hyp2f1(1, 1, 3, 1)[0].real == pytest.approx(2.0, rel=1e-12)


def test_hyp2f1_errors():
    with pytest.raises(BranchCutError):
        hyp2f1(0.5, 0.3, 1.7, 2.0)
    with pytest.raises(PoleError):
        hyp2f1(0.5, 0.3, -1, 0.2)
    # polynomial case is allowed on the cut
    assert hyp2f1(-2, 1, 1, 3.0)[0].real == pytest.approx((1 - 3.0) ** 2, rel=1e-14)


@pytest.mark.parametrize("a,b,c,z", [
    (0.5, 1.5, 1.0, -40.0),            # large negative real, Pfaff regime
    (1.25, 1.75, 1.5, -900.0),
    (1, 2, 3, 0.5 * np.exp(1j * np.pi / 3) * 2),  # exp(i pi / 3), no map helps
    (1.5, 1.5, 3.0, -7.0),             # integer a - b, degenerate connection
    (0.3 + 1j, 0.7, 2.1, 0.95),
    (2.0, 0.5, 2.5, 1 - 1e-9),         # c - a - b = 0
    (1 + 0.2j, 2.3, 4.5 - 1j, -2 + 3j),
])
def test_hyp2f1_against_mpmath(a, b, c, z):
    ref = complex(mpmath.hyp2f1(a, b, c, z))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        val = hyp2f1(a, b, c, z)[0]
    assert rel(val, ref) < 1e-9


def contiguous_residual(a, b, c, z):
    F = lambda cc: hyp2f1(a, b, cc, z)[0]
    t1 = c * (c - 1) * (z - 1) * F(c - 1)
    t2 = c * (c - 1 - (2 * c - a - b - 1) * z) * F(c)
    t3 = (c - a) * (c - b) * z * F(c + 1)
    return abs(t1 + t2 + t3) / max(abs(t1), abs(t2), abs(t3))


@given(finite, finite, st.floats(1.2, 6), st.floats(-3, 0.9), st.floats(-1, 1))
def test_hyp2f1_contiguous(a, b, c, zr, zi):
    z = complex(zr, zi)
    if abs(z - 1) < 0.05 or (zr > 1 and abs(zi) < 1e-3):
        return
    assert contiguous_residual(a, b, c, z) < 1e-10


# spherical Bessel -------------------------------------------------------------

def test_sph_bessel_examples():
    assert abs(sph_bessel(0, math.pi)) < 1e-15
    assert sph_bessel(0, 0.0) == 1.0
    assert sph_bessel(3, 0.0) == 0.0
    ref1 = float(mpmath.sqrt(mpmath.pi / 1.0) * mpmath.besselj(1.5, 0.5))
    assert sph_bessel(1, 0.5) == pytest.approx(ref1, rel=1e-14)
    assert sph_bessel(1, 0.5) == pytest.approx(0.1625370306, rel=1e-9)
    ref5 = float(mpmath.sqrt(mpmath.pi / 0.2) * mpmath.besselj(5.5, 0.1))
    assert rel(sph_bessel(5, 0.1), ref5) < 1e-12


def test_sph_bessel_domain():
    with pytest.raises(DomainError):
        sph_bessel(31, 1.0)
    with pytest.raises(DomainError):
        sph_bessel(1, -1.0)


@given(st.integers(1, 19), st.floats(0.1, 50))
def test_sph_bessel_recurrence(l, z):
    lhs = sph_bessel(l - 1, z) + sph_bessel(l + 1, z)
    rhs = (2 * l + 1) / z * sph_bessel(l, z)
    scale = max(abs(sph_bessel(l - 1, z)), abs(sph_bessel(l + 1, z)), abs(rhs))
    assert abs(lhs - rhs) <= 1e-11 * scale


def test_hankel_sum_coefficients_l0():
    assert hankel_sum_coefficients(0) == (-1j,)


# Legendre, Laguerre ---------------------------------------------------------

def test_assoc_legendre_examples():
    assert assoc_legendre(0, 0, 0.3) == 1.0
    assert assoc_legendre(2, 0, 0.0) == -0.5
    x = mpmath.mpf("0.4")
    rod = mpmath.diff(lambda t: (t * t - 1) ** 3, x, 5) / (2 ** 3 * 6)
    ref = float((1 - x * x) * rod)   # (-1)^2 (1-x^2) d^2/dx^2 P_3
    assert assoc_legendre(3, 2, 0.4) == pytest.approx(ref, rel=1e-13)
    with pytest.raises(DomainError):
        assoc_legendre(1, 2, 0.1)
    with pytest.raises(DomainError):
        assoc_legendre(1, 0, 1.5)


def test_assoc_legendre_orthogonality():
    x, w = np.polynomial.legendre.leggauss(40)
    for m in range(0, 5):
        for l in range(m, 10):
            for lp in range(m, 10):
                got = float(np.sum(w * assoc_legendre(l, m, x) * assoc_legendre(lp, m, x)))
                norm = lambda ll: 2 * math.factorial(ll + m) / ((2 * ll + 1) * math.factorial(ll - m))
                want = norm(l) if l == lp else 0.0
                assert abs(got - want) <= 1e-10 * math.sqrt(norm(l) * norm(lp))


def test_laguerre_examples():
    assert laguerre(0, 0.3, 1.7) == 1.0
    assert laguerre(1, 1, 2.0) == 0.0
    assert laguerre(2, 0, 1.0) == pytest.approx(-0.5, abs=1e-15)


@given(st.integers(0, 8), st.floats(-0.9, 4), st.floats(0, 10))
def test_laguerre_coefficients_match_recurrence(n, a, x):
    poly = np.polynomial.polynomial.polyval(x, laguerre_coefficients(n, a))
    assert poly == pytest.approx(laguerre(n, a, x), rel=1e-10, abs=1e-10)


# double-double rescue ----------------------------------------------------------

from dirac_matel import numerics as nm  # noqa: E402

# error-free products need the low part to stay out of the subnormal range
wide = st.floats(-1e6, 1e6, allow_nan=False).filter(lambda x: x == 0 or abs(x) > 1e-100)


def _dd_exact(x):
    return mpmath.mpf(x[0]) + mpmath.mpf(x[1])


@given(wide, wide)
def test_two_sum_and_two_prod_are_exact(a, b):
    s, e = nm._two_sum(a, b)
    assert mpmath.mpf(s) + e == mpmath.mpf(a) + b
    p, e = nm._two_prod(a, b)
    assert mpmath.mpf(p) + e == mpmath.mpf(a) * b


@given(wide, wide, wide, wide)
def test_double_double_arithmetic(a, b, c, d):
    mpmath.mp.dps = 50
    x = nm._two_sum(a, b / 3)
    y = nm._two_sum(c, d / 7)
    if y[0] == 0:
        return
    X, Y = _dd_exact(x), _dd_exact(y)
    for got, want in ((nm._dd_add(x, y), X + Y), (nm._dd_mul(x, y), X * Y), (nm._dd_div(x, y), X / Y)):
        assert abs(_dd_exact(got) - want) <= 1e-30 * max(abs(want), abs(X) + abs(Y))


def test_series_dd_recovers_cancelling_1f1():
    mpmath.mp.dps = 40
    a, c, z = 9.24961684852779 + 2.8972074336904j, -7.364642889592243 - 6.380685752955394j, \
        1.7308833783314146 + 4.4218120762016015j
    ref = complex(mpmath.hyp1f1(a, c, z))
    plain = nm._series([a], [c], np.array([z]), 0.0)[0][0]
    dd = nm._series_dd([a], [c], z, 0.0, 1e-17, 5000)[0]
    assert rel(dd, ref) < 1e-15
    assert rel(plain, ref) > 10 * rel(dd, ref)
    v, diag = hyp1f1(a, c, z)
    assert rel(v, ref) < 1e-14 and "double_double" in diag.transformation_applied


@pytest.mark.parametrize("a,b,c,z", [
    (-1.5776809599387864 + 3.974773921509988j, -3.767957601967487 + 2.729260904660229j,
     0.8776124438167378 - 4.803633226378271j, 2.511278632002602 - 1.2674667474678705j),
    (1.7823791851626702 + 4.475618651672325j, 1.1535282446845012 + 4.206560208862919j,
     -5.749773326279636 + 0.7922704614650057j, 0.4779481475473018 + 1.0802601505959373j),
])
def test_hyp2f1_ill_conditioned_continuation(a, b, c, z):
    mpmath.mp.dps = 40
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        v, diag = hyp2f1(a, b, c, z)
    assert rel(v, complex(mpmath.hyp2f1(a, b, c, z))) < 1e-14
    assert diag.rounding_bound < 1e-10 * abs(v)

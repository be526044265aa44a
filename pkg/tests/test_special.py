import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp

from ballspectra import special
from ballspectra.errors import DomainError, ParameterError, SingularArgumentError


# --- quadrature -------------------------------------------------------------


def test_gauss_linear_exact():
    rule = special.gauss_legendre_rule(5, 0.0, 1.0)
    assert rule.integrate(lambda x: x) == pytest.approx(0.5, abs=1e-15)


def test_gauss_two_point_rule():
    rule = special.gauss_legendre_rule(2)
    assert np.allclose(rule.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    assert np.allclose(rule.weights, [1.0, 1.0], atol=1e-15)


def test_gauss_matches_numpy_nodes():
    x, w = np.polynomial.legendre.leggauss(40)
    rule = special.gauss_legendre_rule(40)
    assert np.allclose(rule.nodes, x, atol=1e-14)
    assert np.allclose(rule.weights, w, atol=1e-14)


def test_gauss_order_50_against_order_200():
    def f(x):
        return x * np.abs(special.half_order_bessel_j(1, 2 * x)) ** 2

    lo = special.gauss_legendre_rule(50, 0, 1).integrate(f)
    hi = special.gauss_legendre_rule(200, 0, 1).integrate(f)
    assert abs(lo - hi) < 1e-10


@pytest.mark.parametrize("order,a,b", [(0, 0, 1), (3, 1, 1), (3, 2, 1)])
def test_gauss_rejects_bad_input(order, a, b):
    with pytest.raises(ParameterError):
        special.gauss_legendre_rule(order, a, b)


# --- spherical Bessel ---------------------------------------------------------


def test_j0_y0_closed_forms():
    assert special.spherical_jn(0, 1.0) == pytest.approx(math.sin(1.0), abs=1e-15)
    assert special.spherical_yn(0, 1.0) == pytest.approx(-math.cos(1.0), abs=1e-15)


def test_j1_at_two():
    expected = math.sin(2) / 4 - math.cos(2) / 2
    assert special.spherical_jn(1, 2.0) == pytest.approx(expected, rel=1e-14)
    assert abs(expected - 0.4353978) < 1e-7


def test_j_recurrence_complex():
    z = 1.7 - 0.4j
    j = [special.spherical_jn(n, z) for n in (2, 3, 4)]
    assert abs(j[2] - (7 / z * j[1] - j[0])) / abs(j[2]) < 1e-12


def test_j_at_zero():
    assert special.spherical_jn(0, 0.0) == 1.0
    assert special.spherical_jn(3, 0.0) == 0.0


def test_y_at_zero_raises():
    with pytest.raises(SingularArgumentError):
        special.spherical_yn(1, 0.0)
    with pytest.raises(SingularArgumentError):
        special.spherical_bessel_jy(1, 0.0)


def test_jy_at_zero_with_flag():
    j, y = special.spherical_bessel_jy(0, 0.0, allow_zero=True)
    assert j == 1.0


def test_y_overflow_is_an_error():
    with pytest.raises(OverflowError):
        special.spherical_yn(300, 1e-3)


def test_h0_closed_forms():
    assert special.spherical_hankel1(0, 1j) == pytest.approx(-math.exp(-1), abs=1e-15)
    expected = (math.sin(2) - 1j * math.cos(2)) / 2
    assert abs(special.spherical_hankel1(0, 2.0) - expected) < 1e-15
    assert abs(expected - (0.4546487 + 0.2080734j)) < 1e-7


def test_wronskian_complex():
    z = 3 + 0.5j
    w = special.spherical_jn(2, z) * special.spherical_yn_derivative(2, z) - special.spherical_jn_derivative(
        2, z
    ) * special.spherical_yn(2, z)
    assert abs(w * z * z - 1) < 1e-12


ZS = [0.3, 1.0, 2.5 + 0.7j, 7.5 - 2.0j, 15.0 + 0.1j, 30.0, 0.05 + 0.05j]


@pytest.mark.parametrize("z", ZS)
@pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 25, 50])
def test_against_scipy(n, z):
    jn = special.spherical_jn(n, z)
    ref = sp.spherical_jn(n, z)
    assert abs(jn - ref) <= 1e-12 * abs(ref) + 1e-300
    yn = special.spherical_yn(n, z)
    yref = sp.spherical_yn(n, z)
    assert abs(yn - yref) <= 1e-12 * abs(yref)


@pytest.mark.parametrize("z", [0.5, 2 + 1j, 10.0])
@pytest.mark.parametrize("n", [0, 3, 20])
def test_derivatives_against_scipy(n, z):
    assert abs(special.spherical_jn_derivative(n, z) - sp.spherical_jn(n, z, derivative=True)) < 1e-12 * max(
        1, abs(sp.spherical_jn(n, z, derivative=True))
    )
    assert abs(special.spherical_yn_derivative(n, z) - sp.spherical_yn(n, z, derivative=True)) < 1e-12 * abs(
        sp.spherical_yn(n, z, derivative=True)
    )


def test_vectorised_matches_scalar():
    z = np.array([0.5, 2 + 1j, 9.0])
    vec = special.spherical_jn(4, z)
    assert vec.shape == (3,)
    for zi, vi in zip(z, vec):
        assert vi == pytest.approx(special.spherical_jn(4, complex(zi)), rel=1e-15)


def test_large_order_underflow_region_via_log():
    # j_150(2) ~ 1e-250 is still representable; compare the log form with mpmath
    ref = mpmath.sqrt(mpmath.pi / 4) * mpmath.besselj(150.5, 2)
    val = special.log_spherical_jn(150, 2.0)
    assert abs(val.real - float(mpmath.log(abs(ref)))) < 1e-11
    val = special.log_spherical_jn(400, 3.0 + 1j)
    ref = mpmath.sqrt(mpmath.pi / (2 * mpmath.mpc(3, 1))) * mpmath.besselj(400.5, mpmath.mpc(3, 1))
    assert abs(val.real - float(mpmath.log(abs(ref)))) < 1e-10


def test_log_hankel_against_mpmath():
    z = mpmath.mpc(3, 1)
    ref = mpmath.sqrt(mpmath.pi / (2 * z)) * mpmath.hankel1(300.5, z)
    val = special.log_spherical_hankel1(300, 3 + 1j)
    assert abs(val.real - float(mpmath.log(abs(ref)))) < 1e-10
    phase = float(mpmath.arg(ref))
    assert abs(math.remainder(val.imag - phase, 2 * math.pi)) < 1e-9


def test_order_bound():
    with pytest.raises(DomainError):
        special.spherical_jn(401, 1.0)
    with pytest.raises(DomainError):
        special.spherical_jn(-1, 1.0)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=40),
    re=st.floats(min_value=0.2, max_value=30),
    im=st.floats(min_value=-3, max_value=3),
)
def test_wronskian_property(n, re, im):
    z = complex(re, im)
    w = special.spherical_jn(n, z) * special.spherical_yn_derivative(n, z) - special.spherical_jn_derivative(
        n, z
    ) * special.spherical_yn(n, z)
    assert abs(w * z * z - 1) < 1e-11


# --- half-order cylinder functions ------------------------------------------


def test_half_order_j_closed_form():
    assert special.half_order_bessel_j(0, 2.0) == pytest.approx(math.sin(2) / math.sqrt(math.pi), rel=1e-15)
    assert abs(math.sin(2) / math.sqrt(math.pi) - 0.5130161) < 1e-7


def test_half_order_j_zero_limit():
    assert special.half_order_bessel_j(0, 0.0) == 0
    assert abs(special.half_order_bessel_j(0, 1e-12)) < 1e-5


def test_half_order_j_at_table_point():
    z = 2.7394 - 0.0532j
    ref = complex(mpmath.besselj(1.5, mpmath.mpc(z.real, z.imag)))
    assert abs(special.half_order_bessel_j(1, z) - ref) < 1e-14


def test_half_order_hankel_closed_forms():
    h = special.half_order_hankel1(0, 2.0)
    expected = (math.sin(2) - 1j * math.cos(2)) / math.sqrt(math.pi)
    assert abs(h - expected) < 1e-15
    # closed form evaluated to 7 digits; -cos(2)/sqrt(pi) = 0.2347857
    assert abs(expected - (0.5130161 + 0.2347857j)) < 1e-7
    j1 = math.sin(2) / 4 - math.cos(2) / 2
    y1 = -math.cos(2) / 4 - math.sin(2) / 2
    assert abs(y1 + 0.3506120) < 1e-7
    h = special.half_order_hankel1(1, 2.0)
    assert abs(h - math.sqrt(4 / math.pi) * (j1 + 1j * y1)) < 1e-15
    assert abs(h - (0.4912938 - 0.3956233j)) < 1e-7


def test_half_order_hankel_zero_raises():
    with pytest.raises(SingularArgumentError):
        special.half_order_hankel1(0, 0.0)


@pytest.mark.parametrize("n", [0, 1, 4, 12])
@pytest.mark.parametrize("z", [0.7, 3 - 1j, 12 + 0.5j])
def test_half_order_against_scipy(n, z):
    assert abs(special.half_order_bessel_j(n, z) - sp.jv(n + 0.5, z)) < 1e-12 * max(1, abs(sp.jv(n + 0.5, z)))
    assert abs(special.half_order_hankel1(n, z) - sp.hankel1(n + 0.5, z)) < 1e-12 * abs(sp.hankel1(n + 0.5, z))
    assert abs(special.half_order_bessel_j_derivative(n, z) - sp.jvp(n + 0.5, z)) < 1e-12 * max(
        1, abs(sp.jvp(n + 0.5, z))
    )
    assert abs(special.half_order_hankel1_derivative(n, z) - sp.h1vp(n + 0.5, z)) < 1e-12 * abs(
        sp.h1vp(n + 0.5, z)
    )


# --- Legendre and harmonics -------------------------------------------------


def test_legendre_closed_forms():
    assert special.legendre_p(5, 1.0) == 1.0
    assert special.legendre_p(2, 0.0) == -0.5
    assert special.assoc_legendre(1, 0, 0.3) == pytest.approx(0.3)
    assert special.assoc_legendre(2, 0, 0.5) == pytest.approx(-0.125)
    assert special.assoc_legendre(1, 1, 0.0) == pytest.approx(-1.0)


def test_legendre_ode_n7():
    # (1 - x^2) P'' - 2 x P' + 56 P = 0 by central differences
    x, h = 0.42, 1e-3
    p = [special.legendre_p(7, x + s * h) for s in (-1, 0, 1)]
    d1 = (p[2] - p[0]) / (2 * h)
    d2 = (p[2] - 2 * p[1] + p[0]) / h**2
    assert abs((1 - x * x) * d2 - 2 * x * d1 + 56 * p[1]) < 1e-4


@pytest.mark.parametrize("n", [0, 1, 3, 8, 15])
def test_assoc_legendre_against_scipy(n):
    x = np.linspace(-0.95, 0.95, 7)
    for m in range(-n, n + 1):
        assert np.allclose(special.assoc_legendre(n, m, x), sp.lpmv(m, n, x), rtol=1e-12, atol=1e-14)


def test_assoc_legendre_domain():
    with pytest.raises(DomainError):
        special.assoc_legendre(2, 3, 0.1)
    with pytest.raises(DomainError):
        special.assoc_legendre(2, 1, 1.5)


def test_harmonic_values():
    assert abs(special.spherical_harmonic(0, 0, 0.4, 1.1) - 1 / math.sqrt(4 * math.pi)) < 1e-15
    assert abs(special.spherical_harmonic(1, 0, 0.0, 0.0) - math.sqrt(3 / (4 * math.pi))) < 1e-15


def test_harmonic_against_scipy():
    theta, phi = 0.9, 2.1
    for n in range(5):
        for m in range(-n, n + 1):
            # scipy: sph_harm(m, n, azimuth, polar), also with the Condon-Shortley phase
            if hasattr(sp, "sph_harm_y"):
                ref = sp.sph_harm_y(n, m, theta, phi)
            else:
                ref = sp.sph_harm(m, n, phi, theta)
            assert abs(special.spherical_harmonic(n, m, theta, phi) - ref) < 1e-13


def test_y21_unit_norm():
    ct = special.gauss_legendre_rule(10)
    nphi = 16
    th = np.arccos(ct.nodes)[:, None]
    ph = (2 * np.pi * np.arange(nphi) / nphi)[None, :]
    vals = np.abs(special.spherical_harmonic(2, 1, th, ph)) ** 2
    total = np.sum(ct.weights[:, None] * vals) * 2 * np.pi / nphi
    assert abs(total - 1) < 1e-10

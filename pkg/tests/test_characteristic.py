import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ballspectra.asymptotics import coupling_term_asymptotic
from ballspectra.characteristic import (
    ProblemParams,
    boundary_residual,
    char_fn,
    char_fn_derivative,
    coupling_term,
    coupling_term_scaled,
    coupling_term_unscaled,
)
from ballspectra.errors import DegenerateError, ParameterError, SingularArgumentError
from ballspectra.rootfinder import refine_newton

P = ProblemParams(2.0, 1.0)


def test_params_validation():
    with pytest.raises(ParameterError):
        ProblemParams(0, 1.0)
    with pytest.raises(ParameterError):
        ProblemParams(1.0, 0.0)
    with pytest.raises(ParameterError):
        ProblemParams(1.0, -2.0)
    with pytest.raises(ParameterError):
        ProblemParams(complex("nan"), 1.0)
    assert ProblemParams(1 + 1j, 2).kd == 2 + 2j


def test_coupling_n0_closed_form():
    # J_{1/2}, H_{1/2} and H'_{1/2} written out trigonometrically
    z = 2.0
    c = math.sqrt(2 / (math.pi * z))
    j = c * math.sin(z)
    h = -1j * c * cmath.exp(1j * z)
    dh = -h / (2 * z) + 1j * h
    expected = -0.5 + 1 + 0.125j * j * (h - 2 * 2.0 * dh)
    assert abs(complex(coupling_term(0, P)) - expected) < 1e-12


def test_coupling_n40_against_asymptotic():
    p = ProblemParams(1 + 1j, 1.0)
    exact = complex(coupling_term(40, p))
    asym = coupling_term_asymptotic(40, p)
    # gap is measured, not prescribed; it shrinks like 1/n
    gap = abs(exact - asym) / abs(exact)
    assert gap < 0.01


@pytest.mark.parametrize("n", [0, 1, 5, 20, 40, 60])
@pytest.mark.parametrize("kd", [0.5, 1.7 + 0.4j, 3 + 1j, 10.0])
def test_scaled_matches_unscaled(n, kd):
    p = ProblemParams(kd, 1.0)
    u = coupling_term_unscaled(n, p)
    s = coupling_term_scaled(n, p)
    assert abs(u - s) <= 1e-10 * abs(u)


def test_large_order_stays_finite():
    p = ProblemParams(1 + 1j, 1.0)
    t = complex(coupling_term(300, p))
    assert cmath.isfinite(t)
    assert abs(t - coupling_term_asymptotic(300, p)) < 1e-2


def test_coupling_is_cached():
    a = coupling_term(3, ProblemParams(2.5, 1.0))
    b = coupling_term(3, ProblemParams(2.5, 1.0))
    assert a == b


def test_char_fn_at_table_n0_root():
    assert abs(char_fn(0, P, 1.6364 + 0.0739j)) < 5e-4


def test_char_fn_at_table_n2_root():
    assert abs(char_fn(2, P, 3.9104 - 0.0072j)) < 5e-4


@pytest.mark.xfail(strict=True, reason="printed n=1 roots do not solve the characteristic equation; see README")
def test_char_fn_at_table_n1_root():
    assert abs(char_fn(1, P, 2.7440 - 0.0770j)) < 5e-4


def test_char_fn_small_argument():
    x = 1e-3
    val = char_fn(0, P, x)
    assert abs(val) < 0.03
    assert abs(val - math.sqrt(2 * x / math.pi) * math.sin(x) / x) < 1e-6


@pytest.mark.parametrize("n", [0, 1, 3, 7])
def test_char_fn_vanishes_at_origin(n):
    xs = [1e-2, 1e-4, 1e-6]
    vals = [abs(char_fn(n, P, x)) for x in xs]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 1e-2


def test_char_fn_rejects_zero():
    with pytest.raises(SingularArgumentError):
        char_fn(0, P, 0.0)


def test_degenerate_denominator():
    with pytest.raises(DegenerateError):
        char_fn(0, P, 1.0, T=-0.5)


def test_char_fn_vectorised():
    xs = np.array([1.0, 2.0 + 0.5j, 5.0])
    vals = char_fn(1, P, xs)
    for x, v in zip(xs, vals):
        assert v == pytest.approx(char_fn(1, P, complex(x)), rel=1e-15)


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(0, 10),
    re=st.floats(0.3, 18),
    im=st.floats(-2, 2),
)
def test_derivative_matches_difference(n, re, im):
    x = complex(re, im)
    h = 1e-6
    fd = (char_fn(n, P, x + h) - char_fn(n, P, x - h)) / (2 * h)
    d = char_fn_derivative(n, P, x)
    assert abs(fd - d) <= 1e-6 * max(1.0, abs(d))


def test_boundary_residual_zeros_coincide():
    for n, guess in [(0, 1.6 + 0.07j), (1, 6.1 + 0.0j), (2, 7.4 - 0.003j)]:
        root = refine_newton(lambda x: char_fn(n, P, x), lambda x: char_fn_derivative(n, P, x), guess)
        assert root.converged
        lam0 = P.k**2 - (root.x / P.delta) ** 2

        def g(lam):
            return boundary_residual(n, P, lam)

        def gp(lam, h=1e-7):
            return (g(lam + h) - g(lam - h)) / (2 * h)

        lam = refine_newton(g, gp, lam0 * (1 + 1e-6), tol=1e-13).x
        x_back = cmath.sqrt(P.k**2 - lam) * P.delta
        assert abs(x_back - root.x) < 1e-10


def test_boundary_residual_large_negative_lambda():
    # s delta = 50: oscillatory regime, finite
    lam = 4.0 - 2500.0
    val = boundary_residual(1, P, lam)
    assert cmath.isfinite(val)
    assert abs(val) < 10


def test_boundary_residual_degenerate():
    with pytest.raises(DegenerateError):
        boundary_residual(0, P, P.k**2)

"""Characteristic equation for the ball eigenvalue problem.

For a channel of degree ``n`` the roots ``mu`` of

    F_n(x) = J_{n+1/2}(x) - x / (delta*T + n + 1/2) * J_{n+3/2}(x)

give the eigenvalues through ``zeta = delta^2 / (mu^2 - (delta k)^2)``.
``T`` couples the interior problem to the exterior field and depends only
on ``(n, k, delta)``, so it is computed once per channel and passed around.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import special
from .errors import DegenerateError, ParameterError, SingularArgumentError

__all__ = [
    "ProblemParams",
    "CouplingTerm",
    "coupling_term",
    "coupling_term_unscaled",
    "coupling_term_scaled",
    "char_fn",
    "char_fn_derivative",
    "boundary_residual",
    "DEGENERATE_DENOMINATOR_TOL",
]

DEGENERATE_DENOMINATOR_TOL = 1e-14


@dataclass(frozen=True)
class ProblemParams:
    """Wave number ``k`` (complex, nonzero) and ball radius ``delta`` (> 0)."""

    k: complex
    delta: float

    def __post_init__(self):
        k = complex(self.k)
        if not (math.isfinite(k.real) and math.isfinite(k.imag)):
            raise ParameterError(f"wave number must be finite, got {self.k!r}")
        if k == 0:
            raise ParameterError("wave number k must be nonzero")
        d = float(self.delta)
        if not (math.isfinite(d) and d > 0):
            raise ParameterError(f"radius delta must be positive, got {self.delta!r}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "delta", d)

    @property
    def kd(self) -> complex:
        return self.k * self.delta


@dataclass(frozen=True)
class CouplingTerm:
    n: int
    value: complex

    def __complex__(self):
        return self.value


def _bracket(n, p, jh, dlog_h):
    # T = -1/(2 delta) + 1 + (i/8)(-1)^n J H [1 - 2 delta k H'/H]
    sign = -1.0 if n % 2 else 1.0
    return -1.0 / (2.0 * p.delta) + 1.0 + 0.125j * sign * jh * (1.0 - 2.0 * p.delta * p.k * dlog_h)


def coupling_term_unscaled(n: int, p: ProblemParams) -> complex:
    """T from direct evaluation of ``J_{n+1/2}``, ``H^(1)_{n+1/2}`` and ``H'``."""
    z = p.kd
    j = special.half_order_bessel_j(n, z)
    h = special.half_order_hankel1(n, z)
    dh = special.half_order_hankel1_derivative(n, z)
    sign = -1.0 if n % 2 else 1.0
    return -1.0 / (2.0 * p.delta) + 1.0 + 0.125j * sign * j * (h - 2.0 * p.delta * p.k * dh)


def coupling_term_scaled(n: int, p: ProblemParams) -> complex:
    """T with the product ``J H`` formed in log space.

    ``J_{n+1/2}(z) H^(1)_{n+1/2}(z) = (2z/pi) j_n(z) h_n(z)`` and
    ``H'/H = 1/(2z) + h_n'/h_n``; neither factor is materialised.
    """
    z = p.kd
    log_jh = cmath.log(2.0 * z / math.pi) + special.log_spherical_jn(n, z) + special.log_spherical_hankel1(n, z)
    jh = cmath.exp(log_jh)
    dlog_h = 1.0 / (2.0 * z) + special.hankel1_log_derivative(n, z)
    return _bracket(n, p, jh, dlog_h)


@lru_cache(maxsize=4096)
def _coupling_cached(n, k, delta):
    p = ProblemParams(k, delta)
    if n + 0.5 > special.LARGE_ORDER_THRESHOLD:
        return coupling_term_scaled(n, p)
    try:
        value = coupling_term_unscaled(n, p)
    except OverflowError:
        return coupling_term_scaled(n, p)
    if not cmath.isfinite(value):
        return coupling_term_scaled(n, p)
    return value


def coupling_term(n: int, p: ProblemParams) -> CouplingTerm:
    """Coupling term ``T(n, k, delta)``.

    Direct evaluation for ``n + 1/2 <= 80``, log-scaled products above that
    or whenever the direct path overflows. Results are memoised per
    ``(n, k, delta)``.
    """
    if int(n) != n or n < 0:
        raise ParameterError(f"n must be a nonnegative integer, got {n!r}")
    return CouplingTerm(int(n), _coupling_cached(int(n), p.k, p.delta))


def _denominator(n, p, T):
    if T is None:
        T = coupling_term(n, p)
    T = complex(T)
    den = p.delta * T + n + 0.5
    if abs(den) < DEGENERATE_DENOMINATOR_TOL:
        raise DegenerateError(f"delta*T + n + 1/2 vanishes for n={n}, k={p.k}, delta={p.delta}")
    return den


def _check_x(x):
    xa = np.asarray(x, dtype=complex)
    if np.any(xa == 0):
        raise SingularArgumentError("characteristic function is evaluated at x != 0 only")
    return xa


def char_fn(n: int, p: ProblemParams, x, T=None):
    """``F_n(x) = J_{n+1/2}(x) - x/(delta T + n + 1/2) J_{n+3/2}(x)``.

    ``x`` may be an array. Pass a precomputed ``T`` (complex or
    CouplingTerm) to skip the lookup.
    """
    den = _denominator(n, p, T)
    xa = _check_x(x)
    seq = special.spherical_jn_sequence(n + 1, xa, special.N_MAX_DEFAULT + 1)
    fac = np.sqrt(2.0 * xa / np.pi)
    val = fac * (seq[n] - xa / den * seq[n + 1])
    return complex(val) if val.ndim == 0 else val


def char_fn_derivative(n: int, p: ProblemParams, x, T=None):
    """Analytic ``dF_n/dx`` using ``J'_nu = (nu/x) J_nu - J_{nu+1}``."""
    den = _denominator(n, p, T)
    xa = _check_x(x)
    seq = special.spherical_jn_sequence(n + 2, xa, special.N_MAX_DEFAULT + 2)
    fac = np.sqrt(2.0 * xa / np.pi)
    nu = n + 0.5
    j0, j1, j2 = fac * seq[n], fac * seq[n + 1], fac * seq[n + 2]
    dj0 = nu / xa * j0 - j1
    dj1 = (nu + 1.0) / xa * j1 - j2
    val = dj0 - (j1 + xa * dj1) / den
    return complex(val) if val.ndim == 0 else val


def boundary_residual(n: int, p: ProblemParams, lam, T=None):
    """Reduced boundary condition at a candidate eigenvalue ``lam``.

    ``J_nu(s delta) + (s/T) J'_nu(s delta)`` with ``s = sqrt(k^2 - lam)``
    (principal branch). Equals ``F_n(s delta) (delta T + nu) / (delta T)``,
    so its zeros are those of the characteristic function.
    """
    if T is None:
        T = coupling_term(n, p)
    T = complex(T)
    if T == 0:
        raise DegenerateError("coupling term vanishes")
    lam = np.asarray(lam, dtype=complex)
    s2 = p.k * p.k - lam
    if np.any(s2 == 0):
        raise DegenerateError("lambda = k^2 makes the radial argument vanish")
    s = np.sqrt(s2)
    x = s * p.delta
    j = special.half_order_bessel_j(n, x)
    dj = special.half_order_bessel_j_derivative(n, x)
    val = j + s / T * dj
    return complex(val) if np.ndim(val) == 0 else val

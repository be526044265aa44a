"""Special functions used throughout the package.

Spherical Bessel/Hankel functions of complex argument, the half-integer
cylinder functions built from them, Legendre functions, spherical
harmonics and Gauss-Legendre quadrature. Everything is written directly on
top of numpy; scipy is not required at runtime.

The spherical functions accept scalar or array arguments ``z`` and a scalar
integer order ``n``. Scalars in give Python complex out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError, SingularArgumentError

__all__ = [
    "QuadratureRule",
    "gauss_legendre_rule",
    "spherical_jn_sequence",
    "spherical_bessel_jy",
    "spherical_jn",
    "spherical_yn",
    "spherical_hankel1",
    "spherical_hankel1_derivative",
    "spherical_jn_derivative",
    "spherical_yn_derivative",
    "log_spherical_jn",
    "log_spherical_hankel1",
    "hankel1_log_derivative",
    "half_order_bessel_j",
    "half_order_bessel_j_derivative",
    "half_order_hankel1",
    "half_order_hankel1_derivative",
    "legendre_p",
    "assoc_legendre",
    "spherical_harmonic",
    "N_MAX_DEFAULT",
    "LARGE_ORDER_THRESHOLD",
]

N_MAX_DEFAULT = 400
# n + 1/2 above this switches products J*H to log-scaled evaluation
LARGE_ORDER_THRESHOLD = 80.0

_RESCALE = 1e250


# --------------------------------------------------------------------------
# Quadrature
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a quadrature rule on ``interval``."""

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def __len__(self):
        return len(self.nodes)

    def integrate(self, f):
        """Apply the rule to a callable or to precomputed samples."""
        values = f(self.nodes) if callable(f) else np.asarray(f)
        return np.sum(self.weights * values, axis=-1)


def _legendre_with_derivative(order, x):
    p0 = np.ones_like(x)
    p1 = x.copy()
    if order == 0:
        return p0, np.zeros_like(x)
    for k in range(2, order + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = order * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


def gauss_legendre_rule(order: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """Gauss-Legendre rule with ``order`` points on ``(a, b)``.

    Nodes are found by Newton iteration on P_order starting from the
    Tricomi estimate; the iteration stops once every correction is below
    1e-15.

    Parameters
    ----------
    order : int
        Number of nodes, at least 1.
    a, b : float
        Interval end points with ``a < b``.

    Returns
    -------
    QuadratureRule
        Nodes sorted ascending, positive weights.
    """
    if int(order) != order or order < 1:
        raise ParameterError(f"quadrature order must be a positive integer, got {order!r}")
    if not a < b:
        raise ParameterError(f"invalid interval ({a}, {b}): need a < b")
    order = int(order)
    if order == 1:
        x = np.array([0.0])
        w = np.array([2.0])
    else:
        i = np.arange(1, order + 1)
        x = np.cos(np.pi * (i - 0.25) / (order + 0.5))
        for _ in range(100):
            p, dp = _legendre_with_derivative(order, x)
            dx = p / dp
            x = x - dx
            if np.max(np.abs(dx)) < 1e-15:
                break
        p, dp = _legendre_with_derivative(order, x)
        w = 2.0 / ((1.0 - x * x) * dp * dp)
        x = x[::-1].copy()
        w = w[::-1].copy()
    half = 0.5 * (b - a)
    nodes = a + half * (x + 1.0)
    return QuadratureRule(nodes=nodes, weights=half * w, interval=(float(a), float(b)))


# --------------------------------------------------------------------------
# Spherical Bessel functions
# --------------------------------------------------------------------------


def _as_complex(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def _check_order(n, n_max):
    if int(n) != n or n < 0:
        raise DomainError(f"order must be a nonnegative integer, got {n!r}")
    if n > n_max:
        raise DomainError(f"order {n} exceeds n_max={n_max}")
    return int(n)


def _j01(z):
    s, c = np.sin(z), np.cos(z)
    return s / z, s / (z * z) - c / z


def _jn_upward(nmax, z):
    out = np.empty((nmax + 1,) + z.shape, dtype=complex)
    out[0], j1 = _j01(z)
    if nmax >= 1:
        out[1] = j1
    for l in range(1, nmax):
        out[l + 1] = (2 * l + 1) / z * out[l] - out[l - 1]
    return out


def _jn_miller(nmax, z):
    # Downward recurrence from a start well above both nmax and |z|,
    # normalized by whichever of j_0, j_1 is larger in modulus.
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    top = max(nmax, int(zmax)) + 1
    start = top + 20 + int(math.sqrt(40.0 * top))
    out = np.zeros((nmax + 1,) + z.shape, dtype=complex)
    f_next = np.zeros(z.shape, dtype=complex)
    f_cur = np.full(z.shape, 1e-30, dtype=complex)
    for l in range(start, 0, -1):
        f_prev = (2 * l + 1) / z * f_cur - f_next
        f_next, f_cur = f_cur, f_prev
        if l - 1 <= nmax:
            out[l - 1] = f_cur
        big = np.abs(f_cur) > _RESCALE
        if np.any(big):
            scale = np.where(big, 1.0 / _RESCALE, 1.0)
            f_cur = f_cur * scale
            f_next = f_next * scale
            lo = l - 1
            if lo <= nmax:
                out[lo:] = out[lo:] * scale
    j0, j1 = _j01(z)
    f0 = out[0]
    f1 = f_next if nmax < 1 else out[1]
    use_j0 = np.abs(j0) >= np.abs(j1)
    norm = np.where(use_j0, j0 / np.where(use_j0, f0, 1.0), j1 / np.where(use_j0, 1.0, f1))
    return out * norm


def spherical_jn_sequence(nmax: int, z, n_max: int = N_MAX_DEFAULT) -> np.ndarray:
    """Return ``j_0(z) ... j_nmax(z)`` stacked along the first axis.

    Orders with ``l <= |z|`` use upward recurrence from the closed forms;
    higher orders come from Miller's downward recurrence.
    """
    nmax = _check_order(nmax, n_max)
    z, _ = _as_complex(z)
    if np.any(z == 0):
        raise SingularArgumentError("spherical_jn_sequence requires z != 0; use spherical_jn for z = 0")
    # upward values above |z| are discarded below; their overflow is expected
    with np.errstate(over="ignore", invalid="ignore"):
        up = _jn_upward(nmax, z)
    absz = np.abs(z)
    if nmax <= np.min(absz):
        return up
    down = _jn_miller(nmax, z)
    orders = np.arange(nmax + 1).reshape((-1,) + (1,) * z.ndim)
    return np.where(orders <= absz, up, down)


def _yn_upward(nmax, z):
    out = np.empty((nmax + 1,) + z.shape, dtype=complex)
    s, c = np.sin(z), np.cos(z)
    out[0] = -c / z
    if nmax >= 1:
        out[1] = -c / (z * z) - s / z
    with np.errstate(over="ignore", invalid="ignore"):
        for l in range(1, nmax):
            out[l + 1] = (2 * l + 1) / z * out[l] - out[l - 1]
    if not np.all(np.isfinite(out)):
        raise OverflowError(f"y_n overflow for order <= {nmax} at |z| >= {np.min(np.abs(z)):.3g}")
    return out


def _h1_upward(nmax, z):
    out = np.empty((nmax + 1,) + z.shape, dtype=complex)
    e = np.exp(1j * z)
    out[0] = -1j * e / z
    if nmax >= 1:
        out[1] = -(z + 1j) * e / (z * z)
    with np.errstate(over="ignore", invalid="ignore"):
        for l in range(1, nmax):
            out[l + 1] = (2 * l + 1) / z * out[l] - out[l - 1]
    if not np.all(np.isfinite(out)):
        raise OverflowError(f"h_n overflow for order <= {nmax} at |z| >= {np.min(np.abs(z)):.3g}")
    return out


def _unwrap(arr, scalar):
    return complex(arr) if scalar else arr


def spherical_jn(n: int, z, n_max: int = N_MAX_DEFAULT):
    """Spherical Bessel function of the first kind; ``j_n(0)`` is 1 for n=0, else 0."""
    n = _check_order(n, n_max)
    z, scalar = _as_complex(z)
    zero = z == 0
    zz = np.where(zero, 1.0, z)
    val = spherical_jn_sequence(n, zz, n_max)[n]
    val = np.where(zero, 1.0 if n == 0 else 0.0, val)
    return _unwrap(val, scalar)


def spherical_yn(n: int, z, n_max: int = N_MAX_DEFAULT):
    n = _check_order(n, n_max)
    z, scalar = _as_complex(z)
    if np.any(z == 0):
        raise SingularArgumentError("y_n is singular at z = 0")
    return _unwrap(_yn_upward(n, z)[n], scalar)


def spherical_bessel_jy(n: int, z, n_max: int = N_MAX_DEFAULT, allow_zero: bool = False):
    """Return ``(j_n(z), y_n(z))``.

    With ``allow_zero=True`` a zero argument yields ``(j_n(0), nan)``
    instead of raising.
    """
    n = _check_order(n, n_max)
    zc, scalar = _as_complex(z)
    if np.any(zc == 0):
        if not allow_zero:
            raise SingularArgumentError("y_n is singular at z = 0")
        if scalar:
            return (1.0 + 0j if n == 0 else 0j), complex(np.nan)
        raise SingularArgumentError("allow_zero is supported for scalar arguments only")
    j = spherical_jn_sequence(n, zc, n_max)[n]
    y = _yn_upward(n, zc)[n]
    return _unwrap(j, scalar), _unwrap(y, scalar)


def spherical_hankel1(n: int, z, n_max: int = N_MAX_DEFAULT):
    """Spherical Hankel function ``h_n^(1) = j_n + i y_n`` by upward recurrence."""
    n = _check_order(n, n_max)
    z, scalar = _as_complex(z)
    if np.any(z == 0):
        raise SingularArgumentError("h_n^(1) is singular at z = 0")
    return _unwrap(_h1_upward(n, z)[n], scalar)


def _derivative_from_sequence(seq, n, z):
    if n == 0:
        return -seq[1]
    return seq[n - 1] - (n + 1) / z * seq[n]


def spherical_jn_derivative(n: int, z, n_max: int = N_MAX_DEFAULT):
    n = _check_order(n, n_max)
    z, scalar = _as_complex(z)
    if np.any(z == 0):
        raise SingularArgumentError("derivative formula requires z != 0")
    seq = spherical_jn_sequence(n + 1, z, n_max + 1)
    return _unwrap(_derivative_from_sequence(seq, n, z), scalar)


def spherical_yn_derivative(n: int, z, n_max: int = N_MAX_DEFAULT):
    n = _check_order(n, n_max)
    z, scalar = _as_complex(z)
    if np.any(z == 0):
        raise SingularArgumentError("y_n is singular at z = 0")
    seq = _yn_upward(n + 1, z)
    return _unwrap(_derivative_from_sequence(seq, n, z), scalar)


def spherical_hankel1_derivative(n: int, z, n_max: int = N_MAX_DEFAULT):
    """``h_n'(z) = h_{n-1}(z) - (n+1)/z h_n(z)`` (``-h_1`` for n = 0)."""
    n = _check_order(n, n_max)
    z, scalar = _as_complex(z)
    if np.any(z == 0):
        raise SingularArgumentError("h_n^(1) is singular at z = 0")
    seq = _h1_upward(n + 1, z)
    return _unwrap(_derivative_from_sequence(seq, n, z), scalar)


# --------------------------------------------------------------------------
# Log-scaled evaluation for large orders
# --------------------------------------------------------------------------


def _wrap_phase(logval):
    logval = complex(logval)
    return complex(logval.real, math.remainder(logval.imag, 2.0 * math.pi))


def log_spherical_jn(n: int, z: complex, n_max: int = N_MAX_DEFAULT) -> complex:
    """Complex logarithm of ``j_n(z)`` (modulus exact, phase mod 2*pi).

    Built from the ratios ``j_l / j_{l-1}``, obtained by running the ratio
    form of the downward recurrence from far above ``max(n, |z|)``. The
    result stays finite when ``j_n`` itself underflows.
    """
    n = _check_order(n, n_max)
    z = complex(z)
    if z == 0:
        raise SingularArgumentError("log j_n is undefined at z = 0")
    top = max(n, int(abs(z))) + 1
    start = top + 20 + int(math.sqrt(40.0 * top))
    ratio = 0j
    ratios = [0j] * (n + 1)
    for l in range(start, 0, -1):
        ratio = z / ((2 * l + 1) - z * ratio)
        if l <= n:
            ratios[l] = ratio
    j0, j1 = (complex(v) for v in _j01(np.asarray(z)))
    if abs(j0) >= abs(j1) or n == 0:
        acc = np.log(j0)
        first = 1
    else:
        acc = np.log(j1)
        first = 2
    for l in range(first, n + 1):
        acc += np.log(ratios[l])
    return _wrap_phase(acc)


def _h1_ratios(n, z):
    # sigma_l = h_l / h_{l-1}; upward recurrence is stable for h^(1)
    ratios = [0j] * (n + 2)
    if n + 1 >= 1:
        ratios[1] = (z + 1j) / (1j * z)
    for l in range(2, n + 2):
        ratios[l] = (2 * l - 1) / z - 1.0 / ratios[l - 1]
    return ratios


def log_spherical_hankel1(n: int, z: complex, n_max: int = N_MAX_DEFAULT) -> complex:
    """Complex logarithm of ``h_n^(1)(z)`` via upward ratio recurrence."""
    n = _check_order(n, n_max)
    z = complex(z)
    if z == 0:
        raise SingularArgumentError("h_n^(1) is singular at z = 0")
    ratios = _h1_ratios(n, z)
    acc = np.log(-1j / z) + 1j * z
    for l in range(1, n + 1):
        acc += np.log(ratios[l])
    return _wrap_phase(acc)


def hankel1_log_derivative(n: int, z: complex, n_max: int = N_MAX_DEFAULT) -> complex:
    """``h_n'(z) / h_n(z)`` without forming ``h_n``."""
    n = _check_order(n, n_max)
    z = complex(z)
    if z == 0:
        raise SingularArgumentError("h_n^(1) is singular at z = 0")
    ratios = _h1_ratios(n, z)
    if n == 0:
        return -ratios[1]
    return 1.0 / ratios[n] - (n + 1) / z


# --------------------------------------------------------------------------
# Half-integer order cylinder functions
# --------------------------------------------------------------------------


def _cyl_factor(z):
    # principal branch of sqrt(2 z / pi)
    return np.sqrt(2.0 * z / np.pi)


def half_order_bessel_j(n: int, z, n_max: int = N_MAX_DEFAULT):
    """``J_{n+1/2}(z) = sqrt(2z/pi) j_n(z)``, principal branch; 0 at z = 0."""
    n = _check_order(n, n_max)
    zc, scalar = _as_complex(z)
    zero = zc == 0
    zz = np.where(zero, 1.0, zc)
    val = _cyl_factor(zz) * spherical_jn_sequence(n, zz, n_max)[n]
    val = np.where(zero, 0.0, val)
    return _unwrap(val, scalar)


def half_order_bessel_j_derivative(n: int, z, n_max: int = N_MAX_DEFAULT):
    """``J'_nu(z) = (nu/z) J_nu(z) - J_{nu+1}(z)`` with ``nu = n + 1/2``."""
    n = _check_order(n, n_max)
    zc, scalar = _as_complex(z)
    if np.any(zc == 0):
        raise SingularArgumentError("derivative formula requires z != 0")
    seq = spherical_jn_sequence(n + 1, zc, n_max + 1)
    fac = _cyl_factor(zc)
    nu = n + 0.5
    val = fac * (nu / zc * seq[n] - seq[n + 1])
    return _unwrap(val, scalar)


def half_order_hankel1(n: int, z, n_max: int = N_MAX_DEFAULT):
    """``H^(1)_{n+1/2}(z) = sqrt(2z/pi) h_n^(1)(z)``."""
    n = _check_order(n, n_max)
    zc, scalar = _as_complex(z)
    if np.any(zc == 0):
        raise SingularArgumentError("H^(1) is singular at z = 0")
    val = _cyl_factor(zc) * _h1_upward(n, zc)[n]
    return _unwrap(val, scalar)


def half_order_hankel1_derivative(n: int, z, n_max: int = N_MAX_DEFAULT):
    """Derivative of ``H^(1)_{n+1/2}`` in its argument.

    Chain rule through the prefactor:
    ``sqrt(2z/pi) * (h_n(z) / (2z) + h_n'(z))``.
    """
    n = _check_order(n, n_max)
    zc, scalar = _as_complex(z)
    if np.any(zc == 0):
        raise SingularArgumentError("H^(1) is singular at z = 0")
    seq = _h1_upward(n + 1, zc)
    dh = _derivative_from_sequence(seq, n, zc)
    val = _cyl_factor(zc) * (seq[n] / (2.0 * zc) + dh)
    return _unwrap(val, scalar)


# --------------------------------------------------------------------------
# Legendre functions and spherical harmonics
# --------------------------------------------------------------------------


def _check_unit(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + 1e-14):
        raise DomainError("argument must lie in [-1, 1]")
    return np.clip(x, -1.0, 1.0)


def legendre_p(n: int, x):
    """Legendre polynomial ``P_n(x)`` by Bonnet's recurrence."""
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a nonnegative integer, got {n!r}")
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    p0 = np.ones_like(xa)
    if n == 0:
        out = p0
    else:
        p1 = xa.copy()
        for k in range(2, int(n) + 1):
            p0, p1 = p1, ((2 * k - 1) * xa * p1 - (k - 1) * p0) / k
        out = p1
    return float(out) if scalar else out


def assoc_legendre(n: int, m: int, x):
    """Associated Legendre function ``P_n^m(x)`` with the Condon-Shortley phase.

    Negative orders use ``P_n^{-m} = (-1)^m (n-m)!/(n+m)! P_n^m``.
    """
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a nonnegative integer, got {n!r}")
    n, m = int(n), int(m)
    if abs(m) > n:
        raise DomainError(f"|m| = {abs(m)} exceeds degree n = {n}")
    x = _check_unit(x)
    scalar = x.ndim == 0
    ma = abs(m)
    # P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    s = np.sqrt((1.0 - x) * (1.0 + x))
    pmm = np.ones_like(x)
    for i in range(1, ma + 1):
        pmm = -pmm * (2 * i - 1) * s
    if n == ma:
        out = pmm
    else:
        pm1 = x * (2 * ma + 1) * pmm
        if n == ma + 1:
            out = pm1
        else:
            a, b = pmm, pm1
            for l in range(ma + 2, n + 1):
                a, b = b, ((2 * l - 1) * x * b - (l + ma - 1) * a) / (l - ma)
            out = b
    if m < 0:
        out = (-1) ** ma * math.exp(math.lgamma(n - ma + 1) - math.lgamma(n + ma + 1)) * out
    return float(out) if scalar else out


def spherical_harmonic(n: int, m: int, theta, phi):
    """Orthonormal spherical harmonic ``Y_n^m(theta, phi)``.

    ``sqrt((2n+1)/(4 pi) (n-m)!/(n+m)!) P_n^m(cos theta) e^{i m phi}``
    with the Condon-Shortley phase inside ``P_n^m``.
    """
    if abs(int(m)) > int(n):
        raise DomainError(f"|m| = {abs(m)} exceeds degree n = {n}")
    n, m = int(n), int(m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    lognorm = 0.5 * (math.lgamma(n - m + 1) - math.lgamma(n + m + 1))
    norm = math.sqrt((2 * n + 1) / (4.0 * math.pi)) * math.exp(lognorm)
    val = norm * assoc_legendre(n, m, np.cos(theta)) * np.exp(1j * m * phi)
    return complex(val) if np.ndim(val) == 0 else val

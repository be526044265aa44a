"""Independent checks of the eigensystem against the volume operator itself.

On a spherical-harmonic channel of degree ``n`` the volume potential with
the outgoing Helmholtz kernel reduces to the radial integral operator

    (N_n f)(r) = i k int_0^delta j_n(k min(r, rho)) h_n(k max(r, rho)) f(rho) rho^2 drho,

which is discretised here by Gauss rules split at ``rho = r``. None of this
uses the characteristic equation, so it can falsify it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import special
from .characteristic import ProblemParams
from .eigensystem import EigenMode, radial_eigenfunction
from .errors import DomainError, ParameterError, SingularArgumentError
from .rootfinder import RootOptions, RootRecord, SearchRegion, find_roots
from .special import QuadratureRule, gauss_legendre_rule

__all__ = [
    "RadialSamples",
    "KernelConfig",
    "PowerIterationResult",
    "fundamental_solution",
    "kernel_expansion",
    "kernel_expansion_paper_form",
    "barycentric_interpolate",
    "radial_kernel",
    "apply_radial_newtonian",
    "radial_operator_matrix",
    "kernel_matrix",
    "eigenpair_residual",
    "dominant_eigenvalue_power_iteration",
    "transmission_fn",
    "transmission_fn_derivative",
    "transmission_roots",
]


@dataclass(frozen=True)
class RadialSamples:
    """Values of a radial function on the nodes of ``rule``.

    ``func`` optionally supplies the exact function, used in place of
    interpolation when the operator needs values off the nodes.
    """

    values: np.ndarray
    rule: QuadratureRule
    func: Callable | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != self.rule.nodes.shape:
            raise ParameterError("values length must equal the rule's node count")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, func: Callable, rule: QuadratureRule, keep_callable: bool = True) -> "RadialSamples":
        return cls(np.asarray(func(rule.nodes), dtype=complex), rule, func if keep_callable else None)

    def __call__(self, rho):
        if self.func is not None:
            return np.asarray(self.func(rho), dtype=complex)
        return barycentric_interpolate(self.rule, self.values, rho)


@dataclass(frozen=True)
class KernelConfig:
    n_max: int = 40
    split_quadrature_order: int = 200

    def __post_init__(self):
        if self.n_max < 1:
            raise ParameterError("n_max must be >= 1")
        if self.split_quadrature_order < 1:
            raise ParameterError("split_quadrature_order must be >= 1")


# --------------------------------------------------------------------------
# Kernel and its expansion
# --------------------------------------------------------------------------


def fundamental_solution(x, y, k) -> complex:
    """Outgoing Helmholtz kernel ``exp(ik|x-y|) / (4 pi |x-y|)``."""
    d = float(np.linalg.norm(np.asarray(x, dtype=float) - np.asarray(y, dtype=float)))
    if d == 0:
        raise SingularArgumentError("fundamental solution is singular at x = y")
    k = complex(k)
    return complex(np.exp(1j * k * d) / (4.0 * math.pi * d))


def _radii_and_cos(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rx, ry = float(np.linalg.norm(x)), float(np.linalg.norm(y))
    if rx == 0 or ry == 0:
        raise SingularArgumentError("expansion requires x, y != 0")
    cosang = float(np.clip(np.dot(x, y) / (rx * ry), -1.0, 1.0))
    return rx, ry, cosang


def kernel_expansion(x, y, k, cfg: KernelConfig = KernelConfig()) -> complex:
    """Addition-theorem series for the kernel, truncated at ``cfg.n_max``.

    ``ik/(4 pi) sum_n (2n+1) j_n(k r_<) h_n(k r_>) P_n(cos angle)``.
    Equal radii only converge slowly; that case warns instead of raising.
    """
    rx, ry, c = _radii_and_cos(x, y)
    if rx == ry:
        warnings.warn("|x| = |y|: addition-theorem series converges slowly", RuntimeWarning, stacklevel=2)
    k = complex(k)
    rmin, rmax = min(rx, ry), max(rx, ry)
    js = special.spherical_jn_sequence(cfg.n_max, k * rmin, cfg.n_max)
    hs = special._h1_upward(cfg.n_max, np.asarray(k * rmax, dtype=complex))
    total = 0j
    p0, p1 = 1.0, c
    for n in range(cfg.n_max + 1):
        pn = p0 if n == 0 else p1
        total += (2 * n + 1) * js[n] * hs[n] * pn
        if n >= 1:
            p0, p1 = p1, ((2 * n + 1) * c * p1 - n * p0) / (n + 1)
    return complex(1j * k / (4.0 * math.pi) * total)


def kernel_expansion_paper_form(x, y, k, n_max: int = 40) -> complex:
    """The alternating variant with ``(-1)^n`` and ``x`` fixed as inner point.

    ``(i/4) sum (n+1/2) (-1)^n J_{n+1/2}(k|x|)/sqrt|x| H_{n+1/2}(k|y|)/sqrt|y| P_n(cos angle)``.
    Because ``P_n(-t) = (-1)^n P_n(t)`` this equals the kernel at ``(x, -y)``
    for ``|x| < |y|``, not at ``(x, y)``; kept for comparison only.
    """
    rx, ry, c = _radii_and_cos(x, y)
    k = complex(k)
    total = 0j
    for n in range(n_max + 1):
        term = (
            (n + 0.5)
            * (-1) ** n
            * special.half_order_bessel_j(n, k * rx)
            / math.sqrt(rx)
            * special.half_order_hankel1(n, k * ry)
            / math.sqrt(ry)
            * special.legendre_p(n, c)
        )
        total += term
    return complex(0.25j * total)


# --------------------------------------------------------------------------
# Radial operator
# --------------------------------------------------------------------------


def _bary_weights(rule: QuadratureRule) -> np.ndarray:
    # Gauss-Legendre nodes: w_j = (-1)^j sqrt((1 - t_j^2) lambda_j) on [-1, 1]
    a, b = rule.interval
    t = (2.0 * rule.nodes - (a + b)) / (b - a)
    lam = rule.weights * 2.0 / (b - a)
    sign = np.where(np.arange(len(t)) % 2 == 0, 1.0, -1.0)
    return sign * np.sqrt((1.0 - t * t) * lam)


def barycentric_interpolate(rule: QuadratureRule, values, points) -> np.ndarray:
    """Polynomial interpolant through ``(rule.nodes, values)`` at ``points``."""
    values = np.asarray(values, dtype=complex)
    pts = np.asarray(points, dtype=float)
    w = _bary_weights(rule)
    diff = pts[..., None] - rule.nodes
    exact = diff == 0
    diff = np.where(exact, 1.0, diff)
    c = w / diff
    out = (c @ values) / c.sum(axis=-1)
    hit = exact.any(axis=-1)
    if np.any(hit):
        idx = np.argmax(exact, axis=-1)
        out = np.where(hit, values[idx], out)
    return out


def radial_kernel(n: int, p: ProblemParams, r, rho):
    """``i k j_n(k min(r, rho)) h_n(k max(r, rho))`` (broadcasting)."""
    r, rho = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(rho, dtype=float))
    lo = np.minimum(r, rho)
    hi = np.maximum(r, rho)
    j = special.spherical_jn(n, p.k * lo)
    h = special.spherical_hankel1(n, p.k * hi)
    return 1j * p.k * j * h


def _split_nodes(p: ProblemParams, targets, order):
    ref = gauss_legendre_rule(order, 0.0, 1.0)
    r = np.asarray(targets, dtype=float)[:, None]
    t, w = ref.nodes[None, :], ref.weights[None, :]
    rho_in, w_in = r * t, r * w
    rho_out, w_out = r + (p.delta - r) * t, (p.delta - r) * w
    return r, rho_in, w_in, rho_out, w_out


def _check_targets(p, targets):
    t = np.atleast_1d(np.asarray(targets, dtype=float))
    if np.any(t <= 0) or np.any(t > p.delta * (1 + 1e-12)):
        raise DomainError("targets must lie in (0, delta]")
    return np.minimum(t, p.delta)


def apply_radial_newtonian(
    n: int, p: ProblemParams, f: RadialSamples | Callable, targets, order: int | None = None
) -> np.ndarray:
    """Apply the channel-``n`` volume operator to ``f`` at each target radius.

    The integral is split at ``rho = r`` and each piece gets its own
    ``order``-point Gauss rule (default: the node count of ``f.rule``, or
    200 for a bare callable).
    """
    t = _check_targets(p, targets)
    if order is None:
        order = len(f.rule) if isinstance(f, RadialSamples) else 200
    r, rho_in, w_in, rho_out, w_out = _split_nodes(p, t, order)
    k_in = radial_kernel(n, p, r, rho_in)
    k_out = radial_kernel(n, p, r, rho_out)
    f_in = np.asarray(f(rho_in), dtype=complex)
    f_out = np.asarray(f(rho_out), dtype=complex)
    val = np.sum(k_in * f_in * rho_in**2 * w_in, axis=1) + np.sum(k_out * f_out * rho_out**2 * w_out, axis=1)
    return val


def radial_operator_matrix(n: int, p: ProblemParams, rule: QuadratureRule, order: int | None = None) -> np.ndarray:
    """Dense matrix of the split-quadrature operator acting on nodal values.

    Off-node values are obtained by barycentric interpolation, so row ``i``
    maps samples on ``rule`` to ``(N_n f)(rule.nodes[i])``.
    """
    if order is None:
        order = len(rule)
    nodes = rule.nodes
    mat = np.empty((len(nodes), len(nodes)), dtype=complex)
    ref = gauss_legendre_rule(order, 0.0, 1.0)
    w_bary = _bary_weights(rule)
    for i, r in enumerate(nodes):
        rho = np.concatenate([r * ref.nodes, r + (p.delta - r) * ref.nodes])
        w = np.concatenate([r * ref.weights, (p.delta - r) * ref.weights])
        kern = radial_kernel(n, p, r, rho) * rho**2 * w
        diff = rho[:, None] - nodes[None, :]
        exact = diff == 0
        c = w_bary / np.where(exact, 1.0, diff)
        interp = c / c.sum(axis=1, keepdims=True)
        rows = np.nonzero(exact.any(axis=1))[0]
        for q in rows:
            interp[q] = exact[q].astype(float)
        mat[i] = kern @ interp
    return mat


def kernel_matrix(n: int, p: ProblemParams, rule: QuadratureRule) -> np.ndarray:
    """Plain Nystrom kernel ``sqrt(w_i) r_i G(r_i, r_j) r_j sqrt(w_j)``.

    Complex symmetric by construction of the kernel; used as a structural
    probe, not for accuracy.
    """
    r = rule.nodes
    sw = np.sqrt(rule.weights) * r
    g = radial_kernel(n, p, r[:, None], r[None, :])
    return sw[:, None] * g * sw[None, :]


def eigenpair_residual(mode: EigenMode, quad_order: int = 200) -> float:
    """Relative residual ``||N_n R - zeta R|| / ||R||`` in ``L^2(r^2 dr)``.

    ``R`` is the radial eigenfunction of ``mode``; the norm is the Gauss
    rule of order ``quad_order`` on ``(0, delta)``.
    """
    p = mode.params
    rule = gauss_legendre_rule(quad_order, 0.0, p.delta)

    def radial(rho):
        return radial_eigenfunction(mode.n, mode.mu, p, rho)

    samples = RadialSamples.from_function(radial, rule)
    applied = apply_radial_newtonian(mode.n, p, samples, rule.nodes, order=quad_order)
    diff = applied - mode.zeta * samples.values
    w = rule.weights * rule.nodes**2
    return float(np.sqrt(np.sum(w * np.abs(diff) ** 2) / np.sum(w * np.abs(samples.values) ** 2)))


class PowerIterationResult(NamedTuple):
    value: complex
    converged: bool
    iterations: int


def dominant_eigenvalue_power_iteration(
    n: int,
    p: ProblemParams,
    quad: QuadratureRule | None = None,
    max_iters: int = 500,
    tol: float = 1e-12,
    start=None,
) -> PowerIterationResult:
    """Largest-modulus eigenvalue of the discretised channel operator.

    Power iteration on :func:`radial_operator_matrix` with a Rayleigh
    quotient in the ``r^2``-weighted inner product. The start vector
    defaults to all ones, which keeps the result deterministic.
    """
    if quad is None:
        quad = gauss_legendre_rule(64, 0.0, p.delta)
    mat = radial_operator_matrix(n, p, quad)
    w = quad.weights * quad.nodes**2
    v = np.ones(len(quad), dtype=complex) if start is None else np.asarray(start, dtype=complex)
    v = v / np.sqrt(np.sum(w * np.abs(v) ** 2))
    prev = None
    for it in range(1, max_iters + 1):
        av = mat @ v
        rq = np.sum(w * np.conj(v) * av) / np.sum(w * np.abs(v) ** 2)
        nrm = np.sqrt(np.sum(w * np.abs(av) ** 2))
        if nrm == 0:
            return PowerIterationResult(0j, False, it)
        v = av / nrm
        if prev is not None and abs(rq - prev) <= tol * abs(rq):
            return PowerIterationResult(complex(rq), True, it)
        prev = rq
    return PowerIterationResult(complex(prev), False, max_iters)


# --------------------------------------------------------------------------
# Transmission condition (exact channel eigen-condition)
# --------------------------------------------------------------------------


def _transmission_parts(n, p, x):
    x = np.asarray(x, dtype=complex)
    kd = p.kd
    h = special.spherical_hankel1(n, kd)
    dh = special.spherical_hankel1_derivative(n, kd)
    seq = special.spherical_jn_sequence(n + 1, x, special.N_MAX_DEFAULT + 1)
    j = seq[n]
    dj = -seq[1] if n == 0 else seq[n - 1] - (n + 1) / x * seq[n]
    return x, kd, h, dh, j, dj


def transmission_fn(n: int, p: ProblemParams, x):
    """``x j_n'(x) h_n(k delta) - k delta h_n'(k delta) j_n(x)``.

    Zeros ``x = mu`` are the values for which ``j_n(mu r / delta)``
    continues C^1 across ``r = delta`` into the outgoing field, i.e. the
    exact eigen-condition of the channel operator, with
    ``zeta = delta^2 / (mu^2 - (delta k)^2)``.
    """
    x, kd, h, dh, j, dj = _transmission_parts(n, p, x)
    val = x * dj * h - kd * dh * j
    return complex(val) if val.ndim == 0 else val


def transmission_fn_derivative(n: int, p: ProblemParams, x):
    x, kd, h, dh, j, dj = _transmission_parts(n, p, x)
    # spherical Bessel ODE: j'' = -(2/x) j' - (1 - n(n+1)/x^2) j
    d2j = -2.0 / x * dj - (1.0 - n * (n + 1) / (x * x)) * j
    val = (dj + x * d2j) * h - kd * dh * dj
    return complex(val) if val.ndim == 0 else val


def transmission_roots(
    n: int, p: ProblemParams, region: SearchRegion = SearchRegion(), opts: RootOptions = RootOptions()
) -> list[RootRecord]:
    """Roots of :func:`transmission_fn`, found and ranked like ``scan_roots``."""

    def f(x):
        return transmission_fn(n, p, x)

    def fp(x):
        return transmission_fn_derivative(n, p, x)

    return find_roots(f, fp, region, opts, n=n)

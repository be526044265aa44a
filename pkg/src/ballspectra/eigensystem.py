"""Eigenvalues and normalised eigenfunctions built from characteristic roots."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import special
from .characteristic import ProblemParams
from .errors import DegenerateError, DomainError, ParameterError, SingularArgumentError
from .rootfinder import RootRecord
from .special import QuadratureRule, gauss_legendre_rule

__all__ = [
    "EigenMode",
    "SphericalPoint",
    "SphereQuadrature",
    "zeta_from_mu",
    "lambda_from_mu",
    "radial_eigenfunction",
    "normalization_constant",
    "make_mode",
    "modes_from_roots",
    "eigenfunction_value",
    "ball_quadrature",
    "gram_matrix",
    "RESONANCE_TOL",
    "NORMALIZATION_ORDER",
]

RESONANCE_TOL = 1e-14
NORMALIZATION_ORDER = 200


@dataclass(frozen=True)
class EigenMode:
    n: int
    j: int
    m: int
    mu: complex
    zeta: complex
    lam: complex
    norm_constant: float
    params: ProblemParams


@dataclass(frozen=True)
class SphericalPoint:
    r: float
    theta: float
    phi: float

    def __post_init__(self):
        if not self.r > 0:
            raise DomainError("r must be positive")
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError("theta must lie in [0, pi]")


def zeta_from_mu(mu, p: ProblemParams):
    """``delta^2 / (mu^2 - (delta k)^2)``; only ``mu^2`` enters."""
    mu = np.asarray(mu, dtype=complex)
    kd2 = p.kd * p.kd
    den = mu * mu - kd2
    if np.any(np.abs(den) < RESONANCE_TOL * abs(kd2)):
        raise DegenerateError("mu^2 = (delta k)^2: eigenvalue is infinite")
    val = p.delta**2 / den
    return complex(val) if val.ndim == 0 else val


def lambda_from_mu(mu, p: ProblemParams):
    """``k^2 - (mu/delta)^2``, so that ``zeta * lambda = -1``."""
    mu = np.asarray(mu, dtype=complex)
    val = p.k * p.k - (mu / p.delta) ** 2
    return complex(val) if val.ndim == 0 else val


def radial_eigenfunction(n: int, mu: complex, p: ProblemParams, r):
    """``R(r) = sqrt(pi/(2r)) J_{n+1/2}(mu r / delta)`` for ``r > 0``."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise SingularArgumentError("radial eigenfunction is evaluated at r > 0 only")
    val = np.sqrt(np.pi / (2.0 * r)) * special.half_order_bessel_j(n, mu * r / p.delta)
    return complex(val) if np.ndim(val) == 0 else val


def normalization_constant(n: int, mu: complex, p: ProblemParams, quad: QuadratureRule | None = None) -> float:
    """``[int_0^delta r |J_{n+1/2}(mu r/delta)|^2 dr]^{1/2}`` by Gauss-Legendre.

    The integrand uses the modulus squared, so the constant is real and
    positive even for complex ``mu``.
    """
    if quad is None:
        quad = gauss_legendre_rule(NORMALIZATION_ORDER, 0.0, p.delta)
    a, b = quad.interval
    if abs(a) > 1e-15 or abs(b - p.delta) > 1e-12 * p.delta:
        raise ParameterError("normalisation quadrature must cover (0, delta)")
    r = quad.nodes
    vals = np.abs(special.half_order_bessel_j(n, mu * r / p.delta)) ** 2
    total = float(quad.integrate(r * vals))
    if not total > 0:
        raise DegenerateError("normalisation integral vanished")
    return math.sqrt(total)


def make_mode(n: int, j: int, m: int, mu: complex, p: ProblemParams, quad: QuadratureRule | None = None) -> EigenMode:
    if abs(m) > n:
        raise DomainError(f"|m| = {abs(m)} exceeds n = {n}")
    return EigenMode(
        n=n,
        j=j,
        m=m,
        mu=complex(mu),
        zeta=zeta_from_mu(mu, p),
        lam=lambda_from_mu(mu, p),
        norm_constant=normalization_constant(n, mu, p, quad),
        params=p,
    )


def modes_from_roots(roots: list[RootRecord], p: ProblemParams, all_m: bool = False) -> list[EigenMode]:
    """One mode per root (``m = 0``), or all ``2n + 1`` orders if requested."""
    out = []
    for rec in roots:
        base = make_mode(rec.n, rec.j, 0, rec.mu, p)
        ms = range(-rec.n, rec.n + 1) if all_m else (0,)
        for m in ms:
            out.append(base if m == 0 else replace(base, m=m))
    return out


def _eigenfunction(mode: EigenMode, r, theta, phi):
    p = mode.params
    radial = special.half_order_bessel_j(mode.n, mode.mu * r / p.delta) / np.sqrt(r)
    return radial * special.spherical_harmonic(mode.n, mode.m, theta, phi) / mode.norm_constant


def eigenfunction_value(mode: EigenMode, pt: SphericalPoint) -> complex:
    """Normalised eigenfunction ``v_{n,j,m}`` at one point of the ball."""
    if pt.r > mode.params.delta * (1 + 1e-12):
        raise DomainError("point lies outside the ball")
    return complex(_eigenfunction(mode, pt.r, pt.theta, pt.phi))


@dataclass(frozen=True)
class SphereQuadrature:
    """Product rule on the ball: Gauss in r and cos(theta), trapezoid in phi."""

    r: QuadratureRule
    cos_theta: QuadratureRule
    n_phi: int

    def points(self):
        r = self.r.nodes[:, None, None]
        th = np.arccos(self.cos_theta.nodes)[None, :, None]
        ph = (2.0 * np.pi * np.arange(self.n_phi) / self.n_phi)[None, None, :]
        w = (
            self.r.weights[:, None, None]
            * r**2
            * self.cos_theta.weights[None, :, None]
            * np.full((1, 1, self.n_phi), 2.0 * np.pi / self.n_phi)
        )
        return r, th, ph, w


def ball_quadrature(delta: float, radial_order: int = NORMALIZATION_ORDER, angular_order: int = 16) -> SphereQuadrature:
    """Exact for spherical harmonic products up to degree ``2*angular_order - 1``."""
    return SphereQuadrature(
        r=gauss_legendre_rule(radial_order, 0.0, delta),
        cos_theta=gauss_legendre_rule(angular_order, -1.0, 1.0),
        n_phi=2 * angular_order,
    )


def gram_matrix(modes: list[EigenMode], quad: SphereQuadrature | None = None) -> np.ndarray:
    """``G[a, b] = <v_a, v_b>_{L^2(B)}`` (conjugate on the second slot)."""
    if not modes:
        return np.zeros((0, 0), dtype=complex)
    p = modes[0].params
    if any(md.params != p for md in modes):
        raise ParameterError("all modes must share the same ProblemParams")
    if quad is None:
        quad = ball_quadrature(p.delta)
    r, th, ph, w = quad.points()
    vals = np.stack([_eigenfunction(md, r, th, ph).ravel() for md in modes])
    wf = w.ravel()
    return (vals * wf) @ vals.conj().T

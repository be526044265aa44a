"""Named numerical checks shared by the ``verify`` and ``selftest`` commands.

Each check returns a :class:`CheckResult` holding the measured error, the
tolerance it is held to and the verdict, so callers can report rather
than raise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import special
from .characteristic import ProblemParams
from .eigensystem import EigenMode, ball_quadrature, gram_matrix, modes_from_roots
from .oracle import KernelConfig, eigenpair_residual, fundamental_solution, kernel_expansion
from .reference import REFERENCE_TABLES
from .rootfinder import scan_roots

__all__ = [
    "CheckResult",
    "BESSEL_SAMPLE",
    "kernel_sample",
    "check_wronskian",
    "check_derivative_identity",
    "check_recurrences",
    "check_legendre_ode",
    "check_harmonic_orthonormality",
    "check_kernel_expansion",
    "check_mode_orthonormality",
    "check_zeta_lambda",
    "mode_residual_checks",
    "eigenrelation_tolerance",
    "selftest_checks",
    "verify_checks",
]

BESSEL_SAMPLE = (0.5, 1.0, 1.7 - 0.4j, 3.0 + 0.5j, 7.5 + 2.0j, 12.0 - 1.0j, 25.0, 40.0 + 0.3j)


@dataclass(frozen=True)
class CheckResult:
    name: str
    error: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.error <= self.tol)


def check_wronskian(n_max: int = 50, tol: float = 1e-11) -> CheckResult:
    """``j_n y_n' - j_n' y_n = 1/z^2``."""
    worst = 0.0
    for z in BESSEL_SAMPLE:
        for n in range(n_max + 1):
            j = special.spherical_jn(n, z)
            y = special.spherical_yn(n, z)
            w = j * special.spherical_yn_derivative(n, z) - special.spherical_jn_derivative(n, z) * y
            worst = max(worst, abs(w * z * z - 1.0))
    return CheckResult("wronskian", worst, tol)


def _half_order_j_minus(n, z):
    if n == 0:
        return np.sqrt(2.0 / (np.pi * z)) * np.cos(z)
    return special.half_order_bessel_j(n - 1, z)


def check_derivative_identity(n_max: int = 50, tol: float = 1e-11) -> CheckResult:
    """``J'_nu`` against the companion form ``J_{nu-1} - (nu/z) J_nu``."""
    worst = 0.0
    for z in BESSEL_SAMPLE:
        for n in range(n_max + 1):
            nu = n + 0.5
            d = special.half_order_bessel_j_derivative(n, z)
            jn = special.half_order_bessel_j(n, z)
            other = _half_order_j_minus(n, z) - nu / z * jn
            scale = abs(_half_order_j_minus(n, z)) + abs(nu / z * jn)
            worst = max(worst, abs(d - other) / scale)
    return CheckResult("derivative_identity", worst, tol)


def check_recurrences(n_max: int = 50, tol: float = 1e-10) -> CheckResult:
    """Three-term recurrence for ``j``, ``y`` and ``h^(1)``.

    The residual is scaled by the sum of the term magnitudes, which is the
    size of the rounding error the recurrence can carry.
    """
    worst = 0.0
    fns = (special.spherical_jn, special.spherical_yn, special.spherical_hankel1)
    for z in BESSEL_SAMPLE:
        for fn in fns:
            vals = [fn(n, z) for n in range(n_max + 1)]
            for n in range(1, n_max):
                a = (2 * n + 1) / z * vals[n]
                res = vals[n + 1] - (a - vals[n - 1])
                scale = abs(vals[n + 1]) + abs(a) + abs(vals[n - 1])
                worst = max(worst, abs(res) / scale)
    return CheckResult("recurrences", worst, tol)


def _central_weights(order: int, half: int) -> np.ndarray:
    offsets = np.arange(-half, half + 1, dtype=float)
    vander = np.vander(offsets, increasing=True).T
    rhs = np.zeros(len(offsets))
    rhs[order] = math.factorial(order)
    return np.linalg.solve(vander, rhs)


def check_legendre_ode(n_max: int = 20, tol: float = 1e-7, h: float = 5e-3) -> CheckResult:
    """Associated Legendre equation in ``theta`` by 9-point central differences."""
    w1 = _central_weights(1, 4)
    w2 = _central_weights(2, 4)
    thetas = np.array([0.3, 0.7, 1.1, 1.9, 2.6])
    stencil = thetas[:, None] + h * np.arange(-4, 5)[None, :]
    worst = 0.0
    for n in range(n_max + 1):
        for m in range(-n, n + 1):
            vals = special.assoc_legendre(n, m, np.cos(stencil))
            p = vals[:, 4]
            d1 = vals @ w1 / h
            d2 = vals @ w2 / (h * h)
            s = np.sin(thetas)
            terms = (d2, np.cos(thetas) / s * d1, n * (n + 1) * p, -(m * m) / (s * s) * p)
            res = np.abs(sum(terms))
            # |P| keeps the scale honest at n = 0, where every term is rounding noise
            scale = sum(np.abs(t) for t in terms) + np.abs(p)
            worst = max(worst, float(np.max(res / scale)))
    return CheckResult("legendre_ode", worst, tol)


def check_harmonic_orthonormality(n_max: int = 6, tol: float = 1e-9) -> CheckResult:
    ct = special.gauss_legendre_rule(n_max + 2)
    n_phi = 2 * n_max + 2
    theta = np.arccos(ct.nodes)[:, None]
    phi = (2 * np.pi * np.arange(n_phi) / n_phi)[None, :]
    w = (ct.weights[:, None] * np.full((1, n_phi), 2 * np.pi / n_phi)).ravel()
    rows = [
        special.spherical_harmonic(n, m, theta, phi).ravel() for n in range(n_max + 1) for m in range(-n, n + 1)
    ]
    y = np.stack(rows)
    gram = (y * w) @ y.conj().T
    return CheckResult("harmonic_orthonormality", float(np.max(np.abs(gram - np.eye(len(rows))))), tol)


def kernel_sample(count: int = 20, seed: int = 20240417, max_ratio: float = 0.9):
    """Fixed point pairs inside the unit ball with ``min(|x|,|y|)/max <= max_ratio``."""
    rng = np.random.default_rng(seed)
    pairs = []
    for i in range(count):
        outer = rng.uniform(0.3, 1.0)
        inner = outer * rng.uniform(0.1, max_ratio)
        u = rng.normal(size=3)
        v = rng.normal(size=3)
        a = inner * u / np.linalg.norm(u)
        b = outer * v / np.linalg.norm(v)
        pairs.append((a, b) if i % 2 == 0 else (b, a))
    return pairs


def check_kernel_expansion(k, n_max: int = 40, tol: float = 1e-8) -> CheckResult:
    cfg = KernelConfig(n_max=n_max)
    worst = 0.0
    for x, y in kernel_sample():
        exact = fundamental_solution(x, y, k)
        worst = max(worst, abs(kernel_expansion(x, y, k, cfg) - exact) / abs(exact))
    return CheckResult(f"kernel_expansion k={complex(k)}", worst, tol)


def check_mode_orthonormality(p: ProblemParams = ProblemParams(2, 1.0), n_max: int = 2, j_max: int = 2):
    """Unit diagonal (1e-8) and angular orthogonality (1e-10) of the Gram matrix.

    Entries with equal ``(n, m)`` and different ``j`` are returned
    separately for reporting and are not judged.
    """
    modes: list[EigenMode] = []
    for n in range(n_max + 1):
        roots = scan_roots(n, p)[:j_max]
        modes.extend(modes_from_roots(roots, p, all_m=True))
    g = gram_matrix(modes, ball_quadrature(p.delta))
    diag = float(np.max(np.abs(np.diag(g) - 1.0)))
    off = 0.0
    cross = []
    for a, ma in enumerate(modes):
        for b, mb in enumerate(modes):
            if (ma.n, ma.m) != (mb.n, mb.m):
                off = max(off, float(abs(g[a, b])))
            elif a < b:
                cross.append((ma.n, ma.m, ma.j, mb.j, complex(g[a, b])))
    checks = [CheckResult("gram_diagonal", diag, 1e-8), CheckResult("gram_angular_zero", off, 1e-10)]
    return checks, cross


def check_zeta_lambda(tol: float = 1e-12) -> CheckResult:
    worst = 0.0
    for blocks in REFERENCE_TABLES.values():
        for block in blocks:
            p = block.params
            for mode in modes_from_roots(scan_roots(block.n, p)[:5], p):
                worst = max(worst, abs(mode.zeta * mode.lam + 1.0))
    return CheckResult("zeta_lambda", worst, tol)


def eigenrelation_tolerance(delta: float) -> float:
    return 1e-6 if delta == 1.0 else 1e-5


def mode_residual_checks(modes, quad_order: int = 200) -> list[CheckResult]:
    out = []
    for md in modes:
        p = md.params
        name = f"eigenrelation n={md.n} j={md.j} k={p.k} delta={p.delta}"
        out.append(CheckResult(name, eigenpair_residual(md, quad_order), eigenrelation_tolerance(p.delta)))
    return out


def selftest_checks() -> list[CheckResult]:
    out = [
        check_wronskian(),
        check_derivative_identity(),
        check_recurrences(),
        check_legendre_ode(),
        check_harmonic_orthonormality(),
        check_kernel_expansion(2.0),
        check_kernel_expansion(1 + 1j),
        check_zeta_lambda(),
    ]
    out.extend(check_mode_orthonormality()[0])
    return out


def verify_checks(param_sets, j_max: int = 5) -> list[CheckResult]:
    """Oracle residuals for the first ``j_max`` modes of each ``(n, params)``
    plus the kernel-expansion validation."""
    out = [check_kernel_expansion(2.0), check_kernel_expansion(1 + 1j)]
    for n, p in param_sets:
        out.extend(mode_residual_checks(modes_from_roots(scan_roots(n, p)[:j_max], p)))
    return out

"""Large-degree asymptotics of the eigenvalues and the comparison harness.

For large ``n`` the family ``zeta_{n,j}`` is described by a single value

    zeta_n ~ delta^2 / ((2n+3)/e * [n + delta * c_n] - (delta k)^2),
    c_n = 1 + (-1)^n/(4 pi) + i (-1)^{n+1}/(8 pi) (e k delta/(2n+1))^{2n+1},

which in turn behaves like ``delta^2 e / (2 n^2)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .characteristic import ProblemParams, coupling_term
from .eigensystem import zeta_from_mu
from .errors import DegenerateError, ParameterError
from .rootfinder import RootOptions, SearchRegion, scan_roots

__all__ = [
    "AsymptoticRecord",
    "power_term",
    "coupling_term_asymptotic",
    "mu_squared_asymptotic",
    "zeta_asymptotic",
    "zeta_simple",
    "asymptotic_sweep",
    "compare_exact_vs_asymptotic",
    "exact_search_region",
    "UNDERFLOW_LOG",
    "EXACT_BAND_MAX",
]

# exp(x) underflows to 0 in double precision below this
UNDERFLOW_LOG = -745.0
EXACT_BAND_MAX = 60


@dataclass(frozen=True)
class AsymptoticRecord:
    n: int
    zeta_asym: complex
    zeta_simple: float
    zeta_exact: complex | None = None
    rel_gap: float | None = None
    root_count: int | None = None
    mu_exact: complex | None = None

    def __post_init__(self):
        if (self.zeta_exact is None) != (self.rel_gap is None):
            raise ParameterError("rel_gap must be present exactly when zeta_exact is")


def _check_n(n):
    if int(n) != n or n < 1:
        raise ParameterError(f"asymptotic formulas need an integer n >= 1, got {n!r}")
    return int(n)


def power_term(n: int, p: ProblemParams) -> complex:
    """``(e k delta / (2n+1))^(2n+1)`` in log space, flushed to 0 on underflow."""
    n = _check_n(n)
    log_val = (2 * n + 1) * cmath.log(math.e * p.kd / (2 * n + 1))
    if log_val.real < UNDERFLOW_LOG:
        return 0j
    return cmath.exp(log_val)


def _c_n(n, p):
    sign = -1.0 if n % 2 else 1.0
    return 1.0 + sign / (4.0 * math.pi) + 1j * (-sign) / (8.0 * math.pi) * power_term(n, p)


def coupling_term_asymptotic(n: int, p: ProblemParams) -> complex:
    """Large-``n`` form of the coupling term: ``-1/(2 delta) + c_n``."""
    n = _check_n(n)
    return -1.0 / (2.0 * p.delta) + _c_n(n, p)


def mu_squared_asymptotic(n: int, p: ProblemParams) -> complex:
    """``(2n+3)/e * [n + delta c_n]``."""
    n = _check_n(n)
    return (2 * n + 3) / math.e * (n + p.delta * _c_n(n, p))


def zeta_asymptotic(n: int, p: ProblemParams) -> complex:
    n = _check_n(n)
    den = mu_squared_asymptotic(n, p) - p.kd * p.kd
    if abs(den) < 1e-14 * max(1.0, abs(p.kd) ** 2):
        raise DegenerateError(f"asymptotic denominator vanishes at n={n}")
    return p.delta**2 / den


def zeta_simple(n: int, p: ProblemParams) -> float:
    """Wave-number-free limit ``delta^2 e / (2 n^2)``."""
    n = _check_n(n)
    return p.delta**2 * math.e / (2.0 * n * n)


def asymptotic_sweep(n_values, p: ProblemParams) -> list[AsymptoticRecord]:
    return [AsymptoticRecord(n, zeta_asymptotic(n, p), zeta_simple(n, p)) for n in n_values]


def exact_search_region(n: int, p: ProblemParams, grid_step: float = 0.1) -> SearchRegion:
    """Window wide enough to hold the smallest root for degree ``n``."""
    re_max = max(20.0, 2.0 * n + 20.0, 2.0 * abs(cmath.sqrt(mu_squared_asymptotic(max(n, 1), p))))
    return SearchRegion(0.1, re_max, -3.0, 3.0, grid_step)


def compare_exact_vs_asymptotic(
    n_range,
    p: ProblemParams,
    opts: RootOptions = RootOptions(),
    region: SearchRegion | None = None,
    count_region: SearchRegion = SearchRegion(),
) -> list[AsymptoticRecord]:
    """Pair the smallest exact root's eigenvalue with the asymptotic value.

    For each ``n`` the characteristic function is scanned in
    :func:`exact_search_region` (or ``region``); ``zeta_exact`` comes from
    the ``j = 1`` root. ``root_count`` is the number of certified roots in
    ``count_region`` (the default search window). A failed search leaves
    ``zeta_exact`` empty and the sweep carries on.
    """
    out = []
    for n in n_range:
        n = int(n)
        za = zeta_asymptotic(n, p) if n >= 1 else complex("nan")
        zs = zeta_simple(n, p) if n >= 1 else float("nan")
        reg = region or exact_search_region(n, p)
        try:
            coupling_term(n, p)
            roots = scan_roots(n, p, reg, opts)
        except (ArithmeticError, OverflowError, ValueError):
            roots = []
        if count_region == reg:
            count = len(roots)
        else:
            try:
                count = len(scan_roots(n, p, count_region, opts))
            except (ArithmeticError, OverflowError, ValueError):
                count = 0
        if roots:
            mu = roots[0].mu
            ze = zeta_from_mu(mu, p)
            gap = abs(ze / za - 1.0)
            out.append(AsymptoticRecord(n, za, zs, ze, gap, count, mu))
        else:
            out.append(AsymptoticRecord(n, za, zs, None, None, count, None))
    return out

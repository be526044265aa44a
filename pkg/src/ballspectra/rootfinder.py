"""Complex root search for the characteristic function.

A rectangular grid is sampled, every grid point whose ``|F|`` is not larger
than any of its 8 neighbours seeds a Newton iteration, and the converged
points are certified by residual, deduplicated and ranked by real part.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

import numpy as np

from .characteristic import ProblemParams, char_fn, char_fn_derivative, coupling_term
from .errors import ParameterError

__all__ = [
    "SearchRegion",
    "RootOptions",
    "RootRecord",
    "NewtonResult",
    "refine_newton",
    "dedup_and_order",
    "find_roots",
    "scan_roots",
    "TRIVIAL_ZERO_FLOOR",
]

log = logging.getLogger(__name__)

# x = 0 is always a zero of F_n and never an eigenvalue
TRIVIAL_ZERO_FLOOR = 0.1


@dataclass(frozen=True)
class SearchRegion:
    re_min: float = 0.1
    re_max: float = 20.0
    im_min: float = -3.0
    im_max: float = 3.0
    grid_step: float = 0.1

    def __post_init__(self):
        if self.re_min < TRIVIAL_ZERO_FLOOR - 1e-12:
            raise ParameterError(f"re_min must be >= {TRIVIAL_ZERO_FLOOR}, got {self.re_min}")
        if not self.re_min < self.re_max:
            raise ParameterError("re_min must be < re_max")
        if not self.im_min < self.im_max:
            raise ParameterError("im_min must be < im_max")
        if not self.grid_step > 0:
            raise ParameterError("grid_step must be positive")

    def grid(self) -> np.ndarray:
        """Grid of seeds, shape ``(n_im, n_re)``, real part along axis 1."""
        nre = int(round((self.re_max - self.re_min) / self.grid_step)) + 1
        nim = int(round((self.im_max - self.im_min) / self.grid_step)) + 1
        re = np.linspace(self.re_min, self.re_min + (nre - 1) * self.grid_step, nre)
        im = np.linspace(self.im_min, self.im_min + (nim - 1) * self.grid_step, nim)
        return re[None, :] + 1j * im[:, None]

    def contains(self, x: complex, slack: float = 1e-9) -> bool:
        return (
            self.re_min - slack <= x.real <= self.re_max + slack
            and self.im_min - slack <= x.imag <= self.im_max + slack
        )


@dataclass(frozen=True)
class RootOptions:
    newton_tol: float = 1e-12
    cert_tol: float = 1e-10
    max_iter: int = 60
    dedup_tol: float = 1e-6


@dataclass(frozen=True)
class RootRecord:
    n: int
    j: int
    mu: complex
    residual: float
    newton_iters: int


class NewtonResult(NamedTuple):
    x: complex
    converged: bool
    iterations: int
    residual: float


def refine_newton(
    f: Callable, fprime: Callable, x0: complex, tol: float = 1e-12, max_iter: int = 60
) -> NewtonResult:
    """Newton iteration from ``x0`` until ``|dx| <= tol``.

    Undamped, except that after two consecutive increases of ``|f|`` the
    step is halved. Failure is reported through ``converged=False``, never
    raised; that includes stepping onto a singular point of ``f``.
    """
    x = complex(x0)
    try:
        fx = complex(f(x))
    except (ArithmeticError, ValueError):
        return NewtonResult(x, False, 0, math.inf)
    prev = abs(fx)
    rises = 0
    damping = 1.0
    for it in range(1, max_iter + 1):
        try:
            d = complex(fprime(x))
        except (ArithmeticError, ValueError):
            return NewtonResult(x, False, it, abs(fx))
        if d == 0 or not math.isfinite(abs(d)) or not math.isfinite(abs(fx)):
            return NewtonResult(x, False, it, abs(fx))
        step = damping * fx / d
        x = x - step
        try:
            fx = complex(f(x))
        except (ArithmeticError, ValueError):
            return NewtonResult(x, False, it, math.inf)
        cur = abs(fx)
        if not math.isfinite(cur):
            return NewtonResult(x, False, it, cur)
        if abs(step) <= tol:
            return NewtonResult(x, True, it, cur)
        rises = rises + 1 if cur > prev else 0
        if rises >= 2:
            damping *= 0.5
            rises = 0
        prev = cur
    return NewtonResult(x, False, max_iter, abs(fx))


def dedup_and_order(roots: list[RootRecord], tol: float = 1e-6) -> list[RootRecord]:
    """Merge roots closer than ``tol`` and rank the survivors.

    The smaller-residual member of each cluster is kept. Survivors are
    sorted by real part, then imaginary part, and renumbered ``j = 1, 2, ...``.
    """
    kept: list[RootRecord] = []
    for rec in sorted(roots, key=lambda r: (r.residual, r.mu.real, r.mu.imag)):
        if all(abs(rec.mu - other.mu) > tol for other in kept):
            kept.append(rec)
    kept.sort(key=lambda r: (r.mu.real, r.mu.imag))
    return [replace(r, j=i) for i, r in enumerate(kept, start=1)]


def _local_minima(values: np.ndarray) -> np.ndarray:
    padded = np.pad(values, 1, constant_values=np.inf)
    ny, nx = values.shape
    is_min = np.ones_like(values, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            neigh = padded[1 + di : 1 + di + ny, 1 + dj : 1 + dj + nx]
            is_min &= values <= neigh
    return np.argwhere(is_min)


def find_roots(
    f: Callable,
    fprime: Callable,
    region: SearchRegion,
    opts: RootOptions = RootOptions(),
    n: int = 0,
) -> list[RootRecord]:
    """Grid-seeded Newton search for zeros of a vectorised ``f`` in ``region``."""
    grid = region.grid()
    with np.errstate(all="ignore"):
        mag = np.abs(f(grid))
    mag = np.where(np.isfinite(mag), mag, np.inf)
    found = []
    for i, jj in _local_minima(mag):
        seed = complex(grid[i, jj])
        res = refine_newton(f, fprime, seed, opts.newton_tol, opts.max_iter)
        if not res.converged:
            log.debug("seed %s did not converge (|f|=%.3g)", seed, res.residual)
            continue
        if res.residual > opts.cert_tol:
            log.debug("seed %s converged to %s but |f|=%.3g fails certification", seed, res.x, res.residual)
            continue
        if abs(res.x) < TRIVIAL_ZERO_FLOOR or not region.contains(res.x):
            continue
        found.append(RootRecord(n=n, j=0, mu=res.x, residual=res.residual, newton_iters=res.iterations))
    return dedup_and_order(found, opts.dedup_tol)


def scan_roots(
    n: int,
    p: ProblemParams,
    region: SearchRegion = SearchRegion(),
    opts: RootOptions = RootOptions(),
) -> list[RootRecord]:
    """Certified roots of the characteristic function ``F_n`` inside ``region``.

    Returns an empty list when nothing is found. No completeness claim is
    made beyond what the grid resolves.
    """
    T = coupling_term(n, p)

    def f(x):
        return char_fn(n, p, x, T)

    def fp(x):
        return char_fn_derivative(n, p, x, T)

    return find_roots(f, fp, region, opts, n=n)

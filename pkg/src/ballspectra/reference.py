"""Published reference eigen-data for the ball, truncated to four decimals.

Three parameter studies, five roots each: degree n varied at (k=2, delta=1),
wave number varied at (n=1, delta=1), radius varied at (n=1, k=4). Values
are truncated rather than rounded, hence the 2e-4 comparison tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characteristic import ProblemParams
from .eigensystem import zeta_from_mu
from .rootfinder import RootOptions, SearchRegion, scan_roots

__all__ = [
    "ReferenceRow",
    "ReferenceBlock",
    "RowDiff",
    "REFERENCE_TABLES",
    "TRUNCATION_TOL",
    "CONSISTENCY_TOL",
    "all_rows",
    "reproduce_block",
    "reproduce_tables",
]

TRUNCATION_TOL = 2e-4
# mu and zeta are truncated independently, so zeta(mu_table) drifts a bit more
CONSISTENCY_TOL = 5e-4


@dataclass(frozen=True)
class ReferenceRow:
    n: int
    j: int
    k: complex
    delta: float
    mu: complex
    zeta: complex


@dataclass(frozen=True)
class ReferenceBlock:
    table: str
    n: int
    k: complex
    delta: float
    rows: tuple[ReferenceRow, ...]

    @property
    def params(self) -> ProblemParams:
        return ProblemParams(self.k, self.delta)


def _block(table, n, k, delta, pairs):
    rows = tuple(ReferenceRow(n, j, complex(k), float(delta), mu, zeta) for j, (mu, zeta) in enumerate(pairs, start=1))
    return ReferenceBlock(table, n, complex(k), float(delta), rows)


REFERENCE_TABLES: dict[str, tuple[ReferenceBlock, ...]] = {
    "vary_n": (
        _block("vary_n", 0, 2, 1, [
            (1.6364 + 0.0739j, -0.7290 - 0.1328j),
            (4.7340 + 0.0265j, 0.0543 - 0.0007j),
            (7.8669 + 0.0160j, 0.0173 - 0.0001j),
            (11.0048 + 0.0114j, 0.0085 - 0.0000j),
            (14.1443 + 0.0089j, 0.0051 - 0.0000j),
        ]),
        _block("vary_n", 1, 2, 1, [
            (2.7440 - 0.0770j, 0.2798 + 0.0336j),
            (6.1160 - 0.0268j, 0.0299 + 0.0003j),
            (9.3161 - 0.0170j, 0.0121 + 0.0000j),
            (12.4855 - 0.0126j, 0.0066 + 0.0000j),
            (15.6435 - 0.0100j, 0.0042 + 0.0000j),
        ]),
        _block("vary_n", 2, 2, 1, [
            (3.9104 - 0.0072j, 0.0886 + 0.0004j),
            (7.4573 - 0.0026j, 0.0194 + 0.0000j),
            (10.7223 - 0.0017j, 0.0090 + 0.0000j),
            (13.9275 - 0.0013j, 0.0053 + 0.0000j),
            (17.1084 - 0.0010j, 0.0035 + 0.0000j),
        ]),
    ),
    "vary_k": (
        _block("vary_k", 1, 1, 1, [
            (2.7394 - 0.0532j, 0.1535 + 0.0068j),
            (6.1148 - 0.01842j, 0.0274 + 0.0001j),
            (9.3154 - 0.01171j, 0.0116 + 0.0000j),
            (12.4850 - 0.0086j, 0.0064 + 0.0000j),
            (15.6431 - 0.0069j, 0.0041 + 0.0000j),
        ]),
        _block("vary_k", 1, 5, 1, [
            (2.7147 - 0.0249j, -0.0567 + 0.0004j),
            (6.1067 - 0.0085j, 0.0813 + 0.0006j),
            (9.3102 - 0.0054j, 0.0162 + 0.0000j),
            (12.4812 - 0.0040j, 0.0076 + 0.0000j),
            (15.6401 - 0.0031j, 0.0045 + 0.0000j),
        ]),
        _block("vary_k", 1, 10, 1, [
            (2.7871 - 0.0424j, -0.0108 + 0.0000j),
            (6.1319 - 0.0153j, -0.0160 + 0.0000j),
            (9.3262 - 0.0098j, -0.0767 + 0.0010j),
            (12.4930 - 0.0072j, 0.0178 + 0.0000j),
            (15.6495 - 0.0057j, 0.0069 + 0.0000j),
        ]),
    ),
    "vary_delta": (
        _block("vary_delta", 1, 4, 0.1, [
            (2.1676 - 0.0087j, 0.0022 + 0.0000j),
            (5.9582 - 0.0019j, 0.0002 + 0.0000j),
            (9.2170 - 0.0012j, 0.0001 + 0.0000j),
            (12.4126 - 0.0009j, 0.0000 + 0.0000j),
            (15.5857 - 0.0007j, 0.0000 + 0.0000j),
        ]),
        _block("vary_delta", 1, 4, 1, [
            (2.7794 - 0.0069j, -0.1208 + 0.0005j),
            (6.1294 - 0.0025j, 0.0463 + 0.0000j),
            (9.3246 - 0.0016j, 0.0140 + 0.0000j),
            (12.4919 - 0.0012j, 0.0071 + 0.0000j),
            (15.6486 - 0.0009j, 0.0043 + 0.0000j),
        ]),
        _block("vary_delta", 1, 4, 10, [
            (4.0363 - 0.03418j, -0.0631 + 0.0000j),
            (7.01726 - 0.04365j, -0.0644 + 0.0000j),
            (10.0187 - 0.0441j, -0.0666 + 0.0000j),
            (13.0556 - 0.0410j, -0.0699 + 0.0000j),
            (16.1200 - 0.0371j, -0.0746 + 0.0000j),
        ]),
    ),
}


def all_rows() -> list[ReferenceRow]:
    return [row for blocks in REFERENCE_TABLES.values() for block in blocks for row in block.rows]


@dataclass(frozen=True)
class RowDiff:
    """One table row against the computed root of the same rank ``j``.

    ``mu`` and ``zeta`` are ``None`` when fewer than ``j`` roots were found.
    """

    ref: ReferenceRow
    mu: complex | None
    zeta: complex | None

    @property
    def mu_err(self) -> float:
        if self.mu is None:
            return float("inf")
        d = self.mu - self.ref.mu
        return max(abs(d.real), abs(d.imag))

    @property
    def zeta_err(self) -> float:
        if self.zeta is None:
            return float("inf")
        d = self.zeta - self.ref.zeta
        return max(abs(d.real), abs(d.imag))

    @property
    def ok(self) -> bool:
        return self.mu_err <= TRUNCATION_TOL and self.zeta_err <= TRUNCATION_TOL


def reproduce_block(
    block: ReferenceBlock, region: SearchRegion = SearchRegion(), opts: RootOptions = RootOptions()
) -> list[RowDiff]:
    p = block.params
    roots = scan_roots(block.n, p, region, opts)
    out = []
    for row in block.rows:
        if row.j <= len(roots):
            mu = roots[row.j - 1].mu
            out.append(RowDiff(row, mu, zeta_from_mu(mu, p)))
        else:
            out.append(RowDiff(row, None, None))
    return out


def reproduce_tables(names=None, region: SearchRegion = SearchRegion(), opts: RootOptions = RootOptions()):
    """``{table name: [RowDiff, ...]}`` for the requested tables (all by default)."""
    names = list(REFERENCE_TABLES) if names is None else list(names)
    return {
        name: [d for block in REFERENCE_TABLES[name] for d in reproduce_block(block, region, opts)] for name in names
    }

"""Command-line front end.

    python -m ballspectra roots  --k 2 --delta 1 --n 0,1,2
    python -m ballspectra eigs   --k 2 --n 0 --format json
    python -m ballspectra eigfun --k 2 --n 1 --j 1 --m 0 --nr 30 --ntheta 30
    python -m ballspectra asym   --k 1+1i --n-range 250:350
    python -m ballspectra tables [--k 2 --delta 1 --n 0,1,2]
    python -m ballspectra verify [--k 2 --n 0]
    python -m ballspectra selftest

Exit codes: 0 ok, 2 usage, 3 I/O, 4 tolerance failure.
Floats are written as ``%.16e`` so identical runs give identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .asymptotics import EXACT_BAND_MAX, asymptotic_sweep, compare_exact_vs_asymptotic
from .characteristic import ProblemParams
from .checks import selftest_checks, verify_checks
from .eigensystem import _eigenfunction, modes_from_roots
from .errors import BallSpectraError, DomainError, ParameterError
from .oracle import eigenpair_residual
from .reference import REFERENCE_TABLES, TRUNCATION_TOL, reproduce_block
from .rootfinder import RootOptions, SearchRegion, scan_roots

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_TOLERANCE = 4

COMMANDS = ("roots", "eigs", "eigfun", "verify", "asym", "tables", "selftest")

FLOAT_FMT = "%.16e"

TOLERANCES = {
    "truncation": TRUNCATION_TOL,
    "certification": RootOptions().cert_tol,
    "newton_step": RootOptions().newton_tol,
    "eigenrelation_delta1": 1e-6,
    "eigenrelation_other": 1e-5,
    "kernel_expansion": 1e-8,
}


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# Argument grammar
# --------------------------------------------------------------------------


def parse_complex(text: str) -> complex:
    """``"2"``, ``"1+1i"``, ``"1-i"``, ``"-0.5+2e-1i"``, ``"3i"``; ``j`` also accepted."""
    s = text.strip().replace(" ", "").lower()
    if not s:
        raise argparse.ArgumentTypeError("empty complex number")
    if s.endswith("i"):
        s = s[:-1] + "j"
    try:
        val = complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from None
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise argparse.ArgumentTypeError(f"complex number must be finite: {text!r}")
    return val


def parse_n_list(text: str) -> list[int]:
    try:
        vals = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree list {text!r}") from None
    if not vals or any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError("degrees must be nonnegative integers")
    return vals


def parse_n_range(text: str) -> list[int]:
    """``lo:hi[:step]``, both ends inclusive."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"expected lo:hi[:step], got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    if lo < 0 or hi < lo or step < 1:
        raise argparse.ArgumentTypeError(f"need 0 <= lo <= hi and step >= 1, got {text!r}")
    return list(range(lo, hi + 1, step))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ballspectra", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def common(p, need_k):
        p.add_argument("--k", type=parse_complex, required=need_k, help="wave number, e.g. 2 or 1+1i")
        p.add_argument("--delta", type=float, default=None, help="ball radius (default 1)")
        grp = p.add_mutually_exclusive_group()
        grp.add_argument("--n", type=parse_n_list, help="comma-separated degrees")
        grp.add_argument("--n-range", type=parse_n_range, help="lo:hi[:step], inclusive")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", "-o", default="-", help="output file ('-' for stdout)")

    def region(p):
        d = SearchRegion()
        p.add_argument("--re-min", type=float, default=d.re_min)
        p.add_argument("--re-max", type=float, default=d.re_max)
        p.add_argument("--im-min", type=float, default=d.im_min)
        p.add_argument("--im-max", type=float, default=d.im_max)
        p.add_argument("--grid-step", type=float, default=d.grid_step)

    p = sub.add_parser("roots", help="certified roots of the characteristic function")
    common(p, True)
    region(p)
    p = sub.add_parser("eigs", help="eigenvalues, normalisation and oracle residuals")
    common(p, True)
    region(p)
    p.add_argument("--quad-order", type=int, default=200)
    p = sub.add_parser("eigfun", help="eigenfunction samples on an (r, theta) grid")
    common(p, True)
    region(p)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--nr", type=int, default=20)
    p.add_argument("--ntheta", type=int, default=20)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--phi-grid", type=int, default=0, help="also sample N values of phi at --theta")
    p.add_argument("--theta", type=float, default=math.pi / 2)
    p = sub.add_parser("verify", help="oracle residuals and kernel-expansion validation")
    common(p, False)
    p = sub.add_parser("asym", help="large-degree asymptotic sweep")
    common(p, True)
    p.add_argument("--exact", action="store_true", help=f"compare with exact roots for n <= {EXACT_BAND_MAX}")
    p = sub.add_parser("tables", help="reproduce the reference tables and diff them")
    common(p, False)
    p = sub.add_parser("selftest", help="run the invariant suite")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", default="-")
    return parser


# --------------------------------------------------------------------------
# Serialisation
# --------------------------------------------------------------------------


def _fmt_float(x) -> str | None:
    x = float(x)
    if not math.isfinite(x):
        return None
    return FLOAT_FMT % x


def _json_value(v, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        s = _fmt_float(v)
        return "null" if s is None else s
    if isinstance(v, (complex, np.complexfloating)):
        return _json_value({"re": v.real, "im": v.imag}, indent, level)
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json_value(x, indent, level + 1)}" for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(v, (list, tuple)):
        if not v:
            return "[]"
        items = [pad + _json_value(x, indent, level + 1) for x in v]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(v).__name__}")


def to_json(doc, indent: int = 2) -> str:
    return _json_value(doc, indent, 0) + "\n"


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        s = _fmt_float(v)
        return "" if s is None else s
    return str(v)


def to_csv(columns, records) -> str:
    """``columns`` is a list of ``(name, is_complex)``; complex ones split into ``_re``/``_im``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = []
    for name, cplx in columns:
        header.extend([f"{name}_re", f"{name}_im"] if cplx else [name])
    w.writerow(header)
    for rec in records:
        row = []
        for name, cplx in columns:
            v = rec.get(name)
            if cplx:
                row.extend(["", ""] if v is None else [_csv_cell(complex(v).real), _csv_cell(complex(v).imag)])
            else:
                row.append(_csv_cell(v))
        w.writerow(row)
    return buf.getvalue()


def render(fmt, command, args, columns, records) -> str:
    if fmt == "csv":
        return to_csv(columns, records)
    k = getattr(args, "k", None)
    meta = {
        "command": command,
        "k": None if k is None else complex(k),
        "delta": _delta_or_none(args),
        "version": __version__,
        "tolerances": TOLERANCES,
    }
    return to_json({"metadata": meta, "records": [dict(r) for r in records]})


def _delta_or_none(args):
    d = getattr(args, "delta", None)
    return None if d is None else float(d)


def write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def _params(args) -> ProblemParams:
    delta = 1.0 if args.delta is None else args.delta
    try:
        return ProblemParams(args.k, delta)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None


def _n_list(args, default=None) -> list[int]:
    ns = args.n if args.n is not None else args.n_range
    if ns is None:
        if default is None:
            raise UsageError("one of --n or --n-range is required")
        return list(default)
    return ns


def _region(args) -> SearchRegion:
    try:
        return SearchRegion(args.re_min, args.re_max, args.im_min, args.im_max, args.grid_step)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None


def cmd_roots(args):
    p, region = _params(args), _region(args)
    records = []
    for n in _n_list(args):
        for r in scan_roots(n, p, region):
            records.append({"n": r.n, "j": r.j, "mu": r.mu, "residual": r.residual})
    cols = [("n", False), ("j", False), ("mu", True), ("residual", False)]
    return cols, records, EXIT_OK


def cmd_eigs(args):
    p, region = _params(args), _region(args)
    records = []
    for n in _n_list(args):
        for md in modes_from_roots(scan_roots(n, p, region), p):
            records.append(
                {
                    "n": md.n,
                    "j": md.j,
                    "mu": md.mu,
                    "zeta": md.zeta,
                    "lambda": md.lam,
                    "norm_constant": md.norm_constant,
                    "oracle_residual": eigenpair_residual(md, args.quad_order),
                }
            )
    cols = [
        ("n", False),
        ("j", False),
        ("mu", True),
        ("zeta", True),
        ("lambda", True),
        ("norm_constant", False),
        ("oracle_residual", False),
    ]
    return cols, records, EXIT_OK


def cmd_eigfun(args):
    p, region = _params(args), _region(args)
    ns = _n_list(args)
    if len(ns) != 1:
        raise UsageError("eigfun takes exactly one degree")
    n = ns[0]
    if abs(args.m) > n:
        raise UsageError(f"|m| = {abs(args.m)} exceeds n = {n}")
    if args.nr < 1 or args.ntheta < 1 or args.phi_grid < 0:
        raise UsageError("grid sizes must be positive")
    roots = scan_roots(n, p, region)
    if not 1 <= args.j <= len(roots):
        raise UsageError(f"requested j = {args.j}, but {len(roots)} roots were found for n = {n}")
    md = [m for m in modes_from_roots([roots[args.j - 1]], p, all_m=True) if m.m == args.m][0]
    # open grid: r in (0, delta], theta in [0, pi]
    r = p.delta * np.arange(1, args.nr + 1) / args.nr
    th = np.linspace(0.0, np.pi, args.ntheta)
    records = []
    for ri in r:
        vals = _eigenfunction(md, ri, th, args.phi)
        for ti, v in zip(th, np.atleast_1d(vals)):
            records.append({"r": ri, "theta": ti, "phi": args.phi, "v": complex(v)})
    if args.phi_grid:
        ph = 2 * np.pi * np.arange(args.phi_grid) / args.phi_grid
        for ri in r:
            vals = _eigenfunction(md, ri, args.theta, ph)
            for pi_, v in zip(ph, np.atleast_1d(vals)):
                records.append({"r": ri, "theta": args.theta, "phi": pi_, "v": complex(v)})
    cols = [("r", False), ("theta", False), ("phi", False), ("v", True)]
    return cols, records, EXIT_OK


def cmd_asym(args):
    p = _params(args)
    ns = _n_list(args)
    if any(n < 1 for n in ns):
        raise UsageError("asymptotic formulas need n >= 1")
    if args.exact:
        band = [n for n in ns if n <= EXACT_BAND_MAX]
        exact = {rec.n: rec for rec in compare_exact_vs_asymptotic(band, p)}
    else:
        exact = {}
    records = []
    for rec in asymptotic_sweep(ns, p):
        rec = exact.get(rec.n, rec)
        records.append(
            {
                "n": rec.n,
                "zeta_asym": rec.zeta_asym,
                "zeta_simple": rec.zeta_simple,
                "zeta_exact": rec.zeta_exact,
                "rel_gap": rec.rel_gap,
            }
        )
    cols = [("n", False), ("zeta_asym", True), ("zeta_simple", False), ("zeta_exact", True), ("rel_gap", False)]
    return cols, records, EXIT_OK


def _matching_blocks(args):
    blocks = [b for group in REFERENCE_TABLES.values() for b in group]
    if args.k is not None:
        blocks = [b for b in blocks if b.k == args.k]
    if args.delta is not None:
        blocks = [b for b in blocks if b.delta == args.delta]
    ns = args.n if args.n is not None else args.n_range
    if ns is not None:
        blocks = [b for b in blocks if b.n in ns]
    if not blocks:
        raise UsageError("no embedded reference block matches the given --k/--delta/--n")
    return blocks


def cmd_tables(args):
    records = []
    for block in _matching_blocks(args):
        for d in reproduce_block(block):
            records.append(
                {
                    "table": block.table,
                    "n": block.n,
                    "k": block.k,
                    "delta": block.delta,
                    "j": d.ref.j,
                    "mu_ref": d.ref.mu,
                    "zeta_ref": d.ref.zeta,
                    "mu": d.mu,
                    "zeta": d.zeta,
                    "mu_err": d.mu_err,
                    "zeta_err": d.zeta_err,
                    "ok": d.ok,
                }
            )
    cols = [
        ("table", False),
        ("n", False),
        ("k", True),
        ("delta", False),
        ("j", False),
        ("mu_ref", True),
        ("zeta_ref", True),
        ("mu", True),
        ("zeta", True),
        ("mu_err", False),
        ("zeta_err", False),
        ("ok", False),
    ]
    status = EXIT_OK if all(r["ok"] for r in records) else EXIT_TOLERANCE
    return cols, records, status


def _check_records(results):
    records = [{"check": c.name, "error": c.error, "tol": c.tol, "passed": c.passed} for c in results]
    cols = [("check", False), ("error", False), ("tol", False), ("passed", False)]
    status = EXIT_OK if all(c.passed for c in results) else EXIT_TOLERANCE
    return cols, records, status


def cmd_verify(args):
    if args.k is not None:
        p = _params(args)
        sets = [(n, p) for n in _n_list(args, default=(0, 1, 2))]
    else:
        sets = [(b.n, b.params) for b in _matching_blocks(args)]
    return _check_records(verify_checks(sets))


def cmd_selftest(args):
    return _check_records(selftest_checks())


HANDLERS = {
    "roots": cmd_roots,
    "eigs": cmd_eigs,
    "eigfun": cmd_eigfun,
    "verify": cmd_verify,
    "asym": cmd_asym,
    "tables": cmd_tables,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cols, records, status = HANDLERS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, DomainError) as exc:
        print(f"ballspectra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BallSpectraError, ArithmeticError, OverflowError) as exc:
        print(f"ballspectra: numerical failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    text = render(args.format, args.command, args, cols, records)
    try:
        write_output(args.output, text)
    except OSError as exc:
        print(f"ballspectra: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    if status != EXIT_OK:
        failed = sum(1 for r in records if r.get("ok") is False or r.get("passed") is False)
        print(f"ballspectra: {failed} of {len(records)} rows outside tolerance", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())

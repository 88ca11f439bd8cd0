"""Command-line front end.

Wires the parser, the exact algebra and the numeric engine together and emits
JSON or CSV artifacts.  Exit codes: 0 completed with all verdicts passing,
1 completed with a failing verdict, 2 precondition or diagnostic failure,
3 usage error.  Diagnostics go to stderr as JSON lines.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import os
import sys
import tempfile
import time

import numpy as np

from . import __version__
from .errors import (
    ExpPolyError,
    HypothesisFailure,
    LoweringError,
    NoPeelableVariable,
    NumericError,
    ParseError,
    SeparationError,
)
from .expr import (
    lower_functions,
    parse_expression,
    parse_function,
    parse_xpoly,
    parse_ypoly,
    render_laurent,
    render_ratfunc,
    render_ypoly,
    render_zpoly,
)
from .laurent import laurent_gcd, squarefree_decompose
from .nevlab import (
    ExpPolyFunction,
    analyze,
    dpower_obstruction_check,
    first_main_check,
    gcd_counting,
    gcd_smallness_check,
    logderiv_check,
    scan_disk,
    smt_moving_check,
    transversality_check,
    trunborel_check,
)
from .serialize import (
    basis_to_json,
    canonical_json,
    complex_to_json,
    fmt_float,
    laurent_to_json,
    separation_to_json,
)
from .units import frequency_independence
from .ypoly import discriminant, extract_roots, separate_variable
from .laurent import is_squarefree


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _diag(kind: str, detail: str) -> None:
    sys.stderr.write(json.dumps({"level": "error", "kind": kind, "detail": detail}) + "\n")


def _parse_grid(spec: str, log: bool) -> list[float]:
    try:
        a, b, n = spec.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as exc:
        raise UsageError(f"bad r-grid {spec!r}, expected A:B:N") from exc
    if not (a < b and n >= 2 and a > 0):
        raise UsageError("r-grid requires 0 < A < B and N >= 2")
    if log:
        return [float(x) for x in np.geomspace(a, b, n)]
    return [float(x) for x in np.linspace(a, b, n)]


def _parse_scalar(text: str):
    body, basis = parse_function(text)
    if basis.arity != 0 or not body.is_constant():
        raise UsageError(f"{text!r} is not an exact scalar")
    value = body.as_ratfunc()
    if not value.is_scalar():
        raise UsageError(f"{text!r} is not an exact scalar")
    return value.as_scalar()


def _split_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(";") if part.strip()]


def _write_atomic(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".exppoly-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(rows: list[dict], columns: list[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c, "")) for c in columns])
    return buffer.getvalue()


def _csv_cell(value):
    if isinstance(value, float):
        return f"{value:.12g}"
    return value


def _emit(args, payload: dict, rows=None, columns=None, started=None) -> None:
    """Write the artifact (and manifest) or print to stdout."""
    fmt = args.format
    if fmt == "csv" and rows is not None:
        body = _csv_text(rows, columns)
    else:
        body = canonical_json(payload) + "\n"
    if args.out:
        _write_atomic(args.out, body)
        manifest = {
            "command": args.command,
            "config": {
                k: v
                for k, v in sorted(vars(args).items())
                if k not in ("func",) and not k.startswith("_")
            },
            "version": __version__,
            "wall_time_s": fmt_float(time.time() - started),
        }
        _write_atomic(args.out + ".manifest.json", canonical_json(manifest) + "\n")
    else:
        sys.stdout.write(body)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_indep(args, started):
    freqs = []
    for text in _split_list(args.basis):
        body, basis = parse_function(text)
        if basis.arity != 1 or not body.is_monomial():
            raise UsageError(f"{text!r} does not denote a single unit exp[Q]")
        freqs.append(basis.frequencies[0])
    vector = frequency_independence(freqs)
    payload = {
        "independent": vector is None,
        "dependence": list(vector) if vector else None,
    }
    _emit(args, payload, started=started)
    return 0 if vector is None else 1


def _cmd_disc(args, started):
    F, basis = parse_ypoly(args.ypoly)
    delta = discriminant(F)
    payload = {
        "discriminant": render_laurent(delta, basis),
        "laurent": laurent_to_json(delta),
        "basis": basis_to_json(basis),
        "is_zero": delta.is_zero(),
        "squarefree": None if delta.is_zero() else is_squarefree(delta),
    }
    _emit(args, payload, started=started)
    return 0


def _cmd_squarefree(args, started):
    body, basis = parse_function(args.expr)
    if body.is_zero():
        raise UsageError("cannot decompose the zero function")
    parts = squarefree_decompose(body)
    payload = {
        "factors": [
            {"factor": render_laurent(p, basis), "multiplicity": k} for p, k in parts
        ],
        "is_squarefree": all(k == 1 for _, k in parts),
        "basis": basis_to_json(basis),
    }
    _emit(args, payload, started=started)
    return 0


def _cmd_du(args, started):
    body, basis = parse_function(args.expr)
    image = body.derive(basis)
    payload = {
        "result": render_laurent(image, basis),
        "laurent": laurent_to_json(image),
        "basis": basis_to_json(basis),
    }
    _emit(args, payload, started=started)
    return 0


def _cmd_separate(args, started):
    F, basis = parse_ypoly(args.ypoly)
    sep = separate_variable(F, basis, args.var)
    payload = separation_to_json(sep)
    payload["reduced_rendered"] = render_ypoly(sep.reduced, sep.refined_basis.drop(sep.variable))
    payload["shift_rendered"] = render_laurent(sep.shift, sep.refined_basis)
    _emit(args, payload, started=started)
    return 0


def _cmd_extract_root(args, started):
    F, basis = parse_ypoly(args.ypoly)
    roots, final_basis = extract_roots(F, basis)
    rendered = [render_laurent(r, final_basis) for r in roots]
    payload = {
        "roots": rendered,
        "count": len(roots),
        "verified": True,
        "basis": basis_to_json(final_basis),
    }
    if not args.out:
        for line in rendered:
            sys.stdout.write(line + "\n")
        sys.stdout.write(f"verified={'true' if roots is not None else 'false'}\n")
    else:
        _emit(args, payload, started=started)
    return 0


def _cmd_zeros(args, started):
    f = ExpPolyFunction.from_text(args.expr)
    scan = scan_disk(f, args.r, args.tol)
    rows = [
        {
            "re": rec.location.real,
            "im": rec.location.imag,
            "multiplicity": rec.multiplicity,
            "enclosure": rec.enclosure_radius,
            "residual": rec.residual,
        }
        for rec in scan.records
    ]
    payload = {
        "radius_requested": fmt_float(args.r),
        "radius_used": fmt_float(scan.radius),
        "winding": scan.winding,
        "zeros": [
            {
                "location": complex_to_json(rec.location),
                "multiplicity": rec.multiplicity,
                "enclosure": fmt_float(rec.enclosure_radius),
                "residual": fmt_float(rec.residual),
            }
            for rec in scan.records
        ],
    }
    _emit(args, payload, rows, ["re", "im", "multiplicity", "enclosure", "residual"], started)
    return 0


def _cmd_analyze(args, started):
    f = ExpPolyFunction.from_text(args.expr)
    grid = _parse_grid(args.r_grid, args.log)
    trunc = tuple(int(q) for q in args.trunc.split(","))
    samples = analyze(f, grid, trunc_levels=trunc, tol=args.tol)
    rows = []
    for s in samples:
        row = {
            "r": s.r,
            "T": s.T,
            "m": s.m,
            "N": s.N,
            "n_count": s.n_count,
        }
        for q in trunc:
            row[f"N{q}"] = s.N_trunc[q]
        rows.append(row)
    columns = ["r", "T", "m", "N"] + [f"N{q}" for q in trunc] + ["n_count"]
    payload = {
        "samples": [
            {
                "r": fmt_float(s.r),
                "T": fmt_float(s.T),
                "m": fmt_float(s.m),
                "N": fmt_float(s.N),
                "N_trunc": {str(q): fmt_float(v) for q, v in s.N_trunc.items()},
                "n_count": s.n_count,
                "radius_used": fmt_float(s.radius_used),
            }
            for s in samples
        ]
    }
    _emit(args, payload, rows, columns, started)
    return 0


def _cmd_gcd_count(args, started):
    f = ExpPolyFunction.from_text(args.expr_f)
    g = ExpPolyFunction.from_text(args.expr_g)
    grid = _parse_grid(args.r_grid, args.log)
    rows = [{"r": r, "n_gcd": gcd_counting(f, g, r, args.tol)} for r in grid]
    payload = {"gcd_counting": [{"r": fmt_float(x["r"]), "n_gcd": fmt_float(x["n_gcd"])} for x in rows]}
    _emit(args, payload, rows, ["r", "n_gcd"], started)
    return 0


def _report_exit(args, report, started) -> int:
    payload = report.to_json()
    _emit(args, payload, report.csv_rows(), ["r", "lhs", "rhs", "margin", "verdict"], started)
    return 0 if report.passed else 1


def _cmd_smt_check(args, started):
    body, basis = parse_function(args.expr)
    grid = _parse_grid(args.r_grid, args.log)
    report = smt_moving_check(body, basis, grid, eps=args.eps)
    return _report_exit(args, report, started)


def _cmd_check(args, started):
    grid = _parse_grid(args.r_grid, args.log) if args.r_grid else None
    name = args.which
    if name == "first-main":
        f = ExpPolyFunction.from_text(args.exprs[0])
        report = first_main_check(f, _parse_scalar(args.a), _require_grid(grid))
    elif name == "logderiv":
        f = ExpPolyFunction.from_text(args.exprs[0])
        report = logderiv_check(f, _require_grid(grid))
    elif name == "borel":
        bodies, basis = lower_functions(args.exprs)
        report = trunborel_check(bodies, basis, _require_grid(grid))
    elif name == "gcd-small":
        if len(args.exprs) != 2:
            raise UsageError("gcd-small needs exactly two expressions")
        (bf, bg), basis = lower_functions(args.exprs)
        report = gcd_smallness_check(bf, bg, basis, _require_grid(grid), eps=args.eps)
    elif name == "dpower":
        body, basis = parse_function(args.exprs[0])
        report = dpower_obstruction_check(
            body, basis, _require_grid(grid), power=args.power, eps=args.eps
        )
    elif name == "transversal":
        polys = [parse_xpoly(text) for text in args.exprs]
        arity = max(p.arity for p in polys)
        polys = [parse_xpoly(text, arity) for text in args.exprs]
        report = transversality_check(polys, _parse_scalar(args.z0), tol=args.tol)
    else:
        raise UsageError(f"unknown check {name!r}")
    return _report_exit(args, report, started)


def _require_grid(grid):
    if grid is None:
        raise UsageError("this check requires --r-grid A:B:N")
    return grid


# ---------------------------------------------------------------------------
# Argument wiring
# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="exppoly", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="artifact path (atomic write)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--config", default=None, help="INI config file")
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--log", action="store_true", help="geometric r-grid")

    p = sub.add_parser("indep", help="unit independence test")
    p.add_argument("basis", help='units joined by ";", e.g. "exp[z]; exp[2*z]"')
    common(p)
    p.set_defaults(func=_cmd_indep)

    p = sub.add_parser("disc", help="discriminant of a monic Y-polynomial")
    p.add_argument("ypoly")
    common(p)
    p.set_defaults(func=_cmd_disc)

    p = sub.add_parser("squarefree", help="square-free decomposition")
    p.add_argument("expr")
    common(p)
    p.set_defaults(func=_cmd_squarefree)

    p = sub.add_parser("du", help="derivation image of an expression")
    p.add_argument("expr")
    common(p)
    p.set_defaults(func=_cmd_du)

    p = sub.add_parser("separate", help="single-variable separation transform")
    p.add_argument("ypoly")
    p.add_argument("--var", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_separate)

    p = sub.add_parser("extract-root", help="entire-root extraction")
    p.add_argument("ypoly")
    common(p)
    p.set_defaults(func=_cmd_extract_root)

    p = sub.add_parser("zeros", help="certified zeros in a disk")
    p.add_argument("expr")
    p.add_argument("--r", type=float, required=True)
    common(p)
    p.set_defaults(func=_cmd_zeros)

    p = sub.add_parser("analyze", help="Nevanlinna samples over an r-grid")
    p.add_argument("expr")
    p.add_argument("--r-grid", dest="r_grid", required=True)
    p.add_argument("--trunc", default="1,2")
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("gcd-count", help="common-zero counting function")
    p.add_argument("expr_f")
    p.add_argument("expr_g")
    p.add_argument("--r-grid", dest="r_grid", required=True)
    common(p)
    p.set_defaults(func=_cmd_gcd_count)

    p = sub.add_parser("smt-check", help="second-main-theorem instance check")
    p.add_argument("expr")
    p.add_argument("--r-grid", dest="r_grid", required=True)
    p.add_argument("--eps", type=float, default=0.05)
    common(p)
    p.set_defaults(func=_cmd_smt_check)

    p = sub.add_parser("check", help="named inequality checks")
    p.add_argument(
        "which",
        choices=("first-main", "logderiv", "borel", "gcd-small", "dpower", "transversal"),
    )
    p.add_argument("exprs", nargs="+")
    p.add_argument("--r-grid", dest="r_grid", default=None)
    p.add_argument("--eps", type=float, default=0.05)
    p.add_argument("--a", default="1")
    p.add_argument("--z0", default="0")
    p.add_argument("--power", type=int, default=2)
    common(p)
    p.set_defaults(func=_cmd_check)

    return parser


def _apply_config(args) -> None:
    if not args.config:
        return
    parser = configparser.ConfigParser()
    read = parser.read(args.config)
    if not read:
        raise UsageError(f"config file {args.config!r} not found")
    sections = ["common"]
    if args.command:
        sections.append(args.command)
    for section in sections:
        if not parser.has_section(section):
            continue
        for key, value in parser.items(section):
            attr = key.replace("-", "_")
            if not hasattr(args, attr):
                continue
            current = getattr(args, attr)
            default = _build_parser().get_default(attr)
            if current != default:
                continue  # explicit flags override config
            if isinstance(current, bool):
                value = value.lower() in ("1", "true", "yes", "on")
            elif isinstance(current, int) and not isinstance(current, bool):
                value = int(value)
            elif isinstance(current, float):
                value = float(value)
            setattr(args, attr, value)


def main(argv=None) -> int:
    started = time.time()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args)
        return args.func(args, started)
    except UsageError as err:
        _diag("usage", str(err))
        return 3
    except ParseError as err:
        _diag("parse", str(err))
        return 3
    except LoweringError as err:
        _diag("lowering", str(err))
        return 2
    except (HypothesisFailure, NoPeelableVariable, SeparationError) as err:
        _diag(type(err).__name__, str(err))
        return 2
    except NumericError as err:
        _diag(type(err).__name__, str(err))
        return 2
    except ExpPolyError as err:
        _diag(type(err).__name__, str(err))
        return 2
    except ValueError as err:
        _diag("value", str(err))
        return 2


if __name__ == "__main__":
    sys.exit(main())

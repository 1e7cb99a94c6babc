"""Command-line surface: verify cases, emit tables, locate CM points,
recognize algebraic numbers.

Subcommands: verify | tables | find-cm | recognize.  Exit codes: 0 on
success, 1 for a verification/recognition failure, 2 for usage errors.
Reports are emitted in registry order (the id order of the registered
cases) regardless of completion order, and all numeric formatting is
deterministic; with SOURCE_DATE_EPOCH set, two runs of the same command
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time
from datetime import datetime, timezone
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import mp, mpc, mpf

from .algebra import RecognitionError, parse_rhs, recognize_complex, \
    recognize_in_field, recognize_two_surds, rhs_text
from .cases import REGISTRY, CaseSpec, all_ids, case_by_id
from .cm import find_cm_point
from .modular import CurveTag
from .numerics import ConvergenceError, PrecisionContext, default_context
from .series import SeriesFamily
from .verifier import VerificationReport, _split_square, _tau_cell_of, \
    build_cm_data, compute_f_pm, compute_z_pm, verify_case

TABLE_IDS = {
    1: ("cp1", "p1", "cp2", "cp3", "cp4", "cp5", "cp6", "cp7", "cp8",
        "cp9", "cp10", "cp11"),
    2: ("p2", "p3", "p4", "p5", "p6", "p7", "p8"),
    3: ("cw2", "cw3", "cw4", "cw5", "cw6", "cw7", "cw8", "cw9"),
}

_MIN_RECOGNIZE_DIGITS = 50


# --------------------------------------------------------------------------
# serialization helpers


def case_to_obj(case: CaseSpec) -> dict:
    return {
        "id": case.id,
        "family": case.family.value,
        "t": str(case.t),
        "x": str(case.x),
        "b": str(case.b),
        "rhs": rhs_text(case.rhs),
        "status": case.status,
    }


def case_from_obj(obj: dict) -> CaseSpec:
    return CaseSpec(
        id=obj["id"],
        family=SeriesFamily(obj["family"]),
        t=Fraction(obj["t"]),
        x=Fraction(obj["x"]),
        b=Fraction(obj["b"]),
        rhs=parse_rhs(obj["rhs"]),
        status=obj["status"],
    )


def registry_to_json(cases: Sequence[CaseSpec] = REGISTRY) -> str:
    return json.dumps([case_to_obj(c) for c in cases], indent=2) + "\n"


def registry_from_json(text: str):
    return tuple(case_from_obj(o) for o in json.loads(text))


def _timestamp() -> str:
    raw = os.environ.get("SOURCE_DATE_EPOCH")
    epoch = int(raw) if raw else int(time.time())
    return datetime.fromtimestamp(epoch, timezone.utc).strftime(
        "%Y-%m-%dT%H:%M:%SZ")


def _numstr(v, digits: int):
    if v is None:
        return None
    return mp.nstr(v, digits)


def report_to_obj(rep: VerificationReport, guard: int,
                  timestamp: str) -> dict:
    digits = rep.precision
    return {
        "id": rep.id,
        "lhs": _numstr(rep.lhs, digits),
        "rhs": _numstr(rep.rhs, digits),
        "abs_diff": _numstr(rep.abs_diff, 15),
        "b_residual": _numstr(rep.b_residual, 15),
        "rhs_imag_leak": _numstr(rep.rhs_imag_leak, 15),
        "terms_used": rep.terms_used,
        "precision": rep.precision,
        "table_match": rep.table_match,
        "status": rep.status,
        "decomposition_residual": _numstr(rep.decomposition_residual, 15),
        "key_residual": _numstr(rep.key_residual, 15),
        "error": rep.error,
        "guard": guard,
        "timestamp": timestamp,
    }


def _cell_str(cell) -> str:
    re, im = cell
    if not im.terms:
        return str(re)
    return "(%s)+(%s)*i" % (re, im)


def _tau_str(cell) -> str:
    re, im = cell
    if re == 0:
        return "(%s)*i" % im
    return "(%s)+(%s)*i" % (re, im)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_to_csv(rows: Sequence[dict], fieldnames: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _context(digits: Optional[int]) -> PrecisionContext:
    if digits is None:
        return default_context()
    return PrecisionContext(digits)


# --------------------------------------------------------------------------
# subcommands


def cmd_verify(args) -> int:
    if args.all:
        ids = list(all_ids())
    elif args.case_id:
        if args.case_id not in all_ids():
            print("unknown case id: %s" % args.case_id, file=sys.stderr)
            return 2
        ids = [args.case_id]
    else:
        print("verify needs a case id or --all", file=sys.stderr)
        return 2
    try:
        ctx = _context(args.digits)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    stamp = _timestamp()
    reports = [verify_case(case_by_id(cid), ctx) for cid in ids]
    objs = [report_to_obj(rep, ctx.guard, stamp) for rep in reports]
    if args.format == "csv":
        text = _rows_to_csv(objs, list(objs[0].keys()))
    else:
        text = json.dumps(objs, indent=2) + "\n"
    _emit(text, args.out)
    ok = True
    for cid, rep in zip(ids, reports):
        expected = ("evidence-only" if case_by_id(cid).family.evidence_only
                    else "verified")
        if rep.status != expected:
            ok = False
            print("%s: status %s (expected %s)%s"
                  % (cid, rep.status, expected,
                     ": " + rep.error if rep.error else ""),
                  file=sys.stderr)
    return 0 if ok else 1


def _table_row_obj(table_no: int, case: CaseSpec,
                   ctx: PrecisionContext) -> tuple:
    """(row dict in computed tau+/tau- orientation, mismatch or None)."""
    data = build_cm_data(case, ctx)
    if data.recognized is None:
        return None, data.mismatch or "recognition unavailable"
    rec = data.recognized
    arg_key = "z" if case.family is SeriesFamily.P else "sqrt_f"
    row = {
        "table": table_no,
        "id": case.id,
        arg_key + "_plus": _cell_str(rec["z_or_f"][0]),
        arg_key + "_minus": _cell_str(rec["z_or_f"][1]),
        "h": _cell_str(rec["h"]),
        "tau_plus": _tau_str(_tau_cell_of(data.tau_plus)),
        "tau_minus": _tau_str(_tau_cell_of(data.tau_minus)),
        "B_plus": _cell_str(rec["B"][0]),
        "B_minus": _cell_str(rec["B"][1]),
        "C_plus": _cell_str(rec["C"][0]),
        "C_minus": _cell_str(rec["C"][1]),
        "Yratio_plus": _cell_str(rec["Yratio"][0]),
        "Yratio_minus": _cell_str(rec["Yratio"][1]),
    }
    return row, (None if data.table_match else data.mismatch)


def cmd_tables(args) -> int:
    try:
        ctx = _context(args.digits)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    table_nos = [args.table] if args.table else [1, 2, 3]
    rows = []
    mismatches = []
    for no in table_nos:
        for cid in TABLE_IDS[no]:
            case = case_by_id(cid)
            try:
                row, mismatch = _table_row_obj(no, case, ctx)
            except (ConvergenceError, ValueError) as exc:
                row, mismatch = None, str(exc)
            if row is not None:
                rows.append(row)
            if mismatch:
                mismatches.append("table %d row %s: %s" % (no, cid, mismatch))
    if args.format == "csv":
        # P and W tables differ in the argument column name; emit blocks
        chunks = []
        for no in table_nos:
            block = [r for r in rows if r["table"] == no]
            if block:
                chunks.append(_rows_to_csv(block, list(block[0].keys())))
        text = "".join(chunks)
    else:
        text = json.dumps(rows, indent=2) + "\n"
    _emit(text, args.out)
    if args.check and mismatches:
        for line in mismatches:
            print(line, file=sys.stderr)
        return 1
    return 0


def _squarefree_divisors(d0: int):
    divs = [d for d in range(1, d0 + 1) if d0 % d == 0]
    return divs


def _recognize_image(value, d0: int, ctx: PrecisionContext) -> str:
    """Best effort: the image generates a subfield of Q(sqrt(dd)) for some
    divisor dd of the squarefree part of D, so scan those."""
    if ctx.digits >= _MIN_RECOGNIZE_DIGITS:
        for dd in _squarefree_divisors(d0):
            try:
                if isinstance(value, mpc):
                    re_s, im_s = recognize_complex(value, 1, dd, ctx=ctx)
                    return "(%s)+(%s)*i (exact)" % (re_s, im_s)
                return "%s (exact)" % recognize_in_field(value, dd, ctx=ctx)
            except (RecognitionError, ValueError):
                continue
    return "%s (numeric)" % mp.nstr(value, min(ctx.digits, 30))


def cmd_find_cm(args) -> int:
    try:
        ctx = _context(args.digits)
        t = Fraction(args.t)
        x = Fraction(args.x)
    except (ValueError, ZeroDivisionError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    family = SeriesFamily(args.family)
    if t == 0:
        print("degenerate input: t = 0 maps to the cusp", file=sys.stderr)
        return 1
    lines = ["family %s  t=%s  x=%s" % (family.value, t, x)]
    try:
        if family is SeriesFamily.P:
            curve = CurveTag.X0_2
            images = compute_z_pm(t, x, ctx)
            label = "z"
        else:
            curve = CurveTag.X0_2_plus
            images = compute_f_pm(t, x, ctx)
            label = "f"
        with ctx.workdps():
            tol = mpf(10) ** (-(ctx.digits - 10))
        points = []
        for sign, image in zip("+-", images):
            point = find_cm_point(curve, image, tol, ctx)
            points.append((sign, image, point))
    except (ConvergenceError, ValueError, ArithmeticError) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    for sign, image, point in points:
        d0 = _split_square(point.D)[1]
        lines.append("%s%s = %s" % (label, sign,
                                    _recognize_image(image, d0, ctx)))
        form = point.form
        lines.append("tau%s: form (%d, %d, %d)  D = %d  tau = %s"
                     % (sign, form.a, form.b, form.c, point.D,
                        _tau_str(_tau_cell_of(point))))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _sig_digits(text: str) -> int:
    mantissa = text.strip().lower().split("e")[0]
    digits = [ch for ch in mantissa if ch.isdigit()]
    while digits and digits[0] == "0":
        digits.pop(0)
    return len(digits)


def cmd_recognize(args) -> int:
    supplied = [args.re] + ([args.im] if args.im is not None else [])
    digits = min(_sig_digits(s) for s in supplied)
    if digits < _MIN_RECOGNIZE_DIGITS:
        print("need at least %d significant digits, got %d"
              % (_MIN_RECOGNIZE_DIGITS, digits), file=sys.stderr)
        return 2
    try:
        ctx = PrecisionContext(digits)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    try:
        with ctx.workdps():
            if args.im is not None:
                value = mpc(mpf(args.re), mpf(args.im))
                re_s, im_s = recognize_complex(value, args.d1,
                                               args.d2 if args.d2 else 1,
                                               ctx=ctx)
                text = "re = %s\nim = %s\n" % (re_s, im_s)
            elif args.d2:
                text = "%s\n" % recognize_two_surds(mpf(args.re), args.d1,
                                                    args.d2, ctx=ctx)
            else:
                text = "%s\n" % recognize_in_field(mpf(args.re), args.d1,
                                                   ctx=ctx)
    except RecognitionError:
        print("not recognized", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    _emit(text, args.out)
    return 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modpi",
        description="verify 1/pi series against their modular parameterizations")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the verification pipeline")
    p_verify.add_argument("case_id", nargs="?", help="registered case id")
    p_verify.add_argument("--all", action="store_true",
                          help="verify every registered case")
    p_verify.add_argument("--digits", type=int, default=None)
    p_verify.add_argument("--format", choices=("json", "csv"), default="json")
    p_verify.add_argument("--out", default=None, metavar="FILE")
    p_verify.set_defaults(func=cmd_verify)

    p_tables = sub.add_parser("tables",
                              help="recompute and emit the certified tables")
    p_tables.add_argument("--table", type=int, choices=(1, 2, 3), default=None)
    p_tables.add_argument("--format", choices=("json", "csv"), default="json")
    p_tables.add_argument("--check", action="store_true",
                          help="compare against the embedded exact cells")
    p_tables.add_argument("--digits", type=int, default=None)
    p_tables.add_argument("--out", default=None, metavar="FILE")
    p_tables.set_defaults(func=cmd_tables)

    # accept negative rationals/decimals as option values (-1/108, -0.25e-3)
    negative_value = re.compile(r"^-\d*\.?\d+(/\d+)?([eE][-+]?\d+)?$")

    p_find = sub.add_parser("find-cm", help="locate the CM points for (t, x)")
    p_find._negative_number_matcher = negative_value
    p_find.add_argument("--family", choices=("P", "W"), required=True)
    p_find.add_argument("--t", required=True, help="rational, e.g. 1/100")
    p_find.add_argument("--x", required=True, help="rational, e.g. 9/4")
    p_find.add_argument("--digits", type=int, default=None)
    p_find.add_argument("--out", default=None, metavar="FILE")
    p_find.set_defaults(func=cmd_find_cm)

    p_rec = sub.add_parser("recognize",
                           help="recognize a decimal as a quadratic surd")
    p_rec._negative_number_matcher = negative_value
    p_rec.add_argument("--re", required=True, help="decimal real part")
    p_rec.add_argument("--im", default=None, help="decimal imaginary part")
    p_rec.add_argument("--d1", type=int, required=True,
                       help="radicand for the real part / first radicand")
    p_rec.add_argument("--d2", type=int, default=None,
                       help="radicand for the imaginary part / second radicand")
    p_rec.add_argument("--out", default=None, metavar="FILE")
    p_rec.set_defaults(func=cmd_recognize)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""End-to-end certification pipeline for the registered 1/pi identities.

For families P and W each case runs the full argument: evaluate the two
algebraic argument maps and the prefactor h, locate the two CM points
whose hauptmodul values equal the images, evaluate the modular
quantities B, C and the Y-ratio there, recognize everything against the
case's certified table row, assemble the bracketed modular expression
whose real part must equal the displayed constant, check the closed-form
b against the quadratic in B, and compare the directly summed series
against the exact right-hand side.  Families U and V have no modular
parameterization; they get a direct numeric comparison only and are
capped at evidence-only.

The minus-branch argument map for W is rationalized (A - B =
4t(1-4t+16tx) removes a quartic cancellation near t = 0), and the
W bracket uses the continued hypergeometric value at the minus image:
along the path s -> s*t, s in (0,1], the minus image climbs to within
1e-4 of the branch point z = 1 before returning, and the value that
satisfies the generating-function decomposition at every registered W
case is the continuation F(z) + kappa*sqrt(1-z)*2F1(7/8,5/8;3/2;1-z),
not the principal branch.  The decomposition residual recorded in each
report is the gate that would expose a wrong branch choice.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from mpmath import mp, mpc, mpf

from .algebra import (
    RecognitionError,
    SurdSum,
    as_surd_sum,
    recognize_complex,
    recognize_in_field,
    recognize_two_surds,
    rhs_eval,
    surd_sum_eval,
)
from .cases import CaseSpec
from .cm import CMPoint, find_cm_point
from .hypergeom import gauss_2f1
from .modular import CurveTag, quasi_B, scaling_C, weight1_Y
from .numerics import (
    PrecisionContext,
    as_mpc,
    as_mpf,
    default_context,
    maybe_real,
    principal_sqrt,
)
from .series import SeriesFamily, gf_value, series_value_with_terms

_QUARTER = Fraction(1, 4)
_EIGHTH = Fraction(1, 8)
_THREE_EIGHTHS = Fraction(3, 8)


def _psqrt(v):
    """Principal square root, exact-real fast path; assumes workdps."""
    if isinstance(v, Fraction):
        if v >= 0:
            return mp.sqrt(as_mpf(v))
        return mp.sqrt(as_mpc(as_mpf(v)))
    return mp.sqrt(v if isinstance(v, mpc) else as_mpf(v))


# --------------------------------------------------------------------------
# argument maps and their t-derivatives (exact rational cores)


def compute_z_pm(t, x, ctx: Optional[PrecisionContext] = None):
    """Images (z+, z-) of the degree-two argument maps for family P.

    z+ = 128 t / (w + s) and z- = 128 t (w + s) / (w^2 - rad), where
    w = 32tx - x + 2 and s = sqrt(rad), rad = x(x-4)(1-64t).  The minus
    branch is rationalized through the exact integer w^2 - rad, which
    the naive w - s form computes with total cancellation for small t.
    """
    ctx = ctx or default_context()
    t, x = Fraction(t), Fraction(x)
    w = 32 * t * x - x + 2
    rad = x * (x - 4) * (1 - 64 * t)
    norm = w * w - rad
    with ctx.workdps():
        tv = as_mpf(t)
        if rad == 0:
            if w == 0:
                raise ValueError("degenerate arguments: map denominator vanishes")
            z = 128 * tv / as_mpf(w)
            return z, z
        if norm == 0:
            raise ValueError("degenerate arguments: rationalized denominator vanishes")
        s = _psqrt(rad)
        den = as_mpf(w) + s
        if den == 0:
            raise ValueError("degenerate arguments: map denominator vanishes")
        zp = 128 * tv / den
        zm = 128 * tv * den / as_mpf(norm)
        return maybe_real(as_mpc(zp)), maybe_real(as_mpc(zm))


def _z_prime_pair(t, x, ctx: PrecisionContext):
    t, x = Fraction(t), Fraction(x)
    w = 32 * t * x - x + 2
    rad = x * (x - 4) * (1 - 64 * t)
    norm = w * w - rad
    with ctx.workdps():
        tv, xv, wv = as_mpf(t), as_mpf(x), as_mpf(w)
        wp = 32 * xv
        if rad == 0:
            d = maybe_real((128 * wv - 128 * tv * wp) / wv ** 2)
            return d, d
        s = _psqrt(rad)
        if t == 0:
            # z = 128 t/(w +- s) + O(t^2): the derivative at 0 is the
            # linear coefficient, minus branch rationalized through norm
            zp0 = 128 / (wv + s)
            zm0 = 128 * (wv + s) / as_mpf(norm)
            return maybe_real(as_mpc(zp0)), maybe_real(as_mpc(zm0))
        sp = -32 * xv * (xv - 4) / s
        zp, zm = compute_z_pm(t, x, ctx)
        zpp = zp * (1 / tv - (wp + sp) / (wv + s))
        zmp = zm * (1 / tv - (wp - sp) * (wv + s) / as_mpf(norm))
        return maybe_real(as_mpc(zpp)), maybe_real(as_mpc(zmp))


def compute_f_pm(t, x, ctx: Optional[PrecisionContext] = None):
    """Images (f+, f-) of the quartic argument maps for family W.

    f+ = 4096 t^5 x / (sqrt(A) + sqrt(B))^4 with A = (1-4t)(1-16tx) and
    B = (1-4t)^2 - 16tx; the minus branch uses the rationalized form
    f- = 16 t x (sqrt(A) + sqrt(B))^4 / (1-4t+16tx)^4, equivalent via
    A - B = 4t(1-4t+16tx) but free of the fourth-power cancellation.
    """
    ctx = ctx or default_context()
    t, x = Fraction(t), Fraction(x)
    q = 1 - 4 * t + 16 * t * x
    if q == 0:
        raise ValueError("degenerate arguments: 1 - 4t + 16tx vanishes")
    A = (1 - 4 * t) * (1 - 16 * t * x)
    B = (1 - 4 * t) ** 2 - 16 * t * x
    with ctx.workdps():
        tv, xv = as_mpf(t), as_mpf(x)
        sA, sB = _psqrt(A), _psqrt(B)
        den = (sA + sB) ** 4
        if den == 0:
            raise ValueError("degenerate arguments: map denominator vanishes")
        fp = 4096 * tv ** 5 * xv / den
        fm = 16 * tv * xv * den / as_mpf(q) ** 4
        return maybe_real(as_mpc(fp)), maybe_real(as_mpc(fm))


def _f_prime_pair(t, x, ctx: PrecisionContext):
    t, x = Fraction(t), Fraction(x)
    q = 1 - 4 * t + 16 * t * x
    A = (1 - 4 * t) * (1 - 16 * t * x)
    B = (1 - 4 * t) ** 2 - 16 * t * x
    with ctx.workdps():
        tv, xv = as_mpf(t), as_mpf(x)
        if t == 0:
            # f+ = 256 t^5 x + O(t^6) and f- = 256 t x + O(t^2)
            return mpf(0), maybe_real(as_mpc(256 * xv))
        sA, sB = _psqrt(A), _psqrt(B)
        Ap = -4 * (1 - 16 * tv * xv) - 16 * xv * (1 - 4 * tv)
        Bp = -8 * (1 - 4 * tv) - 16 * xv
        sAp = Ap / (2 * sA)
        sBp = Bp / (2 * sB)
        fp, fm = compute_f_pm(t, x, ctx)
        fpp = fp * (5 / tv - 4 * (sAp + sBp) / (sA + sB))
        qp = -4 + 16 * xv
        fmp = fm * (1 / tv + 4 * (sAp + sBp) / (sA + sB) - 4 * qp / as_mpf(q))
        return maybe_real(as_mpc(fpp)), maybe_real(as_mpc(fmp))


def compute_arg_derivative(family: SeriesFamily, sign, t, x,
                           ctx: Optional[PrecisionContext] = None):
    """t-derivative of one argument map; sign is '+', '-', +1 or -1."""
    ctx = ctx or default_context()
    idx = {"+": 0, "-": 1, 1: 0, -1: 1}.get(sign)
    if idx is None:
        raise ValueError("sign must be '+', '-', +1 or -1")
    if family is SeriesFamily.P:
        return _z_prime_pair(t, x, ctx)[idx]
    if family is SeriesFamily.W:
        return _f_prime_pair(t, x, ctx)[idx]
    raise ValueError("argument maps exist only for families P and W")


def compute_h(family: SeriesFamily, t, x,
              ctx: Optional[PrecisionContext] = None):
    """Algebraic prefactor h(t;x) = (1-16tx)^(-1/2) (P), (1-4t+16tx)^(-1/2) (W)."""
    ctx = ctx or default_context()
    rad = _h_radicand(family, Fraction(t), Fraction(x))
    with ctx.workdps():
        return 1 / mp.sqrt(as_mpf(rad))


def compute_h_prime(family: SeriesFamily, t, x,
                    ctx: Optional[PrecisionContext] = None):
    """Closed-form t-derivative of the prefactor."""
    ctx = ctx or default_context()
    t, x = Fraction(t), Fraction(x)
    rad = _h_radicand(family, t, x)
    with ctx.workdps():
        xv = as_mpf(x)
        base = as_mpf(rad) ** mpf("-1.5")
        if family is SeriesFamily.P:
            return 8 * xv * base
        return (2 - 8 * xv) * base


def _h_radicand(family: SeriesFamily, t: Fraction, x: Fraction) -> Fraction:
    if family is SeriesFamily.P:
        rad = 1 - 16 * t * x
    elif family is SeriesFamily.W:
        rad = 1 - 4 * t + 16 * t * x
    else:
        raise ValueError("prefactor exists only for families P and W")
    if rad <= 0:
        raise ValueError("prefactor radicand must be positive")
    return rad


# --------------------------------------------------------------------------
# hypergeometric values


def _F_P(z, ctx: PrecisionContext):
    return gauss_2f1(_QUARTER, _QUARTER, 1, z, ctx)


def _F_W(z, ctx: PrecisionContext):
    return gauss_2f1(_EIGHTH, _THREE_EIGHTHS, 1, z, ctx)


def second_sheet_F(z, ctx: Optional[PrecisionContext] = None):
    """Continuation of 2F1(1/8,3/8;1;z) once around the branch point z = 1.

    Equals F(z) + kappa*sqrt(1-z)*2F1(7/8,5/8;3/2;1-z) with kappa =
    4*sqrt(pi)/(Gamma(1/8)*Gamma(3/8)); for real z in (0,1) this is the
    value carried back by a loop that crosses [1, oo) twice.
    """
    ctx = ctx or default_context()
    with ctx.workdps():
        kappa = 4 * mp.sqrt(mp.pi) / (mp.gamma(mpf(1) / 8) * mp.gamma(mpf(3) / 8))
        zc = maybe_real(as_mpc(z))
        tail = gauss_2f1(Fraction(7, 8), Fraction(5, 8), Fraction(3, 2),
                         1 - zc, ctx)
        return maybe_real(as_mpc(_F_W(zc, ctx) + kappa * _psqrt(1 - zc) * tail))


# --------------------------------------------------------------------------
# CM data assembly and table recognition


@dataclass
class CMData:
    """Numeric modular data for one case plus its exact recognitions."""

    tau_plus: CMPoint
    tau_minus: CMPoint
    z_or_f_pm: Tuple
    h: object
    B_pm: Tuple
    C_pm: Tuple
    Yratio_pm: Tuple
    recognized: Optional[dict]
    table_match: bool
    mismatch: Optional[str] = None


def _split_square(n: int) -> Tuple[int, int]:
    # n = s^2 * n0 with n0 square-free
    s = 1
    p = 2
    m = n
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            s *= p
        p += 1
    return s, m


def _tau_cell_of(point: CMPoint):
    a, b = point.form.a, point.form.b
    s, d0 = _split_square(point.D)
    return (Fraction(-b, 2 * a), SurdSum(((Fraction(s, 2 * a), d0),)))


def _tau_slot(point: CMPoint, row) -> Optional[int]:
    cell = _tau_cell_of(point)
    for i, golden in enumerate(row.tau_pm):
        if golden == cell:
            return i
    # second pass up to tau -> -conj(tau): the search keys on a real
    # hauptmodul value, which cannot tell the two apart, and the printed
    # rows sometimes carry the other representative.  For the rows where
    # this occurs re(tau) = +-1/2, so the two are the same point of the
    # curve (translation by 1); any genuinely mirrored point would still
    # be caught downstream, since the recognized B/C/Y cells must equal
    # the golden ones exactly and conjugation flips their imaginary parts.
    mirrored = (-cell[0], cell[1])
    for i, golden in enumerate(row.tau_pm):
        if golden == mirrored:
            return i
    return None


def _cell_shape(cell):
    re, im = cell
    rads_re = [d for _, d in re.terms if d != 1]
    rads_im = [d for _, d in im.terms if d != 1]
    return rads_re, rads_im, bool(im.terms)


def _recognize_cell(value, shape_cell, ctx: PrecisionContext):
    """Recognize a numeric value in the field shape of a golden cell."""
    rads_re, rads_im, is_complex = _cell_shape(shape_cell)
    if not is_complex:
        if len(rads_re) == 0:
            got = recognize_in_field(value, 1, ctx=ctx)
        elif len(rads_re) == 1:
            got = recognize_in_field(value, rads_re[0], ctx=ctx)
        else:
            got = recognize_two_surds(value, rads_re[0], rads_re[1], ctx=ctx)
        return (as_surd_sum(got), SurdSum(()))
    d_re = rads_re[0] if rads_re else 1
    d_im = rads_im[0] if rads_im else 1
    re_q, im_q = recognize_complex(value, d_re, d_im, ctx=ctx)
    return (as_surd_sum(re_q), as_surd_sum(im_q))


def build_cm_data(case: CaseSpec, ctx: Optional[PrecisionContext] = None) -> CMData:
    """Locate both CM points and evaluate/recognize all modular quantities."""
    ctx = ctx or default_context()
    family = case.family
    if family.evidence_only:
        raise ValueError("no modular parameterization for family %s" % family.value)
    curve = CurveTag.X0_2 if family is SeriesFamily.P else CurveTag.X0_2_plus
    if family is SeriesFamily.P:
        g_pm = compute_z_pm(case.t, case.x, ctx)
    else:
        g_pm = compute_f_pm(case.t, case.x, ctx)
    with ctx.workdps():
        tol = mpf(10) ** (-(ctx.digits - 10))
    cm_plus = find_cm_point(curve, g_pm[0], tol, ctx)
    cm_minus = find_cm_point(curve, g_pm[1], tol, ctx)
    h_val = compute_h(family, case.t, case.x, ctx)
    B_pm = (quasi_B(curve, cm_plus.tau, ctx), quasi_B(curve, cm_minus.tau, ctx))
    C_pm = (scaling_C(curve, cm_plus.tau, ctx), scaling_C(curve, cm_minus.tau, ctx))
    with ctx.workdps():
        y_plus = weight1_Y(curve, cm_plus.tau, ctx)
        y_minus = weight1_Y(curve, cm_minus.tau, ctx)
        Yratio_pm = (maybe_real(as_mpc(y_plus / y_minus)),
                     maybe_real(as_mpc(y_minus / y_plus)))
    data = CMData(tau_plus=cm_plus, tau_minus=cm_minus, z_or_f_pm=g_pm,
                  h=h_val, B_pm=B_pm, C_pm=C_pm, Yratio_pm=Yratio_pm,
                  recognized=None, table_match=True)
    row = case.expected_row
    if row is None:
        return data
    try:
        _match_row(case, data, row, ctx)
    except RecognitionError as exc:
        data.table_match = False
        data.mismatch = "recognition failed: %s" % exc
    return data


def _match_row(case: CaseSpec, data: CMData, row, ctx: PrecisionContext) -> None:
    """Recognize all computed quantities and compare against the golden row."""
    family = case.family
    slot_plus = _tau_slot(data.tau_plus, row)
    slot_minus = _tau_slot(data.tau_minus, row)
    notes = []
    if slot_plus is None or slot_minus is None:
        data.table_match = False
        data.mismatch = "located CM point not among the certified row's points"
        return
    # argument-map cells: the two recognized values must reproduce the two
    # certified cells as an unordered pair (the certified slot order is not
    # tied to the tau column); W cells hold sqrt(f).
    if family is SeriesFamily.P:
        vals = data.z_or_f_pm
    else:
        with ctx.workdps():
            vals = tuple(_psqrt(v) for v in data.z_or_f_pm)
    rec_zf = tuple(_recognize_cell(v, row.z_or_sqrtnegf[0], ctx) for v in vals)
    if Counter(rec_zf) != Counter(row.z_or_sqrtnegf):
        notes.append("argument-map cells")
    rec_h = _recognize_cell(data.h, (as_surd_sum(row.h), SurdSum(())), ctx)
    if rec_h != (as_surd_sum(row.h), SurdSum(())):
        notes.append("prefactor h")
    rec_B = []
    rec_C = []
    rec_Y = []
    for val_idx, slot in ((0, slot_plus), (1, slot_minus)):
        got_B = _recognize_cell(data.B_pm[val_idx], row.B[slot], ctx)
        if got_B != row.B[slot]:
            notes.append("B cell slot %d" % (slot + 1))
        rec_B.append(got_B)
        got_C = _recognize_cell(data.C_pm[val_idx], row.C[slot], ctx)
        if got_C != row.C[slot]:
            notes.append("C cell slot %d" % (slot + 1))
        rec_C.append(got_C)
        got_Y = _recognize_cell(data.Yratio_pm[val_idx], row.Yratio[slot], ctx)
        if got_Y != row.Yratio[slot]:
            notes.append("Y-ratio cell slot %d" % (slot + 1))
        rec_Y.append(got_Y)
    data.recognized = {
        "z_or_f": rec_zf,
        "h": rec_h,
        "B": tuple(rec_B),
        "C": tuple(rec_C),
        "Yratio": tuple(rec_Y),
        "slots": (slot_plus, slot_minus),
    }
    if notes:
        data.table_match = False
        data.mismatch = "mismatched cells: " + ", ".join(notes)


# --------------------------------------------------------------------------
# bracket assembly, b-formula, decomposition


def bracket_terms(case: CaseSpec, cm: CMData,
                  ctx: Optional[PrecisionContext] = None) -> Tuple:
    """The additive terms of the bracketed modular sum, before the 1/pi.

    Family P gives two terms (the plus and minus half, each carrying its
    (Y-ratio)^(1/2) as a hypergeometric ratio); family W gives three (the
    two halves plus the sqrt(2) correction that the continued value at
    the minus image produces).
    """
    ctx = ctx or default_context()
    with ctx.workdps():
        tv = as_mpf(Fraction(case.t))
        h = as_mpc(cm.h)
        Cp, Cm = (as_mpc(v) for v in cm.C_pm)
        gp, gm = (as_mpc(v) for v in cm.z_or_f_pm)
        if case.family is SeriesFamily.P:
            gpp, gmp = _z_prime_pair(case.t, case.x, ctx)
            Zp, Zm = _F_P(gp, ctx), _F_P(gm, ctx)
            return (gpp * h * tv / (2 * Cp * gp) * (Zm / Zp),
                    gmp * h * tv / (2 * Cm * gm) * (Zp / Zm))
        if case.family is SeriesFamily.W:
            gpp, gmp = _f_prime_pair(case.t, case.x, ctx)
            Fp, Fm = _F_W(gp, ctx), _F_W(gm, ctx)
            F2 = second_sheet_F(gm, ctx)
            half_plus = gpp * h * tv / (2 * Cp * gp)
            half_minus = gmp * h * tv / (2 * Cm * gm)
            extra = -mp.sqrt(2) * (gmp * tv / (2 * gm)) * h * Fp \
                / (Fm * _psqrt(1 - gm))
            return (half_plus * (F2 / Fp),
                    half_minus * (F2 * Fp / Fm ** 2),
                    extra)
        raise ValueError("no bracket for family %s" % case.family.value)


def rhs_key(case: CaseSpec, cm: CMData, ctx: Optional[PrecisionContext] = None):
    """The bracketed modular sum times 1/pi (complex; its real part is the
    certified constant over pi and its imaginary part must vanish)."""
    ctx = ctx or default_context()
    terms = bracket_terms(case, cm, ctx)
    with ctx.workdps():
        bracket = as_mpc(terms[0])
        for term in terms[1:]:
            bracket += as_mpc(term)
        return +(bracket / mp.pi)


def b_residual(case: CaseSpec, cm: CMData,
               ctx: Optional[PrecisionContext] = None):
    """|closed-form b - case.b| from the B-weighted logarithmic derivative."""
    ctx = ctx or default_context()
    with ctx.workdps():
        tv = as_mpf(Fraction(case.t))
        h = as_mpc(cm.h)
        hp = compute_h_prime(case.family, case.t, case.x, ctx)
        Bp, Bm = (as_mpc(v) for v in cm.B_pm)
        gp, gm = (as_mpc(v) for v in cm.z_or_f_pm)
        if case.family is SeriesFamily.P:
            gpp, gmp = _z_prime_pair(case.t, case.x, ctx)
        else:
            gpp, gmp = _f_prime_pair(case.t, case.x, ctx)
        bform = -(Bp * gpp * h * tv / (2 * gp)
                  + Bm * gmp * h * tv / (2 * gm) + hp * tv) / h
        return mp.fabs(bform - as_mpf(Fraction(case.b)))


def decomposition_residual(case: CaseSpec,
                           ctx: Optional[PrecisionContext] = None):
    """|generating function - hypergeometric product| at the case's (t,x).

    P: F(z+) F(z-) h with F = 2F1(1/4,1/4;1;.); W: F(f+) F_II(f-) h where
    F_II is the continuation of 2F1(1/8,3/8;1;.) across the branch point
    (every registered W case sits past it; see the module docstring).
    """
    ctx = ctx or default_context()
    with ctx.workdps():
        direct = gf_value(case.family, case.t, case.x, ctx)
        h = compute_h(case.family, case.t, case.x, ctx)
        if case.family is SeriesFamily.P:
            zp, zm = compute_z_pm(case.t, case.x, ctx)
            prod = _F_P(zp, ctx) * _F_P(zm, ctx)
        elif case.family is SeriesFamily.W:
            fp, fm = compute_f_pm(case.t, case.x, ctx)
            prod = _F_W(fp, ctx) * second_sheet_F(fm, ctx)
        else:
            raise ValueError("no decomposition for family %s" % case.family.value)
        return mp.fabs(direct - prod * h)


def y_ratio_routes(case: CaseSpec, cm: CMData,
                   ctx: Optional[PrecisionContext] = None):
    """(Y(tau-)/Y(tau+))^(1/2) two ways: hypergeometric ratio vs modular.

    The hypergeometric route is Z(tau-)/Z(tau+), the weight-1/2 form
    evaluated through the hauptmodul as the principal hypergeometric
    value at each image (for W too: the relation between Z^2 and Y holds
    on the principal sheet, so the continued value used by the bracket
    does not enter here).  The modular route takes the principal square
    root of the Y-ratio and may differ from the first by sign only.
    """
    ctx = ctx or default_context()
    with ctx.workdps():
        gp, gm = (as_mpc(v) for v in cm.z_or_f_pm)
        if case.family is SeriesFamily.P:
            ratio_2f1 = _F_P(gm, ctx) / _F_P(gp, ctx)
        elif case.family is SeriesFamily.W:
            ratio_2f1 = _F_W(gm, ctx) / _F_W(gp, ctx)
        else:
            raise ValueError("no Y-ratio for family %s" % case.family.value)
        ratio_modular = principal_sqrt(cm.Yratio_pm[1], ctx)
        return maybe_real(as_mpc(ratio_2f1)), maybe_real(as_mpc(ratio_modular))


# --------------------------------------------------------------------------
# reports


@dataclass
class VerificationReport:
    """Everything one case check produced; extension fields at the end."""

    id: str
    lhs: object
    rhs: object
    abs_diff: object
    b_residual: Optional[object]
    rhs_imag_leak: Optional[object]
    terms_used: int
    precision: int
    table_match: bool
    status: str
    decomposition_residual: Optional[object] = None
    key_residual: Optional[object] = None
    error: Optional[str] = None


def _main_threshold(ctx: PrecisionContext):
    return mpf(10) ** (-(ctx.digits - 20))


def _evidence_threshold(ctx: PrecisionContext):
    return mpf(10) ** (-(ctx.digits - 10))


def verify_case(case: CaseSpec,
                ctx: Optional[PrecisionContext] = None) -> VerificationReport:
    """Run the full pipeline for one registered case."""
    ctx = ctx or default_context()
    stage = "series"
    try:
        lhs, terms = series_value_with_terms(case.family, case.t, case.x,
                                             case.b, ctx)
        with ctx.workdps():
            rhs_val = rhs_eval(case.rhs, ctx)
            abs_diff = mp.fabs(lhs - rhs_val)
        if case.family.evidence_only:
            with ctx.workdps():
                ok = abs_diff < _evidence_threshold(ctx)
            return VerificationReport(
                id=case.id, lhs=lhs, rhs=rhs_val, abs_diff=abs_diff,
                b_residual=None, rhs_imag_leak=None, terms_used=terms,
                precision=ctx.digits, table_match=True,
                status="evidence-only" if ok else "failed")
        stage = "cm-data"
        cm = build_cm_data(case, ctx)
        stage = "bracket"
        br = rhs_key(case, cm, ctx)
        with ctx.workdps():
            key_res = mp.fabs(br.real - rhs_val)
            leak = mp.fabs(br.imag)
        stage = "b-formula"
        b_res = b_residual(case, cm, ctx)
        stage = "decomposition"
        dec = decomposition_residual(case, ctx)
        with ctx.workdps():
            thr = _main_threshold(ctx)
            clean = (abs_diff < thr and key_res < thr and b_res < thr
                     and leak < thr and dec < thr)
        status = "verified" if (clean and cm.table_match) else "failed"
        return VerificationReport(
            id=case.id, lhs=lhs, rhs=rhs_val, abs_diff=abs_diff,
            b_residual=b_res, rhs_imag_leak=leak, terms_used=terms,
            precision=ctx.digits, table_match=cm.table_match, status=status,
            decomposition_residual=dec, key_residual=key_res,
            error=cm.mismatch)
    except Exception as exc:  # noqa: BLE001 - every stage failure is reported
        return VerificationReport(
            id=case.id, lhs=None, rhs=None, abs_diff=None, b_residual=None,
            rhs_imag_leak=None, terms_used=0, precision=ctx.digits,
            table_match=False, status="failed",
            error="%s: %s" % (stage, exc))


def verify_remark(ctx: Optional[PrecisionContext] = None):
    """Residual of the complete-elliptic-integral identity

    (25/(6 pi^2)) (E(a+)K(a-) + E(a-)K(a+) - (3/2) K(a+)K(a-)) = 75/(48 pi)

    with K and E taken at moduli a+- = (3 +- sqrt(-7))/8.  The squares
    a+-^2 = (1 -+ 3 sqrt(-7))/32 are exactly the arguments produced by
    rewriting the two 2F1(1/4,1/4;1;.) factors of the P decomposition
    through the quadratic transformation at t = 1/100, x = 9/4, which
    pins the convention: the displayed a+- are moduli, not parameters.
    """
    from .hypergeom import elliptic_E, elliptic_K

    ctx = ctx or default_context()
    with ctx.workdps():
        a_plus = mpc(mpf(3) / 8, mp.sqrt(mpf(7)) / 8)
        a_minus = mp.conj(a_plus)
        combo = (elliptic_E(a_plus, ctx) * elliptic_K(a_minus, ctx)
                 + elliptic_E(a_minus, ctx) * elliptic_K(a_plus, ctx)
                 - mpf(3) / 2 * elliptic_K(a_plus, ctx) * elliptic_K(a_minus, ctx))
        value = 25 * combo / (6 * mp.pi ** 2)
        return mp.fabs(value - mpf(75) / (48 * mp.pi))

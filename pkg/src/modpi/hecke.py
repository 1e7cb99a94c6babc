"""Level-2 coset systems and polynomial-certified CM evaluations.

The weight-2 quasi-modular object f = DY/Y - 1/(2 pi Im tau) is not
modular, but the differences F_gamma = f - f|_2 gamma over a complete
coset system are, so their symmetric functions are rational in the
hauptmodul T. Embedded here are the degree-2 system for the prime
matrices of determinant 2 (a quadratic Psi) and the five-element
determinant-2 system (a quintic Xi). Both are regression-checked
numerically at arbitrary tau; at CM points they are evaluated on exact
hauptmodul values, which pins B(tau0) and Y(tau+)/Y(tau-) down to
algebraic numbers with numerics used only to pick among conjugate
roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from mpmath import mp, mpc, mpf

from .algebra import (QuadSurd, RecognitionError, is_squarefree,
                      recognize_in_field, surd_eval, surd_sqrt)
from .cm import CMPoint, QuadraticForm
from .modular import CurveTag, hauptmodul, hauptmodul_D, _y_and_dlog
from .numerics import PrecisionContext, as_mpc

_ACCEPT_RING = mpf(10) ** -25
_REJECT_RING = mpf(10) ** -10


@dataclass(frozen=True)
class IntMatrix2:
    a: int
    b: int
    c: int
    d: int

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def apply(self, tau):
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def __mul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(self.a * other.a + self.b * other.c,
                          self.a * other.b + self.b * other.d,
                          self.c * other.a + self.d * other.c,
                          self.c * other.b + self.d * other.d)

    def __str__(self) -> str:
        return "[[%d,%d],[%d,%d]]" % (self.a, self.b, self.c, self.d)


class CosetKind(Enum):
    M2PRIME = "M2prime"   # det m square-free, 2 | C, A odd
    M2 = "M2"             # 2 | C


_IDENTITY = IntMatrix2(1, 0, 0, 1)

# canonical determinant-2 systems (second one has five classes)
_M2PRIME_2 = (IntMatrix2(1, -1, 2, 0), IntMatrix2(1, 0, 0, 2))
_M2_2 = (IntMatrix2(1, 0, 0, 2), IntMatrix2(1, 1, 0, 2),
         IntMatrix2(2, 0, 0, 1), IntMatrix2(0, -1, 2, 0),
         IntMatrix2(0, -1, 2, 1))


@dataclass(frozen=True)
class CosetSystem:
    m: int
    kind: CosetKind
    reps: tuple


def cosets(kind: CosetKind, m: int) -> CosetSystem:
    if m <= 0:
        raise ValueError("determinant must be positive")
    if kind is CosetKind.M2PRIME:
        if not is_squarefree(m):
            raise ValueError("M2prime needs square-free determinant")
        if m == 2:
            reps = _M2PRIME_2
        else:
            reps = tuple(IntMatrix2(a, j, 0, m // a)
                         for a in range(1, m + 1) if m % a == 0 and a % 2
                         for j in range(m // a))
        expected = sum(m // a for a in range(1, m + 1)
                       if m % a == 0 and a % 2)
        if len(reps) != expected:
            raise RuntimeError("coset enumeration incomplete: %d != %d"
                               % (len(reps), expected))
        return CosetSystem(m=m, kind=kind, reps=reps)
    if m == 1:
        return CosetSystem(m=1, kind=kind, reps=(_IDENTITY,))
    if m == 2:
        return CosetSystem(m=2, kind=kind, reps=_M2_2)
    raise ValueError("M2 coset data embedded only for m in {1, 2}")


def quasi_f(curve: CurveTag, tau, ctx: PrecisionContext):
    """f = (1/(2 pi i)) d(log Y)/dtau - 1/(2 pi Im tau)."""
    tau = as_mpc(tau)
    with ctx.workdps():
        _, _, dlogY = _y_and_dlog(curve, tau, ctx)
        return +(dlogY - 1 / (2 * mp.pi * tau.imag))


def slash2(value_at_gamma_tau, gamma: IntMatrix2, tau, ctx: PrecisionContext):
    """Weight-2 slash with determinant normalization: m (C tau + D)^-2 v."""
    with ctx.workdps():
        tau = as_mpc(tau)
        return +(gamma.det * (gamma.c * tau + gamma.d) ** -2
                 * value_at_gamma_tau)


def _f_slashed(curve: CurveTag, gamma: IntMatrix2, tau, ctx):
    return slash2(quasi_f(curve, gamma.apply(tau), ctx), gamma, tau, ctx)


def psi_verify(tau, ctx: PrecisionContext):
    """Residuals of the two symmetric identities of the m=2 prime system:
    F1/Y + F2/Y = 0 and (F1/Y)(F2/Y) = T/4."""
    tau = as_mpc(tau)
    with ctx.workdps():
        sysm = cosets(CosetKind.M2PRIME, 2)
        f0 = quasi_f(CurveTag.X0_2, tau, ctx)
        _, Y, _ = _y_and_dlog(CurveTag.X0_2, tau, ctx)
        fy = [(f0 - _f_slashed(CurveTag.X0_2, g, tau, ctx)) / Y
              for g in sysm.reps]
        T = hauptmodul(CurveTag.X0_2, tau, ctx)
        return +abs(fy[0] + fy[1]), +abs(fy[0] * fy[1] - T / 4)


# ---------------------------------------------------------------------------
# Embedded symmetric-function data for the five-element determinant-2 system.
# Xi(X) = X^5 + R4 X^4 + R3 X^3 + R2 X^2 + R1 X + R0, with each R a rational
# function sign * num(T) / (den_c * T^den_k * (T-1)^den_j).

_XI_COEFFS = {
    4: (1, (-48, 128), 1, 0, 0),
    3: (-1, (-256, 256, 0, 4088, 32767), 256, 4, 1),
    2: (1, (-12288, 45064, -32767, -384, 976, 128), 256, 4, 1),
    1: (-1, (256, 1792, -2072, 93, 12), 16, 5, 2),
    0: (-1, (8, 65, 8), 16, 4, 2),
}


def _xi_coefficient(k: int, T):
    """R_k evaluated at T; works for numeric and QuadSurd inputs alike."""
    sign, num, den_c, den_k, den_j = _XI_COEFFS[k]
    acc = 0 * T
    for c in reversed(num):
        acc = acc * T + Fraction(c)
    den = Fraction(den_c) + 0 * T
    for _ in range(den_k):
        den = den * T
    for _ in range(den_j):
        den = den * (T - Fraction(1))
    return sign * acc / den


def xi_quintic_value(X, T):
    val = X + _xi_coefficient(4, T)
    for k in (3, 2, 1, 0):
        val = val * X + _xi_coefficient(k, T)
    return val


def xi_verify(tau, ctx: PrecisionContext):
    """Max deviation of the numeric quintic coefficients from the embedded
    rational functions of T, over the five determinant-2 classes."""
    tau = as_mpc(tau)
    with ctx.workdps():
        sysm = cosets(CosetKind.M2, 2)
        y0 = hauptmodul_D(CurveTag.X0_2, tau, 1, ctx)
        xis = []
        for g in sysm.reps:
            y_at = hauptmodul_D(CurveTag.X0_2, g.apply(tau), 1, ctx)
            xis.append(slash2(y_at, g, tau, ctx) / y0)
        # elementary symmetric functions -> monic coefficients
        coeffs = [mpc(1)]
        for r in xis:
            coeffs = [mpc(0)] + coeffs
            coeffs = [coeffs[i] - r * (coeffs[i + 1] if i + 1 < len(coeffs)
                                       else 0) for i in range(len(coeffs))]
        # coeffs[i] is the X^i coefficient of prod (X - xi)
        T = hauptmodul(CurveTag.X0_2, tau, ctx)
        worst = mpf(0)
        for k in (4, 3, 2, 1, 0):
            worst = max(worst, abs(coeffs[k] - _xi_coefficient(k, T)))
        return +worst


# ---------------------------------------------------------------------------
# Exact CM-field bookkeeping


def _split_square(n: int):
    """n = s^2 * n0 with n0 square-free (n > 0)."""
    s, n0, p = 1, n, 2
    while p * p <= n0:
        while n0 % (p * p) == 0:
            n0 //= p * p
            s *= p
        p += 1 if p == 2 else 2
    return s, n0


def _squarefree_divisors(D: int):
    divs = [d for d in range(1, D + 1) if D % d == 0 and is_squarefree(d)]
    return divs


def recognize_cm_value(v, D: int, ctx: PrecisionContext) -> QuadSurd:
    """Recognize a CM-point quantity as an exact surd.

    Real values are searched over Q(sqrt(d)) for square-free divisors d
    of D (smallest first); complex values have rational real part and
    imaginary part rational times sqrt(D0), giving a surd over sqrt(-D0).
    """
    _, D0 = _split_square(D)
    with ctx.workdps():
        v = mpc(v)
        thresh = mpf(10) ** (-(ctx.digits - 10))
        if abs(v.imag) < thresh:
            last = None
            for d in _squarefree_divisors(D):
                try:
                    return recognize_in_field(v.real, d, ctx=ctx)
                except RecognitionError as exc:
                    last = exc
            raise RecognitionError(
                "no divisor field of %d recognizes the value: %s" % (D, last))
        re_part = recognize_in_field(v.real, 1, ctx=ctx)
        im_part = recognize_in_field(v.imag, D0, ctx=ctx)
        if D0 == 1:
            return QuadSurd(re_part.a, im_part.a, -1)
        if im_part.a != 0:
            raise RecognitionError(
                "imaginary part has a rational component: %s" % im_part)
        return QuadSurd(re_part.a, im_part.b, -D0)


def find_fixing_matrix(form: QuadraticForm, m: int) -> Optional[IntMatrix2]:
    """A matrix of determinant m fixing the form's root, in the prime
    system (2 | C, A odd), or None. Solutions come from t^2 + D u^2 = 4m."""
    D = -form.disc
    best = None
    for u in range(1, math.isqrt(4 * m // D) + 1 if 4 * m >= D else 1):
        t2 = 4 * m - D * u * u
        if t2 < 0:
            break
        t = math.isqrt(t2)
        if t * t != t2:
            continue
        for tt in ((t, -t) if t else (0,)):
            if (tt - form.b * u) % 2:
                continue
            A = (tt - form.b * u) // 2
            Dd = (tt + form.b * u) // 2
            if A % 2 == 0:
                continue            # prime system needs gcd(2, A) = 1
            if (form.a * u) % 2:
                continue            # and 2 | C
            g = IntMatrix2(A, -form.c * u, form.a * u, Dd)
            if g.det != m:
                continue
            if best is None:
                best = g
    return best


def find_connecting_matrix(tau_minus, tau_plus, ctx: PrecisionContext,
                           bound: int = 48) -> IntMatrix2:
    """Determinant-minimal gamma with 2 | C and gamma tau- = tau+.

    Scans the (C, D) window, solving for A, B linearly; candidates must
    round to exact integers and reproduce tau+ to working precision.
    """
    with ctx.workdps():
        tm, tp = as_mpc(tau_minus), as_mpc(tau_plus)
        eps = mpf(10) ** (-(ctx.digits - 10))
        best = None
        for c in range(-bound, bound + 1, 2):
            for d in range(-bound, bound + 1):
                if c == 0 and d == 0:
                    continue
                w = tp * (c * tm + d)
                a_f = w.imag / tm.imag
                b_f = w.real - a_f * tm.real
                a_i, b_i = int(mp.nint(a_f)), int(mp.nint(b_f))
                if abs(a_f - a_i) > eps or abs(b_f - b_i) > eps:
                    continue
                g = IntMatrix2(a_i, b_i, c, d)
                det = g.det
                if det <= 0:
                    continue
                if abs(g.apply(tm) - tp) > eps:
                    continue
                key = (det, abs(c), abs(d), abs(a_i), abs(b_i), c, d)
                if best is None or key < best[0]:
                    best = (key, g)
        if best is None:
            raise LookupError("no integral matrix maps tau- to tau+ "
                              "within the search bound")
        return best[1]


def _select_root(candidates, target, label: str):
    """Pick the exact root numerically closest to target, enforcing the
    acceptance/rejection rings."""
    dists = sorted((abs(val - target), idx)
                   for idx, (val, _) in enumerate(candidates))
    if dists[0][0] > _ACCEPT_RING:
        raise RecognitionError(
            "root selection failed for %s: nearest root off by %s"
            % (label, dists[0][0]))
    if len(dists) > 1 and dists[1][0] < _REJECT_RING:
        raise RecognitionError(
            "root selection failed for %s: ambiguous candidates" % label)
    return candidates[dists[0][1]][1]


def _signed_sqrt_exact(s: QuadSurd, target_numeric, ctx, label: str):
    root = surd_sqrt(s)
    if root is None:
        raise RecognitionError("%s: no exact square root in the field" % label)
    pos = surd_eval(root, ctx)
    return _select_root([(pos, root), (-pos, -root)], target_numeric, label)


def evaluate_B_rigorous(tau0: CMPoint, gamma: IntMatrix2,
                        ctx: PrecisionContext):
    """Exact B(tau0) through the determinant-2 polynomial system.

    Returns (re, im) QuadSurds. gamma must fix tau0 with determinant 2;
    the quadratic Psi(X) = X^2 + T/4 is evaluated at the exact T(tau0),
    its root matched against the numeric F1/Y, and the exact prefactor
    (c tau0 + d)^2 / (((c tau0 + d)^2 - m)(1 - T)^(1/2)) applied.
    """
    m = gamma.det
    if m != 2:
        raise ValueError("only determinant 2 is polynomial-certified")
    with ctx.workdps():
        tau = tau0.tau
        eps = mpf(10) ** (-(ctx.digits - 10))
        if abs(gamma.apply(tau) - tau) > eps:
            raise ValueError("gamma does not fix tau0")
        T_num = hauptmodul(CurveTag.X0_2, tau, ctx)
        T = recognize_cm_value(T_num, tau0.D, ctx)

        # numeric F1/Y at the fixed point
        f0 = quasi_f(CurveTag.X0_2, tau, ctx)
        _, Y, _ = _y_and_dlog(CurveTag.X0_2, tau, ctx)
        ctd_num = gamma.c * tau + gamma.d
        target = f0 * (ctd_num ** 2 - m) / ctd_num ** 2 / Y

        root = _signed_sqrt_exact(-T / Fraction(4), target, ctx, "Psi root")

        # exact prefactor in the CM field
        form = tau0.form
        s, D0 = _split_square(tau0.D)
        ctd = QuadSurd(Fraction(gamma.d) - Fraction(gamma.c * form.b,
                                                    2 * form.a),
                       Fraction(gamma.c * s, 2 * form.a), -D0)
        sq = ctd * ctd
        sqrt1mT = _signed_sqrt_exact(QuadSurd.rational(1) - T,
                                     mp.sqrt(1 - T_num), ctx, "sqrt(1-T)")
        B = sq / ((sq - Fraction(m)) * sqrt1mT) * root
        if B.d not in (-D0, 1):
            raise RecognitionError("B left the CM field unexpectedly")
        if B.d == 1:
            return QuadSurd.rational(B.a), QuadSurd.rational(0)
        return QuadSurd.rational(B.a), QuadSurd(Fraction(0), B.b, D0)


def y_ratio_rigorous(tau_minus: CMPoint, gamma: IntMatrix2,
                     ctx: PrecisionContext) -> QuadSurd:
    """Exact Y(tau+)/Y(tau-) with tau+ = gamma tau-.

    The candidate xi_gamma(tau-) is recognized from its numeric value,
    certified as an exact root of the embedded quintic at the exact
    T(tau-), and converted through the exact T and sqrt(1-T) values at
    both endpoints. Determinant 1 means gamma is a level-2 deck motion
    and the ratio is 1.
    """
    m = gamma.det
    if m == 1:
        return QuadSurd.rational(1)
    if m != 2:
        raise ValueError("only determinants 1 and 2 are polynomial-certified")
    with ctx.workdps():
        tm = tau_minus.tau
        tp = gamma.apply(tm)
        D = tau_minus.D

        Tm_num = hauptmodul(CurveTag.X0_2, tm, ctx)
        Tp_num = hauptmodul(CurveTag.X0_2, tp, ctx)
        Tm = recognize_cm_value(Tm_num, D, ctx)
        Tp = recognize_cm_value(Tp_num, D, ctx)

        ym = hauptmodul_D(CurveTag.X0_2, tm, 1, ctx)
        yp = hauptmodul_D(CurveTag.X0_2, tp, 1, ctx)
        xi_num = slash2(yp, gamma, tm, ctx) / ym
        try:
            xi = recognize_cm_value(xi_num, D, ctx)
        except RecognitionError as exc:
            raise RecognitionError("root selection failed: %s" % exc) from exc
        resid = xi_quintic_value(xi, Tm)
        if not (resid.a == 0 and resid.b == 0):
            raise RecognitionError(
                "xi is not an exact root of the quintic: residual %s" % resid)

        sm = _signed_sqrt_exact(QuadSurd.rational(1) - Tm,
                                mp.sqrt(1 - Tm_num), ctx, "sqrt(1-T(tau-))")
        sp = _signed_sqrt_exact(QuadSurd.rational(1) - Tp,
                                mp.sqrt(1 - Tp_num), ctx, "sqrt(1-T(tau+))")

        form = tau_minus.form
        s, D0 = _split_square(D)
        ctd = QuadSurd(Fraction(gamma.d) - Fraction(gamma.c * form.b,
                                                    2 * form.a),
                       Fraction(gamma.c * s, 2 * form.a), -D0)
        return xi * ctd * ctd / Fraction(m) * (Tm * sm) / (Tp * sp)

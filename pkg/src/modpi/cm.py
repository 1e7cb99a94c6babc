"""Binary quadratic forms and CM point location.

A positive definite integral form [a,b,c] with level condition N | a has
upper half-plane root tau = (-b + i*sqrt(4ac - b^2))/(2a). The search
solves hauptmodul(curve, tau) = target over forms of discriminant -D,
scanning D in a fixed ascending order so results are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from mpmath import mp, mpc, mpf

from .modular import CurveTag, hauptmodul
from .numerics import ConvergenceError, PrecisionContext

# Hurwitz-Kronecker class numbers H(D) for the two smallest classes.
_H1 = frozenset({3, 4, 7, 8, 11, 12, 16, 19, 27, 28, 43, 67, 163})
_H2 = frozenset({15, 20, 24, 32, 35, 36, 40, 48, 51, 52, 60, 64, 72, 75,
                 88, 91, 99, 100, 112, 115, 123, 147, 148, 187, 232, 235,
                 267, 403, 427})

# Some certified table rows live at discriminants beyond the H(D) <= 2
# lists (the target is still quadratic over Q); the scan therefore walks
# every D = 0, 3 mod 4 up to this cap instead of only the lists.
_D_MAX = 600


@dataclass(frozen=True)
class ClassNumberList:
    h1: frozenset = _H1
    h2: frozenset = _H2

    def __contains__(self, D: int) -> bool:
        return D in self.h1 or D in self.h2


def class_number_list() -> ClassNumberList:
    return ClassNumberList()


@dataclass(frozen=True)
class QuadraticForm:
    a: int
    b: int
    c: int
    level: int = 1

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("form must be positive definite (a > 0)")
        if self.disc >= 0:
            raise ValueError("form must have negative discriminant")
        if self.level <= 0 or self.a % self.level:
            raise ValueError("level must divide a")

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def root(self, ctx: PrecisionContext) -> mpc:
        """Upper half-plane solution of a*tau^2 + b*tau + c = 0."""
        with ctx.workdps():
            return mpc(mpf(-self.b), mp.sqrt(mpf(-self.disc))) / (2 * self.a)

    def __str__(self) -> str:
        return "[%d,%d,%d]" % (self.a, self.b, self.c)


@dataclass(frozen=True)
class CMPoint:
    form: QuadraticForm
    tau: mpc = field(compare=False)
    D: int

    def __post_init__(self):
        if self.D != -self.form.disc:
            raise ValueError("D must equal -disc of the form")


def enumerate_forms(D: int, N: int, a_max: int) -> list:
    """All forms [a,b,c] of discriminant -D with N | a, a <= a_max, |b| <= a.

    For N = 1 the two classical boundary identifications (b = -a, and
    b < 0 when a = c) are removed; for N > 1 both members of such pairs
    are genuinely distinct points on the level cover, so all survive.
    """
    if D <= 0 or D % 4 not in (0, 3):
        raise ValueError("invalid discriminant: -%s" % D)
    if N <= 0 or a_max < N:
        raise ValueError("need a_max >= N >= 1")
    forms = []
    for a in range(N, a_max + 1, N):
        for b in range(-a, a + 1):
            num = b * b + D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if N == 1 and (b == -a or (a == c and b < 0)):
                continue
            forms.append(QuadraticForm(a, b, c, level=N))
    return forms


def _candidate_discriminants():
    D = 3
    while D <= _D_MAX:
        yield D
        D += 1 if D % 4 == 3 else 3


def find_cm_point(curve: CurveTag, target, tol, ctx: PrecisionContext) -> CMPoint:
    """First CM point (D, then a, then b ascending) with |T(tau) - target| < tol.

    Both supported curves carry level-2 forms. Hauptmodul values are
    memoized per (tau, precision) upstream, so repeated searches share
    one sweep.
    """
    level = 2
    with ctx.workdps():
        target = mpc(target)
        tol = mpf(tol)
        for D in _candidate_discriminants():
            a_max = 4 * (math.isqrt(D - 1) + 1)
            for form in enumerate_forms(D, level, a_max):
                tau = form.root(ctx)
                try:
                    val = hauptmodul(curve, tau, ctx)
                except (ValueError, ConvergenceError):
                    continue
                if abs(val - target) < tol:
                    return CMPoint(form=form, tau=tau, D=D)
    raise LookupError(
        "no CM point with H(D) <= 2 matches %s on %s within %s"
        % (target, curve.value, tol))

"""Precision management, branch conventions, and conversions.

Everything numeric in this package runs on mpmath. A PrecisionContext
fixes how many decimal digits a result must be trusted to; computations
run with extra guard digits on top of that. Values are ordinary mpf/mpc
objects and are treated as immutable; no code mutates the global mpmath
precision outside a ``with ctx.workdps():`` block.

The single branch convention used everywhere: square roots are principal,
with negative reals mapped to the positive imaginary axis.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpc, mpf

DEFAULT_DIGITS = 60
ENV_DIGITS = "RPI_DIGITS"


class ConvergenceError(ArithmeticError):
    """No evaluation strategy converges for the requested input/precision."""


@dataclass(frozen=True)
class PrecisionContext:
    """Target precision in decimal digits plus guard digits for intermediates.

    Results of the public operations are accurate to at least ``digits``
    decimals when the inputs are exact; ``guard`` extra digits absorb
    cancellation in intermediate steps.
    """

    digits: int
    guard: int = 15

    def __post_init__(self) -> None:
        if self.digits < 20:
            raise ValueError("precision below 20 digits is not supported")
        if self.guard < 0:
            raise ValueError("guard must be non-negative")

    @property
    def dps(self) -> int:
        return self.digits + self.guard

    def workdps(self):
        """Context manager setting mpmath working precision to digits+guard."""
        return mp.workdps(self.dps)

    def eps(self, margin: int = 0):
        """Tolerance 10**-(digits - margin)."""
        return mpf(10) ** (-(self.digits - margin))


def default_context() -> PrecisionContext:
    """Context at DEFAULT_DIGITS, or the RPI_DIGITS override if set."""
    raw = os.environ.get(ENV_DIGITS)
    digits = int(raw) if raw else DEFAULT_DIGITS
    return PrecisionContext(digits)


def as_mpf(q):
    """Convert int/Fraction/str to mpf at current working precision.

    An existing mpf passes through untouched: reconstructing one would
    silently round it to the ambient precision, which is usually lower
    than the precision it was computed at.
    """
    if isinstance(q, mpf):
        return q
    if isinstance(q, Fraction):
        return mpf(q.numerator) / q.denominator
    return mpf(q)


def as_mpc(q):
    if isinstance(q, mpc):
        return q
    if isinstance(q, mpf):
        return mp.make_mpc((q._mpf_, mpf(0)._mpf_))
    if isinstance(q, Fraction):
        return mpc(as_mpf(q))
    return mpc(q)


def maybe_real(w):
    """Demote an mpc with exactly zero imaginary part to mpf."""
    if isinstance(w, mpc) and w.imag == 0:
        return w.real
    return w


def principal_sqrt(z, ctx: PrecisionContext):
    """Square root with Re > 0, or Re = 0 and Im >= 0.

    This one convention is shared by the argument maps, the modular
    quantities, and the elliptic integrals, so sign choices never have to
    be re-derived downstream; any residual sign ambiguity is resolved by
    consistency checks in the verifier.
    """
    with ctx.workdps():
        w = mp.sqrt(as_mpc(z))
        if w.real < 0 or (w.real == 0 and w.imag < 0):
            w = -w
        return maybe_real(+w)


def const_pi(ctx: PrecisionContext):
    """pi to ctx precision."""
    with ctx.workdps():
        return +mp.pi


def nth_root_real(x, n: int, ctx: PrecisionContext):
    """Positive real n-th root of x > 0."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    with ctx.workdps():
        xv = as_mpf(x)
        if xv <= 0:
            raise ValueError("nth_root_real requires x > 0")
        return +mp.root(xv, n)

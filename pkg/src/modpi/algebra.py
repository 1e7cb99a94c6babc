"""Exact quadratic surds, RHS expression trees, and numeric recognition.

A QuadSurd is a + b*sqrt(d) with rational a, b and square-free integer d
(possibly negative). Table entries, z/f coordinates, B, C and Y-ratio
components are all stored this way; biquadratic cells use SurdSum.
Recognition turns a high-precision float back into a surd through an
integer-relation search whose result is re-verified at full precision,
so a near-miss can never be silently accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from mpmath import mp, mpf, mpc

from .numerics import PrecisionContext, as_mpf, maybe_real

_PSLQ_MAXCOEFF = 10 ** 15
_PSLQ_MAXSTEPS = 50_000
DEFAULT_DENOM_BOUND = 10 ** 12


class RecognitionError(ValueError):
    """Raised when a value is not recognized in the requested field."""


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
        else:
            p += 1 if p == 2 else 2
    return True


@dataclass(frozen=True)
class QuadSurd:
    """a + b*sqrt(d), d square-free; d = 1 is the rational embedding."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        if d == 1:
            a, b = a + b, Fraction(0)
        elif b == 0:
            d = 1
        if not is_squarefree(d):
            raise ValueError("radicand %d is not square-free" % d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def rational(cls, q) -> "QuadSurd":
        return cls(Fraction(q), Fraction(0), 1)

    @property
    def is_rational(self) -> bool:
        return self.d == 1

    def _compatible(self, other: "QuadSurd") -> int:
        if self.d == other.d or other.d == 1:
            return self.d
        if self.d == 1:
            return other.d
        raise ValueError("incompatible radicands %d and %d" % (self.d, other.d))

    def __add__(self, other):
        other = _as_surd(other)
        d = self._compatible(other)
        return QuadSurd(self.a + other.a, self.b + other.b, d)

    def __sub__(self, other):
        return self + (-_as_surd(other))

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __mul__(self, other):
        other = _as_surd(other)
        d = self._compatible(other)
        return QuadSurd(self.a * other.a + d * self.b * other.b,
                        self.a * other.b + self.b * other.a, d)

    def __truediv__(self, other):
        other = _as_surd(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        return self * QuadSurd(other.a / n, -other.b / n, other.d)

    def __radd__(self, other):
        return _as_surd(other) + self

    def __rsub__(self, other):
        return _as_surd(other) - self

    def __rmul__(self, other):
        return _as_surd(other) * self

    def __rtruediv__(self, other):
        return _as_surd(other) / self

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        # (a + b sqrt(d))(a - b sqrt(d))
        return self.a * self.a - self.d * self.b * self.b

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return "%s*sqrt(%d)" % (self.b, self.d)
        sign = "+" if self.b >= 0 else "-"
        return "%s%s%s*sqrt(%d)" % (self.a, sign, abs(self.b), self.d)


def _as_surd(v) -> QuadSurd:
    if isinstance(v, QuadSurd):
        return v
    if isinstance(v, (int, Fraction)):
        return QuadSurd.rational(v)
    raise TypeError("cannot coerce %r to QuadSurd" % (v,))


def _frac_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    import math
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def surd_sqrt(s: QuadSurd, d_hint: int = 0) -> Optional[QuadSurd]:
    """Exact square root of s inside its own quadratic field, if any.

    Returns r with r*r == s (one of the two signs), else None. For a
    rational s the root may live in Q(sqrt(d_hint)) instead.
    """
    if s.b == 0:
        r = _frac_sqrt(s.a)
        if r is not None:
            return QuadSurd.rational(r)
        if d_hint not in (0, 1):
            y = _frac_sqrt(s.a / d_hint)
            if y is not None:
                return QuadSurd(Fraction(0), y, d_hint)
        return None
    rn = _frac_sqrt(s.norm())
    if rn is None:
        return None
    # (x + y sqrt(d))^2 = s: x^2 and d*y^2 are (a +- sqrt(norm))/2
    for u in ((s.a + rn) / 2, (s.a - rn) / 2):
        x = _frac_sqrt(u)
        if x is not None and x != 0:
            y = s.b / (2 * x)
            if x * x + s.d * y * y == s.a:
                return QuadSurd(x, y, s.d)
    return None


def _sqrt_d(d: int):
    if d >= 0:
        return mp.sqrt(mpf(d))
    return mpc(0, mp.sqrt(mpf(-d)))


def surd_eval(s: QuadSurd, ctx: PrecisionContext):
    with ctx.workdps():
        return maybe_real(as_mpf(s.a) + as_mpf(s.b) * _sqrt_d(s.d))


@dataclass(frozen=True)
class SurdSum:
    """Sum of rational multiples of square roots; rational part under d = 1."""

    terms: Tuple[Tuple[Fraction, int], ...]

    def __post_init__(self):
        merged = {}
        for coeff, d in self.terms:
            coeff, d = Fraction(coeff), int(d)
            if not is_squarefree(d):
                raise ValueError("radicand %d is not square-free" % d)
            merged[d] = merged.get(d, Fraction(0)) + coeff
        canon = tuple(sorted((d, c) for d, c in merged.items() if c != 0))
        object.__setattr__(self, "terms", tuple((c, d) for d, c in canon))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, d in self.terms:
            body = str(c) if d == 1 else "%s*sqrt(%d)" % (c, d)
            parts.append(body if not parts or body.startswith("-")
                         else "+" + body)
        return "".join(parts)


def surd_sum_eval(s: SurdSum, ctx: PrecisionContext):
    with ctx.workdps():
        total = mpf(0)
        for c, d in s.terms:
            total = total + as_mpf(c) * _sqrt_d(d)
        return maybe_real(total)


def _real_input(v, ctx: PrecisionContext):
    if isinstance(v, (int, Fraction)):
        return as_mpf(Fraction(v))
    v = mpc(v)
    if abs(v.imag) > mpf(10) ** (-(ctx.digits - 10)):
        raise ValueError("input has a non-negligible imaginary part")
    return v.real


def _relation(vec, ctx: PrecisionContext):
    return mp.pslq(vec, tol=mpf(10) ** (-(ctx.digits - 10)),
                   maxcoeff=_PSLQ_MAXCOEFF, maxsteps=_PSLQ_MAXSTEPS)


def recognize_in_field(v, d: int, denom_bound: int = DEFAULT_DENOM_BOUND,
                       ctx: Optional[PrecisionContext] = None) -> QuadSurd:
    """Express v as a + b*sqrt(d) with denominators <= denom_bound.

    The integer relation is searched at working precision and the
    reconstructed surd is re-verified against v at full precision with
    threshold 10^-(digits-10); anything else raises RecognitionError.
    """
    if ctx is None:
        from .numerics import default_context
        ctx = default_context()
    if ctx.digits < 50:
        raise ValueError("recognition needs at least 50 digits")
    if d == 0:
        raise ValueError("d must be nonzero")
    with ctx.workdps():
        vr = _real_input(v, ctx)
        thresh = mpf(10) ** (-(ctx.digits - 10))
        if abs(vr) < thresh:
            return QuadSurd.rational(0)
        if d > 1:
            rel = _relation([mpf(1), mp.sqrt(mpf(d)), vr], ctx)
            if rel is None or rel[2] == 0:
                raise RecognitionError("not recognized in Q(sqrt(%d))" % d)
            a = Fraction(-rel[0], rel[2])
            b = Fraction(-rel[1], rel[2])
        else:
            # d = 1 or d < 0: a real input can only carry the rational part
            rel = _relation([mpf(1), vr], ctx)
            if rel is None or rel[1] == 0:
                raise RecognitionError("not recognized in Q(sqrt(%d))" % d)
            a = Fraction(-rel[0], rel[1])
            b = Fraction(0)
        if a.denominator > denom_bound or b.denominator > denom_bound:
            raise RecognitionError("denominator exceeds bound %d" % denom_bound)
        surd = QuadSurd(a, b, d if b else 1)
        resid = abs(vr - (as_mpf(a) + as_mpf(b) * _sqrt_d(d)))
        if resid >= thresh:
            raise RecognitionError(
                "not recognized: residual %s exceeds %s" % (resid, thresh))
    return surd


def recognize_complex(v, d_re: int, d_im: int,
                      denom_bound: int = DEFAULT_DENOM_BOUND,
                      ctx: Optional[PrecisionContext] = None):
    """Recognize Re(v) over Q(sqrt(d_re)) and Im(v) over Q(sqrt(d_im))."""
    if ctx is None:
        from .numerics import default_context
        ctx = default_context()
    with ctx.workdps():
        v = mpc(v)
        re_v, im_v = v.real, v.imag
    try:
        re_part = recognize_in_field(re_v, d_re, denom_bound, ctx)
    except RecognitionError as exc:
        raise RecognitionError("real part: %s" % exc) from exc
    try:
        im_part = recognize_in_field(im_v, d_im, denom_bound, ctx)
    except RecognitionError as exc:
        raise RecognitionError("imaginary part: %s" % exc) from exc
    return re_part, im_part


def recognize_two_surds(v, d1: int, d2: int,
                        denom_bound: int = DEFAULT_DENOM_BOUND,
                        ctx: Optional[PrecisionContext] = None) -> SurdSum:
    """Express v over the basis (1, sqrt(d1), sqrt(d2), sqrt(d1*d2))."""
    if ctx is None:
        from .numerics import default_context
        ctx = default_context()
    if ctx.digits < 50:
        raise ValueError("recognition needs at least 50 digits")
    if d1 <= 0 or d2 <= 0 or d1 == d2:
        raise ValueError("need distinct positive radicands")
    d12 = d1 * d2
    r = 1
    p = 2
    n = d12
    while p * p <= n:
        if n % (p * p) == 0:
            n //= p * p
            r *= p
        else:
            p += 1
    with ctx.workdps():
        vr = _real_input(v, ctx)
        thresh = mpf(10) ** (-(ctx.digits - 10))
        basis = [mpf(1), mp.sqrt(mpf(d1)), mp.sqrt(mpf(d2)),
                 mp.sqrt(mpf(d12))]
        rel = _relation(basis + [vr], ctx)
        if rel is None or rel[4] == 0:
            raise RecognitionError(
                "not recognized over (1,sqrt(%d),sqrt(%d))" % (d1, d2))
        coeffs = [Fraction(-rel[k], rel[4]) for k in range(4)]
        if any(c.denominator > denom_bound for c in coeffs):
            raise RecognitionError("denominator exceeds bound %d" % denom_bound)
        # normalize sqrt(d1*d2) to r*sqrt(squarefree part)
        result = SurdSum(terms=((coeffs[0], 1), (coeffs[1], d1),
                                (coeffs[2], d2), (coeffs[3] * r, n)))
        resid = abs(vr - surd_sum_eval(result, ctx))
        if resid >= thresh:
            raise RecognitionError(
                "not recognized: residual %s exceeds %s" % (resid, thresh))
    return result


# ---------------------------------------------------------------------------
# RHS expression trees


@dataclass(frozen=True)
class RhsExpr:
    """Tree node; op in {rat, sqrt, cbrt, root6, add, mul, div}.

    The displayed right-hand sides of the certified identities carry an
    implicit 1/pi which rhs_eval applies at the root.
    """

    op: str
    value: Optional[Fraction] = None
    args: Tuple["RhsExpr", ...] = ()


class _RhsParser:
    """expr := term ('+' term)* ; term := atom (('*'|'/') atom)* ;
    atom := INT | func '(' expr ')' | '(' expr ')'"""

    FUNCS = ("sqrt", "cbrt", "root6")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, ch: str):
        if self._peek() != ch:
            raise ValueError("expected %r at position %d in %r"
                             % (ch, self.pos, self.text))
        self.pos += 1

    def parse(self) -> RhsExpr:
        e = self._expr()
        self._skip()
        if self.pos != len(self.text):
            raise ValueError("trailing input in %r" % self.text)
        return e

    def _expr(self) -> RhsExpr:
        e = self._term()
        while self._peek() == "+":
            self.pos += 1
            e = RhsExpr("add", args=(e, self._term()))
        return e

    def _term(self) -> RhsExpr:
        e = self._atom()
        while self._peek() in ("*", "/"):
            op = self._peek()
            self.pos += 1
            rhs = self._atom()
            e = RhsExpr("mul" if op == "*" else "div", args=(e, rhs))
        return e

    def _atom(self) -> RhsExpr:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            e = self._expr()
            self._expect(")")
            return e
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return RhsExpr("rat", value=Fraction(int(self.text[start:self.pos])))
        for name in self.FUNCS:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                self._expect("(")
                e = self._expr()
                self._expect(")")
                return RhsExpr(name, args=(e,))
        raise ValueError("unexpected input at position %d in %r"
                         % (self.pos, self.text))


def parse_rhs(text: str) -> RhsExpr:
    return _RhsParser(text).parse()


def rhs_text(e: RhsExpr) -> str:
    """Render a tree back to grammar text; parse_rhs(rhs_text(e)) == e.

    Only trees expressible in the grammar are accepted: rational leaves
    must be non-negative integers (fractions appear as div nodes).
    """
    def go(n: RhsExpr) -> str:
        if n.op == "rat":
            if n.value < 0 or n.value.denominator != 1:
                raise ValueError("grammar literals are non-negative integers")
            return str(n.value)
        if n.op in ("sqrt", "cbrt", "root6"):
            return "%s(%s)" % (n.op, go(n.args[0]))
        left, right = n.args
        if n.op == "add":
            rs = go(right)
            if right.op == "add":
                rs = "(%s)" % rs
            return "%s+%s" % (go(left), rs)
        if n.op in ("mul", "div"):
            ls = go(left)
            if left.op == "add":
                ls = "(%s)" % ls
            rs = go(right)
            if right.op in ("add", "mul", "div"):
                rs = "(%s)" % rs
            return "%s%s%s" % (ls, "*" if n.op == "mul" else "/", rs)
        raise ValueError("unknown node %r" % n.op)

    return go(e)


def as_surd_sum(v) -> SurdSum:
    """Lift a QuadSurd (or rational) into the SurdSum normal form."""
    if isinstance(v, SurdSum):
        return v
    if isinstance(v, QuadSurd):
        if v.d < 0:
            raise ValueError("negative radicand has no real SurdSum embedding")
        return SurdSum(((v.a, 1), (v.b, v.d)))
    return SurdSum(((Fraction(v), 1),))


def _tree_eval(e: RhsExpr, ctx: PrecisionContext):
    if e.op == "rat":
        return as_mpf(e.value)
    if e.op == "add":
        return _tree_eval(e.args[0], ctx) + _tree_eval(e.args[1], ctx)
    if e.op == "mul":
        return _tree_eval(e.args[0], ctx) * _tree_eval(e.args[1], ctx)
    if e.op == "div":
        return _tree_eval(e.args[0], ctx) / _tree_eval(e.args[1], ctx)
    v = _tree_eval(e.args[0], ctx)
    if e.op == "sqrt":
        return mp.sqrt(v)
    if e.op == "cbrt":
        return mp.cbrt(v)
    if e.op == "root6":
        return mp.root(v, 6)
    raise ValueError("unknown node %r" % e.op)


def rhs_eval(e: RhsExpr, ctx: PrecisionContext):
    """Numeric value of the right-hand side, 1/pi factor included."""
    with ctx.workdps():
        val = _tree_eval(e, ctx) / mp.pi
        if not (val > 0 and mp.isfinite(val)):
            raise ValueError("RHS did not evaluate to a finite positive real")
        return +val


@dataclass(frozen=True)
class TableRow:
    """One certified table row; complex cells split into (re, im) surds."""

    z_or_sqrtnegf: tuple
    h: QuadSurd
    tau_pm: tuple
    B: tuple
    C: tuple
    Yratio: tuple

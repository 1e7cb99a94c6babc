"""Gauss hypergeometric function on the cut plane and elliptic integrals.

Arguments that show up in practice range from |z| ~ 1e-7 to |z| ~ 3e5, so
a single power series cannot cover them. Evaluation picks among the direct
series and the Pfaff/Euler transformations by minimizing the transformed
argument's modulus; the parameter sets (1/4,1/4;1) and (1/2,1/2;1) also
collapse to AGM iterations, which remain fast for arguments far outside
any series regime.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp, mpc, mpf

from .numerics import ConvergenceError, PrecisionContext, as_mpc, as_mpf, maybe_real

_MAX_TERMS = 500_000
_SERIES_CUTOFF = mpf("0.99")

_HALF = Fraction(1, 2)
_QUARTER = Fraction(1, 4)


def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    raise TypeError("hypergeometric parameters must be rational (int or Fraction)")


def _psqrt(z):
    # principal branch, negative reals to +i axis; assumes workdps is active
    w = mp.sqrt(as_mpc(z))
    if w.real < 0 or (w.real == 0 and w.imag < 0):
        w = -w
    return maybe_real(w)


def _agm(a, b):
    """AGM where each geometric step takes the square root with Re >= 0."""
    eps = mpf(10) ** (-mp.dps + 2)
    for _ in range(5000):
        if abs(a - b) <= eps * abs(a):
            break
        a, b = (a + b) / 2, _psqrt(a * b)
    return (a + b) / 2


def _raw_series(a, b, c, z):
    """Direct sum; stops after 20 consecutive negligible terms."""
    av, bv, cv = as_mpf(a), as_mpf(b), as_mpf(c)
    z = maybe_real(as_mpc(z))
    thresh = mpf(10) ** (-mp.dps)
    term = z * 0 + 1
    total = term
    small = 0
    n = 0
    while small < 20:
        term = term * (av + n) * (bv + n) / ((cv + n) * (1 + n)) * z
        total += term
        n += 1
        if abs(term) <= thresh * abs(total):
            small += 1
        else:
            small = 0
        if n > _MAX_TERMS:
            raise ConvergenceError("2F1 series did not converge")
    return total


def _route_table(a, b, c, z):
    zc = as_mpc(z)
    zp = maybe_real(zc / (zc - 1))
    one_minus = maybe_real(1 - zc)
    routes = {
        "direct": (abs(zc), lambda: _raw_series(a, b, c, z)),
        "pfaff_a": (abs(zp), lambda: one_minus ** (-as_mpf(a))
                    * _raw_series(a, c - b, c, zp)),
        "pfaff_b": (abs(zp), lambda: one_minus ** (-as_mpf(b))
                    * _raw_series(c - a, b, c, zp)),
        "euler": (abs(zc), lambda: one_minus ** as_mpf(c - a - b)
                  * _raw_series(c - a, c - b, c, z)),
    }
    return routes


def _on_cut(z) -> bool:
    zc = as_mpc(z)
    return zc.imag == 0 and zc.real >= 1


def gauss_2f1(a, b, c, z, ctx: PrecisionContext, route: str | None = None):
    """2F1(a,b;c;z) on C minus [1,oo), principal branch.

    route, if given, forces one of "direct", "pfaff_a", "pfaff_b",
    "euler" instead of the automatic choice (used for cross-validation).
    """
    a, b, c = _as_fraction(a), _as_fraction(b), _as_fraction(c)
    if c <= 0 and c.denominator == 1:
        raise ValueError("c must not be a non-positive integer")
    if _on_cut(z):
        raise ValueError("argument on the branch cut [1, oo)")
    with ctx.workdps():
        key = tuple(sorted((a, b)))
        if route is None and c == 1 and key in ((_QUARTER, _QUARTER), (_HALF, _HALF)):
            zc = as_mpc(z)
            if key == (_QUARTER, _QUARTER):
                # quadratic transformation down to (1/2,1/2;1), then AGM
                s = _psqrt(1 - zc)
                val = 1 / _agm(mpf(1), _psqrt((1 + s) / 2))
            else:
                val = 1 / _agm(mpf(1), _psqrt(1 - zc))
            return maybe_real(+as_mpc(val))
        routes = _route_table(a, b, c, z)
        if route is not None:
            if route not in routes:
                raise ValueError(f"unknown 2F1 route {route!r}")
            modulus, thunk = routes[route]
        else:
            order = ("direct", "pfaff_a", "pfaff_b", "euler")
            modulus, thunk = min((routes[r] for r in order), key=lambda p: p[0])
        if modulus > _SERIES_CUTOFF:
            raise ConvergenceError(
                f"no convergent regime: best transformed modulus {float(modulus):.6f}")
        return maybe_real(+as_mpc(thunk()))


def gauss_2f1_derivative(a, b, c, z, ctx: PrecisionContext):
    """d/dz 2F1(a,b;c;z) via the contiguous relation (ab/c) 2F1(a+1,b+1;c+1;z)."""
    a, b, c = _as_fraction(a), _as_fraction(b), _as_fraction(c)
    factor = a * b / c
    with ctx.workdps():
        val = as_mpf(factor) * gauss_2f1(a + 1, b + 1, c + 1, z, ctx)
        return maybe_real(+as_mpc(val))


def _k_squared(k, ctx):
    with ctx.workdps():
        k2 = maybe_real(as_mpc(k) ** 2)
    if _on_cut(k2):
        raise ValueError("modulus with k^2 on [1, oo) is outside the domain")
    return k2


def elliptic_K(k, ctx: PrecisionContext):
    """Complete elliptic integral K, convention 2F1(1/2,1/2;1;k^2) = (2/pi) K(k)."""
    k2 = _k_squared(k, ctx)
    with ctx.workdps():
        val = mp.pi / (2 * _agm(mpf(1), _psqrt(1 - k2)))
        return maybe_real(+as_mpc(val))


def elliptic_E(k, ctx: PrecisionContext):
    """Complete elliptic integral E by the AGM c-sum, same modulus convention."""
    k2 = _k_squared(k, ctx)
    with ctx.workdps():
        a, b = mpf(1), _psqrt(1 - k2)
        s = as_mpc(k2) / 2          # 2^(n-1) c_n^2 accumulator, n = 0 term
        p = mpf(1)
        eps = mpf(10) ** (-mp.dps + 2)
        for _ in range(5000):
            if abs(a - b) <= eps * abs(a):
                break
            cterm = (a - b) / 2
            s += p * cterm * cterm
            a, b = (a + b) / 2, _psqrt(a * b)
            p *= 2
        K = mp.pi / (2 * ((a + b) / 2))
        return maybe_real(+as_mpc(K * (1 - s)))

"""Dedekind eta, Eisenstein series, the two level-2 hauptmoduls, and the
weight-1 / quasi-modular / scaling quantities built from them.

The derivative operator throughout is D = (1/2pi i) d/dtau. Derivatives
of the hauptmodul are closed forms in Eisenstein series (never numeric
differentiation): D log T = 2 E2(2 tau) - E2(tau), with higher orders
from the Ramanujan identities D E2 = (E2^2-E4)/12, D E4 = (E2 E4-E6)/3.
The companion curve's hauptmodul is reached through the exact rational
relation S = -4T/(1-T)^2 and the chain rule.
"""

from __future__ import annotations

from enum import Enum

from mpmath import mp, mpc, mpf

from .numerics import ConvergenceError, PrecisionContext, as_mpc, maybe_real

_MIN_IM = mpf("0.05")


class CurveTag(Enum):
    X0_2 = "X0(2)"
    X0_2_plus = "X0(2)+"


def _check_tau(tau):
    tau = as_mpc(tau)
    if not tau.imag > 0:
        raise ValueError("tau must lie in the upper half plane")
    if tau.imag < _MIN_IM:
        raise ConvergenceError(
            "precision unreachable: Im(tau) < 0.05, reduce tau first")
    return tau


def dedekind_eta(tau, ctx: PrecisionContext):
    """eta(tau) = q^(1/24) prod(1-q^n), q = e^(2 pi i tau).

    Evaluated through the pentagonal-number series for the product,
    truncated once |q|^N drops below 10^-(digits+guard).
    """
    tau = _check_tau(tau)
    with ctx.workdps():
        pref = mp.exp(1j * mp.pi * tau / 12)
        q = mp.exp(2j * mp.pi * tau)
        tol = mpf(10) ** (-mp.dps)
        s = mpc(1)
        k = 1
        while True:
            lead = q ** (k * (3 * k - 1) // 2)
            s += (-1) ** k * (lead + q ** (k * (3 * k + 1) // 2))
            if abs(lead) < tol:
                break
            k += 1
        return +(pref * s)


def _eisenstein_terms(im_tau) -> int:
    # truncation where n^5 |q|^n clears 10^-dps (sigma_5 grows ~ n^5)
    L = 2 * mp.pi * im_tau
    n = mp.dps * mp.log(10) / L + 10
    for _ in range(3):
        n = (mp.dps * mp.log(10) + 5 * mp.log(n + 2)) / L + 10
    return int(n) + 5


def _eisenstein_all(tau, ctx: PrecisionContext):
    """(E2, E4, E6) at tau by sieved divisor sums."""
    with ctx.workdps():
        N = _eisenstein_terms(tau.imag)
        sig1 = [0] * (N + 1)
        sig3 = [0] * (N + 1)
        sig5 = [0] * (N + 1)
        for d in range(1, N + 1):
            d3 = d * d * d
            d5 = d3 * d * d
            for m in range(d, N + 1, d):
                sig1[m] += d
                sig3[m] += d3
                sig5[m] += d5
        q = mp.exp(2j * mp.pi * tau)
        E2, E4, E6 = mpc(1), mpc(1), mpc(1)
        qp = mpc(1)
        for n in range(1, N + 1):
            qp *= q
            E2 -= 24 * sig1[n] * qp
            E4 += 240 * sig3[n] * qp
            E6 -= 504 * sig5[n] * qp
        return +E2, +E4, +E6


def eisenstein(k: int, tau, ctx: PrecisionContext):
    """Normalized Eisenstein series E_k (constant term 1), k in {2,4,6}."""
    if k not in (2, 4, 6):
        raise ValueError("only E2, E4, E6 are provided")
    tau = _check_tau(tau)
    return _eisenstein_all(tau, ctx)[(2, 4, 6).index(k)]


# caches keyed by exact mantissa tuples; entries are small, scans reuse them
_T_CACHE: dict = {}
_JETS_CACHE: dict = {}


def _cache_key(tau, ctx):
    return (tau.real._mpf_, tau.imag._mpf_, ctx.dps)


def clear_caches() -> None:
    _T_CACHE.clear()
    _JETS_CACHE.clear()


def _t_value(tau, ctx: PrecisionContext):
    """T(tau) = -64 eta(2 tau)^24 / eta(tau)^24 on X0(2)."""
    key = _cache_key(tau, ctx)
    hit = _T_CACHE.get(key)
    if hit is not None:
        return hit
    with ctx.workdps():
        e1 = dedekind_eta(tau, ctx) ** 24
        e2 = dedekind_eta(2 * tau, ctx) ** 24
        T = +(-64 * e2 / e1)
    _T_CACHE[key] = T
    return T


def _t_jets(tau, ctx: PrecisionContext):
    """(T, DT, D^2 T, D^3 T) on X0(2)."""
    key = _cache_key(tau, ctx)
    hit = _JETS_CACHE.get(key)
    if hit is not None:
        return hit
    with ctx.workdps():
        T = _t_value(tau, ctx)
        E2a, E4a, E6a = _eisenstein_all(tau, ctx)
        E2b, E4b, E6b = _eisenstein_all(2 * tau, ctx)
        # D E2 at tau and at 2 tau (inner factor 2 absorbed into A-coeffs)
        f1 = (E2a ** 2 - E4a) / 12
        f2 = (2 * E2a * f1 - (E2a * E4a - E6a) / 3) / 12
        g1 = (E2b ** 2 - E4b) / 12
        g2 = (2 * E2b * g1 - (E2b * E4b - E6b) / 3) / 12
        A0 = 2 * E2b - E2a          # D log T
        A1 = 4 * g1 - f1            # D A0
        A2 = 8 * g2 - f2            # D^2 A0
        jets = (T, +(T * A0), +(T * (A0 ** 2 + A1)),
                +(T * (A0 ** 3 + 3 * A0 * A1 + A2)))
    _JETS_CACHE[key] = jets
    return jets


def _s_jets(tau, ctx: PrecisionContext):
    """(S, DS, D^2 S, D^3 S) on the Fricke quotient, S = -4T/(1-T)^2."""
    T, DT, D2T, D3T = _t_jets(tau, ctx)
    with ctx.workdps():
        u = 1 - T
        S = -4 * T / u ** 2
        S1 = -4 * (1 + T) / u ** 3
        S2 = -8 * (T + 2) / u ** 4
        S3 = -24 * (T + 3) / u ** 5
        DS = S1 * DT
        D2S = S2 * DT ** 2 + S1 * D2T
        D3S = S3 * DT ** 3 + 3 * S2 * DT * D2T + S1 * D3T
        return +S, +DS, +D2S, +D3S


def _jets(curve: CurveTag, tau, ctx: PrecisionContext):
    tau = _check_tau(tau)
    if curve is CurveTag.X0_2:
        return _t_jets(tau, ctx)
    return _s_jets(tau, ctx)


def hauptmodul(curve: CurveTag, tau, ctx: PrecisionContext):
    """Hauptmodul value on the selected curve."""
    tau = _check_tau(tau)
    if curve is CurveTag.X0_2:
        return _t_value(tau, ctx)
    with ctx.workdps():
        T = _t_value(tau, ctx)
        return +(-4 * T / (1 - T) ** 2)


def hauptmodul_D(curve: CurveTag, tau, order: int, ctx: PrecisionContext):
    """D^order of the hauptmodul, order in {1,2,3}, closed form."""
    if order not in (1, 2, 3):
        raise ValueError("order must be 1, 2, or 3")
    return _jets(curve, tau, ctx)[order]


def _psqrt_local(z):
    w = mp.sqrt(as_mpc(z))
    if w.real < 0 or (w.real == 0 and w.imag < 0):
        w = -w
    return w


def _y_and_dlog(curve, tau, ctx):
    X, DX, D2X, _ = _jets(curve, tau, ctx)
    if abs(X) < mpf(10) ** (-ctx.dps + 5) or abs(1 - X) < mpf(10) ** (-ctx.dps + 5):
        raise ValueError("hauptmodul at 0 or 1: Y has a pole/branch point here")
    Y = DX / (X * _psqrt_local(1 - X))
    dlogY = D2X / DX - DX / X + DX / (2 * (1 - X))
    return X, Y, dlogY


def weight1_Y(curve: CurveTag, tau, ctx: PrecisionContext):
    """Y = DT / (T (1-T)^(1/2)), principal branch."""
    tau = _check_tau(tau)
    with ctx.workdps():
        _, Y, _ = _y_and_dlog(curve, tau, ctx)
        return +Y


def quasi_B(curve: CurveTag, tau, ctx: PrecisionContext):
    """B = (DY - Y/(2 pi Im tau)) / ((1-T)^(1/2) Y^2)."""
    tau = _check_tau(tau)
    with ctx.workdps():
        X, Y, dlogY = _y_and_dlog(curve, tau, ctx)
        DY = Y * dlogY
        return +((DY - Y / (2 * mp.pi * tau.imag)) / (_psqrt_local(1 - X) * Y ** 2))


def scaling_C(curve: CurveTag, tau, ctx: PrecisionContext):
    """C = 2 Im(tau) (1-T)^(1/2), principal branch."""
    tau = _check_tau(tau)
    with ctx.workdps():
        X = hauptmodul(curve, tau, ctx)
        if abs(1 - X) < mpf(10) ** (-ctx.dps + 5):
            raise ValueError("hauptmodul at 1: branch point of (1-T)^(1/2)")
        return +(2 * tau.imag * _psqrt_local(1 - X))


def j_from_T(T):
    """j = -(16 - 64 T)^3 / (64 T), at the caller's working precision."""
    T = maybe_real(as_mpc(T))
    if abs(T) == 0:
        raise ValueError("j has a pole at T = 0")
    return maybe_real(as_mpc(-((16 - 64 * T) ** 3) / (64 * T)))


def j_invariant(tau, ctx: PrecisionContext):
    """Classical j-invariant through the level-2 hauptmodul."""
    tau = _check_tau(tau)
    with ctx.workdps():
        return +j_from_T(_t_value(tau, ctx))

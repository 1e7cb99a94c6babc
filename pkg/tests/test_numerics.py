"""Precision-context contract, branch conventions, constants."""

import random
from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from modpi.numerics import (
    PrecisionContext,
    as_mpc,
    as_mpf,
    const_pi,
    default_context,
    maybe_real,
    nth_root_real,
    principal_sqrt,
)


class TestPrecisionContext:
    def test_rejects_fewer_than_20_digits(self):
        with pytest.raises(ValueError):
            PrecisionContext(19)

    def test_rejects_negative_guard(self):
        with pytest.raises(ValueError):
            PrecisionContext(60, guard=-1)

    def test_dps_is_digits_plus_guard(self):
        assert PrecisionContext(60, guard=15).dps == 75
        assert PrecisionContext(40).dps == 55

    def test_workdps_restores_ambient_precision(self):
        before = mp.dps
        with PrecisionContext(90).workdps():
            assert mp.dps == 105
        assert mp.dps == before

    def test_eps_scale(self):
        ctx = PrecisionContext(60)
        with ctx.workdps():
            assert ctx.eps(20) == mpf(10) ** -40
            assert ctx.eps() == mpf(10) ** -60

    def test_default_context_env_override(self, monkeypatch):
        monkeypatch.setenv("RPI_DIGITS", "77")
        assert default_context().digits == 77
        monkeypatch.delenv("RPI_DIGITS")
        assert default_context().digits == 60


class TestPrincipalSqrt:
    def test_perfect_square(self, ctx60):
        assert principal_sqrt(mpf(4), ctx60) == 2

    def test_negative_real_maps_to_positive_imaginary_axis(self, ctx60):
        w = principal_sqrt(mpf(-7), ctx60)
        with ctx60.workdps():
            assert w.real == 0
            assert abs(w.imag - mpf("2.6457513110645905905")) < mpf("1e-18")

    def test_square_recovers_input_on_annulus(self, ctx60):
        rng = random.Random(101)
        with ctx60.workdps():
            for _ in range(100):
                r = mpf(10) ** rng.uniform(-3, 3)
                phi = rng.uniform(-3.14159, 3.14159)
                z = r * mp.expjpi(phi / 3.14159)
                w = principal_sqrt(z, ctx60)
                assert abs(w * w - z) <= abs(z) * ctx60.eps(8)
                assert w.real > 0 or (w.real == 0 and w.imag >= 0)

    def test_commutes_with_conjugation_off_the_cut(self, ctx60):
        rng = random.Random(202)
        with ctx60.workdps():
            for _ in range(25):
                z = mpc(rng.uniform(-5, 5), rng.uniform(0.1, 5))
                lhs = principal_sqrt(mp.conj(z), ctx60)
                rhs = mp.conj(principal_sqrt(z, ctx60))
                assert abs(lhs - rhs) < ctx60.eps(8)

    def test_deterministic(self, ctx60):
        z = mpc("1.25", "-3.5")
        assert principal_sqrt(z, ctx60) == principal_sqrt(z, ctx60)


class TestConstPi:
    def test_30_digit_value(self):
        ctx = PrecisionContext(30)
        with ctx.workdps():
            lit = mpf("3.14159265358979323846264338328")
            assert abs(const_pi(ctx) - lit) < mpf(10) ** -28

    def test_precision_monotonicity(self):
        a = const_pi(PrecisionContext(20))
        b = const_pi(PrecisionContext(40))
        with PrecisionContext(40).workdps():
            assert abs(a - b) < mpf(10) ** -19

    def test_rational_over_pi(self, ctx60):
        # the constant behind the first registered case
        with ctx60.workdps():
            v = mpf(75) / (48 * const_pi(ctx60))
            assert abs(v - mpf("0.4973591971621729242777617605391")) < mpf("1e-30")


class TestNthRootReal:
    def test_cube_root_of_eight(self, ctx60):
        assert nth_root_real(8, 3, ctx60) == 2

    def test_root_of_one(self, ctx60):
        for k in (1, 2, 5, 6):
            assert nth_root_real(1, k, ctx60) == 1

    def test_sixth_root_powers_back(self, ctx60):
        with ctx60.workdps():
            v = 145 + 30 * mp.sqrt(6)
            r = nth_root_real(v, 6, ctx60)
            assert r > 0
            assert abs(r ** 6 - v) < mpf(10) ** -40

    def test_rejects_nonpositive(self, ctx60):
        with pytest.raises(ValueError):
            nth_root_real(0, 3, ctx60)
        with pytest.raises(ValueError):
            nth_root_real(-8, 3, ctx60)


class TestCoercions:
    def test_as_mpf_exact_fraction(self, ctx80):
        with ctx80.workdps():
            v = as_mpf(Fraction(1, 3))
            assert abs(3 * v - 1) < mpf(10) ** -90

    def test_maybe_real_drops_exact_zero_imag(self):
        v = maybe_real(mpc(1.5, 0))
        assert isinstance(v, mpf)
        w = maybe_real(mpc(1.5, 1e-30))
        assert isinstance(w, mpc)

    def test_as_mpc_passthrough(self, ctx60):
        with ctx60.workdps():
            z = as_mpc(Fraction(-3, 7))
            assert z.imag == 0
            assert abs(7 * z.real + 3) < mpf(10) ** -70

"""Binomial coefficient streams, series summation, decomposition routes."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from modpi.cases import DECOMPOSITION_SAMPLES
from modpi.numerics import ConvergenceError, PrecisionContext, as_mpf
from modpi.series import (
    SeriesFamily,
    _PTermStream,
    _UTermStream,
    _VTermStream,
    _WTermStream,
    decomposition_check,
    derivative_value,
    gf_value,
    inner_coefficient,
    series_value,
)

C = math.comb


def naive_coefficient(family, n, x):
    """Independent big-integer recomputation straight from the sums."""
    x = Fraction(x)
    if family is SeriesFamily.P:
        return C(2 * n, n) * sum(
            C(2 * k, k) ** 2 * C(2 * (n - k), n - k) * x ** (n - k)
            for k in range(n + 1))
    if family is SeriesFamily.W:
        return sum(C(n, k) * C(n + k, k) * C(2 * k, k)
                   * C(2 * (n - k), n - k) * x ** k for k in range(n + 1))
    if family is SeriesFamily.U:
        return C(2 * n, n) * sum(
            C(n, k) * C(n + 2 * k, 2 * k) * C(2 * k, k) * x ** (n - k)
            for k in range(n + 1))
    return C(2 * n, n) * sum(
        Fraction(C(2 * k, k) ** 2 * C(2 * n - 2 * k, n - k) ** 2, C(n, k))
        * x ** k for k in range(n + 1))


class TestInnerCoefficient:
    def test_order_zero_is_one(self):
        for fam in SeriesFamily:
            for x in (Fraction(9, 4), Fraction(-324), Fraction(0)):
                assert inner_coefficient(fam, 0, x) == 1

    def test_first_order_values(self):
        assert inner_coefficient(SeriesFamily.P, 1, Fraction(9, 4)) == 17
        for x in (Fraction(1, 3), Fraction(-49, 12), Fraction(7)):
            assert inner_coefficient(SeriesFamily.W, 1, x) == 2 + 4 * x

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            inner_coefficient(SeriesFamily.P, -1, Fraction(1))

    @given(n=st.integers(min_value=0, max_value=30),
           x=st.fractions(min_value=-50, max_value=50, max_denominator=48),
           fam=st.sampled_from(list(SeriesFamily)))
    def test_matches_naive_recomputation(self, n, x, fam):
        assert inner_coefficient(fam, n, x) == naive_coefficient(fam, n, x)


class TestTermStreams:
    # each production stream must reproduce a_n(x) * t^n

    def test_p_recurrence_stream_tracks_exact_terms(self):
        t, x = Fraction(1, 100), Fraction(9, 4)
        with mp.workdps(60):
            stream = _PTermStream(t, x)
            for n in range(80):
                got = next(stream)
                want = as_mpf(inner_coefficient(SeriesFamily.P, n, x) * t ** n)
                assert abs(got - want) <= abs(want) * mpf("1e-50")

    def test_p_stream_handles_huge_negative_x(self):
        t, x = Fraction(-1, 48), Fraction(-1352, 9)
        with mp.workdps(60):
            stream = _PTermStream(t, x)
            for n in range(40):
                got = next(stream)
                want = as_mpf(inner_coefficient(SeriesFamily.P, n, x) * t ** n)
                assert abs(got - want) <= abs(want) * mpf("1e-50")

    def test_v_stream_tracks_exact_terms(self):
        t, x = Fraction(1, 576), Fraction(-25, 16)
        with mp.workdps(60):
            stream = _VTermStream(t, x)
            for n in range(40):
                got = next(stream)
                want = as_mpf(inner_coefficient(SeriesFamily.V, n, x) * t ** n)
                if want != 0:
                    assert abs(got - want) <= abs(want) * mpf("1e-55")

    def test_w_stream_tracks_exact_terms(self):
        t, x = Fraction(-1, 108), Fraction(-49, 12)
        with mp.workdps(60):
            stream = _WTermStream(t, x)
            for n in range(50):
                got = next(stream)
                want = as_mpf(inner_coefficient(SeriesFamily.W, n, x) * t ** n)
                if want != 0:
                    assert abs(got - want) <= abs(want) * mpf("1e-55")

    def test_u_stream_tracks_exact_terms(self):
        for t, x in ((Fraction(1, 3645), Fraction(486)),
                     (Fraction(-1, 1728), Fraction(-324)),
                     (Fraction(2, 135), Fraction(-27, 8))):
            with mp.workdps(60):
                stream = _UTermStream(t, x)
                for n in range(40):
                    got = next(stream)
                    want = as_mpf(inner_coefficient(SeriesFamily.U, n, x)
                                  * t ** n)
                    if want != 0:
                        assert abs(got - want) <= abs(want) * mpf("1e-55")


class TestSeriesValue:
    def test_t_zero_gives_b(self, ctx60):
        with ctx60.workdps():
            v = series_value(SeriesFamily.P, 0, Fraction(5), Fraction(1, 12),
                             ctx60)
            assert abs(v - Fraction(1, 12)) < mpf("1e-70")

    def test_first_table_case_value(self, ctx60):
        with ctx60.workdps():
            v = series_value(SeriesFamily.P, Fraction(1, 100), Fraction(9, 4),
                             Fraction(1, 12), ctx60)
            assert abs(v - 75 / (48 * mp.pi)) < mpf("1e-40")

    def test_open_v_case_to_thirty_digits(self):
        ctx = PrecisionContext(40)
        with ctx.workdps():
            v = series_value(SeriesFamily.V, Fraction(1, 576), Fraction(5),
                             Fraction(5, 28), ctx)
            rhs = 9 * (2 + mp.sqrt(2)) / (28 * mp.pi)
            assert abs(v - rhs) < mpf("1e-30")

    def test_divergent_input_raises(self, ctx60):
        with pytest.raises(ConvergenceError):
            series_value(SeriesFamily.P, Fraction(1, 10), Fraction(9, 4),
                         Fraction(1), ctx60)

    def test_linearity_in_b(self, ctx60):
        # value(b1) - value(b2) = (b1 - b2) * gf for both closed families
        cases = ((SeriesFamily.P, Fraction(1, 150), Fraction(3, 2)),
                 (SeriesFamily.W, Fraction(-1, 300), Fraction(5, 4)))
        b1, b2 = Fraction(1, 3), Fraction(-2, 7)
        for fam, t, x in cases:
            with ctx60.workdps():
                lhs = (series_value(fam, t, x, b1, ctx60)
                       - series_value(fam, t, x, b2, ctx60))
                rhs = as_mpf(b1 - b2) * gf_value(fam, t, x, ctx60)
                assert abs(lhs - rhs) < ctx60.eps(5)

    def test_derivative_route_consistency(self, ctx60):
        # series_value = t*P' + b*P with the termwise derivative route
        fam, t, x, b = SeriesFamily.P, Fraction(1, 200), Fraction(2), \
            Fraction(3, 5)
        with ctx60.workdps():
            whole = series_value(fam, t, x, b, ctx60)
            split = (derivative_value(fam, t, x, ctx60)
                     + as_mpf(b) * gf_value(fam, t, x, ctx60))
            assert abs(whole - split) < ctx60.eps(5)


class TestGfValue:
    def test_t_zero_is_one(self, ctx60):
        with ctx60.workdps():
            assert abs(gf_value(SeriesFamily.P, 0, Fraction(7), ctx60) - 1) \
                < mpf("1e-70")

    def test_p_product_route(self, ctx60):
        from modpi.hypergeom import gauss_2f1
        from modpi.verifier import compute_h, compute_z_pm
        t, x = Fraction(1, 100), Fraction(9, 4)
        with ctx60.workdps():
            direct = gf_value(SeriesFamily.P, t, x, ctx60)
            zp, zm = compute_z_pm(t, x, ctx60)
            prod = gauss_2f1(Fraction(1, 4), Fraction(1, 4), 1, zp, ctx60) \
                * gauss_2f1(Fraction(1, 4), Fraction(1, 4), 1, zm, ctx60) \
                * compute_h(SeriesFamily.P, t, x, ctx60)
            assert abs(direct - prod) < mpf("1e-40")

    def test_w_product_route(self, ctx60):
        from modpi.verifier import compute_f_pm, compute_h, second_sheet_F, _F_W
        t, x = Fraction(-1, 108), Fraction(-49, 12)
        with ctx60.workdps():
            direct = gf_value(SeriesFamily.W, t, x, ctx60)
            fp, fm = compute_f_pm(t, x, ctx60)
            prod = _F_W(fp, ctx60) * second_sheet_F(fm, ctx60) \
                * compute_h(SeriesFamily.W, t, x, ctx60)
            assert abs(direct - prod) < mpf("1e-40")


class TestDecompositionCheck:
    def test_p_samples(self, ctx60):
        dev = decomposition_check(SeriesFamily.P,
                                  DECOMPOSITION_SAMPLES[SeriesFamily.P], ctx60)
        with ctx60.workdps():
            assert dev < mpf("1e-40")

    def test_w_samples(self, ctx60):
        dev = decomposition_check(SeriesFamily.W,
                                  DECOMPOSITION_SAMPLES[SeriesFamily.W], ctx60)
        with ctx60.workdps():
            assert dev < mpf("1e-40")

    def test_degenerate_sample_is_exact(self, ctx60):
        dev = decomposition_check(SeriesFamily.P, ((Fraction(0), Fraction(3)),),
                                  ctx60)
        with ctx60.workdps():
            assert dev < mpf("1e-70")

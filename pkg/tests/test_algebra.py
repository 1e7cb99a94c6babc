"""Exact surd arithmetic, RHS expression trees, numeric recognition."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpc, mpf

from modpi.algebra import (
    QuadSurd,
    RecognitionError,
    SurdSum,
    is_squarefree,
    parse_rhs,
    recognize_complex,
    recognize_in_field,
    recognize_two_surds,
    rhs_eval,
    rhs_text,
    surd_eval,
    surd_sqrt,
    surd_sum_eval,
)
from modpi.cases import REGISTRY
from modpi.numerics import PrecisionContext, const_pi

_rational = st.fractions(min_value=-10_000, max_value=10_000,
                         max_denominator=10_000)
_real_d = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 13, 15, 42, 133])


class TestQuadSurd:
    def test_d_one_folds_into_rational_part(self):
        s = QuadSurd(Fraction(1, 2), Fraction(1, 3), 1)
        assert (s.a, s.b, s.d) == (Fraction(5, 6), Fraction(0), 1)

    def test_zero_coefficient_normalizes_radicand(self):
        s = QuadSurd(Fraction(2), Fraction(0), 7)
        assert s.d == 1 and s.is_rational

    def test_rejects_non_squarefree_radicand(self):
        with pytest.raises(ValueError):
            QuadSurd(Fraction(0), Fraction(1), 12)
        assert not is_squarefree(12)
        assert is_squarefree(-7)

    def test_string_forms(self):
        assert str(QuadSurd(Fraction(31, 32), Fraction(-3, 32), 7)) \
            == "31/32-3/32*sqrt(7)"
        assert str(QuadSurd(Fraction(0), Fraction(15, 32), 7)) \
            == "15/32*sqrt(7)"
        assert str(QuadSurd(Fraction(5, 4), Fraction(0), 1)) == "5/4"

    @given(a1=_rational, b1=_rational, a2=_rational, b2=_rational,
           d=st.sampled_from([2, 3, 5, 7, -1, -7]))
    def test_ring_operations_are_exact(self, a1, b1, a2, b2, d):
        s1, s2 = QuadSurd(a1, b1, d), QuadSurd(a2, b2, d)
        prod = s1 * s2
        assert prod.a == a1 * a2 + d * b1 * b2
        assert prod.b == a1 * b2 + b1 * a2
        nrm = s1 * s1.conjugate()
        assert nrm.b == 0
        assert nrm.a == s1.norm() == a1 * a1 - d * b1 * b1
        total = s1 + s2
        assert (total.a, total.b) == (a1 + a2, b1 + b2)

    def test_division_inverts_multiplication(self):
        s = QuadSurd(Fraction(3, 7), Fraction(-2, 5), 6)
        t = QuadSurd(Fraction(1, 2), Fraction(4), 6)
        assert (s * t) / t == s
        with pytest.raises(ZeroDivisionError):
            s / QuadSurd(Fraction(0), Fraction(0), 6)

    def test_eval_complex_entry(self, ctx60):
        # a quasi-modular table value with imaginary radicand
        s = QuadSurd(Fraction(-1, 4), Fraction(-1, 84), -7)
        v = surd_eval(s, ctx60)
        with ctx60.workdps():
            assert abs(v.real + mpf("0.25")) < mpf("1e-50")
            assert abs(v.imag + mpf("0.0314970394174356022680")) < mpf("1e-20")

    def test_eval_zero(self, ctx60):
        assert surd_eval(QuadSurd(Fraction(0), Fraction(0), 5), ctx60) == 0

    def test_unit_modulus_entry(self, ctx60):
        s = QuadSurd(Fraction(31, 32), Fraction(-3, 32), -7)
        assert s.norm() == 1      # (31^2 + 7*9)/32^2
        v = surd_eval(s, ctx60)
        with ctx60.workdps():
            assert abs(abs(v) - 1) < mpf("1e-58")


class TestSurdSqrt:
    def test_square_round_trip(self):
        r = QuadSurd(Fraction(1, 2), Fraction(3, 2), 2)
        s = r * r
        back = surd_sqrt(s)
        assert back in (r, -r)

    def test_rational_perfect_square(self):
        assert surd_sqrt(QuadSurd.rational(Fraction(9, 4))) \
            == QuadSurd.rational(Fraction(3, 2))

    def test_rational_with_hint_radicand(self):
        assert surd_sqrt(QuadSurd.rational(12), d_hint=3) \
            == QuadSurd(Fraction(0), Fraction(2), 3)

    def test_returns_none_when_no_root_exists(self):
        assert surd_sqrt(QuadSurd.rational(2)) is None
        assert surd_sqrt(QuadSurd(Fraction(1), Fraction(1), 5)) is None


class TestSurdSum:
    def test_merges_and_drops_zero_terms(self):
        s = SurdSum(((Fraction(1, 2), 3), (Fraction(1, 2), 3),
                     (Fraction(0), 5), (Fraction(2), 1)))
        assert s.terms == ((Fraction(2), 1), (Fraction(1), 3))

    def test_string_and_eval(self, ctx60):
        s = SurdSum(((Fraction(-1, 4), 1), (Fraction(2, 3), 7)))
        assert str(s) == "-1/4+2/3*sqrt(7)"
        with ctx60.workdps():
            want = -mpf(1) / 4 + 2 * mp.sqrt(7) / 3
            assert abs(surd_sum_eval(s, ctx60) - want) < mpf("1e-58")

    def test_rejects_non_squarefree(self):
        with pytest.raises(ValueError):
            SurdSum(((Fraction(1), 8),))


class TestRhsGrammar:
    def test_round_trip_on_every_registered_case(self, ctx60):
        for case in REGISTRY:
            text = rhs_text(case.rhs)
            again = parse_rhs(text)
            assert rhs_text(again) == text
            v = rhs_eval(again, ctx60)
            assert v > 0

    def test_parse_rejects_malformed(self):
        for bad in ("2+*3", "sqrt(", "root5(2)", ""):
            with pytest.raises(ValueError):
                parse_rhs(bad)

    def test_pi_factor_is_implicit(self, ctx60):
        with ctx60.workdps():
            v = rhs_eval(parse_rhs("75/48"), ctx60)
            assert abs(v - mpf(75) / (48 * const_pi(ctx60))) < mpf("1e-58")
            assert abs(v - mpf("0.49735919716")) < mpf("1e-10")

    def test_simple_surd_value(self, ctx60):
        with ctx60.workdps():
            v = rhs_eval(parse_rhs("sqrt(3)/4"), ctx60)
            assert abs(v - mpf("0.13783222385")) < mpf("1e-10")

    def test_nested_radical_value(self, ctx60):
        expr = parse_rhs(
            "sqrt(30)/20*(5+cbrt(145+30*sqrt(6)))/root6(145+30*sqrt(6))")
        with ctx60.workdps():
            v = rhs_eval(expr, ctx60)
            assert v > 0 and mp.isfinite(v)


class TestRecognizeInField:
    def test_rational_input(self, ctx60):
        with ctx60.workdps():
            v = mpf(31) / 32
        s = recognize_in_field(v, 7, 10 ** 6, ctx60)
        assert (s.a, s.b) == (Fraction(31, 32), Fraction(0))

    def test_pure_surd_input(self, ctx60):
        target = QuadSurd(Fraction(0), Fraction(15, 32), 7)
        s = recognize_in_field(surd_eval(target, ctx60), 7, 10 ** 6, ctx60)
        assert s == target

    def test_large_denominator_entry(self, ctx60):
        target = QuadSurd(Fraction(127, 7), Fraction(48, 7), 7)
        s = recognize_in_field(surd_eval(target, ctx60), 7, 10 ** 9, ctx60)
        assert s == target

    def test_transcendental_is_rejected(self, ctx60):
        with pytest.raises(RecognitionError):
            recognize_in_field(const_pi(ctx60), 7, 10 ** 6, ctx60)

    def test_low_precision_is_rejected(self):
        ctx = PrecisionContext(40)
        with pytest.raises(ValueError):
            recognize_in_field(mpf(1) / 3, 7, 10 ** 6, ctx)

    def test_scale_consistency(self, ctx60):
        target = QuadSurd(Fraction(5, 12), Fraction(-7, 30), 6)
        v = surd_eval(target, ctx60)
        with ctx60.workdps():
            doubled = recognize_in_field(2 * v, 6, 10 ** 6, ctx60)
        assert (doubled.a, doubled.b) == (2 * target.a, 2 * target.b)

    @settings(max_examples=200)
    @given(a=_rational, b=_rational, d=_real_d)
    def test_round_trip(self, ctx60, a, b, d):
        target = QuadSurd(a, b, d)
        v = surd_eval(target, ctx60)
        s = recognize_in_field(v, d, 10 ** 12, ctx60)
        assert s == target


class TestRecognizeComplex:
    def test_splits_scaling_entry(self, ctx60):
        with ctx60.workdps():
            v = mpc(15 * mp.sqrt(7) / 32, mpf(21) / 32)
        re, im = recognize_complex(v, 7, 1, 10 ** 6, ctx60)
        assert re == QuadSurd(Fraction(0), Fraction(15, 32), 7)
        assert im == QuadSurd.rational(Fraction(21, 32))

    def test_splits_quasimodular_entry(self, ctx60):
        with ctx60.workdps():
            v = mpc(-mpf(1) / 4, -mp.sqrt(7) / 84)
        re, im = recognize_complex(v, 1, 7, 10 ** 6, ctx60)
        assert re == QuadSurd.rational(Fraction(-1, 4))
        assert im == QuadSurd(Fraction(0), Fraction(-1, 84), 7)

    def test_purely_real_input(self, ctx60):
        with ctx60.workdps():
            v = mpc(mpf(3) / 8, 0)
        re, im = recognize_complex(v, 1, 5, 10 ** 6, ctx60)
        assert re == QuadSurd.rational(Fraction(3, 8))
        assert im == QuadSurd.rational(0)


class TestRecognizeTwoSurds:
    def test_biquadratic_entry(self, ctx60):
        with ctx60.workdps():
            v = (4620 * mp.sqrt(2) + 280 * mp.sqrt(3)) / 1083
        s = recognize_two_surds(v, 2, 3, 10 ** 6, ctx60)
        assert s.terms == ((Fraction(1540, 361), 2), (Fraction(280, 1083), 3))

    def test_open_case_constant(self, ctx60):
        with ctx60.workdps():
            v = (5 * mp.sqrt(6) + 4 * mp.sqrt(15)) / 16
        s = recognize_two_surds(v, 6, 15, 10 ** 6, ctx60)
        assert s.terms == ((Fraction(5, 16), 6), (Fraction(1, 4), 15))

    def test_rejects_equal_radicands(self, ctx60):
        with pytest.raises(ValueError):
            recognize_two_surds(mpf(1), 6, 6, 10 ** 6, ctx60)

    def test_transcendental_is_rejected(self, ctx60):
        with pytest.raises(RecognitionError):
            recognize_two_surds(const_pi(ctx60), 2, 3, 10 ** 6, ctx60)

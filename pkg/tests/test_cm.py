"""Quadratic form enumeration and CM point search on both curves."""

from fractions import Fraction

import pytest
from mpmath import mp, mpf, sqrt

from modpi.cm import (
    CMPoint,
    QuadraticForm,
    class_number_list,
    enumerate_forms,
    find_cm_point,
)
from modpi.modular import CurveTag
from modpi.numerics import PrecisionContext
from modpi.verifier import compute_f_pm, compute_z_pm


class TestClassNumberList:
    def test_h1_is_the_thirteen_idoneal_set(self):
        lst = class_number_list()
        assert lst.h1 == frozenset(
            {3, 4, 7, 8, 11, 12, 16, 19, 27, 28, 43, 67, 163})

    def test_h2_membership(self):
        lst = class_number_list()
        assert 427 in lst.h2
        assert 15 in lst.h2
        assert 163 not in lst.h2

    def test_contains_combines_both(self):
        lst = class_number_list()
        assert 163 in lst
        assert 427 in lst
        assert 428 not in lst


class TestQuadraticForm:
    def test_disc_and_str(self):
        f = QuadraticForm(2, -1, 1, level=2)
        assert f.disc == -7
        assert str(f) == "[2,-1,1]"

    def test_validation(self):
        with pytest.raises(ValueError):
            QuadraticForm(-2, 1, 1)
        with pytest.raises(ValueError):
            QuadraticForm(1, 3, 1)          # disc = 5 >= 0
        with pytest.raises(ValueError):
            QuadraticForm(3, 1, 1, level=2)  # 2 does not divide 3

    def test_root_solves_the_form(self, ctx60):
        f = QuadraticForm(2, -1, 1, level=2)
        tau = f.root(ctx60)
        with ctx60.workdps():
            assert abs(tau - (1 + sqrt(mpf(-7))) / 4) < ctx60.eps(5)
            res = 2 * tau ** 2 - tau + 1
            assert abs(res) < ctx60.eps(5)

    def test_root_imaginary_part(self, ctx60):
        # Im tau = sqrt(D)/(2a) for every enumerated form
        with ctx60.workdps():
            for f in enumerate_forms(40, 2, 8):
                tau = f.root(ctx60)
                assert abs(tau.imag - sqrt(mpf(40)) / (2 * f.a)) < ctx60.eps(5)


class TestCMPoint:
    def test_discriminant_consistency_enforced(self, ctx60):
        f = QuadraticForm(2, -1, 1, level=2)
        CMPoint(form=f, tau=f.root(ctx60), D=7)
        with pytest.raises(ValueError):
            CMPoint(form=f, tau=f.root(ctx60), D=8)


class TestEnumerateForms:
    def test_level_two_disc_seven(self):
        forms = enumerate_forms(7, 2, 4)
        keys = {(f.a, f.b, f.c) for f in forms}
        assert (2, 1, 1) in keys
        assert (2, -1, 1) in keys

    def test_principal_form_disc_three(self):
        forms = enumerate_forms(3, 1, 1)
        assert [(f.a, f.b, f.c) for f in forms] == [(1, 1, 1)]

    def test_level_two_disc_twelve_keeps_mirror_pair(self, ctx60):
        forms = enumerate_forms(12, 2, 4)
        keys = {(f.a, f.b, f.c) for f in forms}
        assert (2, 2, 2) in keys and (2, -2, 2) in keys
        with ctx60.workdps():
            roots = sorted(
                (f.root(ctx60) for f in forms if (f.a, abs(f.b), f.c)
                 == (2, 2, 2)), key=lambda z: z.real)
            assert abs(roots[0] - (-1 + sqrt(mpf(-3))) / 2) < ctx60.eps(5)
            assert abs(roots[1] - (1 + sqrt(mpf(-3))) / 2) < ctx60.eps(5)

    def test_invalid_discriminants_rejected(self):
        for D in (5, -7, 0, 6):
            with pytest.raises(ValueError):
                enumerate_forms(D, 1, 3)
        with pytest.raises(ValueError):
            enumerate_forms(7, 2, 1)   # a_max below the level


class TestFindCMPoint:
    def test_golden_hauptmodul_target(self, ctx60):
        with ctx60.workdps():
            target = (47 - 45 * sqrt(mpf(-7))) / 128
        pt = find_cm_point(CurveTag.X0_2, target, mpf("1e-30"), ctx60)
        assert (pt.form.a, pt.form.b, pt.form.c) == (2, -1, 1)
        assert pt.D == 7
        with ctx60.workdps():
            assert abs(pt.tau - (1 + sqrt(mpf(-7))) / 4) < ctx60.eps(5)

    def test_rational_quarter_target(self, ctx60):
        pt = find_cm_point(CurveTag.X0_2, mpf(1) / 4, mpf("1e-30"), ctx60)
        assert pt.D == 12
        with ctx60.workdps():
            assert abs(abs(pt.tau.real) - mpf("0.5")) < ctx60.eps(5)
            assert abs(pt.tau.imag - sqrt(mpf(3)) / 2) < ctx60.eps(5)

    def test_plus_curve_target_from_series_data(self, ctx60):
        fp, _ = compute_f_pm(Fraction(-1, 108), Fraction(-49, 12), ctx60)
        pt = find_cm_point(CurveTag.X0_2_plus, fp, mpf("1e-30"), ctx60)
        assert pt.D == 168
        with ctx60.workdps():
            assert abs(pt.tau - sqrt(mpf(-42)) / 2) < ctx60.eps(5)

    def test_search_is_deterministic(self, ctx60):
        zp, _ = compute_z_pm(Fraction(1, 100), Fraction(9, 4), ctx60)
        a = find_cm_point(CurveTag.X0_2, zp, mpf("1e-30"), ctx60)
        b = find_cm_point(CurveTag.X0_2, zp, mpf("1e-30"), ctx60)
        assert a.form == b.form and a.D == b.D

    def test_unmatchable_target_raises(self):
        ctx = PrecisionContext(20)
        with pytest.raises(LookupError):
            find_cm_point(CurveTag.X0_2, mpf("0.123456789"), mpf("1e-12"), ctx)

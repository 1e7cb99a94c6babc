"""Gauss 2F1 evaluation routes, AGM fast paths, elliptic integrals."""

import random
from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf, sqrt

from modpi.hypergeom import (
    _route_table,
    elliptic_E,
    elliptic_K,
    gauss_2f1,
    gauss_2f1_derivative,
)
from modpi.numerics import ConvergenceError, PrecisionContext

Q = Fraction


class TestBasics:
    def test_value_at_zero(self, ctx60):
        assert gauss_2f1(Q(1, 4), Q(1, 4), 1, 0, ctx60) == 1
        assert gauss_2f1(Q(1, 8), Q(3, 8), 1, 0, ctx60) == 1

    def test_parameter_symmetry(self, ctx60):
        with ctx60.workdps():
            a = gauss_2f1(Q(1, 8), Q(3, 8), 1, mpf("0.3"), ctx60)
            b = gauss_2f1(Q(3, 8), Q(1, 8), 1, mpf("0.3"), ctx60)
            assert abs(a - b) < ctx60.eps()

    def test_bad_c_rejected(self, ctx60):
        for c in (0, -1, -3):
            with pytest.raises(ValueError):
                gauss_2f1(Q(1, 4), Q(1, 4), c, Q(1, 2), ctx60)

    def test_branch_cut_rejected(self, ctx60):
        for z in (mpf("1.5"), mpf(1), mpf(7)):
            with pytest.raises(ValueError):
                gauss_2f1(Q(1, 4), Q(1, 4), 1, z, ctx60)

    def test_derivative_at_zero(self, ctx60):
        # d/dz 2F1(a,b;c;z) at 0 equals ab/c
        with ctx60.workdps():
            d1 = gauss_2f1_derivative(Q(1, 4), Q(1, 4), 1, 0, ctx60)
            assert abs(d1 - mpf(1) / 16) < ctx60.eps()
            d2 = gauss_2f1_derivative(Q(1, 2), Q(1, 2), 1, 0, ctx60)
            assert abs(d2 - mpf(1) / 4) < ctx60.eps()

    def test_derivative_against_finite_difference(self):
        ctx = PrecisionContext(80)
        with ctx.workdps():
            z, h = mpf("0.3"), mpf("1e-20")
            d = gauss_2f1_derivative(Q(1, 4), Q(1, 4), 1, z, ctx)
            fd = (gauss_2f1(Q(1, 4), Q(1, 4), 1, z + h, ctx)
                  - gauss_2f1(Q(1, 4), Q(1, 4), 1, z - h, ctx)) / (2 * h)
            assert abs(d - fd) < abs(d) * mpf("1e-35")


class TestRoutes:
    def _viable(self, z):
        # moduli the production table uses, checked against its own cutoff
        zc = mpc(z)
        zp = abs(zc / (zc - 1))
        table = {"direct": abs(zc), "euler": abs(zc),
                 "pfaff_a": zp, "pfaff_b": zp}
        return sorted((r for r, m in table.items() if m <= mpf("0.99")),
                      key=lambda r: table[r])

    def test_route_agreement_on_random_arguments(self, ctx60):
        # 20 seeded points with 0.5 <= |z| <= 50 where at least two distinct
        # transformation routes converge, each pair agreeing to ctx-5 digits
        rng = random.Random(4242)
        done = 0
        with ctx60.workdps():
            while done < 20:
                r = rng.uniform(0.5, 50.0)
                theta = rng.uniform(0.6, 2 * 3.14159 - 0.6)
                z = mpc(r * mp.cos(theta), r * mp.sin(theta))
                routes = self._viable(z)
                if len(routes) < 2:
                    continue
                vals = [gauss_2f1(Q(1, 8), Q(3, 8), 1, z, ctx60, route=rt)
                        for rt in routes[:2]]
                assert abs(vals[0] - vals[1]) \
                    < ctx60.eps(5) * max(1, abs(vals[0]))
                done += 1

    def test_unknown_route_rejected(self, ctx60):
        with pytest.raises(ValueError):
            gauss_2f1(Q(1, 4), Q(1, 4), 1, Q(1, 2), ctx60, route="nosuch")

    def test_forced_route_over_cutoff_raises(self, ctx60):
        # forced direct route at |z| just over the series cutoff
        z = mpf("-0.999999")
        with pytest.raises(ConvergenceError):
            gauss_2f1(Q(1, 8), Q(3, 8), 1, z, ctx60, route="direct")

    def test_route_table_moduli(self, ctx60):
        with ctx60.workdps():
            z = mpf("-3")
            routes = _route_table(Q(1, 4), Q(1, 4), 1, z)
            assert abs(routes["direct"][0] - 3) < mpf("1e-50")
            assert abs(routes["pfaff_a"][0] - mpf(3) / 4) < mpf("1e-50")


class TestAgmFastPath:
    def test_agm_matches_series_for_quarter_family(self, ctx60):
        with ctx60.workdps():
            for z in (mpf("0.4"), mpf("-0.7"), mpc("0.2", "0.3")):
                fast = gauss_2f1(Q(1, 4), Q(1, 4), 1, z, ctx60)
                slow = gauss_2f1(Q(1, 4), Q(1, 4), 1, z, ctx60, route="direct")
                assert abs(fast - slow) < ctx60.eps(8)

    def test_agm_matches_pfaff_outside_disk(self, ctx60):
        with ctx60.workdps():
            z = mpf("-30")
            fast = gauss_2f1(Q(1, 4), Q(1, 4), 1, z, ctx60)
            forced = gauss_2f1(Q(1, 4), Q(1, 4), 1, z, ctx60, route="pfaff_a")
            assert abs(fast - forced) < ctx60.eps(8)

    def test_quadratic_transform_against_half_family(self, ctx60):
        # 2F1(1/4,1/4;1;z) = (sqrt(1-z)+1)/2)^(-1/2)-style reduction:
        # cross-check via mpmath's own hyp2f1 on 20 seeded points
        rng = random.Random(777)
        with ctx60.workdps():
            for _ in range(20):
                z = mpc(rng.uniform(-0.8, 0.8), rng.uniform(-0.4, 0.4))
                if abs(z) > mpf("0.8"):
                    continue
                got = gauss_2f1(Q(1, 4), Q(1, 4), 1, z, ctx60)
                want = mp.hyp2f1(mpf(1) / 4, mpf(1) / 4, 1, z)
                assert abs(got - want) < ctx60.eps(5)

    def test_huge_negative_argument_from_registry(self, ctx60):
        # the two Pfaff-image arguments that occur for cases with s = sqrt7
        with ctx60.workdps():
            s7 = sqrt(mpf(7))
            z_small = -129536 + 48960 * s7    # about -0.0158
            z_huge = -129536 - 48960 * s7     # about -2.6e5
            assert abs(z_small) < mpf("0.02")
            for z in (z_small, z_huge):
                got = gauss_2f1(Q(1, 4), Q(1, 4), 1, z, ctx60)
                want = mp.hyp2f1(mpf(1) / 4, mpf(1) / 4, 1, z)
                assert abs(got - want) < ctx60.eps(5) * max(1, abs(want))
            # forced-route cross-check where a series regime exists
            a = gauss_2f1(Q(1, 4), Q(1, 4), 1, z_small, ctx60, route="pfaff_a")
            b = gauss_2f1(Q(1, 4), Q(1, 4), 1, z_small, ctx60, route="euler")
            assert abs(a - b) < ctx60.eps(8)
            with pytest.raises(ConvergenceError):
                gauss_2f1(Q(1, 4), Q(1, 4), 1, z_huge, ctx60, route="pfaff_a")


class TestElliptic:
    def test_values_at_zero(self, ctx60):
        with ctx60.workdps():
            assert abs(elliptic_K(0, ctx60) - mp.pi / 2) < ctx60.eps()
            assert abs(elliptic_E(0, ctx60) - mp.pi / 2) < ctx60.eps()

    def test_k_convention_matches_2f1(self, ctx60):
        with ctx60.workdps():
            k = mp.sqrt(mpf("0.5"))
            lhs = 2 / mp.pi * elliptic_K(k, ctx60)
            rhs = gauss_2f1(Q(1, 2), Q(1, 2), 1, mpf("0.5"), ctx60)
            assert abs(lhs - rhs) < mpf("1e-40")

    def test_against_mpmath_oracle(self, ctx60):
        with ctx60.workdps():
            for kk in (mpf("0.1"), mpf("0.77"), mpc("0.3", "0.2")):
                assert abs(elliptic_K(kk, ctx60) - mp.ellipk(kk ** 2)) \
                    < ctx60.eps(5)
                assert abs(elliptic_E(kk, ctx60) - mp.ellipe(kk ** 2)) \
                    < ctx60.eps(5)

    def test_singular_moduli_rejected(self, ctx60):
        for k in (1, 2, mpf("1.5")):
            with pytest.raises(ValueError):
                elliptic_K(k, ctx60)
            with pytest.raises(ValueError):
                elliptic_E(k, ctx60)

    def test_conjugate_moduli_pair(self, ctx60):
        # K at the two conjugate quadratic moduli (3 +- i sqrt7)/8 comes out
        # as a conjugate pair of genuinely complex values
        with ctx60.workdps():
            ap = (3 + mpc(0, 1) * sqrt(mpf(7))) / 8
            am = (3 - mpc(0, 1) * sqrt(mpf(7))) / 8
            kp, km = elliptic_K(ap, ctx60), elliptic_K(am, ctx60)
            assert abs(kp.imag) > mpf("1e-3")
            assert abs(kp - mp.conj(km)) < ctx60.eps(5)

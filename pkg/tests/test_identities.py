"""Identity verifiers at the documented points, their specializations and the catalogue."""

import json
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhahn.errors import DomainViolation, InvalidLowerParameter, QSeriesError
from qhahn.fps import TPS, fps_qprod_infinite, fps_qprod_reciprocal
from qhahn.identities import (BY_ID, CATALOGUE, SamplingExhausted, get_identity, run_identity,
                              sample_point, verify_asc_genfun, verify_chu_vandermonde,
                              verify_csums, verify_dd1sums, verify_extended_generating,
                              verify_extended_rogers_at_zero_s, verify_fxgen, verify_generating,
                              verify_heine, verify_kernel_identity, verify_lums,
                              verify_lums_collapse, verify_qde_solutions, verify_rogers,
                              verify_srivastava_agarwal, verify_theta_eigen)
from qhahn.identities.base import Constraint, abs_of
from qhahn.identities.catalogue import IdentityInfo
from qhahn.identities.classical import chu_vandermonde_sides
from qhahn.identities.generating import dgen_sides, extended_generating_sides, generating_sides
from qhahn.identities.rogers import (cancellation, extended_rogers_point_sides,
                                     rogers_formal_sides, rogers_point_sides)
from qhahn.identities.srivastava_agarwal import asc_generating_sides, csums_sides, sa_sides
from qhahn.identities.structural import kernel_f, kernel_g, qde_relative_residual
from qhahn.polynomials import al_salam_carlitz, psi_scaled
from qhahn.qcore import Mode, ParameterPoint, QContext, qpoch_finite
from strategies import small_rationals

F = Fraction
HALF = QContext.exact(F(1, 2))
HALF_FLOAT = QContext.floating(F(1, 2), dps=30)
BASE = ParameterPoint(a=F(1, 3), x=F(1, 4), y=F(1, 5), z=F(1, 6))
ROGERS_BASE = ParameterPoint(a=F(1, 3), x=F(1, 5), y=F(1, 7), z=F(1, 9), s=F(1, 4))


def mp(value):
    value = F(value)
    return mpmath.mpf(value.numerator) / value.denominator


class TestGenerating:
    def test_documented_point(self):
        report = verify_generating(BASE, 12, HALF)
        assert report.passed and report.max_deviation == 0 and report.order_or_points == 13

    def test_z_zero_gives_cauchy_kernel(self):
        lhs, rhs = generating_sides(BASE.with_(z=0), 12, HALF)
        kernel = fps_qprod_infinite(BASE.x, 12, HALF) * fps_qprod_reciprocal(BASE.y, 12, HALF)
        assert lhs == rhs == kernel

    def test_numeric_point_against_mpmath(self):
        # Sum the left side at t0 and compare with mpmath's products and 1phi1.
        with mpmath.workdps(30):
            a, x, y, z, t0 = (mp(v) for v in (F(1, 3), F(1, 4), F(1, 5), F(1, 6), F(1, 3)))
            q = mp(F(1, 2))
            lhs = sum(psi_scaled(n, BASE.a, BASE.x, BASE.y, BASE.z, HALF) * t0 ** n
                      / mpmath.qp(q, q, n) for n in range(80))
            lhs = mpmath.mpf(lhs.numerator) / lhs.denominator if isinstance(lhs, F) else lhs
            rhs = (mpmath.qp(x * t0, q) / mpmath.qp(y * t0, q)
                   * mpmath.qhyper([a], [0], q, z * t0))
            assert abs(lhs - rhs) < mpmath.mpf(10) ** -20

    def test_extended_k0_is_the_plain_generating_function(self):
        assert extended_generating_sides(BASE, 0, 12, HALF) == generating_sides(BASE, 12, HALF)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_extended_is_exact(self, k):
        report = verify_extended_generating(BASE, k, 10, HALF)
        assert report.passed and report.max_deviation == 0

    def test_extended_low_coefficients_vanish(self):
        lhs, rhs = extended_generating_sides(BASE, 3, 6, HALF)
        assert rhs.coeffs[:3] == (0, 0, 0)

    def test_dgen_matches_extended_at_a_zero(self):
        point = BASE.with_(a=0)
        ext = extended_generating_sides(point, 2, 10, HALF)
        dgen = dgen_sides(point, 2, 10, HALF)
        assert ext[0] == dgen[0] and ext[1] == dgen[1]

    def test_float_agrees_with_exact(self):
        report = verify_extended_generating(BASE, 2, 10, HALF_FLOAT)
        assert report.passed and report.max_deviation < 1e-20

    def test_negative_k_rejected(self):
        with pytest.raises(DomainViolation):
            extended_generating_sides(BASE, -1, 4, HALF)

    def test_kernel_identity(self):
        assert verify_kernel_identity(BASE, 10, HALF).max_deviation == 0


class TestClassical:
    def test_chu_vandermonde_examples(self):
        assert chu_vandermonde_sides(0, F(1, 3), F(1, 5), HALF) == (1, 1)
        assert chu_vandermonde_sides(1, F(1, 3), F(1, 5), HALF) == (F(1, 6), F(1, 6))

    @given(n=st.integers(0, 8), a=small_rationals(), c=small_rationals())
    def test_chu_vandermonde_exact(self, n, a, c):
        if c == 0:
            c = F(1, 9)
        assert verify_chu_vandermonde(n, a, c, HALF).max_deviation == 0

    def test_heine_documented_point(self):
        point = ParameterPoint(a=F(1, 3), b=F(1, 4), c=F(1, 5), z=F(1, 6))
        report = verify_heine(point, HALF_FLOAT)
        assert report.passed and report.max_deviation < 1e-20

    def test_heine_at_zero_argument(self):
        point = ParameterPoint(a=F(1, 3), b=F(1, 4), c=F(1, 5), z=0)
        assert verify_heine(point, HALF).passed

    def test_heine_b_equal_c(self):
        point = ParameterPoint(a=F(1, 3), b=F(1, 4), c=F(1, 4), z=F(1, 6))
        assert verify_heine(point, HALF).passed

    def test_heine_needs_nonzero_b(self):
        with pytest.raises(DomainViolation):
            verify_heine(ParameterPoint(a=F(1, 3), b=0, c=F(1, 5), z=F(1, 6)), HALF)


class TestRogers:
    def test_formal_documented_point(self):
        report = verify_rogers(ROGERS_BASE, 8, HALF)
        assert report.passed and report.max_deviation < 1e-9

    def test_formal_z_zero(self):
        assert verify_rogers(ROGERS_BASE.with_(z=0), 8, HALF).passed

    def test_precision_follows_cancellation(self):
        _, _, notes = rogers_formal_sides(ROGERS_BASE, 8, HALF)
        assert float(notes["rhs_cancellation"]) > 1e10
        assert notes["rhs_dps"] >= 30

    def test_cancellation_measure(self):
        assert cancellation(TPS([1, 1]), TPS([1, 1])) == 1
        assert cancellation(TPS([1, 1e-3]), TPS([1, 10])) == pytest.approx(1e4)

    def test_fxgen_documented_point(self):
        report = verify_fxgen(ROGERS_BASE.with_(a=0), 8, HALF)
        assert report.passed and "printed_yt_form_deviation" in report.notes

    def test_point_sides_at_the_origin(self):
        # Every Psi_n with n >= 1 vanishes at x = y = z = 0, so the left side is 1;
        # the right side is checked against a direct mpmath evaluation.
        point = ParameterPoint(a=0, x=0, y=0, z=0, t=F(1, 8), s=F(1, 3))
        lhs, rhs = rogers_point_sides(point, HALF_FLOAT)
        assert abs(lhs - 1) < 1e-25
        with mpmath.workdps(30):
            q, t, s = mp(F(1, 2)), mp(F(1, 8)), mp(F(1, 3))
            total = mpmath.nsum(lambda k: q ** k / (mpmath.qp(s * q / t, q, int(k))
                                                    * mpmath.qp(q, q, int(k))), [0, mpmath.inf])
            oracle = total / mpmath.qp(t / s, q)
            assert abs(rhs - oracle) < mpmath.mpf(10) ** -20

    def test_point_rejects_degenerate_lower(self):
        with pytest.raises(DomainViolation):
            rogers_point_sides(ROGERS_BASE.with_(t=F(1, 8)), HALF_FLOAT)

    def test_extended_documented_point_is_degenerate(self):
        # q omega / t = 1 there, so (q omega/t; q)_1 = 0.
        point = BASE.with_(x=F(1, 5), y=F(1, 7), z=F(1, 9), t=F(3, 10), s=F(1, 10), omega=F(6, 10))
        with pytest.raises((DomainViolation, InvalidLowerParameter)):
            extended_rogers_point_sides(point, HALF_FLOAT)

    def test_extended_left_side_is_truncation_stable(self):
        point = ROGERS_BASE.with_(t=F(3, 10), s=F(1, 10), omega=F(7, 10), x=F(1, 5))
        grouped, _ = extended_rogers_point_sides(point, HALF_FLOAT)
        literal, _ = extended_rogers_point_sides(point, HALF_FLOAT, trunc=(40, 40, 40))
        assert abs(grouped - literal) < 1e-15 * abs(grouped)

    def test_extended_at_zero_s_is_the_double_sum(self):
        point = ROGERS_BASE.with_(t=F(3, 10), omega=F(7, 10), s=None)
        report = verify_extended_rogers_at_zero_s(point, HALF)
        assert report.passed


class TestSrivastavaAgarwal:
    SA_POINT = ParameterPoint(a=F(1, 4), x=F(1, 5), y=F(1, 6), z=F(1, 7), mu=F(1, 8), nu=F(1))

    def test_documented_point_exact(self):
        report = verify_srivastava_agarwal(self.SA_POINT, 8, HALF)
        assert report.passed and report.max_deviation == 0

    def test_float_sums_the_n_series(self):
        report = verify_srivastava_agarwal(self.SA_POINT.with_(nu=F(1, 2)), 8, HALF_FLOAT)
        assert report.passed and report.max_deviation < 1e-20

    def test_mu_equal_nu_is_excluded(self):
        with pytest.raises(DomainViolation):
            sa_sides(self.SA_POINT.with_(mu=F(1)), 8, HALF)

    def test_nu_one_is_the_pochhammer_case(self):
        lam = F(1, 3)
        sa = sa_sides(self.SA_POINT.with_(mu=lam), 8, HALF)
        cs = csums_sides(self.SA_POINT.with_(lam=lam, mu=None, nu=None), 8, HALF)
        assert sa == cs

    def test_pochhammer_case_float_and_exact(self):
        point = BASE.with_(lam=F(1, 3))
        assert verify_csums(point, 8, HALF).max_deviation == 0
        assert verify_csums(point, 8, HALF_FLOAT).max_deviation < 1e-20

    def test_lam_one_is_excluded(self):
        with pytest.raises(DomainViolation):
            csums_sides(BASE.with_(lam=1), 8, HALF)

    def test_hahn_weighted(self):
        point = ParameterPoint(a=F(1, 3), x=F(1, 4), y=F(1, 5), lam=F(1, 3))
        assert verify_lums(point, 8, HALF_FLOAT).passed
        assert verify_dd1sums(point.with_(y=None), 8, HALF_FLOAT).passed

    def test_y_one_collapse_is_exact(self):
        point = ParameterPoint(a=F(1, 3), x=F(1, 4), lam=F(1, 3))
        report = verify_lums_collapse(point, 8, HALF_FLOAT)
        assert report.passed and report.max_deviation == 0

    def test_asc_documented_point(self):
        point = ParameterPoint(a=F(1, 3), lam=F(1, 4), x=F(1, 5))
        assert verify_asc_genfun(point, 10, HALF).max_deviation == 0

    def test_asc_at_x_zero_is_the_q_binomial_theorem(self):
        lam = F(1, 4)
        lhs, _ = asc_generating_sides(ParameterPoint(a=F(1, 3), lam=lam, x=0), 10, HALF)
        assert lhs == fps_qprod_infinite(lam, 10, HALF) * fps_qprod_reciprocal(1, 10, HALF)

    def test_asc_at_lam_zero_is_the_plain_generating_function(self):
        # sum Phi_n^{(a)}(x) t^n/(q)_n = (a x t)_inf / ((t)_inf (x t)_inf)
        a, x = F(1, 3), F(1, 5)
        lhs, rhs = asc_generating_sides(ParameterPoint(a=a, lam=0, x=x), 10, HALF)
        plain = (fps_qprod_infinite(a * x, 10, HALF) * fps_qprod_reciprocal(1, 10, HALF)
                 * fps_qprod_reciprocal(x, 10, HALF))
        assert lhs == rhs == plain

    def test_asc_coefficients_are_the_polynomials(self):
        lhs, _ = asc_generating_sides(ParameterPoint(a=F(1, 3), lam=0, x=F(2)), 3, HALF)
        assert lhs[1] * qpoch_finite(HALF.q, 1, HALF) == al_salam_carlitz(1, F(1, 3), F(2), HALF)


class TestStructural:
    def test_theta_eigen_documented_point(self):
        report = verify_theta_eigen(ParameterPoint(x=F(1), y=F(1, 4), t=F(1, 5)), HALF)
        assert report.passed

    @pytest.mark.parametrize("dps,tail_tol", [(None, 1e-15), (30, 1e-27)])
    def test_theta_eigen_is_judged_by_tail_tol(self, dps, tail_tol):
        ctx = QContext.floating(F(1, 2), dps=dps)
        report = verify_theta_eigen(ParameterPoint(x=F(1), y=F(1, 4), t=F(1, 5)), ctx)
        assert report.tolerance == ctx.tail_tol == pytest.approx(tail_tol)
        assert report.passed

    def test_qde_extended_kernel(self):
        point = BASE.with_(t=F(1, 3))
        residual = qde_relative_residual(kernel_f(point, 1, HALF_FLOAT), point, HALF_FLOAT)
        assert residual <= 1e-10

    def test_qde_double_sum_kernel_at_the_rogers_point(self):
        # The documented t = 1/8 with s = 1/4 makes s q / t = 1, so t moves to 1/10.
        point = ROGERS_BASE.with_(t=F(1, 10))
        residual = qde_relative_residual(kernel_g(point, HALF_FLOAT), point, HALF_FLOAT)
        assert residual <= 1e-8

    def test_kernel_with_vanishing_prefactor_is_rejected(self):
        # t/s = 2 = q^{-1} at q = 1/2 puts a zero factor in (t/s; q)_inf.
        point = ROGERS_BASE.with_(t=F(1, 2))
        with pytest.raises(DomainViolation):
            kernel_g(point, HALF_FLOAT)

    @pytest.mark.parametrize("which", ["F", "G", "H", "HP"])
    def test_qde_at_z_zero(self, which):
        point = ParameterPoint(a=F(1, 3), x=F(1, 4), y=F(1, 5), z=0, t=F(1, 3), s=F(1, 5),
                               omega=F(1, 2), mu=F(1, 7), nu=F(1, 2))
        assert verify_qde_solutions(which, point, HALF).max_deviation == 0


class TestMonotoneTruncation:
    def test_generating_orders(self):
        for order in (4, 8, 12):
            assert verify_generating(BASE, order, HALF_FLOAT).passed

    def test_rogers_orders(self):
        verdicts = [verify_rogers(ROGERS_BASE, order, HALF).passed for order in (4, 6, 8, 10)]
        assert all(verdicts)

    def test_extended_rogers_left_side_converges(self):
        point = ROGERS_BASE.with_(t=F(3, 10), s=F(1, 10), omega=F(7, 10))
        limit, _ = extended_rogers_point_sides(point, HALF_FLOAT)
        errors = [abs(extended_rogers_point_sides(point, HALF_FLOAT, (n, n, n))[0] - limit)
                  for n in (5, 10, 20, 40)]
        assert all(b <= 2 * a + 1e-25 for a, b in zip(errors, errors[1:]))

    def test_heine_tightening_tail(self):
        point = ParameterPoint(a=F(1, 3), b=F(1, 4), c=F(1, 5), z=F(1, 6))
        devs = [verify_heine(point, QContext.floating(F(1, 2), tail_tol=tol)).max_deviation
                for tol in (1e-6, 1e-10, 1e-14)]
        assert all(b <= max(2 * a, 1e-15) for a, b in zip(devs, devs[1:]))


class TestCatalogue:
    def test_ids_unique_and_lookup(self):
        ids = [info.id for info in CATALOGUE]
        assert len(ids) == len(set(ids)) == len(BY_ID)
        assert get_identity("chu_vandermonde") is BY_ID["CHU_VANDERMONDE"]
        with pytest.raises(KeyError):
            get_identity("nope")

    def test_describe_is_json(self):
        json.dumps([info.describe() for info in CATALOGUE])

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 10 ** 6))
    def test_sampled_points_respect_constraints(self, seed):
        rng = random.Random(seed)
        for info in CATALOGUE:
            q, point = sample_point(info, rng)
            assert 0 < q < 1
            for constraint in info.constraints:
                assert float(constraint.magnitude(point)) < 1 - 0.1

    def test_impossible_constraint_exhausts(self):
        info = IdentityInfo("NEVER", "unsatisfiable", ("x",), "|x/x| < 1", (Mode.EXACT,),
                            CATALOGUE[0].check, lambda p, o, c: None,
                            constraints=(Constraint("|x/x| < 1", abs_of("x", divide=("x",))),))
        with pytest.raises(SamplingExhausted):
            sample_point(info, random.Random(0))

    def test_runs_are_reproducible_and_independent_of_selection(self):
        info = BY_ID["SA"]
        first = [r.params for r in run_identity(info, seed=7, points=3)]
        second = [r.params for r in run_identity(info, seed=7, points=3)]
        assert first == second
        assert first != [r.params for r in run_identity(info, seed=8, points=3)]

    def test_float_only_identity_runs_in_float(self):
        reports = run_identity(BY_ID["HEINE"], mode=Mode.EXACT, points=2, seed=1, dps=30)
        assert all(r.arithmetic is Mode.FLOAT for r in reports)

    def test_tolerance_override_applies_to_float(self):
        reports = run_identity(BY_ID["HEINE"], mode=Mode.FLOAT, points=2, seed=1, dps=30,
                               tolerance=0.0)
        assert all(r.tolerance == 0.0 for r in reports)

    def test_errors_are_qseries_errors(self):
        assert issubclass(SamplingExhausted, QSeriesError)

"""Truncated power series arithmetic and the q-product expansions in t."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhahn.errors import InexactOperation
from qhahn.fps import (TPS, fps_eval, fps_linear, fps_mul, fps_phi_in_t, fps_phi_series,
                       fps_qpoch, fps_qprod_infinite, fps_qprod_reciprocal, fps_sum)
from qhahn.qcore import PhiSpec, QContext, phi, qpoch_finite, qpoch_infinite
from strategies import Q_BASES, rationals, small_rationals

F = Fraction

series = st.lists(rationals(), min_size=1, max_size=8).map(TPS)


def convolution_oracle(f, g):
    n = min(len(f), len(g))
    return [sum(f[i] * g[k - i] for i in range(k + 1)) for k in range(n)]


class TestArithmetic:
    def test_difference_of_squares(self):
        one_plus = TPS([1, 1, 0])
        one_minus = TPS([1, -1, 0])
        assert (one_plus * one_minus).coeffs == (1, 0, -1)

    def test_mixed_orders_truncate_to_shorter(self):
        assert (TPS([1, 2, 3]) + TPS([1, 1])).coeffs == (2, 3)

    @given(f=series, g=series)
    def test_product_matches_convolution(self, f, g):
        assert list(fps_mul(f, g).coeffs) == convolution_oracle(f, g)

    @given(f=series, g=series, h=series)
    def test_ring_laws(self, f, g, h):
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h

    @given(f=series)
    def test_reciprocal(self, f):
        if f[0] == 0:
            with pytest.raises(ZeroDivisionError):
                f.reciprocal()
            return
        assert f * f.reciprocal() == TPS.constant(F(1), f.order)

    def test_shift_and_dilate(self):
        f = TPS([1, 2, 3])
        assert f.shift(2).coeffs == (0, 0, 1, 2, 3)
        assert f.dilate(F(1, 2)).coeffs == (1, 1, F(3, 4))

    def test_evaluation(self):
        assert fps_eval(TPS.constant(F(1), 4), F(9)) == 1
        assert TPS([1, 1, 1])(F(1, 2)) == F(7, 4)

    def test_linear(self):
        assert fps_linear(F(1), F(2), 3).coeffs == (1, 2, 0, 0)
        assert fps_linear(F(1), F(2), 0).coeffs == (1,)


class TestQProducts:
    def test_constant_cases(self):
        ctx = QContext.exact(F(1, 2))
        assert fps_qprod_infinite(0, 5, ctx) == TPS.constant(F(1), 5)
        assert fps_qprod_reciprocal(0, 5, ctx) == TPS.constant(F(1), 5)

    def test_infinite_product_coefficients(self):
        ctx = QContext.exact(F(1, 2))
        assert fps_qprod_infinite(1, 2, ctx).coeffs == (1, -2, F(4, 3))

    def test_reciprocal_first_coefficient(self):
        ctx = QContext.exact(F(1, 2))
        assert fps_qprod_reciprocal(1, 1, ctx)[1] == 2

    @given(c=rationals(), q=Q_BASES)
    def test_euler_pair_is_inverse(self, c, q):
        ctx = QContext.exact(q)
        product = fps_qprod_infinite(c, 12, ctx) * fps_qprod_reciprocal(c, 12, ctx)
        assert product == TPS.constant(F(1), 12)

    @given(c=rationals(), q=Q_BASES)
    def test_functional_equation(self, c, q):
        # (c t; q)_inf = (1 - c t) (c q t; q)_inf, an oracle independent of the coefficient formula.
        ctx = QContext.exact(q)
        f = fps_qprod_infinite(c, 10, ctx)
        assert f == fps_linear(F(1), -c, 10) * f.dilate(q)

    def test_reciprocal_agrees_with_numeric_product(self):
        ctx = QContext.floating(0.5)
        value = fps_eval(fps_qprod_reciprocal(1, 30, ctx), 0.1)
        assert abs(value - 1 / qpoch_infinite(0.1, ctx)) < 1e-10

    @given(c=rationals(), n=st.integers(0, 6), q=Q_BASES, t0=small_rationals())
    def test_series_pochhammer_evaluates_pointwise(self, c, n, q, t0):
        ctx = QContext.exact(q)
        u = fps_linear(F(1, 3), c, n)
        # (u(t); q)_n is a polynomial of degree n in t, so order n loses nothing.
        assert fps_qpoch(u, n, ctx)(t0) == qpoch_finite(F(1, 3) + c * t0, n, ctx)


class TestPhiInT:
    def test_zero_argument(self):
        ctx = QContext.exact(F(1, 2))
        assert fps_phi_in_t([F(1, 3)], [0], 0, 6, ctx) == TPS.constant(F(1), 6)

    def test_one_phi_one_coefficient(self):
        ctx = QContext.exact(F(1, 2))
        assert fps_phi_in_t([F(1, 4)], [0], 1, 2, ctx).coeffs[:2] == (1, F(-3, 2))

    @settings(deadline=None)
    @given(a=small_rationals(), c=small_rationals(), t0=small_rationals())
    def test_evaluates_to_phi(self, a, c, t0):
        ctx = QContext.floating(F(1, 2), dps=30)
        value = fps_phi_in_t([a], [0], c, 60, ctx)(ctx.num(t0))
        assert abs(value - phi(PhiSpec([a], [0], ctx.num(c) * ctx.num(t0)), ctx)) < 1e-20

    def test_series_parameters_exact_when_argument_is_order_t(self):
        ctx = QContext.exact(F(1, 2))
        zero = F(0)
        got = fps_phi_series([F(1, 3)], [], fps_linear(zero, F(1, 5), 8), 8, ctx)
        assert got == fps_phi_in_t([F(1, 3)], [], F(1, 5), 8, ctx)

    def test_infinite_series_refused_in_exact(self):
        ctx = QContext.exact(F(1, 2))
        with pytest.raises(InexactOperation):
            fps_phi_series([fps_linear(F(0), F(1), 3)], [], F(1, 2), 3, ctx)

    def test_float_series_parameters(self):
        # 1phi0(a t; -; q, z) = (a z t; q)_inf / (z; q)_inf, coefficient-wise in t.
        ctx = QContext.floating(F(1, 2), dps=30)
        a, z = ctx.num(F(1, 3)), ctx.num(F(1, 4))
        got = fps_phi_series([fps_linear(ctx.num(0), a, 6)], [], z, 6, ctx)
        want = fps_qprod_infinite(a * z, 6, ctx) * (1 / qpoch_infinite(z, ctx))
        assert max(abs(g - w) for g, w in zip(got, want)) < 1e-25


class TestSum:
    def test_finite_limit(self):
        ctx = QContext.exact(F(1, 2))
        total = fps_sum(lambda n: TPS.monomial(F(1), n, 4), ctx, limit=5)
        assert total == TPS([1, 1, 1, 1, 1])

    def test_geometric_sum(self):
        ctx = QContext.floating(0.5)
        total = fps_sum(lambda n: TPS.constant(0.5 ** n, 2), ctx)
        assert abs(total[0] - 2) < 1e-13

    def test_infinite_sum_refused_in_exact(self):
        with pytest.raises(InexactOperation):
            fps_sum(lambda n: TPS.constant(F(1, 2) ** n, 2), QContext.exact(F(1, 2)))

"""Generating functions whose coefficients carry a Pochhammer or Cauchy weight.

Each right side below is a series in t.  Where it is an infinite sum of
t-series with a fixed numeric ratio (powers of mu/nu or lambda), float mode
sums it literally to a tail estimate.  In exact mode the sum over n of

    (mu/nu)^n q^{n j} / (q; q)_n = 1 / ((mu/nu) q^j; q)_inf

is taken in closed form, which turns the t^j coefficient into a finite
rational expression.
"""

from __future__ import annotations

from ..errors import DomainViolation
from ..fps import (TPS, fps_linear, fps_phi_in_t, fps_phi_series, fps_qpoch, fps_qprod_infinite,
                   fps_qprod_reciprocal, fps_sum)
from ..polynomials import al_salam_carlitz, cauchy_p, psi_scaled
from ..qcore import ParameterPoint, QContext, qpoch_finite, qpoch_infinite
from .base import FLOAT_COEFF_TOL, CheckMode, Timer, finish, merge_reports, series_deviations
from .generating import cauchy_kernel_series


def _psi_weighted_lhs(a, x, y, z, weights, order: int, ctx: QContext) -> TPS:
    q = ctx.q
    return TPS(psi_scaled(n, a, x, y, z, ctx) * weights(n) / qpoch_finite(q, n, ctx)
               for n in range(order + 1))


def _kernel_phi(a, x, y, z, order: int, ctx: QContext) -> TPS:
    """B(t) = (x t)_inf / (y t)_inf 1phi1(a; 0; q, z t)."""
    return cauchy_kernel_series(x, y, order, ctx) * fps_phi_in_t([a], [0], z, order, ctx)


def _ratio_sum(block: TPS, ratio, scale, order: int, ctx: QContext) -> TPS:
    """(ratio; q)_inf sum_n B(scale t q^n) ratio^n / (q; q)_n.

    Exact mode uses the closed form coefficient b_j scale^j (ratio; q)_j.
    """
    q = ctx.q
    if ctx.is_exact:
        return TPS(block[j] * scale ** j * qpoch_finite(ratio, j, ctx) for j in range(order + 1))
    series = fps_sum(lambda n: block.dilate(scale * q ** n) * (ratio ** n / qpoch_finite(q, n, ctx)),
                     ctx, min_terms=4)
    return series * qpoch_infinite(ratio, ctx)


def sa_sides(point: ParameterPoint, order: int, ctx: QContext):
    """Cauchy-weighted sum against (mu/nu)_inf sum_n B(nu t q^n) (mu/nu)^n / (q)_n."""
    a, x, y, z, mu, nu = point.values(("a", "x", "y", "z", "mu", "nu"), ctx)
    if nu == 0:
        raise DomainViolation("nu = 0 leaves mu/nu undefined")
    if mu == nu:
        raise DomainViolation("mu = nu makes (mu/nu; q)_inf vanish")
    lhs = _psi_weighted_lhs(a, x, y, z, lambda n: cauchy_p(n, nu, mu, ctx), order, ctx)
    rhs = _ratio_sum(_kernel_phi(a, x, y, z, order, ctx), mu / nu, nu, order, ctx)
    return lhs, rhs


def verify_srivastava_agarwal(point: ParameterPoint, order: int, ctx: QContext):
    timer = Timer()
    lhs, rhs = sa_sides(point, order, ctx)
    return finish("SA", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer)


def csums_sides(point: ParameterPoint, order: int, ctx: QContext):
    """(lam)_n-weighted sum against (lam, x t)_inf/(y t)_inf sum (y t)_n lam^n/(x t, q)_n 1phi1.

    Float mode builds the right side in the displayed form with the finite
    products (y t; q)_n / (x t; q)_n expanded in t.
    """
    a, x, y, z, lam = point.values(("a", "x", "y", "z", "lam"), ctx)
    if lam == 1:
        raise DomainViolation("lam = 1 makes (lam; q)_inf vanish")
    q = ctx.q
    lhs = _psi_weighted_lhs(a, x, y, z, lambda n: qpoch_finite(lam, n, ctx), order, ctx)
    if ctx.is_exact:
        return lhs, _ratio_sum(_kernel_phi(a, x, y, z, order, ctx), lam, 1, order, ctx)
    zero = ctx.num(0)
    xt, yt = fps_linear(zero, x, order), fps_linear(zero, y, order)

    def term(n: int) -> TPS:
        ratio = fps_qpoch(yt, n, ctx) / fps_qpoch(xt, n, ctx)
        return ratio * fps_phi_in_t([a], [0], z * q ** n, order, ctx) * (
            lam ** n / qpoch_finite(q, n, ctx))

    inner = fps_sum(term, ctx, min_terms=4)
    rhs = cauchy_kernel_series(x, y, order, ctx) * inner * qpoch_infinite(lam, ctx)
    return lhs, rhs


def verify_csums(point: ParameterPoint, order: int, ctx: QContext):
    timer = Timer()
    lhs, rhs = csums_sides(point, order, ctx)
    return finish("SA_1CSUMS", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer)


def _hahn_rhs(a, x, w, lam, order: int, ctx: QContext) -> TPS:
    """(lam, x t, w t)_inf / (a x t)_inf 3phi2(a x t, 0, 0; x t, w t; q, lam)."""
    if ctx.is_exact:
        raise ValueError("the 3phi2 in lambda is summed in float mode only")
    zero = ctx.num(0)
    axt, xt, wt = (fps_linear(zero, v, order) for v in (a * x, x, w))
    series = fps_phi_series([axt, zero, zero], [xt, wt], lam, order, ctx)
    prefactor = (fps_qprod_infinite(x, order, ctx) * fps_qprod_infinite(w, order, ctx)
                 * fps_qprod_reciprocal(a * x, order, ctx))
    return prefactor * series * qpoch_infinite(lam, ctx)


def lums_sides(point: ParameterPoint, order: int, ctx: QContext):
    """Second Hahn polynomials psi_n^{(a)}(x, y) weighted by (lam)_n."""
    a, x, y, lam = point.values(("a", "x", "y", "lam"), ctx)
    if lam == 1:
        raise DomainViolation("lam = 1 makes (lam; q)_inf vanish")
    zero = ctx.num(0)
    lhs = _psi_weighted_lhs(zero, x, a * x, y, lambda n: qpoch_finite(lam, n, ctx), order, ctx)
    return lhs, _hahn_rhs(a, x, y, lam, order, ctx)


def dd1sums_sides(point: ParameterPoint, order: int, ctx: QContext):
    """Hahn polynomials psi_n^{(a)}(x) weighted by (lam)_n."""
    a, x, lam = point.values(("a", "x", "lam"), ctx)
    if lam == 1:
        raise DomainViolation("lam = 1 makes (lam; q)_inf vanish")
    zero, one = ctx.num(0), ctx.num(1)
    lhs = _psi_weighted_lhs(zero, x, a * x, one, lambda n: qpoch_finite(lam, n, ctx), order, ctx)
    return lhs, _hahn_rhs(a, x, one, lam, order, ctx)


def verify_lums(point: ParameterPoint, order: int, ctx: QContext):
    timer = Timer()
    lhs, rhs = lums_sides(point, order, ctx)
    return finish("LUMS", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer)


def verify_dd1sums(point: ParameterPoint, order: int, ctx: QContext):
    timer = Timer()
    lhs, rhs = dd1sums_sides(point, order, ctx)
    return finish("DD1SUMS", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer)


def verify_lums_collapse(point: ParameterPoint, order: int, ctx: QContext):
    """Second-Hahn sides at y = 1 against the Hahn sides: required to agree exactly."""
    timer = Timer()
    left = lums_sides(point.with_(y=1), order, ctx)
    right = dd1sums_sides(point.with_(y=None), order, ctx)
    deviations = series_deviations(left[0], right[0], ctx) + series_deviations(left[1], right[1], ctx)
    return finish("LUMS_Y1", CheckMode.COEFFICIENT, ctx, point, deviations, 0.0, timer)


def verify_sa_corollaries(point: ParameterPoint, order: int, ctx: QContext):
    """Both Hahn-weighted generating functions plus the y = 1 collapse at one point."""
    reports = [verify_lums(point, order, ctx),
               verify_dd1sums(point.with_(y=None), order, ctx),
               verify_lums_collapse(point, order, ctx)]
    return merge_reports("SA_COROLLARIES", reports)


def asc_generating_sides(point: ParameterPoint, order: int, ctx: QContext):
    """sum Phi_n^{(a)}(x) (lam)_n t^n/(q)_n against (lam t)_inf/(t)_inf 2phi1(lam, a; lam t; q, x t)."""
    a, lam, x = point.values(("a", "lam", "x"), ctx)
    q = ctx.q
    zero, one = ctx.num(0), ctx.num(1)
    lhs = TPS(al_salam_carlitz(n, a, x, ctx) * qpoch_finite(lam, n, ctx) / qpoch_finite(q, n, ctx)
              for n in range(order + 1))
    series = fps_phi_series([lam, a], [fps_linear(zero, lam, order)],
                            fps_linear(zero, x, order), order, ctx)
    prefactor = fps_qprod_infinite(lam, order, ctx) * fps_qprod_reciprocal(one, order, ctx)
    return lhs, prefactor * series


def verify_asc_genfun(point: ParameterPoint, order: int, ctx: QContext):
    timer = Timer()
    lhs, rhs = asc_generating_sides(point, order, ctx)
    return finish("ASC_GEN", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer)

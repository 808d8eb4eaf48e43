"""Single-variable generating functions checked coefficient by coefficient in t.

Every side here is a formal power series in t whose coefficients are
rational when q and the parameters are, so in exact mode the comparison is
an equality of Fractions.  Each ``*_sides`` function returns (lhs, rhs) so
that specializations can be compared side against side.
"""

from __future__ import annotations

from ..errors import DomainViolation
from ..fps import (TPS, fps_linear, fps_phi_in_t, fps_phi_series, fps_qpoch,
                   fps_qprod_infinite, fps_qprod_reciprocal)
from ..polynomials import cauchy_p, psi_scaled
from ..qcore import ParameterPoint, QContext, qpoch_finite
from .base import FLOAT_COEFF_TOL, CheckMode, Timer, finish, merge_reports, series_deviations


def cauchy_kernel_series(x, y, order: int, ctx: QContext) -> TPS:
    """(x t; q)_inf / (y t; q)_inf as a series in t."""
    return fps_qprod_infinite(x, order, ctx) * fps_qprod_reciprocal(y, order, ctx)


def psi_generating_coeffs(a, x, y, z, order: int, ctx: QContext, shift: int = 0) -> TPS:
    """sum_n (-1)^{n+k} q^{C(n+k,2)} Psi_{n+k} t^n / (q;q)_n with k = shift."""
    q = ctx.q
    return TPS(psi_scaled(n + shift, a, x, y, z, ctx) / qpoch_finite(q, n, ctx)
               for n in range(order + 1))


def generating_sides(point: ParameterPoint, order: int, ctx: QContext):
    a, x, y, z = point.values(("a", "x", "y", "z"), ctx)
    lhs = psi_generating_coeffs(a, x, y, z, order, ctx)
    rhs = cauchy_kernel_series(x, y, order, ctx) * fps_phi_in_t([a], [0], z, order, ctx)
    return lhs, rhs


def verify_generating(point: ParameterPoint, order: int, ctx: QContext):
    """Generating function of Psi_n against kernel times 1phi1(a; 0; q, z t)."""
    timer = Timer()
    lhs, rhs = generating_sides(point, order, ctx)
    return finish("GEN", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer)


def extended_generating_sides(point: ParameterPoint, k: int, order: int, ctx: QContext):
    """Both sides multiplied by t^k, so the Laurent prefactor t^{-k} disappears.

    The returned series have order ``order + k``; the first k coefficients
    of the right side must vanish.
    """
    if k < 0:
        raise DomainViolation("k must be nonnegative")
    a, x, y, z = point.values(("a", "x", "y", "z"), ctx)
    q = ctx.q
    big = order + k
    lhs = psi_generating_coeffs(a, x, y, z, order, ctx, shift=k).shift(k)
    yt = fps_linear(ctx.num(0), y, big)
    xt = fps_linear(ctx.num(0), x, big)
    inner = TPS.constant(ctx.num(0), big)
    qk = q ** (-k)
    for n in range(k + 1):
        weight = qpoch_finite(qk, n, ctx) * q ** n / qpoch_finite(q, n, ctx)
        term = fps_qpoch(yt, n, ctx) / fps_qpoch(xt, n, ctx)
        inner = inner + term * fps_phi_in_t([a], [0], z * q ** n, big, ctx) * weight
    rhs = cauchy_kernel_series(x, y, big, ctx) * inner
    return lhs, rhs


def verify_extended_generating(point: ParameterPoint, k: int, order: int, ctx: QContext):
    timer = Timer()
    lhs, rhs = extended_generating_sides(point, k, order, ctx)
    return finish("EXT_GEN", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer, {"k": k})


def dgen_sides(point: ParameterPoint, k: int, order: int, ctx: QContext):
    """a = 0 form: (x t, z t)_inf / (y t)_inf 3phi2(q^{-k}, y t, 0; x t, z t; q, q)."""
    x, y, z = point.values(("x", "y", "z"), ctx)
    q = ctx.q
    big = order + k
    zero = ctx.num(0)
    lhs = psi_generating_coeffs(zero, x, y, z, order, ctx, shift=k).shift(k)
    xt, yt, zt = (fps_linear(zero, v, big) for v in (x, y, z))
    series = fps_phi_series([q ** (-k), yt, zero], [xt, zt], q, big, ctx)
    rhs = cauchy_kernel_series(x, y, big, ctx) * fps_qprod_infinite(z, big, ctx) * series
    return lhs, rhs


def verify_dgen(point: ParameterPoint, k: int, order: int, ctx: QContext):
    timer = Timer()
    lhs, rhs = dgen_sides(point, k, order, ctx)
    return finish("DGEN", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer, {"k": k})


def run_extended_generating(point: ParameterPoint, order: int, ctx: QContext, ks=(0, 1, 2, 3)):
    return merge_reports("EXT_GEN", [verify_extended_generating(point, k, order, ctx) for k in ks],
                         {"k": list(ks)})


def run_dgen(point: ParameterPoint, order: int, ctx: QContext, ks=(0, 1, 2, 3)):
    return merge_reports("DGEN", [verify_dgen(point, k, order, ctx) for k in ks],
                         {"k": list(ks)})


def cauchy_generating_sides(point: ParameterPoint, order: int, ctx: QContext):
    """sum p_n(x, y) t^n / (q;q)_n against (y t)_inf / (x t)_inf."""
    x, y = point.values(("x", "y"), ctx)
    lhs = TPS(cauchy_p(n, x, y, ctx) / qpoch_finite(ctx.q, n, ctx) for n in range(order + 1))
    rhs = fps_qprod_infinite(y, order, ctx) * fps_qprod_reciprocal(x, order, ctx)
    return lhs, rhs


def verify_cauchy_generating(point: ParameterPoint, order: int, ctx: QContext):
    timer = Timer()
    lhs, rhs = cauchy_generating_sides(point, order, ctx)
    return finish("CAUCHY_GEN", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer)


def srivas_sides(point: ParameterPoint, order: int, ctx: QContext):
    """sum p_n(x, y) (lam)_n t^n / (q;q)_n against 2phi1(lam, y/x; 0; q, x t)."""
    lam, x, y = point.values(("lam", "x", "y"), ctx)
    if x == 0:
        raise DomainViolation("x = 0 makes y/x undefined")
    q = ctx.q
    lhs = TPS(cauchy_p(n, x, y, ctx) * qpoch_finite(lam, n, ctx) / qpoch_finite(q, n, ctx)
              for n in range(order + 1))
    rhs = fps_phi_in_t([lam, y / x], [0], x, order, ctx)
    return lhs, rhs


def verify_srivas(point: ParameterPoint, order: int, ctx: QContext):
    timer = Timer()
    lhs, rhs = srivas_sides(point, order, ctx)
    return finish("SRIVAS", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer)


def qbinomial_theorem_sides(point: ParameterPoint, order: int, ctx: QContext):
    """sum (a)_k (z t)^k / (q)_k against (a z t)_inf / (z t)_inf."""
    a, z = point.values(("a", "z"), ctx)
    q = ctx.q
    lhs = TPS(qpoch_finite(a, k, ctx) * z ** k / qpoch_finite(q, k, ctx) for k in range(order + 1))
    rhs = fps_qprod_infinite(a * z, order, ctx) * fps_qprod_reciprocal(z, order, ctx)
    return lhs, rhs


def verify_qbinomial_theorem(point: ParameterPoint, order: int, ctx: QContext):
    timer = Timer()
    lhs, rhs = qbinomial_theorem_sides(point, order, ctx)
    return finish("QBINOMIAL_THM", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer)


def euler_pair_sides(point: ParameterPoint, order: int, ctx: QContext):
    """(z t)_inf times 1/(z t)_inf, from the two Euler expansions, against 1."""
    z = point.get("z", ctx)
    lhs = fps_qprod_infinite(z, order, ctx) * fps_qprod_reciprocal(z, order, ctx)
    return lhs, TPS.constant(ctx.num(1), order)


def verify_euler_pair(point: ParameterPoint, order: int, ctx: QContext):
    timer = Timer()
    lhs, rhs = euler_pair_sides(point, order, ctx)
    return finish("EULER_PAIR", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer)

"""Rogers-type double and triple generating functions.

The double-sum formula is checked as an identity of formal power series in t
with s held at a number: the factor 1/(s q / t; q)_k is expanded about t = 0,

    1/(s q/t; q)_k = (-t/s)^k q^{-k(k+1)/2} prod_{i=1..k} 1/(1 - t q^{-i}/s),

so only k <= n reaches t^n and each right-side coefficient is a finite sum.
Those sums cancel heavily (the terms exceed the result by many orders of
magnitude), so the right side is evaluated in mpmath at a precision chosen
from the measured cancellation.

The triple-sum formula and the plain analytic evaluation of the double sum
are point checks at numeric (t, s, omega).
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

from ..errors import DomainViolation
from ..fps import TPS, fps_linear, fps_qpoch, fps_qprod_reciprocal
from ..polynomials import psi_scaled
from ..qcore import (ParameterPoint, PhiSpec, QContext, phi, qpoch_finite, qpoch_infinite,
                     sum_series)
from .base import (FLOAT_COEFF_TOL, POINT_TOL, CheckMode, Timer, finish, float_context,
                   reject_lower, scalar_deviation, series_deviations)

# Working precision before the cancellation is known, and the number of
# digits kept beyond the measured cancellation.
BASE_DPS = 30
GUARD_DIGITS = 20
# Absolute target for the auxiliary sums, far below every comparison tolerance.
AUX_TOL = 1e-22
SPECIALIZATION_TOL = 2e-8
MAX_PRECISION_ROUNDS = 6


class PsiTable:
    """Cached c_N = (-1)^N q^{C(N,2)} Psi_N^{(a)}(x, y, z) at a fixed point."""

    def __init__(self, a, x, y, z, ctx: QContext):
        self._args = (a, x, y, z)
        self._ctx = ctx
        self._values = []
        self._qpoch = [ctx.num(1)]

    def __call__(self, n: int):
        while len(self._values) <= n:
            self._values.append(psi_scaled(len(self._values), *self._args, self._ctx))
        return self._values[n]

    def qpoch(self, n: int):
        """(q; q)_n, cached alongside."""
        q = self._ctx.q
        while len(self._qpoch) <= n:
            m = len(self._qpoch)
            self._qpoch.append(self._qpoch[-1] * (1 - q ** m))
        return self._qpoch[n]


def _abs_series(f: TPS) -> TPS:
    return TPS(abs(c) for c in f.coeffs)


def reciprocal_lower_series(s, order: int, ctx: QContext) -> list:
    """[1/(s q/t; q)_k as a series in t for k = 0..order], with |.| majorants."""
    one = ctx.num(1)
    current = TPS.constant(one, order)
    current_abs = current
    out = [(current, current_abs)]
    q = ctx.q
    for i in range(1, order + 1):
        u = 1 / (s * q ** i)
        geom = TPS(u ** j for j in range(order + 1))
        current = (current * geom).shift(1).truncate(order) * (-u)
        current_abs = (current_abs * _abs_series(geom)).shift(1).truncate(order) * abs(u)
        out.append((current, current_abs))
    return out


def _formal_k_sum(weights: Sequence, s, order: int, ctx: QContext):
    """sum_k w_k / (s q/t; q)_k times 1/(t/s; q)_inf, with its |.| majorant."""
    zero = TPS.constant(ctx.num(0), order)
    inner, inner_abs = zero, zero
    for (r_k, r_abs), w in zip(reciprocal_lower_series(s, order, ctx), weights):
        inner = inner + r_k * w
        w_abs = _abs_series(w) if isinstance(w, TPS) else abs(w)
        inner_abs = inner_abs + r_abs * w_abs
    prefactor = fps_qprod_reciprocal(1 / s, order, ctx)
    return inner * prefactor, inner_abs * _abs_series(prefactor)


def cancellation(series: TPS, majorant: TPS) -> float:
    """Largest ratio of summed magnitudes to result over the coefficients."""
    top = max(float(abs(c)) for c in series.coeffs)
    worst = 1.0
    for c, m in zip(series.coeffs, majorant.coeffs):
        scale = max(float(abs(c)), 1e-6 * top)
        if scale > 0:
            worst = max(worst, float(m) / scale)
    return worst


def rogers_formal_lhs(point: ParameterPoint, order: int, ctx: QContext) -> TPS:
    """coeff of t^n: sum_m c_{n+m} s^m / ((q;q)_n (q;q)_m), m-sum to tail estimate."""
    a, x, y, z, s = point.values(("a", "x", "y", "z", "s"), ctx)
    table = PsiTable(a, x, y, z, ctx)
    coeffs = []
    for n in range(order + 1):
        total = sum_series(lambda m: table(n + m) * s ** m / table.qpoch(m), ctx,
                           min_terms=4, tol=AUX_TOL)
        coeffs.append(total.value / table.qpoch(n))
    return TPS(coeffs)


def _rogers_weights(point: ParameterPoint, order: int, ctx: QContext, a_value=None):
    a, x, y, z, s = point.values(("a", "x", "y", "z", "s"), ctx)
    if a_value is not None:
        a = ctx.num(a_value)
    q = ctx.q
    weights = []
    for k in range(order + 1):
        w = qpoch_finite(y * s, k, ctx) * q ** k / (
            qpoch_finite(x * s, k, ctx) * qpoch_finite(q, k, ctx))
        weights.append(w * phi(PhiSpec([a], [0], z * s * q ** k), ctx))
    return weights


def rogers_formal_rhs(point: ParameterPoint, order: int, ctx: QContext):
    """Right side as a series in t, and the cancellation met while summing it."""
    x, y, s = point.values(("x", "y", "s"), ctx)
    if s == 0:
        raise DomainViolation("s = 0 leaves t/s undefined")
    reject_lower(x * s, ctx, "xs")
    series, majorant = _formal_k_sum(_rogers_weights(point, order, ctx), s, order, ctx)
    kernel = qpoch_infinite(x * s, ctx) / qpoch_infinite(y * s, ctx)
    return series * kernel, cancellation(series, majorant)


def _adaptive(build, ctx: QContext, base_dps: int):
    """Run build(ctx') at base_dps, raising the precision until it covers the cancellation.

    A result swamped by rounding noise looks larger than it is, which makes
    the measured cancellation an underestimate, so one retry is not enough.
    """
    work = float_context(ctx, base_dps)
    result, cancel = build(work)
    for _ in range(MAX_PRECISION_ROUNDS):
        needed = math.ceil(math.log10(cancel)) + GUARD_DIGITS
        if needed <= work.dps:
            break
        work = float_context(ctx, needed)
        result, cancel = build(work)
    return result, cancel, work.dps


def rogers_formal_sides(point: ParameterPoint, order: int, ctx: QContext,
                        base_dps: int = BASE_DPS):
    rhs, cancel, dps = _adaptive(lambda c: rogers_formal_rhs(point, order, c), ctx, base_dps)
    lhs = rogers_formal_lhs(point, order, float_context(ctx, base_dps))
    return lhs, rhs, {"rhs_dps": dps, "rhs_cancellation": f"{cancel:.3g}"}


def verify_rogers(point: ParameterPoint, order: int, ctx: QContext, base_dps: int = BASE_DPS):
    """Double-sum Rogers formula, coefficient by coefficient in t at fixed s."""
    timer = Timer()
    lhs, rhs, notes = rogers_formal_sides(point, order, ctx, base_dps)
    work = float_context(ctx, base_dps)
    return finish("ROGERS", CheckMode.COEFFICIENT, work, point,
                  series_deviations(lhs, rhs, work), FLOAT_COEFF_TOL, timer, notes)


def fxgen_formal_rhs(point: ParameterPoint, order: int, ctx: QContext, printed: bool = False):
    """a = 0 right side as (xs, zs)_inf/(t/s, ys)_inf 4phi3(u, 0, 0, 0; sq/t, xs, zs; q, q).

    u = ys by default; ``printed=True`` uses u = yt instead, which makes the
    upper parameter a polynomial in t.
    """
    x, y, z, s = point.values(("x", "y", "z", "s"), ctx)
    if s == 0:
        raise DomainViolation("s = 0 leaves t/s undefined")
    reject_lower(x * s, ctx, "xs")
    reject_lower(z * s, ctx, "zs")
    q = ctx.q
    yt = fps_linear(ctx.num(0), y, order)
    weights = []
    for k in range(order + 1):
        denom = qpoch_finite(x * s, k, ctx) * qpoch_finite(z * s, k, ctx) * qpoch_finite(q, k, ctx)
        if printed:
            weights.append(fps_qpoch(yt, k, ctx) * (q ** k / denom))
        else:
            weights.append(qpoch_finite(y * s, k, ctx) * q ** k / denom)
    series, majorant = _formal_k_sum(weights, s, order, ctx)
    kernel = qpoch_infinite(x * s, ctx) * qpoch_infinite(z * s, ctx) / qpoch_infinite(y * s, ctx)
    return series * kernel, cancellation(series, majorant)


def verify_fxgen(point: ParameterPoint, order: int, ctx: QContext, base_dps: int = BASE_DPS):
    """a = 0 Rogers formula in its 4phi3 form; the yt-printed variant is reported in notes."""
    timer = Timer()
    point = point.with_(a=0)
    work = float_context(ctx, base_dps)
    lhs = rogers_formal_lhs(point, order, work)
    rhs, cancel, dps = _adaptive(lambda c: fxgen_formal_rhs(point, order, c), ctx, base_dps)
    printed, _, _ = _adaptive(lambda c: fxgen_formal_rhs(point, order, c, printed=True),
                              ctx, base_dps)
    printed_dev = max(series_deviations(lhs, printed, work))
    notes = {"rhs_dps": dps, "rhs_cancellation": f"{cancel:.3g}",
             "printed_yt_form_deviation": f"{float(printed_dev):.3g}"}
    return finish("FXGEN", CheckMode.COEFFICIENT, work, point,
                  series_deviations(lhs, rhs, work), FLOAT_COEFF_TOL, timer, notes)


def rogers_point_sides(point: ParameterPoint, ctx: QContext):
    """Both sides of the double-sum formula as numbers at (t, s).

    The left side is grouped by total degree N = n + m.  The right side is
    the literal k-sum with 1/(s q/t; q)_k evaluated at the point.
    """
    a, x, y, z, t, s = point.values(("a", "x", "y", "z", "t", "s"), ctx)
    if s == 0 or t == 0:
        raise DomainViolation("t and s must be nonzero")
    reject_lower(x * s, ctx, "xs")
    reject_lower(s * ctx.q / t, ctx, "sq/t")
    reject_lower(t / s, ctx, "t/s")
    table = PsiTable(a, x, y, z, ctx)
    q = ctx.q

    def lhs_term(total: int):
        weight = sum((t ** n * s ** (total - n) / (table.qpoch(n) * table.qpoch(total - n))
                      for n in range(total + 1)), ctx.num(0))
        return table(total) * weight

    def rhs_term(k: int):
        w = qpoch_finite(y * s, k, ctx) * q ** k / (
            qpoch_finite(s * q / t, k, ctx) * qpoch_finite(x * s, k, ctx) * table.qpoch(k))
        return w * phi(PhiSpec([a], [0], z * s * q ** k), ctx)

    lhs = sum_series(lhs_term, ctx, min_terms=4, tol=AUX_TOL).value
    kernel = qpoch_infinite(x * s, ctx) / (qpoch_infinite(t / s, ctx) * qpoch_infinite(y * s, ctx))
    rhs = kernel * sum_series(rhs_term, ctx, min_terms=4, tol=AUX_TOL).value
    return lhs, rhs


def verify_rogers_point(point: ParameterPoint, ctx: QContext, base_dps: int = BASE_DPS):
    """Analytic point evaluation of the double-sum formula (for diagnostics)."""
    timer = Timer()
    work = float_context(ctx, base_dps)
    lhs, rhs = rogers_point_sides(point, work)
    return finish("ROGERS_POINT", CheckMode.POINT, work, point,
                  [scalar_deviation(lhs, rhs, work)], POINT_TOL, timer,
                  {"lhs": f"{float(lhs):.12g}", "rhs": f"{float(rhs):.12g}"})


def extended_rogers_point_sides(point: ParameterPoint, ctx: QContext,
                                trunc: Optional[tuple] = None):
    """Both sides of the triple-sum formula at (t, s, omega).

    Without ``trunc`` the left side is grouped by total degree and summed to
    a tail estimate; with trunc = (N1, N2, N3) the triple sum runs over
    n < N1, m < N2, k < N3 literally.
    """
    a, x, y, z, t, s, w = point.values(("a", "x", "y", "z", "t", "s", "omega"), ctx)
    if t == 0 or w == 0:
        raise DomainViolation("t and omega must be nonzero")
    q = ctx.q
    reject_lower(x * w, ctx, "x omega")
    reject_lower(q * w / t, ctx, "q omega/t")
    reject_lower(t / w, ctx, "t/omega")
    reject_lower(s / t, ctx, "s/t")
    table = PsiTable(a, x, y, z, ctx)

    def weight(n, m, k):
        return (t ** n * s ** m * w ** k
                / (table.qpoch(n + m) * table.qpoch(m) * table.qpoch(k)))

    if trunc is None:
        def lhs_term(total: int):
            acc = ctx.num(0)
            for n in range(total + 1):
                for m in range(total - n + 1):
                    acc += weight(n, m, total - n - m)
            return table(total) * acc

        lhs = sum_series(lhs_term, ctx, min_terms=4, tol=AUX_TOL).value
    else:
        n1, n2, n3 = trunc
        lhs = sum((table(n + m + k) * weight(n, m, k)
                   for n in range(n1) for m in range(n2) for k in range(n3)), ctx.num(0))

    def rhs_term(j: int):
        c = qpoch_finite(y * w, j, ctx) * q ** j / (
            qpoch_finite(x * w, j, ctx) * qpoch_finite(q * w / t, j, ctx) * table.qpoch(j))
        return c * phi(PhiSpec([a], [0], z * w * q ** j), ctx)

    kernel = qpoch_infinite(x * w, ctx) / (
        qpoch_infinite(s / t, ctx) * qpoch_infinite(t / w, ctx) * qpoch_infinite(y * w, ctx))
    rhs = kernel * sum_series(rhs_term, ctx, min_terms=4, tol=AUX_TOL).value
    return lhs, rhs


def verify_extended_rogers(point: ParameterPoint, ctx: QContext, trunc: Optional[tuple] = None,
                           base_dps: int = BASE_DPS):
    timer = Timer()
    work = float_context(ctx, base_dps)
    lhs, rhs = extended_rogers_point_sides(point, work, trunc)
    return finish("EXT_ROGERS", CheckMode.POINT, work, point,
                  [scalar_deviation(lhs, rhs, work)], POINT_TOL, timer,
                  {"lhs": f"{float(lhs):.12g}", "rhs": f"{float(rhs):.12g}"})


def verify_extended_rogers_at_zero_s(point: ParameterPoint, ctx: QContext,
                                     base_dps: int = BASE_DPS):
    """Triple-sum sides at s = 0 against the double-sum sides at (t, omega).

    Left is compared with left and right with right, so this checks the
    specialization itself and not the truth of either formula.
    """
    timer = Timer()
    work = float_context(ctx, base_dps)
    ext = point.with_(s=0)
    ext_lhs, ext_rhs = extended_rogers_point_sides(ext, work)
    double = point.with_(s=point.omega, omega=None)
    lhs, rhs = rogers_point_sides(double, work)
    deviations = [scalar_deviation(ext_lhs, lhs, work), scalar_deviation(ext_rhs, rhs, work)]
    return finish("EXT_ROGERS_S0", CheckMode.POINT, work, ext, deviations,
                  SPECIALIZATION_TOL, timer)

"""Classical summation and transformation formulas used by the proofs."""

from __future__ import annotations

from ..errors import DomainViolation
from ..qcore import ParameterPoint, PhiSpec, QContext, phi, qpoch_finite, qpoch_infinite
from .base import (FLOAT_COEFF_TOL, CheckMode, Timer, finish, float_context, merge_reports,
                   reject_lower, scalar_deviation)

HEINE_TOL = 1e-10


def chu_vandermonde_sides(n: int, a, c, ctx: QContext):
    """2phi1(q^{-n}, a; c; q, q) against (c/a; q)_n a^n / (c; q)_n.

    The right numerator is expanded as prod_j (a - c q^j), which is the same
    quantity and stays defined at a = 0.
    """
    a, c = ctx.num(a), ctx.num(c)
    q = ctx.q
    reject_lower(c, ctx, "c")
    lhs = phi(PhiSpec([q ** (-n), a], [c], q), ctx)
    numerator = ctx.num(1)
    for j in range(n):
        numerator *= a - c * q ** j
    return lhs, numerator / qpoch_finite(c, n, ctx)


def verify_chu_vandermonde(n: int, a, c, ctx: QContext):
    timer = Timer()
    lhs, rhs = chu_vandermonde_sides(n, a, c, ctx)
    point = ParameterPoint(a=a, c=c)
    return finish("CHU_VANDERMONDE", CheckMode.POINT, ctx, point,
                  [scalar_deviation(lhs, rhs, ctx)], FLOAT_COEFF_TOL, timer, {"n": n})


def run_chu_vandermonde(point: ParameterPoint, order: int, ctx: QContext, n_max: int = 8):
    """Every n from 0 to n_max at one (a, c)."""
    n_max = min(n_max, order)
    reports = [verify_chu_vandermonde(n, point.a, point.c, ctx) for n in range(n_max + 1)]
    return merge_reports("CHU_VANDERMONDE", reports, {"n": f"0..{n_max}"})


def heine_sides(point: ParameterPoint, ctx: QContext):
    """2phi1(a, b; c; q, z) against (b, a z)_inf/(c, z)_inf 2phi1(c/b, z; a z; q, b)."""
    a, b, c, z = point.values(("a", "b", "c", "z"), ctx)
    if b == 0:
        raise DomainViolation("b = 0 leaves c/b undefined")
    reject_lower(c, ctx, "c")
    reject_lower(a * z, ctx, "az")
    lhs = phi(PhiSpec([a, b], [c], z), ctx)
    prefactor = (qpoch_infinite(b, ctx) * qpoch_infinite(a * z, ctx)
                 / (qpoch_infinite(c, ctx) * qpoch_infinite(z, ctx)))
    return lhs, prefactor * phi(PhiSpec([c / b, z], [a * z], b), ctx)


def verify_heine(point: ParameterPoint, ctx: QContext):
    timer = Timer()
    work = float_context(ctx)
    lhs, rhs = heine_sides(point, work)
    return finish("HEINE", CheckMode.POINT, work, point,
                  [scalar_deviation(lhs, rhs, work)], HEINE_TOL, timer)

"""Operator representation, reductions, theta actions and q-difference residuals."""

from __future__ import annotations

from ..fps import TPS, fps_phi_in_t
from ..operators import (CauchyBasisPoly, OperatorSpec, exponential_operator_apply,
                         operator_L_apply, psi_operator_form, qde_terms, theta_numeric_power,
                         theta_power)
from ..polynomials import f_trivariate, hahn1, hahn2, psi_trivariate
from ..qcore import (Mode, ParameterPoint, PhiSpec, QContext, binom2, phi, qbinomial, qpoch_finite,
                     qpoch_infinite, sum_series)
from .base import (FLOAT_COEFF_TOL, CheckMode, Timer, finish, float_context,
                   reject_lower, scalar_deviation, series_deviations)
from .generating import cauchy_kernel_series

THETA_DPS = 30
THETA_GUARD_DIGITS = 25
QDE_TOL = 1e-8
AUX_TOL = 1e-20


def verify_prop_conds(point: ParameterPoint, order: int, ctx: QContext):
    """Psi_n from its defining sum against L(a, z; theta) on the scaled p_n(y, x), n <= order."""
    timer = Timer()
    a, x, y, z = point.values(("a", "x", "y", "z"), ctx)
    deviations = [scalar_deviation(psi_trivariate(n, a, x, y, z, ctx),
                                   psi_operator_form(n, a, z, ctx).evaluate(x, y, ctx), ctx)
                  for n in range(order + 1)]
    return finish("PROP_CONDS", CheckMode.POINT, ctx, point, deviations, FLOAT_COEFF_TOL, timer)


def _hahn_expanded(n: int, a, x, y, ctx: QContext):
    """psi_n^{(a)}(x, y) with p_{n-k}(a x, x) written as x^{n-k} prod_j (a - q^j)."""
    q = ctx.q
    total = ctx.num(0)
    for k in range(n + 1):
        inner = ctx.num(1)
        for j in range(n - k):
            inner *= a - q ** j
        sign = -1 if k % 2 else 1
        total += sign * qbinomial(n, k, ctx) * q ** binom2(k) * x ** (n - k) * inner * y ** k
    sign = -1 if n % 2 else 1
    return sign * q ** (-binom2(n)) * total


def verify_reductions(point: ParameterPoint, order: int, ctx: QContext):
    """F_n, psi_n^{(a)}(x, y) and psi_n^{(a)}(x) against independent forms, n <= order.

    F_n is compared with E(z theta) on the scaled Cauchy polynomial, and both
    Hahn families with a direct monomial expansion.
    """
    timer = Timer()
    a, x, y, z = point.values(("a", "x", "y", "z"), ctx)
    q = ctx.q
    deviations = []
    for n in range(order + 1):
        sign = -1 if n % 2 else 1
        seed = CauchyBasisPoly.basis(n, ctx, sign * q ** (-binom2(n)))
        f_operator = exponential_operator_apply(z, seed, ctx).evaluate(x, y, ctx)
        deviations.append(scalar_deviation(f_trivariate(n, x, y, z, ctx), f_operator, ctx))
        deviations.append(scalar_deviation(hahn2(n, a, x, y, ctx),
                                           _hahn_expanded(n, a, x, y, ctx), ctx))
        deviations.append(scalar_deviation(hahn1(n, a, x, ctx),
                                           _hahn_expanded(n, a, x, 1, ctx), ctx))
    return finish("REDUCTIONS", CheckMode.POINT, ctx, point, deviations, FLOAT_COEFF_TOL, timer)


def kernel_identity_sides(point: ParameterPoint, order: int, ctx: QContext):
    """L(a, z; theta) on (x t)_inf/(y t)_inf, term by term in t, against kernel times 1phi1."""
    a, x, y, z = point.values(("a", "x", "y", "z"), ctx)
    q = ctx.q
    spec = OperatorSpec(a, z)
    lhs = TPS(operator_L_apply(spec, CauchyBasisPoly.basis(n, ctx), ctx).evaluate(x, y, ctx)
              / qpoch_finite(q, n, ctx) for n in range(order + 1))
    rhs = cauchy_kernel_series(x, y, order, ctx) * fps_phi_in_t([a], [0], z, order, ctx)
    return lhs, rhs


def verify_kernel_identity(point: ParameterPoint, order: int, ctx: QContext):
    timer = Timer()
    lhs, rhs = kernel_identity_sides(point, order, ctx)
    return finish("KERNEL_IDENTITY", CheckMode.COEFFICIENT, ctx, point,
                  series_deviations(lhs, rhs, ctx), FLOAT_COEFF_TOL, timer)


def verify_theta_eigen(point: ParameterPoint, ctx: QContext, k_max: int = 4):
    """theta^k (x t)_inf/(y t)_inf = (-t)^k (x t)_inf/(y t)_inf by divided differences.

    The tolerance is the tail_tol of the caller's float context (THETA_DPS
    digits when called with an exact one).  Iterated divided differences
    lose digits, so the evaluation itself carries THETA_GUARD_DIGITS more
    digits and a correspondingly smaller product tail.
    """
    timer = Timer()
    base = ctx.as_float(THETA_DPS) if ctx.is_exact else ctx
    tolerance = base.tail_tol
    work = QContext(ctx.q, Mode.FLOAT, ctx.trunc_order,
                    tail_tol=tolerance * 10.0 ** -THETA_GUARD_DIGITS,
                    dps=(base.dps or 15) + THETA_GUARD_DIGITS)
    x, y, t = point.values(("x", "y", "t"), work)

    def kernel(x0, y0):
        return qpoch_infinite(x0 * t, work) / qpoch_infinite(y0 * t, work)

    base = kernel(x, y)
    deviations = [scalar_deviation(theta_numeric_power(kernel, k, x, y, work), (-t) ** k * base, work)
                  for k in range(1, k_max + 1)]
    return finish("THETA_EIGEN", CheckMode.POINT, work, point, deviations, tolerance, timer,
                  {"tail_tol": tolerance})


def verify_theta_nilpotent(point: ParameterPoint, order: int, ctx: QContext):
    """theta^{N+1} annihilates every order-N polynomial and theta^N does not, N <= order."""
    timer = Timer()
    deviations = []
    for n in range(order + 1):
        f = CauchyBasisPoly([ctx.num(j + 1) for j in range(n + 1)])
        killed = theta_power(f, n + 1, ctx)
        deviations.append(max(abs(c) for c in killed.coeffs))
        top = theta_power(f, n, ctx)
        # theta^n leaves the constant (n+1) (-1)^n (q; q)_n, which is nonzero.
        sign = -1 if n % 2 else 1
        deviations.append(abs(top.coeffs[0] - (n + 1) * sign * qpoch_finite(ctx.q, n, ctx)))
    return finish("THETA_NILPOTENT", CheckMode.POINT, ctx, point, deviations, FLOAT_COEFF_TOL, timer)


def verify_qbinomial_rules(point: ParameterPoint, order: int, ctx: QContext):
    """Both q-Pascal recurrences and the symmetry [n, k] = [n, n - k] for n <= order."""
    timer = Timer()
    q = ctx.q
    deviations = []
    for n in range(1, order + 1):
        for k in range(n + 1):
            value = qbinomial(n, k, ctx)
            first = qbinomial(n - 1, k - 1, ctx) + q ** k * qbinomial(n - 1, k, ctx)
            second = q ** (n - k) * qbinomial(n - 1, k - 1, ctx) + qbinomial(n - 1, k, ctx)
            deviations.append(scalar_deviation(value, first, ctx))
            deviations.append(scalar_deviation(value, second, ctx))
            deviations.append(scalar_deviation(value, qbinomial(n, n - k, ctx), ctx))
    return finish("QBINOMIAL_RULES", CheckMode.POINT, ctx, point, deviations, FLOAT_COEFF_TOL, timer)


# The four proof kernels.  Each is a combination, with coefficients free of
# x, y and z, of the building block
#     B(x, y, z; T) = (x T)_inf / (y T)_inf 1phi1(a; 0; q, z T).

def building_block(a, x, y, z, scale, ctx: QContext):
    return (qpoch_infinite(x * scale, ctx) / qpoch_infinite(y * scale, ctx)
            * phi(PhiSpec([a], [0], z * scale), ctx))


def kernel_f(point: ParameterPoint, k: int, ctx: QContext):
    """t^{-k} sum_{n<=k} (q^{-k})_n q^n/(q)_n B(.; t q^n), the extended generating side."""
    t = point.get("t", ctx)
    q = ctx.q
    weights = [qpoch_finite(q ** (-k), n, ctx) * q ** n / qpoch_finite(q, n, ctx)
               for n in range(k + 1)]

    def f(a, b, x, y, z):
        total = sum((w * building_block(a, x, y, z, t * q ** n, ctx)
                     for n, w in enumerate(weights)), ctx.num(0))
        return total / t ** k
    return f


def kernel_g(point: ParameterPoint, ctx: QContext):
    """1/(t/s)_inf sum_k q^k/(s q/t, q)_k B(.; s q^k), the double-sum side."""
    t, s = point.values(("t", "s"), ctx)
    q = ctx.q
    reject_lower(s * q / t, ctx, "sq/t")
    reject_lower(t / s, ctx, "t/s")
    prefactor = 1 / qpoch_infinite(t / s, ctx)

    def f(a, b, x, y, z):
        def term(k):
            return (q ** k / (qpoch_finite(s * q / t, k, ctx) * qpoch_finite(q, k, ctx))
                    * building_block(a, x, y, z, s * q ** k, ctx))
        return prefactor * sum_series(term, ctx, min_terms=4, tol=AUX_TOL).value
    return f


def kernel_h(point: ParameterPoint, ctx: QContext):
    """1/(s/t, t/omega)_inf sum_k q^k/(q omega/t, q)_k B(.; omega q^k), the triple-sum side."""
    t, s, w = point.values(("t", "s", "omega"), ctx)
    q = ctx.q
    reject_lower(q * w / t, ctx, "q omega/t")
    reject_lower(s / t, ctx, "s/t")
    reject_lower(t / w, ctx, "t/omega")
    prefactor = 1 / (qpoch_infinite(s / t, ctx) * qpoch_infinite(t / w, ctx))

    def f(a, b, x, y, z):
        def term(k):
            return (q ** k / (qpoch_finite(q * w / t, k, ctx) * qpoch_finite(q, k, ctx))
                    * building_block(a, x, y, z, w * q ** k, ctx))
        return prefactor * sum_series(term, ctx, min_terms=4, tol=AUX_TOL).value
    return f


def kernel_hp(point: ParameterPoint, ctx: QContext):
    """(mu/nu)_inf sum_n (mu/nu)^n/(q)_n B(.; nu t q^n), the Cauchy-weighted side."""
    t, mu, nu = point.values(("t", "mu", "nu"), ctx)
    q = ctx.q
    ratio = mu / nu
    prefactor = qpoch_infinite(ratio, ctx)

    def f(a, b, x, y, z):
        def term(n):
            return ratio ** n / qpoch_finite(q, n, ctx) * building_block(a, x, y, z, nu * t * q ** n, ctx)
        return prefactor * sum_series(term, ctx, min_terms=4, tol=AUX_TOL).value
    return f


QDE_KERNELS = ("F", "G", "H", "HP")


def qde_kernel(which: str, point: ParameterPoint, ctx: QContext, k: int = 1):
    if which == "F":
        return kernel_f(point, k, ctx)
    if which == "G":
        return kernel_g(point, ctx)
    if which == "H":
        return kernel_h(point, ctx)
    if which == "HP":
        return kernel_hp(point, ctx)
    raise ValueError(f"unknown kernel {which!r}; choose from {QDE_KERNELS}")


def qde_relative_residual(f, point: ParameterPoint, ctx: QContext) -> float:
    """|lhs - shift - pochh| relative to the largest of the three pieces."""
    lhs, shift, pochh = qde_terms(f, point, ctx)
    scale = max(float(abs(lhs)), float(abs(shift)), float(abs(pochh)))
    residual = float(abs(lhs - shift - pochh))
    return residual / scale if scale > 0 else 0.0


def verify_qde_solutions(which: str, point: ParameterPoint, ctx: QContext, k: int = 1):
    timer = Timer()
    work = float_context(ctx)
    f = qde_kernel(which, point, work, k)
    notes = {"kernel": which}
    if which == "F":
        notes["k"] = k
    return finish(f"QDE_{which}", CheckMode.POINT, work, point,
                  [qde_relative_residual(f, point, work)], QDE_TOL, timer, notes)


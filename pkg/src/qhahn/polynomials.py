"""Cauchy, Al-Salam-Carlitz, Hahn and generalized trivariate q-Hahn polynomials.

The trivariate family is evaluated straight from its defining sum

    Psi_n^{(a)}(x, y, z) = (-1)^n q^{-C(n,2)}
        sum_k [n, k] (-1)^k q^{C(k,2)} (a; q)_k p_{n-k}(y, x) z^k,

and the classical families are exposed through their reductions.
"""

from __future__ import annotations

from enum import Enum

from .qcore import QContext, Scalar, binom2, qbinomial, qpoch_finite


class FamilyId(str, Enum):
    CAUCHY = "cauchy"
    AL_SALAM_CARLITZ = "asc"
    HAHN1 = "hahn1"
    HAHN2 = "hahn2"
    TRIVARIATE_F = "f"
    TRIVARIATE_PSI = "psi"


def cauchy_p(n: int, x, y, ctx: QContext) -> Scalar:
    """p_n(x, y) = (x - y)(x - q y)...(x - q^{n-1} y).

    The product form is used so that x = 0 needs no special case.
    """
    x, y = ctx.num(x), ctx.num(y)
    q = ctx.q
    result = ctx.num(1)
    qy = y
    for _ in range(n):
        result *= x - qy
        qy *= q
    return result


def psi_scaled(n: int, a, x, y, z, ctx: QContext) -> Scalar:
    """(-1)^n q^{C(n,2)} Psi_n^{(a)}(x, y, z | q).

    This is the inner sum of the definition.  It is the combination every
    generating function actually needs, and in float mode it avoids the
    overflow of q^{-C(n,2)} for large n.
    """
    a, x, y, z = (ctx.num(v) for v in (a, x, y, z))
    q = ctx.q
    total = ctx.num(0)
    poch_a = ctx.num(1)
    z_power = ctx.num(1)
    for k in range(n + 1):
        if k:
            poch_a *= 1 - a * q ** (k - 1)
            z_power *= z
        sign = -1 if k % 2 else 1
        total += (sign * qbinomial(n, k, ctx) * q ** binom2(k) * poch_a
                  * cauchy_p(n - k, y, x, ctx) * z_power)
    return total


def psi_trivariate(n: int, a, x, y, z, ctx: QContext) -> Scalar:
    """Generalized trivariate q-Hahn polynomial Psi_n^{(a)}(x, y, z | q)."""
    sign = -1 if n % 2 else 1
    return sign * ctx.q ** (-binom2(n)) * psi_scaled(n, a, x, y, z, ctx)


def f_trivariate(n: int, x, y, z, ctx: QContext) -> Scalar:
    """F_n(x, y, z; q), the a = 0 member of the trivariate family."""
    return psi_trivariate(n, 0, x, y, z, ctx)


def hahn2(n: int, a, x, y, ctx: QContext) -> Scalar:
    """Second Hahn polynomials psi_n^{(a)}(x, y | q) = Psi_n^{(0)}(x, a x, y)."""
    a, x = ctx.num(a), ctx.num(x)
    return psi_trivariate(n, 0, x, a * x, y, ctx)


def hahn1(n: int, a, x, ctx: QContext) -> Scalar:
    """Hahn polynomials psi_n^{(a)}(x | q) = Psi_n^{(0)}(x, a x, 1)."""
    return hahn2(n, a, x, 1, ctx)


def al_salam_carlitz(n: int, a, x, ctx: QContext) -> Scalar:
    """Phi_n^{(a)}(x | q) = sum_k [n, k] (a; q)_k x^k."""
    x = ctx.num(x)
    return sum((qbinomial(n, k, ctx) * qpoch_finite(a, k, ctx) * x ** k
                for k in range(n + 1)), ctx.num(0))


FAMILY_ARGS = {
    FamilyId.CAUCHY: ("x", "y"),
    FamilyId.AL_SALAM_CARLITZ: ("a", "x"),
    FamilyId.HAHN1: ("a", "x"),
    FamilyId.HAHN2: ("a", "x", "y"),
    FamilyId.TRIVARIATE_F: ("x", "y", "z"),
    FamilyId.TRIVARIATE_PSI: ("a", "x", "y", "z"),
}

_FAMILY_FUNCS = {
    FamilyId.CAUCHY: cauchy_p,
    FamilyId.AL_SALAM_CARLITZ: al_salam_carlitz,
    FamilyId.HAHN1: hahn1,
    FamilyId.HAHN2: hahn2,
    FamilyId.TRIVARIATE_F: f_trivariate,
    FamilyId.TRIVARIATE_PSI: psi_trivariate,
}


def evaluate_family(family, n: int, params: dict, ctx: QContext) -> Scalar:
    """Evaluate a family by id with keyword parameters; arity is checked."""
    family = FamilyId(family)
    names = FAMILY_ARGS[family]
    missing = [name for name in names if name not in params]
    extra = sorted(set(params) - set(names))
    if missing or extra:
        raise TypeError(
            f"{family.value} takes ({', '.join(names)}); "
            f"missing {missing or 'none'}, unexpected {extra or 'none'}")
    return _FAMILY_FUNCS[family](n, *(params[name] for name in names), ctx)

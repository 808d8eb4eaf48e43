"""Truncated power series in one formal variable t.

A :class:`TruncatedPowerSeries` stores c_0..c_N and never claims knowledge
past degree N: binary operations truncate to the smaller order.  With
Fraction coefficients every operation is exact, which is what makes the
coefficient-wise identity checks in :mod:`qhahn.identities` zero-tolerance.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import InexactOperation, InvalidLowerParameter, NonConvergent
from .qcore import (QContext, binom2, geometric_tail_small, inverse_q_power, qpoch_finite,
                    qpoch_multi)


class TruncatedPowerSeries:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least c_0")
        self._coeffs = coeffs

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedPowerSeries":
        zero = value * 0
        return cls((value,) + (zero,) * order)

    @classmethod
    def monomial(cls, coeff, power: int, order: int) -> "TruncatedPowerSeries":
        zero = coeff * 0
        return cls(coeff if k == power else zero for k in range(order + 1))

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self) -> Iterator:
        return iter(self._coeffs)

    def __getitem__(self, k):
        return self._coeffs[k]

    def __repr__(self) -> str:
        return f"TruncatedPowerSeries({list(self._coeffs)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedPowerSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def truncate(self, order: int) -> "TruncatedPowerSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedPowerSeries(self._coeffs[: order + 1])

    def _coerce(self, other) -> "TruncatedPowerSeries":
        if isinstance(other, TruncatedPowerSeries):
            return other
        return TruncatedPowerSeries.constant(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return TruncatedPowerSeries(self[k] + other[k] for k in range(n + 1))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedPowerSeries(-c for c in self._coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, TruncatedPowerSeries):
            return fps_mul(self, other)
        return TruncatedPowerSeries(c * other for c in self._coeffs)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, TruncatedPowerSeries):
            return self * other.reciprocal()
        return TruncatedPowerSeries(c / other for c in self._coeffs)

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def reciprocal(self) -> "TruncatedPowerSeries":
        c0 = self[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out = [1 / c0]
        for n in range(1, self.order + 1):
            acc = sum(self[k] * out[n - k] for k in range(1, n + 1))
            out.append(-acc / c0)
        return TruncatedPowerSeries(out)

    def shift(self, k: int) -> "TruncatedPowerSeries":
        """Multiply by t^k; the order grows by k since nothing is lost."""
        zero = self[0] * 0
        return TruncatedPowerSeries((zero,) * k + self._coeffs)

    def dilate(self, c) -> "TruncatedPowerSeries":
        """f(t) -> f(c t)."""
        out = []
        power = c ** 0
        for coeff in self._coeffs:
            out.append(coeff * power)
            power *= c
        return TruncatedPowerSeries(out)

    def max_abs(self) -> float:
        return max(float(abs(c)) for c in self._coeffs)

    def __call__(self, t0):
        return fps_eval(self, t0)


TPS = TruncatedPowerSeries


def fps_mul(f: TPS, g: TPS) -> TPS:
    """Cauchy product truncated at min(order_f, order_g)."""
    n = min(f.order, g.order)
    a, b = f.coeffs, g.coeffs
    return TPS(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1))


def fps_eval(f: TPS, t0):
    """Horner evaluation of the truncated polynomial."""
    acc = f[-1] * 0
    for c in reversed(f.coeffs):
        acc = acc * t0 + c
    return acc


def fps_linear(c0, c1, order: int) -> TPS:
    """The series c0 + c1 t."""
    zero = c0 * 0
    coeffs = [c0, c1] + [zero] * (order - 1)
    return TPS(coeffs[: order + 1])


def fps_qprod_infinite(c, order: int, ctx: QContext) -> TPS:
    """Coefficients of (c t; q)_inf: (-1)^k q^{C(k,2)} c^k / (q;q)_k."""
    c = ctx.num(c)
    q = ctx.q
    out = [ctx.num(1)]
    for k in range(1, order + 1):
        # ratio of consecutive coefficients: -q^{k-1} c / (1 - q^k)
        out.append(-out[-1] * q ** (k - 1) * c / (1 - q ** k))
    return TPS(out)


def fps_qprod_reciprocal(c, order: int, ctx: QContext) -> TPS:
    """Coefficients of 1 / (c t; q)_inf: c^k / (q;q)_k."""
    c = ctx.num(c)
    q = ctx.q
    out = [ctx.num(1)]
    for k in range(1, order + 1):
        out.append(out[-1] * c / (1 - q ** k))
    return TPS(out)


def fps_qpoch(param: TPS, n: int, ctx: QContext) -> TPS:
    """(u(t); q)_n for a series-valued parameter u."""
    q = ctx.q
    result = TPS.constant(ctx.num(1), param.order)
    power = ctx.num(1)
    for _ in range(n):
        result = result * (1 - param * power)
        power *= q
    return result


def fps_phi_in_t(upper: Sequence, lower: Sequence, c, order: int, ctx: QContext) -> TPS:
    """r-phi-s with constant parameters and argument c t, expanded in t.

    coeff_n = [(-1)^n q^{C(n,2)}]^{1+s-r} (a;q)_n / (b;q)_n c^n / (q;q)_n.
    """
    c = ctx.num(c)
    q = ctx.q
    e = 1 + len(lower) - len(upper)
    out = []
    for n in range(order + 1):
        den = qpoch_multi(lower, n, ctx) * qpoch_finite(q, n, ctx)
        if ctx.is_zero(den):
            raise InvalidLowerParameter(f"lower parameters {list(lower)} vanish at n={n}")
        weight = ((-1) ** n * q ** binom2(n)) ** e if e else 1
        out.append(weight * qpoch_multi(upper, n, ctx) * c ** n / den)
    return TPS(out)


def _as_series(value, order: int, ctx: QContext) -> TPS:
    if isinstance(value, TPS):
        return value.truncate(order) if value.order > order else value
    return TPS.constant(ctx.num(value), order)


def fps_phi_series(upper: Sequence, lower: Sequence, argument, order: int,
                   ctx: QContext, *, terms: Optional[int] = None) -> TPS:
    """r-phi-s whose parameters and argument may themselves be series in t.

    When the argument is O(t), or some upper parameter is a constant q^{-m},
    only finitely many terms reach degree ``order`` and the result is exact.
    Otherwise the coefficient-wise sum is infinite; it is taken in float mode
    until the largest coefficient of a term drops below the tail target
    (or exactly ``terms`` terms when given).
    """
    ups = [_as_series(u, order, ctx) for u in upper]
    lows = [_as_series(b, order, ctx) for b in lower]
    arg = _as_series(argument, order, ctx)
    q = ctx.q
    e = 1 + len(lows) - len(ups)

    limit = terms
    if limit is None:
        for u in ups:
            if all(ctx.is_zero(x) for x in u.coeffs[1:]):
                m = inverse_q_power(u[0], ctx)
                if m is not None:
                    limit = m if limit is None else min(limit, m)
        if arg[0] == 0:
            limit = order if limit is None else min(limit, order)
    if limit is None and ctx.is_exact:
        raise InexactOperation("coefficient-wise sum is infinite; use float mode")

    one = TPS.constant(ctx.num(1), order)
    total = one
    term = one
    qn = ctx.num(1)
    cap = ctx.trunc_order if limit is None else limit
    history = []
    for n in range(cap):
        num = one
        for u in ups:
            num = num * (1 - u * qn)
        den = one * (1 - qn * q)
        for b in lows:
            factor = 1 - b * qn
            if ctx.is_zero(factor[0]):
                raise InvalidLowerParameter(f"lower parameter vanishes at n={n + 1}")
            den = den * factor
        if e:
            num = num * (-qn) ** e
        term = term * num * arg / den
        total = total + term
        qn *= q
        if limit is None:
            history.append(term.max_abs())
            if geometric_tail_small(history, ctx.tail_tol * max(1.0, total.max_abs())):
                return total
    if limit is None:
        raise NonConvergent("coefficient-wise series did not settle")
    return total


def fps_sum(terms: Callable[[int], TPS], ctx: QContext, *, limit: Optional[int] = None,
            min_terms: int = 0) -> TPS:
    """Sum series-valued terms T_0 + T_1 + ... coefficient-wise.

    A finite ``limit`` sums exactly that many terms; otherwise float mode is
    required and summation stops on a geometric tail estimate.
    """
    if limit is not None:
        total = terms(0)
        for n in range(1, limit):
            total = total + terms(n)
        return total
    if ctx.is_exact:
        raise InexactOperation("infinite coefficient-wise sum in exact mode")
    total = terms(0)
    history = [total.max_abs()]
    for n in range(1, ctx.trunc_order):
        term = terms(n)
        total = total + term
        history.append(term.max_abs())
        if n >= min_terms and geometric_tail_small(history, ctx.tail_tol * max(1.0, total.max_abs())):
            return total
    raise NonConvergent("coefficient-wise series did not settle")

"""q-shifted factorials, q-binomial coefficients and basic hypergeometric series.

Every routine takes a :class:`QContext` that fixes the base ``q`` and the
arithmetic domain.  In exact mode all scalars are :class:`fractions.Fraction`
and finite objects are computed without rounding; infinite products and
non-terminating series are only available in float mode, where they are
truncated against a geometric tail bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Callable, NamedTuple, Optional, Sequence, Union

import mpmath

from .errors import DomainViolation, InexactOperation, InvalidLowerParameter, NonConvergent

Scalar = Union[Fraction, float]

# Float-mode threshold for treating 1 - b q^n (or a q^m - 1) as zero.
_FLOAT_ZERO = 1e-13


class Mode(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings to a Fraction.

    Binary floats are refused so that exact work never inherits rounding.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"exact mode needs a rational literal, got {value!r}")


def to_float(value) -> float:
    if isinstance(value, str):
        text = value.strip()
        return float(Fraction(text)) if "/" in text else float(text)
    return float(value)


@dataclass(frozen=True)
class QContext:
    """Base ``q`` plus the arithmetic and truncation policy.

    ``trunc_order`` caps the number of factors/terms taken from any infinite
    object; ``tail_tol`` is the target bound on the discarded tail (float mode).
    Float mode uses machine doubles unless ``dps`` asks for that many decimal
    digits, in which case scalars are mpmath numbers from a private context.
    """

    q: Scalar
    mode: Mode = Mode.EXACT
    trunc_order: int = 4000
    tail_tol: Optional[float] = None
    dps: Optional[int] = None
    _abs_q: float = field(init=False, repr=False, compare=False)
    _mp: object = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        mode = Mode(self.mode)
        object.__setattr__(self, "mode", mode)
        mp = None
        if self.dps is not None:
            if mode is Mode.EXACT:
                raise ValueError("dps only applies to float mode")
            if self.dps < 15:
                raise ValueError("dps below 15 is less than machine precision")
            mp = mpmath.MPContext()
            mp.dps = self.dps
        object.__setattr__(self, "_mp", mp)
        q = to_fraction(self.q) if mode is Mode.EXACT else self._to_real(self.q)
        object.__setattr__(self, "q", q)
        if not 0 < abs(q) < 1:
            raise ValueError(f"need 0 < |q| < 1, got q = {q}")
        if self.trunc_order < 1:
            raise ValueError("trunc_order must be at least 1")
        tol = self.tail_tol
        if tol is None:
            if mode is Mode.EXACT:
                tol = 0.0
            else:
                tol = 1e-15 if mp is None else 10.0 ** (3 - self.dps)
        tol = float(tol)
        if tol < 0:
            raise ValueError("tail_tol must be nonnegative")
        if tol == 0 and mode is Mode.FLOAT:
            raise ValueError("tail_tol = 0 is only meaningful in exact mode")
        object.__setattr__(self, "tail_tol", tol)
        object.__setattr__(self, "_abs_q", float(abs(q)))

    @classmethod
    def exact(cls, q, **kwargs) -> "QContext":
        return cls(q, Mode.EXACT, **kwargs)

    @classmethod
    def floating(cls, q, **kwargs) -> "QContext":
        return cls(q, Mode.FLOAT, **kwargs)

    @property
    def is_exact(self) -> bool:
        return self.mode is Mode.EXACT

    @property
    def abs_q(self) -> float:
        return self._abs_q

    def _to_real(self, value):
        if self._mp is None:
            return to_float(value)
        if isinstance(value, float):
            return self._mp.mpf(value)
        if isinstance(value, str) and "/" not in value:
            return self._mp.mpf(value.strip())
        if isinstance(value, (str, int, Rational)):
            frac = to_fraction(value)
            return self._mp.mpf(frac.numerator) / frac.denominator
        return self._mp.mpf(value)

    def num(self, value) -> Scalar:
        """Coerce ``value`` into this context's scalar domain."""
        return to_fraction(value) if self.is_exact else self._to_real(value)

    def as_float(self, dps: Optional[int] = None) -> "QContext":
        """The same base and truncation cap in float arithmetic.

        Converting from an exact context keeps ``q`` exact until the new
        precision is applied, so a higher ``dps`` never inherits rounding.
        """
        return QContext(self.q, Mode.FLOAT, self.trunc_order, None, dps)

    def is_zero(self, value) -> bool:
        if self.is_exact:
            return value == 0
        return abs(value) < _FLOAT_ZERO


@dataclass(frozen=True)
class ParameterPoint:
    """Scalar parameters of one identity check; unused entries stay None.

    ``lam`` holds the Pochhammer weight parameter lambda; ``b`` and ``c``
    are the extra numerator and denominator parameters of the classical
    summation and transformation formulas.
    """

    a: object = None
    b: object = None
    c: object = None
    x: object = None
    y: object = None
    z: object = None
    t: object = None
    s: object = None
    omega: object = None
    mu: object = None
    nu: object = None
    lam: object = None

    def get(self, name: str, ctx: Optional["QContext"] = None):
        value = getattr(self, name)
        if value is None:
            raise DomainViolation(f"parameter {name!r} is required but absent")
        return ctx.num(value) if ctx is not None else value

    def values(self, names: Sequence[str], ctx: "QContext") -> tuple:
        return tuple(self.get(name, ctx) for name in names)

    def with_(self, **changes) -> "ParameterPoint":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {f.name: str(getattr(self, f.name)) for f in fields(self)
                if getattr(self, f.name) is not None}


def binom2(n: int) -> int:
    """n choose 2, the exponent in q^{C(n,2)}; valid for negative n too."""
    return n * (n - 1) // 2


def qpoch_finite(a, n: int, ctx: QContext) -> Scalar:
    """(a; q)_n = prod_{k<n} (1 - a q^k)."""
    if n < 0:
        raise ValueError("qpoch_finite needs n >= 0")
    a = ctx.num(a)
    q = ctx.q
    result = ctx.num(1)
    power = a
    for _ in range(n):
        result *= 1 - power
        power *= q
    return result


def qpoch_multi(params: Sequence, n: int, ctx: QContext) -> Scalar:
    """(a_1, ..., a_r; q)_n as the product of the single symbols."""
    result = ctx.num(1)
    for a in params:
        result *= qpoch_finite(a, n, ctx)
    return result


class InfiniteProduct(NamedTuple):
    value: float
    factors: int
    tail_bound: float


def qpoch_infinite_bounded(a, ctx: QContext) -> InfiniteProduct:
    """(a; q)_infinity with the number of factors used and the tail bound met.

    The product stops at the first K with |a| |q|^K / (1 - |q|) < tail_tol.
    """
    if ctx.is_exact:
        raise InexactOperation(
            "(a;q)_inf is infinite; use fps_qprod_infinite for exact work")
    a = ctx.num(a)
    q = ctx.q
    scale = float(abs(a)) / (1 - ctx.abs_q)
    result = ctx.num(1)
    power = a
    abs_power = scale
    for k in range(ctx.trunc_order + 1):
        if abs_power < ctx.tail_tol:
            return InfiniteProduct(result, k, abs_power)
        if k == ctx.trunc_order:
            break
        result *= 1 - power
        power *= q
        abs_power *= ctx.abs_q
    raise NonConvergent(
        f"(a;q)_inf with a={a}: tail {abs_power:.3g} after {ctx.trunc_order} factors")


def qpoch_infinite(a, ctx: QContext) -> float:
    return qpoch_infinite_bounded(a, ctx).value


def qpoch_infinite_multi(params: Sequence, ctx: QContext) -> float:
    result = ctx.num(1)
    for a in params:
        result *= qpoch_infinite(a, ctx)
    return result


def qbinomial(n: int, k: int, ctx: QContext) -> Scalar:
    """Gaussian binomial [n, k]_q; zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return ctx.num(0)
    qq = ctx.q
    return qpoch_finite(qq, n, ctx) / (
        qpoch_finite(qq, k, ctx) * qpoch_finite(qq, n - k, ctx))


@dataclass(frozen=True)
class PhiSpec:
    """Parameters of an r-phi-s series: upper a_i, lower b_j, argument z."""

    upper: tuple
    lower: tuple
    argument: object

    def __init__(self, upper: Sequence, lower: Sequence, argument):
        object.__setattr__(self, "upper", tuple(upper))
        object.__setattr__(self, "lower", tuple(lower))
        object.__setattr__(self, "argument", argument)

    @property
    def r(self) -> int:
        return len(self.upper)

    @property
    def s(self) -> int:
        return len(self.lower)

    def sign_exponent(self) -> int:
        """Exponent e of the [(-1)^n q^{C(n,2)}]^e weight, e = 1 + s - r."""
        return 1 + self.s - self.r

    def terminating_index(self, ctx: QContext) -> Optional[int]:
        """Smallest m with some upper parameter equal to q^{-m}, else None."""
        best = None
        for a in self.upper:
            m = inverse_q_power(ctx.num(a), ctx)
            if m is not None and (best is None or m < best):
                best = m
        return best


def inverse_q_power(a, ctx: QContext) -> Optional[int]:
    """Return m >= 0 with a q^m == 1 when it exists."""
    q = ctx.q
    value = a
    for m in range(ctx.trunc_order + 1):
        if ctx.is_exact:
            if value == 1:
                return m
        elif abs(value - 1) < _FLOAT_ZERO:
            return m
        if abs(value) < 1:
            return None
        value *= q
    return None


class SeriesSum(NamedTuple):
    value: Scalar
    terms: int
    tail_bound: float


def phi_bounded(spec: PhiSpec, ctx: QContext) -> SeriesSum:
    """Sum an r-phi-s series and report the terms used and the tail bound.

    Terminating series are summed to their last index and the bound is zero.
    Otherwise each term ratio is majorised for all later indices by a
    quantity that decreases in n, giving a rigorous geometric tail bound.
    """
    upper = [ctx.num(a) for a in spec.upper]
    lower = [ctx.num(b) for b in spec.lower]
    z = ctx.num(spec.argument)
    q = ctx.q
    e = spec.sign_exponent()
    stop = 0 if z == 0 else spec.terminating_index(ctx)
    if stop is None and ctx.is_exact:
        raise InexactOperation("non-terminating basic hypergeometric series in exact mode")
    if stop is None and e < 0:
        # The weight q^{-C(n,2)} per missing lower parameter outgrows any z^n.
        raise NonConvergent(f"non-terminating {spec.r}phi{spec.s} with r > s + 1 diverges")

    abs_q = ctx.abs_q
    abs_upper = [float(abs(a)) for a in upper]
    abs_lower = [float(abs(b)) for b in lower]
    abs_z = float(abs(z))

    total = ctx.num(1)
    term = ctx.num(1)
    qn = ctx.num(1)  # q^n
    cap = ctx.trunc_order if stop is None else stop
    for n in range(cap):
        num = ctx.num(1)
        for a in upper:
            num *= 1 - a * qn
        den = 1 - qn * q
        for b in lower:
            factor = 1 - b * qn
            if ctx.is_zero(factor):
                raise InvalidLowerParameter(
                    f"lower parameter {b} makes (b;q)_{n + 1} vanish")
            den *= factor
        if e:
            num *= (-qn) ** e
        term = term * num / den * z
        total += term
        qn *= q
        if stop is not None:
            continue
        if e < 0:
            continue
        # Majorant of every later term ratio; valid once the lower factors are bounded away from 0.
        pn = abs_q ** (n + 1)
        if any(bl * pn >= 1 for bl in abs_lower) or pn * abs_q >= 1:
            continue
        rho = abs_z * pn ** e / (1 - pn * abs_q)
        for au in abs_upper:
            rho *= 1 + au * pn
        for bl in abs_lower:
            rho /= 1 - bl * pn
        if rho < 1:
            tail = abs(term) * rho / (1 - rho)
            if tail <= ctx.tail_tol * max(1.0, abs(total)):
                return SeriesSum(total, n + 2, tail)
    if stop is not None:
        return SeriesSum(total, stop + 1, 0.0)
    raise NonConvergent(f"{spec.r}phi{spec.s} series did not meet tail_tol in {cap} terms")


def phi(spec: PhiSpec, ctx: QContext) -> Scalar:
    return phi_bounded(spec, ctx).value


def geometric_tail_small(history: Sequence[float], tol: float, window: int = 3) -> bool:
    """Decide from recent term magnitudes whether the remaining tail is below tol.

    The largest of the last ``window`` successive ratios is taken as the
    geometric rate; a series of zeros counts as settled.
    """
    if len(history) < window + 1:
        return False
    recent = history[-(window + 1):]
    if all(h == 0 for h in recent[-2:]):
        return True
    ratios = [b / a for a, b in zip(recent, recent[1:]) if a > 0]
    if len(ratios) < window:
        return False
    rho = max(ratios)
    if rho >= 1:
        return False
    return recent[-1] * rho / (1 - rho) <= tol


def sum_series(term: Callable[[int], Scalar], ctx: QContext, *, min_terms: int = 0,
               tol: Optional[float] = None) -> SeriesSum:
    """Sum term(0) + term(1) + ... until the geometric tail estimate is met.

    Used for the auxiliary sums of the identity checks, where no closed-form
    majorant is available; the estimate is heuristic, unlike phi_bounded.
    """
    if ctx.is_exact:
        raise InexactOperation("infinite sum in exact mode")
    tol = ctx.tail_tol if tol is None else tol
    total = ctx.num(0)
    history = []
    for n in range(ctx.trunc_order):
        value = term(n)
        total += value
        history.append(float(abs(value)))
        if n + 1 >= min_terms and geometric_tail_small(history, tol * max(1.0, float(abs(total)))):
            return SeriesSum(total, n + 1, history[-1])
    raise NonConvergent(f"series did not settle within {ctx.trunc_order} terms")

"""The homogeneous q-difference operator theta_xy and the operators built on it.

theta_xy f(x, y) = [f(x/q, y) - f(x, q y)] / (x/q - y)

acts on the Cauchy basis by theta p_n(y, x) = -(1 - q^n) p_{n-1}(y, x), so a
function stored by its coefficients in that basis is closed under theta and
under every operator series in theta.  Numeric divided differences are
provided alongside for functions given only as evaluators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import SingularPoint
from .polynomials import cauchy_p
from .qcore import ParameterPoint, QContext, Scalar, binom2, qpoch_finite

# Float-mode guard on |x/q - y| relative to 1 + |x/q|.
SINGULAR_GUARD = 1e-8


class CauchyBasisPoly:
    """f(x, y) = sum_n c_n p_n(y, x), stored by its coefficients c_0..c_N."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("need at least one coefficient")
        self._coeffs = coeffs

    @classmethod
    def basis(cls, n: int, ctx: QContext, scale=1) -> "CauchyBasisPoly":
        """scale * p_n(y, x)."""
        zero = ctx.num(0)
        return cls([ctx.num(scale) if k == n else zero for k in range(n + 1)])

    @classmethod
    def constant(cls, value, ctx: QContext) -> "CauchyBasisPoly":
        return cls([ctx.num(value)])

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def __repr__(self) -> str:
        return f"CauchyBasisPoly({list(self._coeffs)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, CauchyBasisPoly):
            return NotImplemented
        return self.normalized()._coeffs == other.normalized()._coeffs

    def __hash__(self):
        return hash(self.normalized()._coeffs)

    def normalized(self) -> "CauchyBasisPoly":
        coeffs = list(self._coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return CauchyBasisPoly(coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._coeffs)

    def __add__(self, other: "CauchyBasisPoly") -> "CauchyBasisPoly":
        n = max(len(self._coeffs), len(other._coeffs))
        a = self._coeffs + (self._coeffs[0] * 0,) * (n - len(self._coeffs))
        b = other._coeffs + (other._coeffs[0] * 0,) * (n - len(other._coeffs))
        return CauchyBasisPoly(x + y for x, y in zip(a, b))

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, scalar) -> "CauchyBasisPoly":
        return CauchyBasisPoly(c * scalar for c in self._coeffs)

    __rmul__ = __mul__

    def evaluate(self, x0, y0, ctx: QContext) -> Scalar:
        return sum((c * cauchy_p(n, y0, x0, ctx) for n, c in enumerate(self._coeffs)),
                   ctx.num(0))

    def evaluator(self, ctx: QContext) -> Callable:
        return lambda x0, y0: self.evaluate(x0, y0, ctx)


@dataclass(frozen=True)
class OperatorSpec:
    """Parameters of L(a, b; theta) = sum_k q^{C(k,2)} (a;q)_k/(q;q)_k (b theta)^k."""

    a: object
    b: object


def theta_apply(f: CauchyBasisPoly, ctx: QContext) -> CauchyBasisPoly:
    """theta_xy on the Cauchy basis: c_n p_n(y,x) -> -(1 - q^n) c_n p_{n-1}(y,x)."""
    q = ctx.q
    coeffs = f.coeffs
    if len(coeffs) == 1:
        return CauchyBasisPoly([coeffs[0] * 0])
    return CauchyBasisPoly(-(1 - q ** n) * coeffs[n] for n in range(1, len(coeffs)))


def theta_power(f: CauchyBasisPoly, k: int, ctx: QContext) -> CauchyBasisPoly:
    for _ in range(k):
        f = theta_apply(f, ctx)
    return f


def operator_L_apply(spec: OperatorSpec, f: CauchyBasisPoly, ctx: QContext) -> CauchyBasisPoly:
    """Apply L(a, b; theta).  The series stops at k = N since theta^{N+1} f = 0."""
    a, b = ctx.num(spec.a), ctx.num(spec.b)
    q = ctx.q
    result = f
    power = f
    for k in range(1, f.order + 1):
        power = theta_apply(power, ctx)
        weight = q ** binom2(k) * qpoch_finite(a, k, ctx) / qpoch_finite(q, k, ctx) * b ** k
        result = result + power * weight
    return result


def exponential_operator_apply(z, f: CauchyBasisPoly, ctx: QContext) -> CauchyBasisPoly:
    """E(z theta) = sum_k q^{C(k,2)}/(q;q)_k (z theta)^k, the a = 0 case of L."""
    return operator_L_apply(OperatorSpec(0, z), f, ctx)


def psi_operator_form(n: int, a, z, ctx: QContext) -> CauchyBasisPoly:
    """L(a, z; theta) applied to (-1)^n q^{-C(n,2)} p_n(y, x)."""
    sign = -1 if n % 2 else 1
    seed = CauchyBasisPoly.basis(n, ctx, sign * ctx.q ** (-binom2(n)))
    return operator_L_apply(OperatorSpec(a, z), seed, ctx)


def solve_qde_series(f0: CauchyBasisPoly, a, z, ctx: QContext) -> CauchyBasisPoly:
    """Build f = sum_n A_n z^n from A_0 = f0 through the coefficient recursion

        A_n = q^{n-1} (1 - a q^{n-1}) / (1 - q^n) theta A_{n-1}

    which any z-solution of the q-difference equation must satisfy.
    """
    a, z = ctx.num(a), ctx.num(z)
    q = ctx.q
    total = f0
    coeff = f0
    z_power = ctx.num(1)
    for n in range(1, f0.order + 1):
        coeff = theta_apply(coeff, ctx) * (q ** (n - 1) * (1 - a * q ** (n - 1)) / (1 - q ** n))
        z_power *= z
        total = total + coeff * z_power
    return total


def _guard(x0, y0, ctx: QContext):
    denom = x0 / ctx.q - y0
    if ctx.is_exact:
        if denom == 0:
            raise SingularPoint(f"x/q = y at (x, y) = ({x0}, {y0})")
    elif abs(denom) < SINGULAR_GUARD * (1 + abs(x0 / ctx.q)):
        raise SingularPoint(f"x/q - y = {denom:.3g} at (x, y) = ({x0}, {y0})")
    return denom


def theta_numeric(f: Callable, x0, y0, ctx: QContext) -> Scalar:
    """Divided difference [f(x/q, y) - f(x, q y)] / (x/q - y) at one point."""
    x0, y0 = ctx.num(x0), ctx.num(y0)
    denom = _guard(x0, y0, ctx)
    return (f(x0 / ctx.q, y0) - f(x0, ctx.q * y0)) / denom


def theta_function(f: Callable, ctx: QContext) -> Callable:
    """theta_xy f as a new two-argument evaluator (for iterating theta)."""
    return lambda x0, y0: theta_numeric(f, x0, y0, ctx)


def theta_numeric_power(f: Callable, k: int, x0, y0, ctx: QContext) -> Scalar:
    g = f
    for _ in range(k):
        g = theta_function(g, ctx)
    return g(ctx.num(x0), ctx.num(y0))


def qde_terms(f: Callable, point: ParameterPoint, ctx: QContext, b=0) -> tuple:
    """The three pieces of the q-difference equation for f(a, b, x, y, z):

        lhs   = (x/q - y) [f(z) - f(qz)]
        shift = z [f(x/q, y, qz) - f(x, qy, qz)]
        pochh = a z [f(x, qy, q^2 z) - f(x/q, y, q^2 z)]

    Solutions satisfy lhs = shift + pochh.
    """
    a, x, y, z = point.values(("a", "x", "y", "z"), ctx)
    q = ctx.q
    b = ctx.num(b)
    _guard(x, y, ctx)
    lhs = (x / q - y) * (f(a, b, x, y, z) - f(a, b, x, y, q * z))
    shift = z * (f(a, b, x / q, y, q * z) - f(a, b, x, q * y, q * z))
    pochh = a * z * (f(a, b, x, q * y, q * q * z) - f(a, b, x / q, y, q * q * z))
    return lhs, shift, pochh


def qde_residual(f: Callable, point: ParameterPoint, ctx: QContext, b=0) -> Scalar:
    """LHS - RHS of the q-difference equation; zero for its solutions."""
    lhs, shift, pochh = qde_terms(f, point, ctx, b)
    return lhs - shift - pochh

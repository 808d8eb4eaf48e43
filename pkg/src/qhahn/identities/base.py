"""Reports, domain constraints and deviation measures shared by the verifiers."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..errors import DomainViolation
from ..fps import TruncatedPowerSeries
from ..qcore import Mode, ParameterPoint, QContext, inverse_q_power, to_fraction

EXACT_TOL = 0.0
FLOAT_COEFF_TOL = 1e-9
POINT_TOL = 1e-8


class CheckMode(str, Enum):
    COEFFICIENT = "coefficient"
    POINT = "point"


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"


@dataclass
class IdentityReport:
    identity_id: str
    mode: CheckMode
    arithmetic: Mode
    q: object
    params: ParameterPoint
    order_or_points: int
    max_deviation: float
    tolerance: float
    verdict: Verdict
    elapsed: float
    deviations: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "id": self.identity_id,
            "mode": self.mode.value,
            "arithmetic": self.arithmetic.value,
            "q": str(self.q),
            "params": self.params.as_dict(),
            "order_or_points": self.order_or_points,
            "deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "verdict": self.verdict.value,
            "deviations": list(self.deviations),
        }
        if self.notes:
            out["notes"] = dict(self.notes)
        if timings:
            out["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return out


def number(value):
    """A parameter as an exact Fraction when it is rational, else a float."""
    try:
        return to_fraction(value)
    except (TypeError, ValueError):
        return float(value)


@dataclass(frozen=True)
class Constraint:
    """A convergence condition ``magnitude(point) < 1``."""

    label: str
    magnitude: Callable[[ParameterPoint], object]

    def value(self, point: ParameterPoint) -> float:
        return float(self.magnitude(point))


def abs_of(*names: str, divide: Sequence[str] = ()) -> Callable[[ParameterPoint], object]:
    """Magnitude |prod(names) / prod(divide)| of point parameters."""
    def magnitude(point: ParameterPoint):
        value = Fraction(1)
        for name in names:
            value *= number(point.get(name))
        for name in divide:
            d = number(point.get(name))
            if d == 0:
                return float("inf")
            value /= d
        return abs(value)
    return magnitude


def check_constraints(constraints: Sequence[Constraint], point: ParameterPoint,
                      slack: float = 0.0) -> None:
    for c in constraints:
        v = c.value(point)
        if not v < 1 - slack:
            raise DomainViolation(f"{c.label} fails: value {v:.4g} (slack {slack})")


# In float mode a coefficient is judged relative to itself, but never against
# less than this fraction of max(1, largest coefficient), so that
# coefficients which should vanish are not judged by rounding noise alone.
SERIES_SCALE_FLOOR = 1e-6


def series_deviations(lhs: TruncatedPowerSeries, rhs: TruncatedPowerSeries,
                      ctx: QContext) -> list:
    """Per-coefficient deviations: exact difference, or relative error in float mode."""
    n = min(lhs.order, rhs.order)
    if ctx.is_exact:
        return [abs(lhs[k] - rhs[k]) for k in range(n + 1)]
    top = max(lhs.truncate(n).max_abs(), rhs.truncate(n).max_abs(), 1.0)
    floor = SERIES_SCALE_FLOOR * top
    return [scalar_deviation(lhs[k], rhs[k], ctx, floor) for k in range(n + 1)]


def scalar_deviation(left, right, ctx: QContext, floor: float = 0.0):
    if ctx.is_exact:
        return abs(left - right)
    diff = float(abs(left - right))
    scale = max(float(abs(left)), float(abs(right)), floor)
    return diff / scale if scale > 0 else 0.0


class Timer:
    def __init__(self):
        self.start = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def finish(identity_id: str, mode: CheckMode, ctx: QContext, point: ParameterPoint,
           deviations: list, tolerance: Optional[float], timer: Timer,
           notes: Optional[dict] = None) -> IdentityReport:
    """Assemble a report; exact arithmetic always uses zero tolerance."""
    if ctx.is_exact:
        tolerance = EXACT_TOL
    worst = max(deviations) if deviations else 0
    verdict = Verdict.PASS if worst <= tolerance else Verdict.FAIL
    return IdentityReport(
        identity_id=identity_id,
        mode=mode,
        arithmetic=ctx.mode,
        q=ctx.q if ctx.is_exact else float(ctx.q),
        params=point,
        order_or_points=len(deviations),
        max_deviation=float(worst),
        tolerance=tolerance,
        verdict=verdict,
        elapsed=timer.elapsed(),
        deviations=[float(d) for d in deviations],
        notes=notes or {},
    )


def merge_reports(identity_id: str, reports: Sequence[IdentityReport],
                  notes: Optional[dict] = None) -> IdentityReport:
    """Combine sub-checks (e.g. several k) at one point into a single report."""
    first = reports[0]
    deviations = [d for r in reports for d in r.deviations]
    worst = max(r.max_deviation for r in reports)
    merged_notes = {}
    for r in reports:
        merged_notes.update(r.notes)
    merged_notes.update(notes or {})
    return IdentityReport(
        identity_id=identity_id,
        mode=first.mode,
        arithmetic=first.arithmetic,
        q=first.q,
        params=first.params,
        order_or_points=sum(r.order_or_points for r in reports),
        max_deviation=worst,
        tolerance=first.tolerance,
        verdict=Verdict.PASS if all(r.passed for r in reports) else Verdict.FAIL,
        elapsed=sum(r.elapsed for r in reports),
        deviations=deviations,
        notes=merged_notes,
    )


def reject_lower(value, ctx: QContext, label: str) -> None:
    """DomainViolation when a lower parameter equals q^{-m} for some m >= 0."""
    if inverse_q_power(ctx.num(value), ctx) is not None:
        raise DomainViolation(f"lower parameter {label} = {value} is q^(-m)")


def float_context(ctx: QContext, dps: Optional[int] = None) -> QContext:
    """Float arithmetic for parts of a check that involve infinite objects."""
    if not ctx.is_exact and dps is None:
        return ctx
    return ctx.as_float(dps)

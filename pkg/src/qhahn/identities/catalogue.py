"""Static catalogue of identity checks, the parameter sampler and the suite runner."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..errors import DomainViolation, InvalidLowerParameter, QSeriesError, SingularPoint
from ..qcore import Mode, ParameterPoint, QContext
from . import classical, generating, rogers, srivastava_agarwal as sa, structural
from .base import (FLOAT_COEFF_TOL, POINT_TOL, CheckMode, Constraint, IdentityReport, Verdict,
                   abs_of, check_constraints, merge_reports)

Q_CHOICES = (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10))
_MAGNITUDES = sorted({Fraction(p, r) for r in range(2, 8) for p in range(1, r)
                      if Fraction(1, 7) <= Fraction(p, r) <= Fraction(1, 2)})
# Rationals with denominator at most 7 and magnitude in [1/7, 1/2], both signs.
VALUE_POOL = tuple(-v for v in reversed(_MAGNITUDES)) + tuple(_MAGNITUDES)
SAMPLING_SLACK = 0.1
MAX_ATTEMPTS = 400

EXACT_AND_FLOAT = (Mode.EXACT, Mode.FLOAT)
FLOAT_ONLY = (Mode.FLOAT,)


class SamplingExhausted(QSeriesError):
    """No admissible parameter point was found within the attempt budget."""


@dataclass(frozen=True)
class IdentityInfo:
    id: str
    title: str
    params: tuple
    constraint_text: str
    modes: tuple
    check: CheckMode
    runner: Callable[[ParameterPoint, int, QContext], IdentityReport]
    default_order: int = 12
    # None means the tail_tol of the float context the check runs in.
    tolerance: Optional[float] = FLOAT_COEFF_TOL
    constraints: tuple = ()

    @property
    def float_only(self) -> bool:
        return Mode.EXACT not in self.modes

    def describe(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "params": list(self.params),
            "constraints": self.constraint_text,
            "modes": [m.value for m in self.modes],
            "check": self.check.value,
            "default_order": self.default_order,
            "tolerance": "tail_tol" if self.tolerance is None else self.tolerance,
        }


def _c(label: str, *names: str, divide: Sequence[str] = ()) -> Constraint:
    return Constraint(label, abs_of(*names, divide=divide))


def _point_only(fn):
    """Adapt a point verifier to the (point, order, ctx) runner signature."""
    return lambda point, order, ctx: fn(point, ctx)


def _qde(which: str, ks=(1,)):
    def run(point, order, ctx):
        reports = [structural.verify_qde_solutions(which, point, ctx, k) for k in ks]
        if len(reports) == 1:
            return reports[0]
        return merge_reports(f"QDE_{which}", reports, {"k": list(ks)})
    return run


CATALOGUE = (
    IdentityInfo("GEN", "Generating function of Psi_n in t",
                 ("a", "x", "y", "z"), "|y·t| < 1 (formal in t)", EXACT_AND_FLOAT,
                 CheckMode.COEFFICIENT, generating.verify_generating),
    IdentityInfo("EXT_GEN", "Extended generating function, shifted index n + k, k = 0..3",
                 ("a", "x", "y", "z"), "|y·t| < 1 (formal in t)", EXACT_AND_FLOAT,
                 CheckMode.COEFFICIENT, generating.run_extended_generating),
    IdentityInfo("DGEN", "Extended generating function at a = 0 in 3phi2 form, k = 0..3",
                 ("x", "y", "z"), "|y·t| < 1 (formal in t)", EXACT_AND_FLOAT,
                 CheckMode.COEFFICIENT, generating.run_dgen),
    IdentityInfo("CAUCHY_GEN", "Generating function of the Cauchy polynomials",
                 ("x", "y"), "|x·t| < 1 (formal in t)", EXACT_AND_FLOAT,
                 CheckMode.COEFFICIENT, generating.verify_cauchy_generating),
    IdentityInfo("SRIVAS", "Cauchy polynomials weighted by (lam; q)_n as a 2phi1",
                 ("lam", "x", "y"), "|x·t| < 1, x != 0 (formal in t)", EXACT_AND_FLOAT,
                 CheckMode.COEFFICIENT, generating.verify_srivas),
    IdentityInfo("QBINOMIAL_THM", "q-binomial theorem",
                 ("a", "z"), "|z| < 1 (formal in t)", EXACT_AND_FLOAT,
                 CheckMode.COEFFICIENT, generating.verify_qbinomial_theorem),
    IdentityInfo("EULER_PAIR", "Euler's two expansions of (z; q)_inf are reciprocal",
                 ("z",), "|z| < 1 (formal in t)", EXACT_AND_FLOAT,
                 CheckMode.COEFFICIENT, generating.verify_euler_pair),
    IdentityInfo("KERNEL_IDENTITY", "L(a, z; theta) on the Cauchy kernel gives kernel times 1phi1",
                 ("a", "x", "y", "z"), "|y·t| < 1 (formal in t)", EXACT_AND_FLOAT,
                 CheckMode.COEFFICIENT, structural.verify_kernel_identity),
    IdentityInfo("PROP_CONDS", "Psi_n equals L(a, z; theta) on (-1)^n q^{-C(n,2)} p_n(y, x), n <= order",
                 ("a", "x", "y", "z"), "none", EXACT_AND_FLOAT,
                 CheckMode.POINT, structural.verify_prop_conds, default_order=10),
    IdentityInfo("REDUCTIONS", "Psi_n reduces to F_n, psi_n(x, y) and psi_n(x), n <= order",
                 ("a", "x", "y", "z"), "none", EXACT_AND_FLOAT,
                 CheckMode.POINT, structural.verify_reductions, default_order=10),
    IdentityInfo("ROGERS", "Rogers-type double generating function (formal in t, s fixed)",
                 ("a", "x", "y", "z", "s"), "max{|t/s|, |y·s|} < 1", FLOAT_ONLY,
                 CheckMode.COEFFICIENT, rogers.verify_rogers, default_order=8,
                 constraints=(_c("|y·s| < 1", "y", "s"),)),
    IdentityInfo("FXGEN", "Rogers-type formula at a = 0 in 4phi3 form (upper parameter y·s)",
                 ("x", "y", "z", "s"), "max{|t/s|, |y·s|} < 1", FLOAT_ONLY,
                 CheckMode.COEFFICIENT, rogers.verify_fxgen, default_order=8,
                 constraints=(_c("|y·s| < 1", "y", "s"),)),
    IdentityInfo("ROGERS_POINT", "Rogers-type double generating function evaluated at (t, s)",
                 ("a", "x", "y", "z", "t", "s"), "max{|t/s|, |y·s|} < 1",
                 FLOAT_ONLY, CheckMode.POINT, _point_only(rogers.verify_rogers_point),
                 tolerance=POINT_TOL,
                 constraints=(_c("|t/s| < 1", "t", divide=("s",)), _c("|y·s| < 1", "y", "s"))),
    IdentityInfo("EXT_ROGERS", "Extended Rogers-type triple generating function at a point",
                 ("a", "x", "y", "z", "t", "s", "omega"), "max{|s/t|, |t/omega|, |y·omega|} < 1",
                 FLOAT_ONLY, CheckMode.POINT, _point_only(rogers.verify_extended_rogers),
                 tolerance=POINT_TOL,
                 constraints=(_c("|s/t| < 1", "s", divide=("t",)),
                              _c("|t/omega| < 1", "t", divide=("omega",)),
                              _c("|y·omega| < 1", "y", "omega"))),
    IdentityInfo("EXT_ROGERS_S0", "Triple-sum sides at s = 0 against double-sum sides at (t, omega)",
                 ("a", "x", "y", "z", "t", "omega"), "max{|t/omega|, |y·omega|} < 1",
                 FLOAT_ONLY, CheckMode.POINT, _point_only(rogers.verify_extended_rogers_at_zero_s),
                 tolerance=rogers.SPECIALIZATION_TOL,
                 constraints=(_c("|t/omega| < 1", "t", divide=("omega",)),
                              _c("|y·omega| < 1", "y", "omega"))),
    IdentityInfo("SA", "Psi_n weighted by p_n(nu, mu)",
                 ("a", "x", "y", "z", "mu", "nu"), "|y·nu·t| < 1, |mu/nu| < 1", EXACT_AND_FLOAT,
                 CheckMode.COEFFICIENT, sa.verify_srivastava_agarwal, default_order=8,
                 constraints=(_c("|mu/nu| < 1", "mu", divide=("nu",)),)),
    IdentityInfo("SA_1CSUMS", "Psi_n weighted by (lam; q)_n",
                 ("a", "x", "y", "z", "lam"), "|y·t| < 1, |lam| < 1", EXACT_AND_FLOAT,
                 CheckMode.COEFFICIENT, sa.verify_csums, default_order=8,
                 constraints=(_c("|lam| < 1", "lam"),)),
    IdentityInfo("LUMS", "Second Hahn polynomials psi_n(x, y) weighted by (lam; q)_n",
                 ("a", "x", "y", "lam"), "|a·x·t| < 1, |lam| < 1", FLOAT_ONLY,
                 CheckMode.COEFFICIENT, sa.verify_lums, default_order=8,
                 constraints=(_c("|lam| < 1", "lam"),)),
    IdentityInfo("DD1SUMS", "Hahn polynomials psi_n(x) weighted by (lam; q)_n",
                 ("a", "x", "lam"), "|a·x·t| < 1, |lam| < 1", FLOAT_ONLY,
                 CheckMode.COEFFICIENT, sa.verify_dd1sums, default_order=8,
                 constraints=(_c("|lam| < 1", "lam"),)),
    IdentityInfo("LUMS_Y1", "Second-Hahn sides at y = 1 equal the Hahn sides",
                 ("a", "x", "lam"), "|a·x·t| < 1, |lam| < 1", FLOAT_ONLY,
                 CheckMode.COEFFICIENT, sa.verify_lums_collapse, default_order=8, tolerance=0.0,
                 constraints=(_c("|lam| < 1", "lam"),)),
    IdentityInfo("ASC_GEN", "Al-Salam-Carlitz polynomials weighted by (lam; q)_n",
                 ("a", "lam", "x"), "max{|t|, |x·t|} < 1 (formal in t)", EXACT_AND_FLOAT,
                 CheckMode.COEFFICIENT, sa.verify_asc_genfun, default_order=10),
    IdentityInfo("CHU_VANDERMONDE", "q-Chu-Vandermonde sum, n = 0..8",
                 ("a", "c"), "c != q^{-m}", EXACT_AND_FLOAT,
                 CheckMode.POINT, classical.run_chu_vandermonde, default_order=8),
    IdentityInfo("HEINE", "Heine transformation of 2phi1",
                 ("a", "b", "c", "z"), "max{|b|, |c|, |z|} < 1", FLOAT_ONLY,
                 CheckMode.POINT, _point_only(classical.verify_heine),
                 tolerance=classical.HEINE_TOL,
                 constraints=(_c("|b| < 1", "b"), _c("|c| < 1", "c"), _c("|z| < 1", "z"))),
    IdentityInfo("THETA_EIGEN", "theta^k on the Cauchy kernel multiplies by (-t)^k, k <= 4",
                 ("x", "y", "t"), "|y·t| < 1", FLOAT_ONLY,
                 CheckMode.POINT, _point_only(structural.verify_theta_eigen),
                 tolerance=None,
                 constraints=(_c("|y·t| < 1", "y", "t"),)),
    IdentityInfo("THETA_NILPOTENT", "theta^{N+1} annihilates Cauchy-basis polynomials of order N",
                 (), "none", EXACT_AND_FLOAT,
                 CheckMode.POINT, structural.verify_theta_nilpotent, default_order=10),
    IdentityInfo("QBINOMIAL_RULES", "q-Pascal recurrences and symmetry of [n, k]",
                 (), "none", EXACT_AND_FLOAT,
                 CheckMode.POINT, structural.verify_qbinomial_rules, default_order=12),
    IdentityInfo("QDE_F", "q-difference equation for the extended generating kernel, k = 1, 2",
                 ("a", "x", "y", "z", "t"), "|y·t| < 1", FLOAT_ONLY,
                 CheckMode.POINT, _qde("F", (1, 2)), tolerance=structural.QDE_TOL,
                 constraints=(_c("|y·t| < 1", "y", "t"),)),
    IdentityInfo("QDE_G", "q-difference equation for the double-sum kernel",
                 ("a", "x", "y", "z", "t", "s"), "max{|t/s|, |y·s|} < 1", FLOAT_ONLY,
                 CheckMode.POINT, _qde("G"), tolerance=structural.QDE_TOL,
                 constraints=(_c("|t/s| < 1", "t", divide=("s",)), _c("|y·s| < 1", "y", "s"))),
    IdentityInfo("QDE_H", "q-difference equation for the triple-sum kernel",
                 ("a", "x", "y", "z", "t", "s", "omega"),
                 "max{|s/t|, |t/omega|, |y·omega|} < 1", FLOAT_ONLY,
                 CheckMode.POINT, _qde("H"), tolerance=structural.QDE_TOL,
                 constraints=(_c("|s/t| < 1", "s", divide=("t",)),
                              _c("|t/omega| < 1", "t", divide=("omega",)),
                              _c("|y·omega| < 1", "y", "omega"))),
    IdentityInfo("QDE_HP", "q-difference equation for the Cauchy-weighted kernel",
                 ("a", "x", "y", "z", "t", "mu", "nu"), "|y·nu·t| < 1, |mu/nu| < 1", FLOAT_ONLY,
                 CheckMode.POINT, _qde("HP"), tolerance=structural.QDE_TOL,
                 constraints=(_c("|y·nu·t| < 1", "y", "nu", "t"),
                              _c("|mu/nu| < 1", "mu", divide=("nu",)))),
)

BY_ID = {info.id: info for info in CATALOGUE}


def get_identity(identity_id: str) -> IdentityInfo:
    key = identity_id.strip().upper()
    if key not in BY_ID:
        raise KeyError(f"unknown identity {identity_id!r}; known: {', '.join(BY_ID)}")
    return BY_ID[key]


def sample_point(info: IdentityInfo, rng: random.Random):
    """Draw (q, point) from the sampling box until the constraints hold with slack."""
    for _ in range(MAX_ATTEMPTS):
        q = rng.choice(Q_CHOICES)
        point = ParameterPoint(**{name: rng.choice(VALUE_POOL) for name in info.params})
        try:
            check_constraints(info.constraints, point, SAMPLING_SLACK)
        except DomainViolation:
            continue
        return q, point
    raise SamplingExhausted(f"{info.id}: no admissible point in {MAX_ATTEMPTS} draws")


def make_context(info: IdentityInfo, mode: Mode, q, dps: Optional[int]) -> QContext:
    """Exact when requested and supported, float (at ``dps`` digits) otherwise."""
    if mode is Mode.EXACT and not info.float_only:
        return QContext.exact(q)
    return QContext.floating(q, dps=dps)


def run_identity(info: IdentityInfo, *, mode: Mode = Mode.EXACT, order: Optional[int] = None,
                 points: int = 5, seed: int = 0, dps: Optional[int] = None,
                 tolerance: Optional[float] = None) -> list:
    """Run one catalogue entry at ``points`` sampled points.

    Points whose evaluation hits a degenerate parameter are discarded and
    redrawn.  The generator is seeded by (seed, id) so that each identity's
    points do not depend on which other identities run.
    """
    rng = random.Random(f"{seed}:{info.id}")
    order = info.default_order if order is None else order
    reports = []
    attempts = 0
    while len(reports) < points:
        attempts += 1
        if attempts > MAX_ATTEMPTS:
            raise SamplingExhausted(f"{info.id}: only {len(reports)} valid points found")
        q, point = sample_point(info, rng)
        ctx = make_context(info, mode, q, dps)
        try:
            report = info.runner(point, order, ctx)
        except (DomainViolation, SingularPoint, InvalidLowerParameter):
            continue
        if tolerance is not None and not ctx.is_exact:
            verdict = Verdict.PASS if report.max_deviation <= tolerance else Verdict.FAIL
            report = replace(report, tolerance=tolerance, verdict=verdict)
        reports.append(report)
    return reports

"""Command-line front end: ``qhahn verify``, ``qhahn eval`` and ``qhahn list``.

Rational parameters are written as ``p/q`` strings and stay exact in exact
mode; decimals are accepted too and are read as the rational they spell.

Exit status: 0 when every selected check passed, 1 on any failure or when
no admissible parameter point could be sampled, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from .errors import QSeriesError
from .identities import CATALOGUE, SamplingExhausted, get_identity, run_identity
from .polynomials import FamilyId, evaluate_family
from .qcore import Mode, PhiSpec, QContext, phi, qbinomial, qpoch_finite, to_fraction

DPS_ENV = "QHAHN_DPS"
DEFAULT_DPS = 30
SCALAR_NAMES = ("a", "x", "y", "z")


class UsageError(Exception):
    """A request that is well-formed for argparse but inconsistent."""


def read_default_dps(environ=None) -> Optional[int]:
    """Float-mode precision from the environment; "machine" or "0" means doubles."""
    environ = os.environ if environ is None else environ
    raw = environ.get(DPS_ENV, "").strip().lower()
    if not raw:
        return DEFAULT_DPS
    if raw in ("machine", "double", "0"):
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{DPS_ENV} must be an integer or 'machine', got {raw!r}") from None
    if value < 15:
        raise UsageError(f"{DPS_ENV} must be at least 15")
    return value


@dataclass
class RunConfig:
    mode: Mode = Mode.EXACT
    order: Optional[int] = None
    points_per_identity: int = 5
    seed: int = 0
    identities: list = field(default_factory=lambda: ["all"])
    tolerance_overrides: dict = field(default_factory=dict)
    output: str = "text"
    dps: Optional[int] = DEFAULT_DPS

    def selected(self) -> list:
        if [i.lower() for i in self.identities] == ["all"]:
            return list(CATALOGUE)
        return [get_identity(i) for i in self.identities]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["mode"] = self.mode.value
        return out


def _parse_tolerances(items: Sequence[str]) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects ID=VALUE, got {item!r}")
        out[get_identity(key).id] = float(value)
    return out


def build_config(args: argparse.Namespace, dps: Optional[int]) -> RunConfig:
    identities = [part for chunk in args.identities for part in chunk.split(",") if part]
    config = RunConfig(
        mode=Mode(args.mode),
        order=args.order,
        points_per_identity=args.points,
        seed=args.seed,
        identities=identities or ["all"],
        tolerance_overrides=_parse_tolerances(args.tol or []),
        output=args.output,
        dps=dps,
    )
    try:
        selected = config.selected()
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    explicit = [i.lower() for i in config.identities] != ["all"]
    if explicit and config.mode is Mode.EXACT:
        float_only = [info.id for info in selected if info.float_only]
        if float_only:
            raise UsageError(
                f"{', '.join(float_only)} only run in float arithmetic "
                "(infinite products or point evaluation); use --mode float")
    if config.points_per_identity < 1:
        raise UsageError("--points must be at least 1")
    if config.order is not None and config.order < 0:
        raise UsageError("--order must be nonnegative")
    return config


def run_verify(config: RunConfig, timings: bool = True) -> dict:
    """Run the selected checks and return the report document."""
    results = []
    passed = failed = 0
    for info in config.selected():
        entry = {"id": info.id, "mode": info.check.value}
        try:
            reports = run_identity(info, mode=config.mode, order=config.order,
                                   points=config.points_per_identity, seed=config.seed,
                                   dps=config.dps,
                                   tolerance=config.tolerance_overrides.get(info.id))
        except SamplingExhausted as exc:
            entry.update(arithmetic=None, points=[], error=str(exc), verdict="fail")
            failed += 1
            results.append(entry)
            continue
        entry["arithmetic"] = reports[0].arithmetic.value
        entry["points"] = [{
            "q": str(r.q),
            "params": r.params.as_dict(),
            "order_or_points": r.order_or_points,
            "deviation": r.max_deviation,
            "tolerance": r.tolerance,
            "verdict": r.verdict.value,
            **({"notes": r.notes} if r.notes else {}),
        } for r in reports]
        entry["max_deviation"] = max(r.max_deviation for r in reports)
        ok = all(r.passed for r in reports)
        entry["verdict"] = "pass" if ok else "fail"
        if timings:
            entry["elapsed_ms"] = round(sum(r.elapsed for r in reports) * 1000, 3)
        passed += ok
        failed += not ok
        results.append(entry)
    return {"config": config.to_dict(), "results": results,
            "summary": {"pass": passed, "fail": failed}}


def format_text(document: dict) -> str:
    lines = []
    for entry in document["results"]:
        if "error" in entry:
            lines.append(f"FAIL  {entry['id']:<16} {entry['error']}")
            continue
        status = "PASS" if entry["verdict"] == "pass" else "FAIL"
        count = len(entry["points"])
        good = sum(p["verdict"] == "pass" for p in entry["points"])
        line = (f"{status}  {entry['id']:<16} {entry['mode']:<11} {entry['arithmetic']:<5} "
                f"points {good}/{count}  max deviation {entry['max_deviation']:.3e}")
        if "elapsed_ms" in entry:
            line += f"  {entry['elapsed_ms'] / 1000:.2f}s"
        lines.append(line)
    summary = document["summary"]
    lines.append(f"{summary['pass']} passed, {summary['fail']} failed")
    return "\n".join(lines)


def cmd_verify(args, dps) -> int:
    config = build_config(args, dps)
    document = run_verify(config, timings=not args.no_timings)
    if config.output == "json":
        text = json.dumps(document, indent=2, sort_keys=True)
    else:
        text = format_text(document)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return 0 if document["summary"]["fail"] == 0 else 1


def _context(args, dps) -> QContext:
    if args.mode == Mode.EXACT.value:
        return QContext.exact(to_fraction(args.q))
    return QContext.floating(args.q, dps=dps)


def cmd_eval(args, dps) -> int:
    ctx = _context(args, dps)
    if args.family == "qpoch":
        value = qpoch_finite(ctx.num(args.a), args.n, ctx)
    elif args.family == "qbinomial":
        value = qbinomial(args.n, args.k, ctx)
    elif args.family == "phi":
        upper = [u for u in (args.upper or "").split(",") if u]
        lower = [b for b in (args.lower or "").split(",") if b]
        value = phi(PhiSpec([ctx.num(u) for u in upper], [ctx.num(b) for b in lower],
                            ctx.num(args.arg)), ctx)
    else:
        params = {name: getattr(args, name) for name in SCALAR_NAMES
                  if getattr(args, name) is not None}
        try:
            value = evaluate_family(FamilyId(args.family), args.n, params, ctx)
        except TypeError as exc:
            raise UsageError(str(exc)) from None
    print(value)
    return 0


def cmd_list(args) -> int:
    entries = [info.describe() for info in CATALOGUE]
    if args.output == "json":
        print(json.dumps(entries, indent=2, sort_keys=True))
        return 0
    for e in entries:
        print(f"{e['id']:<16} {'/'.join(e['modes']):<11} {e['check']:<11} {e['title']}")
        print(f"{'':<16} params ({', '.join(e['params'])}); constraint: {e['constraints']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhahn",
        description="Evaluate trivariate q-Hahn polynomials and verify their generating functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run identity checks at sampled parameter points")
    verify.add_argument("--identities", nargs="+", default=["all"],
                        help="identity ids (comma or space separated) or 'all'")
    verify.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.EXACT.value)
    verify.add_argument("--order", type=int, default=None,
                        help="truncation order; defaults to each identity's own")
    verify.add_argument("--points", type=int, default=5, help="parameter points per identity")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--tol", action="append", metavar="ID=VALUE",
                        help="float-mode tolerance override; repeatable")
    verify.add_argument("--output", choices=["text", "json"], default="text")
    verify.add_argument("--out", help="write the report to this file instead of stdout")
    verify.add_argument("--no-timings", action="store_true",
                        help="omit elapsed times so reports compare byte for byte")

    ev = sub.add_parser("eval", help="evaluate a polynomial family or a q-series")
    ev.add_argument("family", choices=[f.value for f in FamilyId] + ["qpoch", "qbinomial", "phi"])
    ev.add_argument("--n", type=int, default=0)
    ev.add_argument("--k", type=int, default=0)
    ev.add_argument("--q", required=True)
    ev.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.EXACT.value)
    for name in SCALAR_NAMES:
        ev.add_argument(f"--{name}")
    ev.add_argument("--upper", help="comma-separated upper parameters (phi)")
    ev.add_argument("--lower", help="comma-separated lower parameters (phi)")
    ev.add_argument("--arg", default="0", help="argument of phi")

    ls = sub.add_parser("list", help="print the identity catalogue")
    ls.add_argument("--output", choices=["text", "json"], default="text")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        dps = read_default_dps()
        if args.command == "verify":
            return cmd_verify(args, dps)
        if args.command == "eval":
            return cmd_eval(args, dps)
        return cmd_list(args)
    except UsageError as exc:
        print(f"qhahn: error: {exc}", file=sys.stderr)
        return 2
    except (QSeriesError, ValueError, ZeroDivisionError) as exc:
        # A verify run that breaks down mid-way is a failed run; anything
        # else here is a bad request.
        print(f"qhahn: error: {exc}", file=sys.stderr)
        return 1 if args.command == "verify" else 2


if __name__ == "__main__":
    sys.exit(main())

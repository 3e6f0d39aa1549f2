"""Command-line front end: analyze, curve and verify."""

from __future__ import annotations

import argparse
import csv
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Literal, TextIO

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError, model_validator

from src.coverage.engine import coverage_curve, inf_closed_coverage, min_hypergeom_coverage, min_open_coverage
from src.coverage.report import CoverageReport
from src.distributions.base import DistributionSpec, Family
from src.oracle.runner import run_verification
from src.oracle.verdict import OracleVerdict, fmt_value
from src.procedures.base import BoundsMode, Direction, IntervalProcedure
from src.procedures.registry import method_registry
from src.procedures.search import predicate_range
from src.procedures.table_io import parse_table, write_table
from src.utils.config import load_config
from src.utils.errors import CertificationError, CoverageError, DomainError, ProcedureError
from src.utils.logging import bind_run_context, get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_UNCERTIFIED = 3
EXIT_UNWRITABLE = 4


class AnalysisRequest(BaseModel):
    """
    One analyze/curve invocation after flag parsing.

    Exactly one procedure source is allowed: a built-in ``method`` (with
    ``delta``) or a ``table`` file whose header supplies the family.
    """

    family: Family | None = None
    n: int | None = None
    N: int | None = None
    r: float | None = None
    method: str | None = None
    delta: float = 0.05
    table: Path | None = None
    range_text: str
    bounds: Literal["open", "closed", "both"] = "closed"
    points: int = 201
    out: Path | None = None
    dump_table: Path | None = None

    @model_validator(mode="after")
    def _one_source(self) -> "AnalysisRequest":
        if (self.method is None) == (self.table is None):
            raise ValueError("give exactly one of --method or --table")
        if self.method is not None and self.family is None:
            raise ValueError("--family is required with --method")
        if self.points < 2:
            raise ValueError(f"--points must be >= 2, got {self.points}")
        return self

    def flag_spec(self) -> DistributionSpec | None:
        """Distribution described by the flags alone, or None when no family flag was given."""
        if self.family is None:
            return None
        if self.family is Family.BINOMIAL:
            return DistributionSpec.binomial(_required(self.n, "--n"))
        if self.family is Family.POISSON:
            return DistributionSpec.poisson(self.n or 1)
        if self.family is Family.NEG_BINOMIAL:
            return DistributionSpec.negbinomial(_required(self.r, "--r"))
        return DistributionSpec.hypergeometric(_required(self.N, "--N"), _required(self.n, "--n"))

    def resolve(self) -> tuple[DistributionSpec, IntervalProcedure, float, float]:
        """Spec, procedure and parsed range."""
        flags = self.flag_spec()
        if self.table is not None:
            spec, proc = parse_table(self.table)
            if flags is not None and flags != spec:
                raise DomainError(f"flags describe {flags.describe()} but {self.table} holds {spec.describe()}")
        else:
            spec = flags  # type: ignore[assignment]
            proc = method_registry.build(str(self.method), spec, self.delta)
        a, b = parse_range(self.range_text, spec.integer_parameter)
        return spec, proc, a, b


def parse_range(text: str, integer: bool) -> tuple[float, float]:
    """
    Parse ``a:b``; integer families reject decimal literals.

    Example:
        >>> parse_range("0.01:0.99", integer=False)
        (0.01, 0.99)
    """
    lo, sep, hi = text.partition(":")
    if not sep:
        raise DomainError(f"range: expected a:b, got {text!r}")
    try:
        a, b = (int(lo), int(hi)) if integer else (float(lo), float(hi))
    except ValueError:
        kind = "integers" if integer else "decimal numbers"
        raise DomainError(f"range: a and b must be {kind}, got {text!r}") from None
    if a > b:
        raise DomainError(f"range: a must be < b, got {text!r}")
    return a, b


def cmd_analyze(request: AnalysisRequest, out: TextIO) -> int:
    spec, proc, a, b = request.resolve()
    if request.dump_table is not None:
        write_table(request.dump_table, spec, proc, _dump_extent(proc, b))
    lines = [
        f"family: {spec.describe()}",
        f"procedure: {proc.describe()}",
        f"range: {fmt_value(a)}:{fmt_value(b)}",
    ]
    modes = ("open", "closed") if request.bounds == "both" else (request.bounds,)
    for mode in modes:
        lines.extend(_report_lines(_analyze(spec, proc, a, b, mode)))
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_curve(request: AnalysisRequest, out: TextIO) -> int:
    spec, proc, a, b = request.resolve()
    if request.bounds == "both":
        raise DomainError("curve takes --bounds open or --bounds closed")
    if a == b:
        raise DomainError("range: a must be < b for a curve")
    mode = BoundsMode.OPEN_OPEN if request.bounds == "open" else BoundsMode.CLOSED_CLOSED
    rows = coverage_curve(spec, proc, a, b, mode, request.points)
    if request.out is None:
        _write_curve(out, rows)
    else:
        with open(request.out, "w", encoding="utf-8", newline="") as f:
            _write_curve(f, rows)
        logger.info("curve_written", path=str(request.out), rows=len(rows))
    return EXIT_OK


def cmd_verify(seed: int, cases: int, out: TextIO) -> int:
    verdicts = run_verification(seed, cases)
    lines: list[str] = []
    for verdict in verdicts:
        lines.extend(_verdict_lines(verdict))
    passed = all(v.passed for v in verdicts)
    lines.append(f"result: {'passed' if passed else 'failed'}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def _analyze(spec: DistributionSpec, proc: IntervalProcedure, a: float, b: float, mode: str) -> CoverageReport:
    if spec.family is Family.HYPERGEOMETRIC:
        bounds = BoundsMode.OPEN_OPEN if mode == "open" else BoundsMode.CLOSED_CLOSED
        return min_hypergeom_coverage(spec, proc, int(a), int(b), bounds)
    if mode == "open":
        return min_open_coverage(spec, proc, a, b)
    return inf_closed_coverage(spec, proc, a, b)


def _report_lines(report: CoverageReport) -> list[str]:
    lines = [f"bounds: {report.bounds_mode.value}"]
    if report.critical_set is not None:
        lines.append(f"critical_points: {len(report.critical_set)}")
        for point in report.critical_set:
            lines.append(f"critical: {fmt_value(point.value)} {point.describe_provenance()}")
    for e in sorted(report.evaluations, key=lambda e: e.sort_key()):
        tag = "" if e.candidate else " (not a candidate)"
        lines.append(f"eval: {fmt_value(e.theta)} {e.quantity.value} {fmt_value(e.value)}{tag}")
    lines.append(f"infimum: {fmt_value(report.infimum)}")
    if report.infimum_exact is not None:
        lines.append(f"infimum_exact: {fmt_value(report.infimum_exact)}")
    lines.append(f"attained: {fmt_value(report.attained)}")
    for w in report.witnesses:
        lines.append(f"witness: {fmt_value(w.theta)} {w.quantity.value} {fmt_value(w.value)}")
    if report.unimodality_ok is not None:
        lines.append(f"unimodality_check: {'passed' if report.unimodality_ok else 'failed'}")
    return lines


def _verdict_lines(verdict: OracleVerdict) -> list[str]:
    status = "passed" if verdict.passed else "failed"
    lines = [
        f"verdict: {verdict.name} {status} checked={verdict.checked} "
        f"worst_discrepancy={fmt_value(verdict.worst_discrepancy)}"
    ]
    for case in verdict.failing_cases:
        lines.append(f"failing: {case.description} expected={case.expected} got={case.got}")
    if verdict.failure_count > len(verdict.failing_cases):
        lines.append(f"failing: ... {verdict.failure_count - len(verdict.failing_cases)} more")
    for reason in verdict.skipped:
        lines.append(f"skipped: {reason}")
    return lines


def _write_curve(stream: TextIO, rows: list) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["theta", "coverage", "breakpoint"])
    for theta, value, point in rows:
        writer.writerow([fmt_value(theta), fmt_value(value), "none" if point is None else point.label()])


def _dump_extent(proc: IntervalProcedure, b: float) -> int | None:
    """Last k to dump: the whole table, or for rule procedures the first k whose bounds lie beyond b."""
    if proc.known_until is not None:
        return None
    if proc.direction is not Direction.NON_DECREASING:
        raise ProcedureError(f"{proc.name}: only non-decreasing rule procedures can be dumped")
    below = predicate_range(proc, "lower", lambda v: v <= b, prefix=True)
    if below.hi is None:
        raise CertificationError(f"{proc.name}: lower bounds never exceed {b!r}; cannot truncate")
    return below.hi + 1


def _required(value, flag: str):
    if value is None:
        raise DomainError(f"{flag} is required for this family")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coverage-cli", description="Exact worst-case coverage of random intervals.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("analyze", "report the exact worst-case coverage"), ("curve", "write a coverage curve CSV")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--family", choices=[f.value for f in Family])
        p.add_argument("--n", type=int, help="binomial trials, Poisson sample count or hypergeometric draws")
        p.add_argument("--N", type=int, help="hypergeometric population size")
        p.add_argument("--r", type=float, help="negative binomial shape")
        p.add_argument("--method", help=f"built-in procedure: {', '.join(method_registry.names())}")
        p.add_argument("--delta", type=float, default=0.05)
        p.add_argument("--table", type=Path, help="procedure-table file")
        p.add_argument("--range", dest="range_text", required=True, metavar="A:B")
        p.add_argument("--bounds", choices=["open", "closed", "both"], default="closed")
        p.add_argument("--points", type=int, default=201)
        p.add_argument("--out", type=Path)
        if name == "analyze":
            p.add_argument("--dump-table", dest="dump_table", type=Path)
    v = sub.add_parser("verify", help="run the seeded engine-versus-oracle suites")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=20)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """Run one command; returns the process exit status."""
    out = out or sys.stdout
    config = load_config()
    setup_logging(level=config["logging"]["level"], json_logs=bool(config["logging"]["json"]))
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    bind_run_context(command=args.command, seed=getattr(args, "seed", None))
    try:
        if args.command == "verify":
            return cmd_verify(args.seed, args.cases, out)
        fields = {k: v for k, v in vars(args).items() if k != "command" and v is not None}
        request = AnalysisRequest(**fields)
        if args.command == "analyze":
            return cmd_analyze(request, out)
        return cmd_curve(request, out)
    except CertificationError as e:
        logger.warning("certification_failed", error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except (CoverageError, ValidationError, ValueError) as e:
        logger.warning("invalid_request", error=str(e))
        print(f"error: {_first_line(e)}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        logger.exception("output_unwritable", error=str(e))
        print(f"error: cannot write output: {e}", file=sys.stderr)
        return EXIT_UNWRITABLE


def _first_line(e: Exception) -> str:
    if isinstance(e, ValidationError):
        return "; ".join(err["msg"] for err in e.errors())
    return str(e)


def run_cli() -> None:
    """Entry point for the coverage-cli script."""
    load_dotenv(Path(__file__).resolve().parent.parent.parent / ".env")
    sys.exit(main())


if __name__ == "__main__":
    run_cli()

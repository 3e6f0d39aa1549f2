"""Read and write the procedure-table file format.

A table file is UTF-8 text::

    # family=binomial n=3 direction=nondecreasing
    0,0.0,0.7
    1,0.01,0.9
    ...
    tail,inf,inf        (unbounded-support families only)
"""

from __future__ import annotations

import math
from pathlib import Path

from pydantic import ValidationError

from src.distributions.base import DistributionSpec, Family
from src.procedures.base import Direction, IntervalProcedure
from src.procedures.base import from_table as build_table
from src.utils.errors import ProcedureError
from src.utils.logging import get_logger

logger = get_logger(__name__)

_HEADER_KEYS = {"family", "n", "N", "r", "direction"}


def parse_table(path: str | Path) -> tuple[DistributionSpec, IntervalProcedure]:
    """
    Parse a procedure-table file into its distribution spec and procedure.

    Raises:
        ProcedureError: any format problem; the message names the offending line.
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise ProcedureError(f"{path}: cannot read table ({e})") from e
    if not lines or not lines[0].startswith("#"):
        raise ProcedureError(f"{path}: line 1: expected header '# family=... n=... direction=...'")
    spec, direction = _parse_header(path, lines[0])
    integer_valued = spec.family is Family.HYPERGEOMETRIC
    lower: list[float] = []
    upper: list[float] = []
    tail: tuple[float, float] | None = None
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if tail is not None:
            raise ProcedureError(f"{path}: line {lineno}: nothing may follow the tail line")
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 3:
            raise ProcedureError(f"{path}: line {lineno}: expected 'k,L,U', got {line!r}")
        if fields[0] == "tail":
            tail = (_number(path, lineno, fields[1], False), _number(path, lineno, fields[2], False))
            continue
        try:
            k = int(fields[0])
        except ValueError:
            raise ProcedureError(f"{path}: line {lineno}: bad k {fields[0]!r}") from None
        if k != len(lower):
            raise ProcedureError(f"{path}: line {lineno}: expected k={len(lower)}, got k={k}")
        lower.append(_number(path, lineno, fields[1], integer_valued))
        upper.append(_number(path, lineno, fields[2], integer_valued))

    unbounded = spec.support_max is None
    if unbounded and tail is None:
        raise ProcedureError(f"{path}: {spec.family.value} tables need a trailing 'tail,L_limit,U_limit' line")
    if not unbounded:
        if tail is not None:
            raise ProcedureError(f"{path}: tail line not allowed for bounded-support {spec.family.value}")
        if len(lower) != spec.support_max + 1:  # type: ignore[operator]
            raise ProcedureError(
                f"{path}: {spec.describe()} needs k = 0..{spec.support_max}, table has {len(lower)} rows"
            )
    proc = build_table(
        lower,
        upper,
        direction,
        unbounded=unbounded,
        tail_limits=tail,
        integer_valued=integer_valued,
        name=path.name,
    )
    logger.info("table_parsed", path=str(path), family=spec.family.value, rows=len(lower))
    return spec, proc


def write_table(path: str | Path, spec: DistributionSpec, proc: IntervalProcedure, upto: int | None = None) -> int:
    """
    Dump ``proc`` in the table format with round-trip exact floats.

    ``upto`` is required for rule-based procedures and names the last k written.
    Returns the number of k rows written.
    """
    if upto is None:
        if proc.known_until is None:
            raise ProcedureError(f"{proc.name}: rule-based procedure needs an explicit last k to dump")
        upto = proc.known_until
    header = [f"# family={spec.family.value}", f"n={spec.n_samples}"]
    if spec.N_population is not None:
        header.append(f"N={spec.N_population}")
    if spec.r is not None:
        header.append(f"r={spec.r!r}")
    header.append(f"direction={proc.direction.value}")
    rows = [" ".join(header)]
    for k in range(upto + 1):
        rows.append(f"{k},{_format(proc.lower(k))},{_format(proc.upper(k))}")
    if spec.support_max is None:
        if proc.tail_limits is None:
            raise ProcedureError(f"{proc.name}: cannot dump an unbounded procedure without tail limits")
        rows.append(f"tail,{_format(proc.tail_limits[0])},{_format(proc.tail_limits[1])}")
    Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")
    logger.info("table_written", path=str(path), rows=upto + 1)
    return upto + 1


def _parse_header(path: Path, line: str) -> tuple[DistributionSpec, Direction]:
    fields: dict[str, str] = {}
    for token in line.lstrip("#").split():
        key, sep, value = token.partition("=")
        if not sep or key not in _HEADER_KEYS:
            raise ProcedureError(f"{path}: line 1: unexpected header field {token!r}")
        fields[key] = value
    for required in ("family", "n", "direction"):
        if required not in fields:
            raise ProcedureError(f"{path}: line 1: header is missing {required}=")
    try:
        family = Family(fields["family"])
        direction = Direction(fields["direction"])
        spec = DistributionSpec(
            family=family,
            n_samples=int(fields["n"]),
            N_population=int(fields["N"]) if "N" in fields else None,
            r=float(fields["r"]) if "r" in fields else None,
        )
    except (ValueError, ValidationError) as e:
        raise ProcedureError(f"{path}: line 1: {e}") from e
    if family is Family.HYPERGEOMETRIC and direction is not Direction.NON_DECREASING:
        raise ProcedureError(f"{path}: line 1: hypergeometric procedures must be nondecreasing")
    return spec, direction


def _number(path: Path, lineno: int, text: str, integer: bool) -> float:
    try:
        value = int(text) if integer else float(text)
    except ValueError:
        kind = "integer" if integer else "number"
        raise ProcedureError(f"{path}: line {lineno}: expected {kind}, got {text!r}") from None
    if not integer and math.isnan(value):
        raise ProcedureError(f"{path}: line {lineno}: NaN bound")
    return value


def _format(value: float) -> str:
    if isinstance(value, int):
        return str(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))

"""Unit tests for critical-set construction."""

import pytest

from src.coverage import breakpoints_continuous, breakpoints_hypergeom, gap_violations
from src.coverage.critical_set import Provenance, ProvenanceKind
from src.procedures import from_table, garwood_poisson
from src.utils.errors import CertificationError, DomainError, ProcedureError


def _three_step():
    return from_table([0.0, 0.2, 0.4], [0.5, 0.7, 0.9])


def _hypergeom_tables():
    return from_table([0, 1, 3, 5, 7], [3, 5, 7, 9, 10], integer_valued=True)


def test_constant_procedure_has_only_endpoints():
    proc = from_table([0.0] * 4, [1.0] * 4)
    assert breakpoints_continuous(proc, 0.2, 0.8).values() == [0.2, 0.8]


def test_interior_breakpoints_are_collected():
    cset = breakpoints_continuous(_three_step(), 0.1, 0.75)
    assert cset.values() == [0.1, 0.2, 0.4, 0.5, 0.7, 0.75]
    labels = [p.label() for p in cset]
    assert labels == ["endpoint", "L", "L", "U", "U", "endpoint"]
    assert gap_violations(_three_step(), cset) == []


def test_shared_value_keeps_both_provenances():
    proc = from_table([0.0, 0.3], [0.3, 0.9])
    cset = breakpoints_continuous(proc, 0.1, 0.8)
    point = next(p for p in cset if p.value == 0.3)
    assert point.label() == "LU"
    assert point.provenance == frozenset(
        {Provenance(ProvenanceKind.LOWER_BREAK, 1), Provenance(ProvenanceKind.UPPER_BREAK, 0)}
    )
    assert point.describe_provenance() == "L(1),U(0)"


def test_endpoint_on_a_bound_is_not_an_interior_breakpoint():
    cset = breakpoints_continuous(_three_step(), 0.2, 0.75)
    first = cset.points[0]
    assert first.value == 0.2
    assert first.is_endpoint and not first.is_lower_break


def test_rejects_empty_range():
    with pytest.raises(DomainError, match="a must be < b"):
        breakpoints_continuous(_three_step(), 0.5, 0.5)


def test_garwood_breakpoints_are_complete():
    proc = garwood_poisson(1, 0.05)
    cset = breakpoints_continuous(proc, 0.0, 1.0)
    scanned = {proc.lower(k) for k in range(51)} | {proc.upper(k) for k in range(51)}
    expected = sorted(v for v in scanned if 0.0 < v < 1.0)
    assert cset.values() == [0.0, *expected, 1.0]


def test_uncertifiable_tail_raises():
    proc = from_table([0.0, 1.0, 2.0], [3.0, 4.0, 5.0], unbounded=True, tail_limits=(10.0, 20.0))
    with pytest.raises(CertificationError):
        breakpoints_continuous(proc, 0.0, 15.0)


def test_hypergeometric_examples():
    proc = _hypergeom_tables()
    assert breakpoints_hypergeom(proc, 0, 10, 10).values() == [0, 1, 3, 5, 7, 9, 10]
    middle = breakpoints_hypergeom(proc, 4, 6, 10)
    assert middle.values() == [4, 5, 6]
    five = middle.points[1]
    assert five.provenance == frozenset(
        {Provenance(ProvenanceKind.LOWER_BREAK, 3), Provenance(ProvenanceKind.UPPER_BREAK, 1)}
    )


def test_hypergeometric_trivial_procedure():
    proc = from_table([0] * 4, [10] * 4, integer_valued=True)
    assert breakpoints_hypergeom(proc, 2, 7, 10).values() == [2, 7]


def test_hypergeometric_preconditions():
    with pytest.raises(ProcedureError, match="integer-valued"):
        breakpoints_hypergeom(from_table([0.0, 1.0], [3.0, 4.0]), 0, 5, 5)
    with pytest.raises(ProcedureError, match="non-decreasing"):
        breakpoints_hypergeom(from_table([4, 1], [5, 3], "nonincreasing", integer_valued=True), 0, 5, 5)
    with pytest.raises(DomainError):
        breakpoints_hypergeom(_hypergeom_tables(), 0, 11, 10)
    with pytest.raises(DomainError):
        breakpoints_hypergeom(_hypergeom_tables(), 1.5, 4, 10)

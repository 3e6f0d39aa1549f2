"""Unit tests for the brute-force oracles and the verification runner."""

import copy
from fractions import Fraction

import pytest

from src.distributions import DistributionSpec
from src.distributions.exact import comb0
from src.oracle import (
    FailingCase,
    OracleVerdict,
    check_appendix_b,
    check_unimodal_between,
    exhaustive_min_hypergeom,
    grid_min,
    hypergeom_scan,
    run_verification,
)
from src.oracle.verdict import MAX_RECORDED_FAILURES, VerdictBuilder, fmt_value
from src.procedures import BoundsMode, from_table
from src.utils.config import load_config
from src.utils.errors import DomainError


def test_unimodal_examples():
    assert check_unimodal_between([0, 1, 0.5])
    assert not check_unimodal_between([0, 1, 0, 1])
    assert check_unimodal_between([0.3] * 5)
    assert check_unimodal_between([3, 2, 1])


def test_unimodal_tolerance_absorbs_small_wiggle():
    values = [0.1, 0.5, 0.5 - 1e-14, 0.5, 0.2]
    assert not check_unimodal_between(values)
    assert check_unimodal_between(values, tol=1e-12)


def test_unimodal_needs_two_values():
    with pytest.raises(DomainError):
        check_unimodal_between([1.0])


def test_grid_min_constant_procedure():
    proc = from_table([0.0] * 4, [1.0] * 4)
    _, value = grid_min(DistributionSpec.binomial(3), proc, 0.1, 0.9, BoundsMode.CLOSED_CLOSED, 101)
    assert value == pytest.approx(1.0, abs=1e-12)


def test_grid_min_finds_open_dip_at_critical_point():
    proc = from_table([0.0, 0.5], [0.5, 1.0])
    theta, value = grid_min(DistributionSpec.binomial(1), proc, 0.1, 0.9, BoundsMode.OPEN_OPEN, 101)
    assert theta == 0.5
    assert value == 0.0


def test_grid_min_rejects_hypergeometric():
    proc = from_table([0, 1], [1, 2], integer_valued=True)
    with pytest.raises(DomainError):
        grid_min(DistributionSpec.hypergeometric(2, 1), proc, 0, 2, BoundsMode.OPEN_OPEN, 11)


def test_exhaustive_trivial_hypergeometric_is_one():
    N, n = 8, 3
    proc = from_table([0] * (n + 1), [N] * (n + 1), integer_valued=True)
    M, value = exhaustive_min_hypergeom(DistributionSpec.hypergeometric(N, n), proc, 0, N, BoundsMode.CLOSED_CLOSED)
    assert (M, value) == (0, Fraction(1))


def test_hypergeom_scan_exact_and_float_agree():
    spec = DistributionSpec.hypergeometric(10, 4)
    proc = from_table([0, 1, 3, 5, 7], [3, 5, 7, 9, 10], integer_valued=True)
    exact = hypergeom_scan(spec, proc, 0, 10, exact=True)
    approx = hypergeom_scan(spec, proc, 0, 10, exact=False)
    assert [M for M, _ in exact] == list(range(11))
    for (_, fx), (_, fl) in zip(exact, approx):
        assert isinstance(fx, Fraction)
        assert float(fx) == pytest.approx(fl, abs=1e-13)


def test_hypergeom_scan_rejects_bad_range():
    spec = DistributionSpec.hypergeometric(10, 4)
    proc = from_table([0, 1, 3, 5, 7], [3, 5, 7, 9, 10], integer_valued=True)
    with pytest.raises(DomainError, match="range"):
        hypergeom_scan(spec, proc, 0, 11)


@pytest.mark.parametrize("N,n", [(4, 2), (10, 3), (20, 6)])
def test_appendix_b_identities_hold(N, n):
    verdict = check_appendix_b(N, n)
    assert verdict.passed
    assert verdict.worst_discrepancy == 0.0
    assert verdict.checked > 0
    assert verdict.skipped == []


def test_appendix_b_single_draw_records_skip():
    verdict = check_appendix_b(5, 1)
    assert verdict.passed
    assert any("n >= 2" in reason for reason in verdict.skipped)


@pytest.mark.parametrize("N,n", [(301, 2), (3, 4), (5, 0)])
def test_appendix_b_rejects_out_of_range(N, n):
    with pytest.raises(DomainError):
        check_appendix_b(N, n)


def test_appendix_b_detects_wrong_weight():
    def off_by_one(k, M, N, n):
        return comb0(M, k) * comb0(N - M, n - k - 1)

    verdict = check_appendix_b(6, 3, t_numerator=off_by_one)
    assert not verdict.passed
    assert verdict.failure_count >= len(verdict.failing_cases) > 0
    assert verdict.worst_discrepancy > 0
    assert "cdf(k|M) - cdf(k|M+1) == T(k, M)" in verdict.failing_cases[0].description


def test_verdict_passed_tracks_failing_cases():
    assert OracleVerdict(name="empty").passed
    failing = OracleVerdict(name="bad", failing_cases=[FailingCase(description="x", expected="1", got="2")])
    assert not failing.passed
    assert failing.model_dump()["passed"] is False


def test_builder_caps_recorded_failures():
    builder = VerdictBuilder("many")
    for i in range(MAX_RECORDED_FAILURES + 7):
        builder.fail(f"case {i}", 0.0, 1.0, 1.0)
    verdict = builder.finish()
    assert verdict.failure_count == MAX_RECORDED_FAILURES + 7
    assert len(verdict.failing_cases) == MAX_RECORDED_FAILURES
    assert verdict.worst_discrepancy == 1.0


def test_fmt_value_is_stable():
    assert fmt_value(0.1) == "0.10000000000000001"
    assert fmt_value(Fraction(3, 6)) == "1/2"
    assert fmt_value(True) == "true"
    assert fmt_value(7) == "7"


def _small_config():
    config = copy.deepcopy(load_config())
    config["verify"].update(grid_points=201, unimodal_samples=10, appendix_b_ladder=[[4, 2]])
    return config


def test_run_verification_small_passes():
    verdicts = run_verification(7, 1, _small_config())
    names = [v.name for v in verdicts]
    assert names[:6] == [
        "open-reduction",
        "closed-infimum",
        "hypergeometric-reduction",
        "unimodality",
        "one-sided-limit",
        "clopper-pearson",
    ]
    assert names[-1] == "appendix-b(N=4, n=2)"
    assert all(v.passed for v in verdicts), [c for v in verdicts for c in v.failing_cases]


def test_run_verification_is_deterministic():
    first = [v.model_dump() for v in run_verification(3, 1, _small_config())]
    second = [v.model_dump() for v in run_verification(3, 1, _small_config())]
    assert first == second


def test_run_verification_needs_a_case():
    with pytest.raises(DomainError):
        run_verification(0, 0, _small_config())

"""Unit tests for interval procedures, built-ins and k-interval searches."""

import math

import numpy as np
import pytest
from scipy import special

from src.distributions import DistributionSpec, KIndexInterval
from src.procedures import (
    BoundsMode,
    Direction,
    clopper_pearson,
    from_table,
    garwood_poisson,
    k_interval_for,
    method_registry,
    wilson_score,
)
from src.utils.errors import CertificationError, DomainError, ProcedureError

MODES = list(BoundsMode)


def _three_step():
    return from_table([0.0, 0.2, 0.4], [0.5, 0.7, 0.9], "nondecreasing")


def test_from_table_accepts_constant_and_increasing_tables():
    constant = from_table([0, 0, 0], [1, 1, 1], Direction.NON_DECREASING)
    assert constant.support_max == 2
    proc = from_table([0.0, 0.05, 0.12], [0.31, 0.45, 0.60], "nondecreasing")
    assert proc.upper(2) == 0.6


def test_from_table_rejects_lower_above_upper():
    with pytest.raises(ProcedureError, match="L\\(1\\)"):
        from_table([0.1, 0.3], [0.2, 0.25])


def test_from_table_rejects_length_mismatch_and_direction():
    with pytest.raises(ProcedureError, match="length"):
        from_table([0.0, 0.1], [0.5])
    with pytest.raises(ProcedureError, match="nondecreasing"):
        from_table([0.2, 0.1], [0.5, 0.6])
    with pytest.raises(ProcedureError):
        from_table([], [])


def test_unbounded_table_needs_consistent_tail():
    with pytest.raises(ProcedureError):
        from_table([0.0, 1.0], [2.0, 3.0], unbounded=True)
    with pytest.raises(ProcedureError):
        from_table([0.0, 1.0], [2.0, 3.0], unbounded=True, tail_limits=(0.5, 5.0))


def test_clopper_pearson_boundary_conventions():
    proc = clopper_pearson(1, 0.05)
    assert proc.lower(0) == 0.0
    assert proc.upper(1) == 1.0


def test_clopper_pearson_closed_forms():
    proc = clopper_pearson(10, 0.05)
    assert proc.upper(0) == pytest.approx(1 - 0.025**0.1, abs=1e-10)
    assert proc.lower(10) == pytest.approx(0.025**0.1, abs=1e-10)


def test_clopper_pearson_tail_equations():
    n, delta = 12, 0.1
    proc = clopper_pearson(n, delta)
    for k in range(1, n + 1):
        assert special.bdtrc(k - 1, n, proc.lower(k)) == pytest.approx(delta / 2, abs=1e-10)
    for k in range(n):
        assert special.bdtr(k, n, proc.upper(k)) == pytest.approx(delta / 2, abs=1e-10)


def test_garwood_poisson_closed_form_and_monotone():
    proc = garwood_poisson(1, 0.05)
    assert proc.lower(0) == 0.0
    assert proc.upper(0) == pytest.approx(math.log(40), abs=1e-9)
    assert proc.tail_limits == (math.inf, math.inf)
    for k in range(200):
        assert proc.lower(k) < proc.lower(k + 1)
        assert proc.upper(k) < proc.upper(k + 1)


def test_wilson_score_is_clipped_and_monotone():
    proc = wilson_score(10, 0.05)
    assert proc.lower(0) == pytest.approx(0.0, abs=1e-15)
    assert proc.upper(10) == pytest.approx(1.0, abs=1e-15)
    assert all(0.0 <= proc.lower(k) <= proc.upper(k) <= 1.0 for k in range(11))


def test_k_interval_examples():
    proc = _three_step()
    assert k_interval_for(proc, 0.2, BoundsMode.OPEN_OPEN) == KIndexInterval(0, 0)
    assert k_interval_for(proc, 0.2, BoundsMode.CLOSED_OPEN) == KIndexInterval(0, 1)
    assert k_interval_for(proc, 0.95, BoundsMode.OPEN_OPEN).empty


def test_k_interval_constant_procedure_is_full_support():
    proc = from_table([0.0] * 6, [1.0] * 6)
    assert k_interval_for(proc, 0.5, BoundsMode.OPEN_OPEN) == KIndexInterval(0, 5)


def test_k_interval_matches_brute_force_on_random_tables():
    rng = np.random.default_rng(11)
    for _ in range(40):
        size = int(rng.integers(1, 40))
        lower = np.sort(np.round(rng.uniform(0, 1, size), 2))
        upper = np.maximum(np.sort(np.round(rng.uniform(0, 1, size), 2)), lower)
        direction = Direction.NON_DECREASING
        if rng.random() < 0.5:
            lower, upper, direction = lower[::-1], upper[::-1], Direction.NON_INCREASING
        proc = from_table(lower.tolist(), upper.tolist(), direction)
        thetas = list(rng.uniform(0, 1, 5)) + [float(lower[0]), float(upper[-1])]
        for theta in thetas:
            for mode in MODES:
                found = k_interval_for(proc, float(theta), mode)
                expected = {k for k in range(size) if proc.covers(k, float(theta), mode)}
                assert {k for k in range(size) if found.contains(k)} == expected


def test_mode_nesting():
    proc = from_table([0.0, 0.2, 0.2, 0.4], [0.2, 0.4, 0.7, 0.9])

    def members(theta, mode):
        rng = k_interval_for(proc, theta, mode)
        return {k for k in range(4) if rng.contains(k)}

    for theta in (0.0, 0.1, 0.2, 0.4, 0.55, 0.9):
        open_ = members(theta, BoundsMode.OPEN_OPEN)
        closed = members(theta, BoundsMode.CLOSED_CLOSED)
        assert open_ <= members(theta, BoundsMode.CLOSED_OPEN) <= closed
        assert open_ <= members(theta, BoundsMode.OPEN_CLOSED) <= closed


def test_unbounded_table_uses_certified_tail():
    proc = from_table([0.0, 1.0, 2.0], [3.0, 4.0, 5.0], unbounded=True, tail_limits=(float("inf"), float("inf")))
    assert k_interval_for(proc, 1.5, BoundsMode.OPEN_OPEN) == KIndexInterval(0, 1)
    assert proc.covers(7, 1.5, BoundsMode.OPEN_OPEN) is False


def test_unbounded_table_raises_when_tail_undecided():
    proc = from_table([0.0, 1.0, 2.0], [3.0, 4.0, 5.0], unbounded=True, tail_limits=(10.0, 20.0))
    with pytest.raises(CertificationError):
        k_interval_for(proc, 5.5, BoundsMode.OPEN_OPEN)


def test_rule_procedure_event_is_finite():
    proc = garwood_poisson(2, 0.05)
    rng = k_interval_for(proc, 3.0, BoundsMode.CLOSED_CLOSED)
    assert not rng.empty and rng.hi is not None
    for k in range(0, rng.hi + 5):
        assert rng.contains(k) == proc.covers(k, 3.0, BoundsMode.CLOSED_CLOSED)


def test_shifted_procedure_moves_both_bounds():
    proc = from_table([0, 1, 3], [3, 5, 7], integer_valued=True)
    wide = proc.shifted(-1, 1)
    assert wide.lower(2) == 2
    assert wide.upper(0) == 4


def test_method_registry_lookup():
    assert {"clopper-pearson", "garwood", "wilson"} <= set(method_registry.names())
    proc = method_registry.build("clopper-pearson", DistributionSpec.binomial(5), 0.05)
    assert proc.support_max == 5
    with pytest.raises(DomainError, match="binomial"):
        method_registry.build("clopper-pearson", DistributionSpec.poisson(), 0.05)
    with pytest.raises(DomainError, match="unknown method"):
        method_registry.build("jeffreys", DistributionSpec.binomial(5), 0.05)
    with pytest.raises(DomainError):
        method_registry.build("wilson", DistributionSpec.binomial(5), 1.5)

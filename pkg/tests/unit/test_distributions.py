"""Unit tests for distribution kernels and the exact hypergeometric path."""

import math
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError

from src.distributions import (
    DistributionSpec,
    KIndexInterval,
    cdf,
    interval_prob,
    pmf,
    pmf_exact,
    t_weight,
    t_weight_exact,
)
from src.distributions.exact import cdf_numerator, interval_prob_exact
from src.utils.errors import DomainError


def test_binomial_pmf_symmetric_case():
    assert pmf(DistributionSpec.binomial(2), 0.5, 1) == pytest.approx(0.5, rel=1e-13)


def test_binomial_pmf_degenerate_p_zero():
    spec = DistributionSpec.binomial(10)
    assert pmf(spec, 0.0, 0) == 1.0
    assert pmf(spec, 0.0, 3) == 0.0


def test_binomial_pmf_outside_support_is_zero():
    spec = DistributionSpec.binomial(4)
    assert pmf(spec, 0.3, -1) == 0.0
    assert pmf(spec, 0.3, 5) == 0.0


def test_hypergeometric_pmf_float_and_exact():
    spec = DistributionSpec.hypergeometric(4, 2)
    assert pmf(spec, 2, 1) == pytest.approx(2 / 3, rel=1e-13)
    assert pmf_exact(spec, 2, 1) == Fraction(2, 3)


def test_negbinomial_pmf_matches_closed_form():
    spec = DistributionSpec.negbinomial(2.0)
    p, k = 0.3, 4
    expected = math.comb(k + 1, k) * p**2 * (1 - p) ** k
    assert pmf(spec, p, k) == pytest.approx(expected, rel=1e-13)


def test_poisson_pmf_uses_scaled_mean():
    spec = DistributionSpec.poisson(3)
    lam, k = 0.5, 2
    expected = math.exp(-1.5) * 1.5**2 / 2
    assert pmf(spec, lam, k) == pytest.approx(expected, rel=1e-13)


def test_interval_prob_empty_range_is_zero():
    assert interval_prob(DistributionSpec.binomial(5), 0.3, KIndexInterval.nothing()) == 0.0
    assert interval_prob(DistributionSpec.poisson(), 2.0, KIndexInterval.nothing()) == 0.0


def test_interval_prob_full_binomial_range_normalises():
    assert interval_prob(DistributionSpec.binomial(5), 0.3, KIndexInterval(0, 5)) == pytest.approx(1.0, abs=1e-13)


def test_poisson_upper_tail_matches_direct_series():
    spec = DistributionSpec.poisson(2)
    tail = interval_prob(spec, 1.5, KIndexInterval(4, None))
    series = math.fsum(math.exp(-3.0) * 3.0**k / math.factorial(k) for k in range(4, 120))
    complement = 1.0 - math.fsum(math.exp(-3.0) * 3.0**k / math.factorial(k) for k in range(4))
    assert tail == pytest.approx(series, abs=1e-12)
    assert tail == pytest.approx(complement, abs=1e-12)


def test_unbounded_range_on_bounded_family_is_rejected():
    with pytest.raises(DomainError):
        interval_prob(DistributionSpec.binomial(5), 0.3, KIndexInterval(2, None))


def test_parameter_out_of_range_is_rejected():
    with pytest.raises(DomainError):
        pmf(DistributionSpec.binomial(5), 1.2, 0)
    with pytest.raises(DomainError):
        pmf(DistributionSpec.negbinomial(1.0), 0.0, 0)
    with pytest.raises(DomainError):
        pmf(DistributionSpec.hypergeometric(10, 3), 2.5, 0)


def test_spec_invariants():
    with pytest.raises(ValidationError):
        DistributionSpec.hypergeometric(3, 4)
    with pytest.raises(ValidationError):
        DistributionSpec.negbinomial(0.0)
    with pytest.raises(ValidationError):
        DistributionSpec(family="binomial", n_samples=3, r=1.0)
    assert DistributionSpec.geometric() == DistributionSpec.negbinomial(1)


def test_t_weight_examples():
    assert t_weight(-1, 3, 10, 3) == 0.0
    assert t_weight(0, 0, 10, 3) == pytest.approx(0.3)
    assert t_weight_exact(0, 0, 10, 3) == Fraction(36, 120)


def test_t_weight_rejects_bad_arguments():
    with pytest.raises(DomainError):
        t_weight_exact(0, 10, 10, 3)
    with pytest.raises(DomainError):
        t_weight_exact(0, 2, 10, 0)


def test_cdf_shift_equals_t_weight_exactly():
    N, n = 20, 6
    denominator = math.comb(N, n)
    for M in range(N):
        for k in range(-1, n + 2):
            step = Fraction(cdf_numerator(k, M, N, n) - cdf_numerator(k, M + 1, N, n), denominator)
            assert step == t_weight_exact(k, M, N, n), (k, M)


def test_interval_prob_exact_agrees_with_float_path():
    spec = DistributionSpec.hypergeometric(30, 7)
    rng = KIndexInterval(2, 5)
    for M in (0, 5, 12, 30):
        assert float(interval_prob_exact(spec, M, rng)) == pytest.approx(interval_prob(spec, M, rng), abs=1e-13)


def test_kindex_interval_operations():
    a = KIndexInterval(2, 8)
    assert a.intersect(KIndexInterval(5, None)) == KIndexInterval(5, 8)
    assert a.intersect(KIndexInterval(9, 12)).empty
    assert str(KIndexInterval.span(3, 1)) == "{}"
    assert str(KIndexInterval(0, None)) == "{0..inf}"
    assert KIndexInterval(0, None).unbounded
    with pytest.raises(DomainError):
        KIndexInterval(4, 2)


def test_normalisation_and_cdf_monotone_on_random_specs():
    rng = np.random.default_rng(3)
    for _ in range(60):
        choice = rng.integers(4)
        if choice == 0:
            spec, theta = DistributionSpec.binomial(int(rng.integers(1, 300))), float(rng.uniform())
        elif choice == 1:
            spec, theta = DistributionSpec.poisson(int(rng.integers(1, 5))), float(rng.uniform(0, 50))
        elif choice == 2:
            spec, theta = DistributionSpec.negbinomial(float(rng.uniform(0.2, 6))), float(rng.uniform(0.05, 0.95))
        else:
            N = int(rng.integers(2, 200))
            spec, theta = DistributionSpec.hypergeometric(N, int(rng.integers(1, N + 1))), int(rng.integers(0, N + 1))
        whole = KIndexInterval(0, spec.support_max)
        assert interval_prob(spec, theta, whole) == pytest.approx(1.0, abs=1e-12)
        values = [cdf(spec, theta, k) for k in range(0, 60)]
        assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))


def _binomial_exact(n: int, k: int, p: Fraction) -> Fraction:
    return math.comb(n, k) * p**k * (1 - p) ** (n - k)


def _poisson_reference(mean: int, k: int) -> float:
    with localcontext() as ctx:
        ctx.prec = 50
        log_factorial = sum(Decimal(j).ln() for j in range(2, k + 1))
        return float((k * Decimal(mean).ln() - mean - log_factorial).exp())


@pytest.mark.parametrize(
    "n,k,p",
    [
        (1000, 300, Fraction(5, 16)),
        (1000, 12, Fraction(1, 64)),
        (5000, 4900, Fraction(63, 64)),
        (20000, 6090, Fraction(39, 128)),
    ],
)
def test_binomial_pmf_relative_accuracy(n, k, p):
    got = pmf(DistributionSpec.binomial(n), float(p), k)
    assert got == pytest.approx(float(_binomial_exact(n, k, p)), rel=1e-13, abs=0)


@pytest.mark.parametrize("mean,k", [(3000, 3100), (3000, 2950), (7, 40), (1, 0)])
def test_poisson_pmf_relative_accuracy(mean, k):
    got = pmf(DistributionSpec.poisson(), float(mean), k)
    assert got == pytest.approx(_poisson_reference(mean, k), rel=1e-13, abs=0)


def test_negbinomial_pmf_relative_accuracy_non_integer_shape():
    r, p, k = Fraction(7, 2), Fraction(1, 8), 20
    rising = math.prod(r + j for j in range(k)) / math.factorial(k)
    with localcontext() as ctx:
        ctx.prec = 50
        scale = Decimal(rising.numerator) / Decimal(rising.denominator)
        expected = scale * Decimal(0.125) ** Decimal("3.5") * Decimal(0.875) ** k
    got = pmf(DistributionSpec.negbinomial(3.5), 0.125, k)
    assert got == pytest.approx(float(expected), rel=1e-13, abs=0)


@pytest.mark.parametrize("N,n,M,k", [(300, 100, 150, 50), (300, 100, 10, 0), (20000, 5000, 8000, 2000)])
def test_hypergeometric_pmf_relative_accuracy(N, n, M, k):
    spec = DistributionSpec.hypergeometric(N, n)
    assert pmf(spec, M, k) == pytest.approx(float(pmf_exact(spec, M, k)), rel=1e-13, abs=0)

"""Exhaustive exact checks of the hypergeometric weight identities and inequalities.

Every probability is an integer numerator over C(N, n); tables are numpy
object arrays of Python ints so all comparisons are exact.
"""

from __future__ import annotations

from collections.abc import Callable
from fractions import Fraction
from math import comb

import numpy as np

from src.distributions.exact import pmf_numerator, t_weight_numerator
from src.oracle.verdict import OracleVerdict, VerdictBuilder
from src.utils.config import config_setting
from src.utils.errors import DomainError
from src.utils.logging import get_logger

logger = get_logger(__name__)

TNumerator = Callable[[int, int, int, int], int]


class _Tables:
    """cdf and T numerators for one (N, n)."""

    def __init__(self, N: int, n: int, t_numerator: TNumerator) -> None:
        self.N, self.n = N, n
        self.denominator = comb(N, n)
        pmf = np.array([[pmf_numerator(k, M, N, n) for k in range(n + 1)] for M in range(N + 1)], dtype=object)
        cdf = np.zeros((N + 1, n + 2), dtype=object)
        cdf[:, 1:] = np.cumsum(pmf, axis=1)
        # cdf[M, j] is the numerator of Pr{K <= j - 1 | M}
        self.cdf = cdf
        # t[k + 2, M] for k = -2..n+1 and M = 0..N-1
        self.t = np.array([[t_numerator(k, M, N, n) for M in range(N)] for k in range(-2, n + 2)], dtype=object)

    def cdf_at(self, k: np.ndarray | int) -> np.ndarray:
        """Pr{K <= k | M} numerators for every M (leading axis), any integer k."""
        return self.cdf[:, np.clip(np.asarray(k) + 1, 0, self.n + 1)]

    def interval(self, g: np.ndarray, h: np.ndarray) -> np.ndarray:
        """Pr{g <= K <= h | M} numerators, zero where g > h."""
        return np.where(g <= h, self.cdf_at(h) - self.cdf_at(g - 1), 0)

    def T(self, k: int, M: int) -> int:
        return self.t[k + 2, M]

    def frac(self, numerator: int) -> Fraction:
        return Fraction(numerator, self.denominator)


def check_appendix_b(N: int, n: int, *, t_numerator: TNumerator | None = None) -> OracleVerdict:
    """
    Verify the T-weight identities and inequalities for one (N, n) exhaustively in exact arithmetic.

    Checks the cdf step identity, the interval difference identity, both floor
    bounds relating n M / (N + 1) to the T peak (n >= 2), T monotonicity in k and
    in M, unimodality in M of every interval probability, and the two shift
    inequalities for g, h in [-1, n + 1]. ``t_numerator`` replaces the T weight
    under test.

    Raises:
        DomainError: not 0 < n <= N, or N above the exact population limit.
    """
    limit = int(config_setting("oracle", "exact_population_limit"))
    if not 0 < n <= N:
        raise DomainError(f"need 0 < n <= N, got N={N}, n={n}")
    if N > limit:
        raise DomainError(f"N={N} exceeds the exact population limit {limit}")
    tables = _Tables(N, n, t_numerator or t_weight_numerator)
    builder = VerdictBuilder(name=f"appendix-b(N={N}, n={n})")
    _check_cdf_step(tables, builder)
    _check_interval_difference(tables, builder)
    if n >= 2:
        _check_floor_bounds(tables, builder)
    else:
        builder.skip("floor bounds and T monotonicity in M need n >= 2")
    _check_t_monotone(tables, builder)
    _check_unimodal_in_m(tables, builder)
    _check_shift_inequalities(tables, builder)
    verdict = builder.finish()
    log = logger.info if verdict.passed else logger.warning
    log("appendix_b_checked", N=N, n=n, checked=verdict.checked, failures=verdict.failure_count)
    return verdict


def _check_cdf_step(tables: _Tables, builder: VerdictBuilder) -> None:
    ks = np.arange(-1, tables.n + 2)
    cdf = tables.cdf_at(ks)
    lhs = cdf[:-1] - cdf[1:]
    rhs = tables.t[ks + 2, :].T
    _expect_equal(
        tables, builder, lhs, rhs, lambda M, i: f"cdf(k|M) - cdf(k|M+1) == T(k, M) at k={ks[i]}, M={M}"
    )


def _check_interval_difference(tables: _Tables, builder: VerdictBuilder) -> None:
    span = np.arange(-1, tables.n + 2)
    kk, ll = np.meshgrid(span, span, indexing="ij")
    probs = tables.interval(kk, ll)
    lhs = probs[1:] - probs[:-1]
    rhs = np.moveaxis(tables.t[kk + 1], -1, 0) - np.moveaxis(tables.t[ll + 2], -1, 0)
    mask = np.broadcast_to(kk <= ll, lhs.shape)
    _expect_equal(
        tables,
        builder,
        lhs,
        rhs,
        lambda m, i, j: f"interval difference at k={span[i]}, l={span[j]}, M={m + 1}",
        mask=mask,
    )


def _check_floor_bounds(tables: _Tables, builder: VerdictBuilder) -> None:
    N, n = tables.N, tables.n
    for M in range(N + 1):
        peak = n * M // (N + 1)
        for l in range(n + 1):
            if M >= 1 + N * l // (n - 1):
                _expect_true(builder, peak >= l, f"floor(nM/(N+1)) >= l at l={l}, M={M}", l, peak)
        for k in range(n):
            if M <= 1 + N * (k - 1) // (n - 1):
                _expect_true(builder, peak <= k - 1, f"floor(nM/(N+1)) <= k-1 at k={k}, M={M}", k - 1, peak)


def _check_t_monotone(tables: _Tables, builder: VerdictBuilder) -> None:
    N, n, T = tables.N, tables.n, tables.T
    for M in range(1, N + 1):
        peak = n * M // (N + 1)
        for r in range(1, peak + 1):
            _expect_at_most(tables, builder, T(r - 1, M - 1), T(r, M - 1), f"T(r-1, M-1) <= T(r, M-1) at r={r}, M={M}")
        for r in range(peak, n):
            _expect_at_most(tables, builder, T(r + 1, M - 1), T(r, M - 1), f"T(r+1, M-1) <= T(r, M-1) at r={r}, M={M}")
    if n < 2:
        return
    for r in range(n + 1):
        turn = 1 + N * r // (n - 1)
        for M in range(2, min(turn, N) + 1):
            _expect_at_most(tables, builder, T(r, M - 2), T(r, M - 1), f"T(r, M-2) <= T(r, M-1) at r={r}, M={M}")
        for M in range(max(turn, 1), N):
            _expect_at_most(tables, builder, T(r, M), T(r, M - 1), f"T(r, M) <= T(r, M-1) at r={r}, M={M}")


def _check_unimodal_in_m(tables: _Tables, builder: VerdictBuilder) -> None:
    if tables.N < 2:
        builder.skip("unimodality in M needs N >= 2")
        return
    span = np.arange(0, tables.n + 1)
    kk, ll = np.meshgrid(span, span, indexing="ij")
    diffs = np.diff(tables.interval(kk, ll), axis=0)
    rising = np.asarray(diffs > 0, dtype=bool)
    fell_before = np.logical_or.accumulate(np.asarray(diffs < 0, dtype=bool), axis=0)
    bad = rising[1:] & fell_before[:-1] & (kk <= ll)
    builder.observe(0, count=int(np.count_nonzero(kk <= ll)))
    for m, i, j in np.argwhere(bad):
        rise = tables.frac(diffs[m + 1, i, j])
        builder.fail(
            f"Pr{{k <= K <= l | M}} rises again at M={m + 2} for k={span[i]}, l={span[j]}",
            "non-increasing",
            f"+{rise}",
            rise,
        )


def _check_shift_inequalities(tables: _Tables, builder: VerdictBuilder) -> None:
    span = np.arange(-1, tables.n + 2)
    gg, hh = np.meshgrid(span, span, indexing="ij")
    base = tables.interval(gg, hh)
    widened = tables.interval(gg, hh + 1)
    lowered = tables.interval(gg - 1, hh)
    # Pr{g <= K <= h+1 | M+1} >= Pr{g <= K <= h | M}
    _expect_at_least(
        tables, builder, widened[1:], base[:-1], lambda m, i, j: f"upper shift at g={span[i]}, h={span[j]}, M={m}"
    )
    # Pr{g-1 <= K <= h | M-1} >= Pr{g <= K <= h | M}
    _expect_at_least(
        tables, builder, lowered[:-1], base[1:], lambda m, i, j: f"lower shift at g={span[i]}, h={span[j]}, M={m + 1}"
    )


def _expect_equal(
    tables: _Tables,
    builder: VerdictBuilder,
    got: np.ndarray,
    expected: np.ndarray,
    describe: Callable[..., str],
    mask: np.ndarray | None = None,
) -> None:
    diff = got - expected
    bad = np.asarray(diff != 0, dtype=bool)
    if mask is not None:
        bad &= mask
    builder.observe(0, count=int(got.size if mask is None else np.count_nonzero(mask)))
    for idx in np.argwhere(bad):
        idx = tuple(int(i) for i in idx)
        builder.fail(describe(*idx), tables.frac(expected[idx]), tables.frac(got[idx]), tables.frac(diff[idx]))


def _expect_at_least(
    tables: _Tables, builder: VerdictBuilder, big: np.ndarray, small: np.ndarray, describe: Callable[..., str]
) -> None:
    bad = np.asarray(big < small, dtype=bool)
    builder.observe(0, count=int(big.size))
    for idx in np.argwhere(bad):
        idx = tuple(int(i) for i in idx)
        builder.fail(
            describe(*idx),
            f">= {tables.frac(small[idx])}",
            tables.frac(big[idx]),
            tables.frac(small[idx] - big[idx]),
        )


def _expect_at_most(tables: _Tables, builder: VerdictBuilder, low: int, high: int, description: str) -> None:
    builder.observe(0)
    if low > high:
        builder.fail(description, f"<= {tables.frac(high)}", tables.frac(low), tables.frac(low - high))


def _expect_true(builder: VerdictBuilder, ok: bool, description: str, bound: int, got: int) -> None:
    builder.observe(0)
    if not ok:
        builder.fail(description, bound, got, abs(got - bound))

"""Acceptance-scale counting runs against sieve identities, oracles and fits.

These take minutes; deselect them with ``-m "not slow"``.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from stackcount.config.schema import CountingConfig
from stackcount.counting import (
    BoxKind,
    fit_exponents,
    geometric_samples,
    mu_count,
    squarefree_count,
    squarefree_two_pow_omega_prefix,
    wps_box_counts,
    wps_count,
)
from stackcount.counting.oracles import power_free_count
from stackcount.sectors import MuStack, RaisingFunction, table_raising

pytestmark = [pytest.mark.integration, pytest.mark.slow]

DENSE_BOUNDS = list(range(1, 10**5 + 1))


def _mu3(second: int) -> RaisingFunction:
    return table_raising(MuStack(3), {1: 1, 2: second})


class TestQuadraticDiscriminants:
    def test_matches_squarefree_oracle_at_ten_million(self) -> None:
        series = mu_count(2, table_raising(MuStack(2), {1: 1}), [10**7])
        assert series.counts == [2 * squarefree_count(10**7)]
        assert series.counts == [2 * 6_079_291]

    def test_dense_agreement(self) -> None:
        series = mu_count(2, table_raising(MuStack(2), {1: 1}), DENSE_BOUNDS)
        sample = DENSE_BOUNDS[::997]
        assert [series.count_at(b) for b in sample] == [2 * squarefree_count(b) for b in sample]

    def test_free_fit(self) -> None:
        samples = [b for b in geometric_samples(10**7, 16, 2.0) if b >= 10**4]
        fit = fit_exponents(mu_count(2, table_raising(MuStack(2), {1: 1}), samples))
        assert 0.97 <= fit.alpha <= 1.03
        assert abs(fit.log_exponent) <= 0.3


class TestCubicKummerClasses:
    def test_two_pow_omega_identity_for_every_bound(self) -> None:
        series = mu_count(3, _mu3(1), DENSE_BOUNDS)
        prefix = squarefree_two_pow_omega_prefix(10**5).tolist()
        assert series.counts == prefix[1:]

    def test_cube_free_identity(self) -> None:
        series = mu_count(3, _mu3(2), DENSE_BOUNDS[::101])
        assert series.counts == [power_free_count(b, 3) for b in DENSE_BOUNDS[::101]]

    def test_equal_values_fit(self) -> None:
        series = mu_count(3, _mu3(1), geometric_samples(10**7, 16, 2.0))
        fit = fit_exponents(series, fix_alpha=Fraction(1))
        assert 0.6 <= fit.log_exponent <= 1.4

    def test_unique_minimal_sector_fit(self) -> None:
        series = mu_count(3, _mu3(2), geometric_samples(10**7, 16, 2.0))
        fit = fit_exponents(series)
        assert 0.9 <= fit.alpha <= 1.1
        assert abs(fit.log_exponent) <= 0.4


class TestWeightedProjective:
    def test_p23_matches_box_oracles(self) -> None:
        bounds = list(range(1, 1001))
        counts = wps_count((2, 3), "quasi_toric", bounds).counts
        assert counts == wps_box_counts((2, 3), "quasi_toric", bounds, box=BoxKind.REDUCED)
        small = bounds[:20]
        assert counts[:20] == wps_box_counts((2, 3), "quasi_toric", small, box=BoxKind.SLACK)

    def test_p23_is_linear(self) -> None:
        series = wps_count((2, 3), "quasi_toric", geometric_samples(10**6, 16, 2.0))
        fit = fit_exponents(series)
        assert 0.9 <= fit.alpha <= 1.1
        assert abs(fit.log_exponent) <= 0.35

    def test_p112_stable_matches_slack_box(self) -> None:
        bounds = [*range(1, 100), *range(100, 1001, 25)]
        settings = CountingConfig(enumeration_budget=10**7)
        counts = wps_count((1, 1, 2), "stable", bounds, settings=settings).counts
        assert counts == wps_box_counts((1, 1, 2), "stable", bounds, settings=settings)

    def test_p112_stable_log_growth(self) -> None:
        series = wps_count((1, 1, 2), "stable", geometric_samples(10**5, 16, 2.0))
        fit = fit_exponents(series, fix_alpha=1)
        assert 0.5 <= fit.log_exponent <= 1.5

    def test_workers_agree(self) -> None:
        bounds = geometric_samples(10**4, 8, 2.0)
        serial = wps_count((1, 1, 2), "stable", bounds)
        parallel = wps_count((1, 1, 2), "stable", bounds, settings=CountingConfig(workers=4))
        assert serial.counts == parallel.counts

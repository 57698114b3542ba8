"""Exact point counting, heights, sieve oracles and exponent fits.

Usage:
    from stackcount.counting import mu_count, wps_count, fit_exponents

    series = mu_count(2, table_raising(MuStack(2), {1: 1}), [10**4, 10**5])
    fit = fit_exponents(series, fix_alpha=1)
"""

from stackcount.counting.fit import FitMode, FitResult, fit_exponents
from stackcount.counting.heights import (
    FormalHeight,
    HeightVariant,
    mu_height,
    mu_residue,
    reduce_wps,
    resolve_raising,
    wps_height,
    wps_residue,
)
from stackcount.counting.mu import enumerate_mu_classes, mu_count
from stackcount.counting.oracles import (
    BoxKind,
    brute_mu_count,
    power_free_count,
    squarefree_count,
    squarefree_two_pow_omega_prefix,
    squarefree_two_pow_omega_sum,
    wps_box_counts,
    wps_box_points,
)
from stackcount.counting.series import (
    CountSample,
    CountSeries,
    SeriesMeta,
    SeriesSidecar,
    geometric_samples,
    read_series,
    sidecar_path,
    write_series,
)
from stackcount.counting.wps import (
    CountStrategy,
    box_count,
    northcott_holds,
    support_allowed,
    wps_count,
)

__all__ = [
    "BoxKind",
    "CountSample",
    "CountSeries",
    "CountStrategy",
    "FitMode",
    "FitResult",
    "FormalHeight",
    "HeightVariant",
    "SeriesMeta",
    "SeriesSidecar",
    "box_count",
    "brute_mu_count",
    "enumerate_mu_classes",
    "fit_exponents",
    "geometric_samples",
    "mu_count",
    "mu_height",
    "mu_residue",
    "northcott_holds",
    "power_free_count",
    "read_series",
    "reduce_wps",
    "resolve_raising",
    "sidecar_path",
    "squarefree_count",
    "squarefree_two_pow_omega_prefix",
    "squarefree_two_pow_omega_sum",
    "support_allowed",
    "wps_box_counts",
    "wps_box_points",
    "wps_count",
    "wps_height",
    "wps_residue",
    "write_series",
]

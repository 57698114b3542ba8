"""Counting mu_l-torsors over Q by height.

Classes of Q^*/(Q^*)^l are represented by l-power-free integers, signed when
l is even. The height of a class is prod_p p**c(ord_p(a) mod l), so with
integral c the number of classes of height exactly m is (sign factor) times
a multiplicative f(m) with f(p^k) = #{j : c(j) = k}. That function is summed
by a segmented numpy sieve; rational c goes through an exact prime DFS.
"""

from __future__ import annotations

import bisect
import logging
import math
import time
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from stackcount.config.schema import CountingConfig
from stackcount.counting.arith import floor_fraction, iroot, prime_sieve
from stackcount.counting.series import CountSeries, build_series, normalize_samples
from stackcount.counting.workers import run_units
from stackcount.errors import BudgetExceededError, CountingError
from stackcount.logging import log_series_complete
from stackcount.sectors import MuStack

if TYPE_CHECKING:
    from stackcount.sectors import RaisingFunction

logger = logging.getLogger(__name__)

# ord_p(m) never exceeds this for m < 2**63
_MAX_VALUATION = 64


def _check_raising(l: int, c: RaisingFunction) -> list[Fraction]:
    if l < 2:
        msg = f"mu_l counting needs l >= 2, got {l}"
        raise CountingError(msg)
    if not isinstance(c.stack, MuStack) or c.stack.l != l:
        msg = f"raising function lives on {c.stack.describe()}, not mu({l})"
        raise CountingError(msg)
    values = [c(j) for j in range(1, l)]
    if any(v <= 0 for v in values):
        msg = "mu_l counting needs c positive on every nonzero residue"
        raise CountingError(msg)
    return values


def sign_factor(l: int) -> int:
    """Classes per positive representative: -1 is an l-th power only for odd l."""
    return 2 if l % 2 == 0 else 1


def local_factor_table(values: list[Fraction]) -> np.ndarray:
    """f(p^k) = #{j : c(j) = k} for k < 64, from integral c values."""
    table = np.zeros(_MAX_VALUATION + 1, dtype=np.int64)
    table[0] = 1
    for v in values:
        k = int(v)
        if k <= _MAX_VALUATION:
            table[k] += 1
    return table


def sieve_block(
    lo: int,
    hi: int,
    table: np.ndarray,
    primes: np.ndarray,
    limits: list[int],
) -> list[int]:
    """Sum of f(m) over lo <= m < hi, cut at each limit.

    Args:
        lo: First integer of the block (>= 1)
        hi: One past the last integer of the block
        table: Local factors f(p^k)
        primes: All primes <= isqrt(hi - 1)
        limits: Integer sample limits, ascending

    Returns:
        sum_{lo <= m <= min(limit, hi - 1)} f(m) for every limit
    """
    rest = np.arange(lo, hi, dtype=np.int64)
    f = np.ones(hi - lo, dtype=np.int64)
    for p in primes.tolist():
        if p * p >= hi:
            break
        start = (-lo) % p
        if start >= hi - lo:
            continue
        sub = rest[start::p] // p
        k = np.ones(sub.shape, dtype=np.int64)
        while True:
            divisible = sub % p == 0
            if not divisible.any():
                break
            k[divisible] += 1
            sub[divisible] //= p
        rest[start::p] = sub
        f[start::p] *= table[np.minimum(k, _MAX_VALUATION)]
    f[rest > 1] *= table[1]

    cumulative = np.cumsum(f)
    partial: list[int] = []
    for limit in limits:
        if limit < lo:
            partial.append(0)
        else:
            partial.append(int(cumulative[min(limit, hi - 1) - lo]))
    return partial


def _sieve_counts(
    l: int,
    values: list[Fraction],
    limits: list[int],
    settings: CountingConfig,
) -> list[int]:
    n_max = max(limits)
    if n_max > settings.mu_sieve_limit:
        msg = f"bound {n_max} exceeds the sieve limit {settings.mu_sieve_limit}"
        raise BudgetExceededError(msg, settings.mu_sieve_limit)
    if n_max < 1:
        return [0] * len(limits)
    table = local_factor_table(values)
    primes = prime_sieve(math.isqrt(n_max))
    units = [
        (lo, min(lo + settings.block_size, n_max + 1), table, primes, limits)
        for lo in range(1, n_max + 1, settings.block_size)
    ]
    totals = run_units(f"mu({l})", sieve_block, units, len(limits), workers=settings.workers)
    return [sign_factor(l) * t for t in totals]


def enumerate_mu_classes(
    l: int,
    c: RaisingFunction,
    bound: float | int | Fraction,
    *,
    settings: CountingConfig | None = None,
) -> tuple[list[tuple[int, int]], int]:
    """All positive representatives of height <= bound, grouped by exact height.

    Works for rational c: heights are compared as H**D against bound**D, D
    the common denominator of the c values. Residues sharing a value of c
    share a height, so each record carries its number of classes.

    Returns:
        (sorted (H**D, number of classes) records including the trivial class, D)

    Raises:
        BudgetExceededError: If more than enumeration_budget classes qualify
            or the prime range exceeds the sieve limit.
    """
    settings = settings or CountingConfig()
    values = _check_raising(l, c)
    denominator = math.lcm(*(v.denominator for v in values))
    exponents = [int(v * denominator) for v in values]
    exact = Fraction(bound)
    if exact < 1:
        return [], denominator
    bound_power = floor_fraction(exact**denominator)

    least = min(exponents)
    prime_limit = iroot(bound_power, least)
    if prime_limit > settings.mu_sieve_limit:
        msg = f"prime range {prime_limit} exceeds the sieve limit {settings.mu_sieve_limit}"
        raise BudgetExceededError(msg, settings.mu_sieve_limit)
    primes = prime_sieve(prime_limit).tolist()
    multiplicity = {e: exponents.count(e) for e in sorted(set(exponents))}

    records: list[tuple[int, int]] = [(1, 1)]
    total = 1
    stack: list[tuple[int, int, int]] = [(0, 1, 1)]
    while stack:
        start, power, weight = stack.pop()
        for i in range(start, len(primes)):
            p = primes[i]
            if power * p**least > bound_power:
                break
            for e, m in multiplicity.items():
                child = power * p**e
                if child > bound_power:
                    break
                records.append((child, weight * m))
                total += weight * m
                stack.append((i + 1, child, weight * m))
            if total > settings.enumeration_budget:
                msg = f"more than {settings.enumeration_budget} classes below {bound}"
                raise BudgetExceededError(msg, settings.enumeration_budget)
    records.sort()
    return records, denominator


def _enumerated_counts(
    l: int,
    c: RaisingFunction,
    bounds: list[float],
    settings: CountingConfig,
) -> list[int]:
    records, denominator = enumerate_mu_classes(l, c, max(bounds), settings=settings)
    powers = [power for power, _ in records]
    cumulative: list[int] = []
    running = 0
    for _, weight in records:
        running += weight
        cumulative.append(running)
    counts: list[int] = []
    for b in bounds:
        exact = Fraction(b)
        if exact < 1:
            counts.append(0)
            continue
        cut = bisect.bisect_right(powers, floor_fraction(exact**denominator))
        counts.append(sign_factor(l) * (cumulative[cut - 1] if cut else 0))
    return counts


def mu_count(
    l: int,
    c: RaisingFunction,
    samples: list[float] | list[int],
    *,
    settings: CountingConfig | None = None,
) -> CountSeries:
    """N(B) = #{classes of Q^*/(Q^*)^l with height <= B} at every sample bound.

    The trivial class (height 1) is included; for even l the class of -1 is
    a separate class of height 1.

    Args:
        l: The order of mu_l (>= 2)
        c: Raising function on mu(l), positive on nonzero residues
        samples: Sample bounds B
        settings: Workers, block size and budgets

    Raises:
        CountingError: For l < 2 or c not positive.
        BudgetExceededError: If a bound exceeds the sieve limit or budget.
    """
    settings = settings or CountingConfig()
    values = _check_raising(l, c)
    bounds = normalize_samples(samples)
    start = time.perf_counter()
    if all(v.denominator == 1 for v in values):
        limits = [math.floor(b) for b in bounds]
        counts = _sieve_counts(l, values, limits, settings)
    else:
        logger.debug("Rational raising values; enumerating mu(%d) classes directly", l)
        counts = _enumerated_counts(l, c, bounds, settings)
    series = build_series(f"mu({l})", c.table_text(), bounds, counts)
    log_series_complete(
        series.family,
        series.raising,
        len(bounds),
        counts[-1],
        (time.perf_counter() - start) * 1000,
    )
    return series

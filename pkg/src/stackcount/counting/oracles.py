"""Independent exact oracles for the enumerators.

The sieve identities here share no code path with the block sieve in
``mu`` or the profile sums in ``wps``: squarefree and k-free counts come
from Moebius sums, the 2^omega sum from a smallest-prime-factor table, and
the brute-force enumerators factor every candidate and compare heights
exactly.
"""

from __future__ import annotations

import bisect
import itertools
import math
from collections.abc import Sequence
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from stackcount.config.schema import CountingConfig
from stackcount.counting.arith import (
    exact_bound,
    factorize,
    floor_fraction,
    iroot,
    mobius_sieve,
    smallest_prime_factor_sieve,
)
from stackcount.counting.heights import mu_height, reduce_wps, resolve_raising, wps_height
from stackcount.counting.wps import support_allowed
from stackcount.errors import BudgetExceededError, CountingError

if TYPE_CHECKING:
    from stackcount.counting.heights import FormalHeight, HeightVariant
    from stackcount.sectors import RaisingFunction

_LOG_SLACK = 1e-9


def power_free_count(bound: float | int, k: int) -> int:
    """#{1 <= n <= B : n is k-th power free} = sum_d mu(d) floor(B / d^k)."""
    if k < 2:
        msg = f"k-free counts need k >= 2, got {k}"
        raise CountingError(msg)
    n = math.floor(bound)
    if n < 1:
        return 0
    top = iroot(n, k)
    mu = mobius_sieve(top).astype(np.int64)
    d = np.arange(top + 1, dtype=np.int64)
    d[0] = 1
    return int((mu[1:] * (n // d[1:] ** k)).sum())


def squarefree_count(bound: float | int) -> int:
    """#{1 <= n <= B squarefree}."""
    return power_free_count(bound, 2)


def omega_table(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """(omega(n), n squarefree) for 0 <= n <= limit from a smallest-prime-factor table."""
    spf = smallest_prime_factor_sieve(limit)
    rest = np.arange(limit + 1, dtype=np.int64)
    omega = np.zeros(limit + 1, dtype=np.int64)
    squarefree = np.ones(limit + 1, dtype=bool)
    squarefree[0] = False
    active = np.flatnonzero(rest > 1)
    while active.size:
        p = spf[rest[active]]
        rest[active] //= p
        omega[active] += 1
        repeated = rest[active] % p == 0
        squarefree[active[repeated]] = False
        while repeated.any():
            idx = active[repeated]
            rest[idx] //= p[repeated]
            repeated[repeated] = rest[idx] % p[repeated] == 0
        active = active[rest[active] > 1]
    return omega, squarefree


def squarefree_two_pow_omega_prefix(limit: int) -> np.ndarray:
    """S(n) = sum_{m <= n squarefree} 2^omega(m) for 0 <= n <= limit."""
    if limit < 1:
        return np.zeros(max(limit + 1, 1), dtype=np.int64)
    omega, squarefree = omega_table(limit)
    terms = np.where(squarefree, np.left_shift(np.int64(1), omega), 0)
    return np.cumsum(terms)


def squarefree_two_pow_omega_sum(bound: float | int) -> int:
    """sum_{n <= B squarefree} 2^omega(n): the mu_3 count for c = (1, 1)."""
    n = math.floor(bound)
    if n < 1:
        return 0
    return int(squarefree_two_pow_omega_prefix(n)[n])


def brute_mu_count(
    l: int,
    c: RaisingFunction,
    bound: float | int,
    *,
    settings: CountingConfig | None = None,
) -> int:
    """Count classes by factoring every l-power-free candidate.

    A positive representative a with height H satisfies a <= H^((l-1)/min c),
    so every candidate below that bound is checked.

    Raises:
        BudgetExceededError: If the candidate range exceeds enumeration_budget.
    """
    settings = settings or CountingConfig()
    exact = exact_bound(bound)
    if exact < 1:
        return 0
    least = min(c(j) for j in range(1, l))
    if least <= 0:
        msg = "mu_l counting needs c positive on every nonzero residue"
        raise CountingError(msg)
    # a <= B^((l-1)/least), computed exactly
    ratio = Fraction(l - 1) / least
    top = iroot(floor_fraction(exact**ratio.numerator), ratio.denominator)
    if top > settings.enumeration_budget:
        msg = f"{top} candidates exceed the enumeration budget"
        raise BudgetExceededError(msg, settings.enumeration_budget)
    count = 0
    for a in range(1, top + 1):
        if any(k >= l for k in factorize(a).values()):
            continue
        if mu_height(a, l, c).at_most(exact):
            count += 1
    return count * (2 if l % 2 == 0 else 1)


class BoxKind(str, Enum):
    """Coordinate boxes for the brute-force point enumerator.

    slack: |x_i| <= B^(a_i max(a) / |a|); complete for quasi-toric heights
        and for the stable height on P(1,1,2).
    reduced: |x_i| <= B^(a_i / |a|); complete for quasi-toric heights, whose
        value on a reduced tuple is max |x_i|^(|a| / a_i).
    """

    SLACK = "slack"
    REDUCED = "reduced"


def box_limits(weights: Sequence[int], bound: Fraction, box: BoxKind) -> list[int]:
    """Largest X_i with X_i^|a| <= B^(a_i * s), s = max(a) for slack and 1 for reduced."""
    total = sum(weights)
    scale = max(weights) if box is BoxKind.SLACK else 1
    return [iroot(floor_fraction(bound ** (a * scale)), total) for a in weights]


def wps_box_points(
    weights: Sequence[int],
    variant: HeightVariant | str | RaisingFunction,
    bound: float | int,
    *,
    box: BoxKind = BoxKind.SLACK,
    settings: CountingConfig | None = None,
) -> dict[tuple[int, ...], FormalHeight]:
    """Reduced canonical points found in the box, with their heights, height <= B.

    Every tuple in the box is reduced to canonical form and deduplicated;
    points on a support where the Northcott finiteness check fails are
    skipped.

    Raises:
        BudgetExceededError: If the box holds more than enumeration_budget tuples.
    """
    settings = settings or CountingConfig()
    c = resolve_raising(weights, variant)
    exact = exact_bound(bound)
    if exact < 1:
        return {}
    limits = box_limits(weights, exact, box)
    size = math.prod(2 * x + 1 for x in limits)
    if size > settings.enumeration_budget:
        msg = f"box of {size} tuples exceeds the enumeration budget"
        raise BudgetExceededError(msg, settings.enumeration_budget)

    points: dict[tuple[int, ...], FormalHeight] = {}
    seen: set[tuple[int, ...]] = set()
    ranges = [range(-x, x + 1) for x in limits]
    for x in itertools.product(*ranges):
        if not any(x):
            continue
        reduced = reduce_wps(weights, x)
        if reduced in seen:
            continue
        seen.add(reduced)
        support = [a for v, a in zip(reduced, weights, strict=True) if v != 0]
        if not support_allowed(support, c):
            continue
        height = wps_height(weights, reduced, c)
        if height.at_most(exact):
            points[reduced] = height
    return points


def wps_box_counts(
    weights: Sequence[int],
    variant: HeightVariant | str | RaisingFunction,
    bounds: Sequence[float | int],
    *,
    box: BoxKind = BoxKind.SLACK,
    settings: CountingConfig | None = None,
) -> list[int]:
    """Brute-force N(B) at every bound from a single box enumeration at max(bounds)."""
    if not bounds:
        return []
    points = wps_box_points(weights, variant, max(bounds), box=box, settings=settings)
    ordered = sorted(points.values(), key=lambda h: h.log_value)
    logs = [h.log_value for h in ordered]
    counts: list[int] = []
    for b in bounds:
        if b <= 0:
            counts.append(0)
            continue
        # floats only bracket the cut; heights near it are compared exactly
        log_b = math.log(b)
        lo = bisect.bisect_left(logs, log_b - _LOG_SLACK)
        hi = bisect.bisect_right(logs, log_b + _LOG_SLACK)
        counts.append(lo + sum(1 for h in ordered[lo:hi] if h.at_most(b)))
    return counts

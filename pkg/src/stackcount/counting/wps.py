"""Counting rational points of weighted projective stacks P(a) by height.

A point has a unique reduced integral representative up to the sign action
x -> ((-1)^a_i x_i). Its residue at p is r_p = min_i ord_p(x_i)/a_i, and its
height under a raising function c is

    max_i |x_i|^(|a|/a_i) * prod_p p^(c(r_p) - |a| r_p).

Points are grouped by support Z (the nonzero coordinates) and by sector
profile (the finitely many primes with r_p != 0). Writing
x_i = y_i * prod_p p^ceil(a_i r_p), a profile turns into box conditions on
the y_i plus coprimality conditions, which Moebius inversion counts exactly:

    sum_{d1 | rad S} mu(d1) sum_{d2 coprime to S} mu(d2) prod_{i in Z} 2 floor(Y_i / (d2 g_i(d1)))

with g_i(d1) the product of the primes p | d1 whose residue makes a_i r_p
integral. For the quasi-toric raising function c(r) = r|a| the height of a
reduced tuple is just max_i |x_i|^(|a|/a_i), and a single Moebius sum over
the box |x_i| <= B^(a_i/|a|) suffices.
"""

from __future__ import annotations

import itertools
import logging
import math
import time
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce

import numpy as np

from stackcount.config.schema import CountingConfig
from stackcount.counting.arith import exact_bound, floor_fraction, iroot, mobius_sieve, prime_sieve
from stackcount.counting.heights import HeightVariant, resolve_raising
from stackcount.counting.series import CountSeries, build_series, normalize_samples
from stackcount.counting.workers import run_units
from stackcount.errors import BudgetExceededError, CountingError
from stackcount.logging import log_series_complete
from stackcount.sectors import RaisingFunction, WPSStack, quasi_toric_raising

logger = logging.getLogger(__name__)


class CountStrategy(str, Enum):
    """How wps_count enumerates: auto picks box for quasi-toric heights."""

    AUTO = "auto"
    BOX = "box"
    PROFILES = "profiles"


def support_allowed(support_weights: Sequence[int], c: RaisingFunction) -> bool:
    """Northcott check for points supported exactly on coordinates of these weights.

    With g = gcd of the weights, the support carries the gerbe B(mu_g);
    its points have bounded height unless c > 0 on every sector k/g.
    """
    g = reduce(math.gcd, support_weights, 0)
    if g <= 1:
        return True
    return all(c(Fraction(k, g)) > 0 for k in range(1, g))


def northcott_holds(weights: Sequence[int], c: RaisingFunction) -> bool:
    """True if no support of P(a) has infinitely many points of bounded height."""
    return all(
        support_allowed([weights[i] for i in support], c) for support in _supports(len(weights))
    )


def _supports(n: int) -> Iterator[tuple[int, ...]]:
    for size in range(1, n + 1):
        yield from itertools.combinations(range(n), size)


@dataclass(frozen=True)
class _Support:
    indices: tuple[int, ...]
    # sign action is free on the support
    half: bool
    # integral[ri]: coordinates i in the support with a_i * r integral
    integral: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class _ProfileProblem:
    """Picklable data shared by every profile work unit.

    Attributes:
        total: |a|
        power: The common denominator D of all local exponents
        exponents: exponents[ri][i] = D * (|a| {-a_i r} + a_i c(r))
        thresholds: thresholds[s][i] = (num, den) of B_s^(a_i D)
        supports: Supports that pass the Northcott check
    """

    weights: tuple[int, ...]
    total: int
    power: int
    residues: tuple[Fraction, ...]
    exponents: tuple[tuple[int, ...], ...]
    thresholds: tuple[tuple[tuple[int, int], ...], ...]
    supports: tuple[_Support, ...]

    def y_bound(self, sample: int, i: int, product: int) -> int:
        num, den = self.thresholds[sample][i]
        return iroot(num // (den * product), self.total * self.power)

    def fits(self, i: int, product: int) -> bool:
        """Y_i >= 1 at the largest sample."""
        num, den = self.thresholds[-1][i]
        return product * den <= num


def _build_problem(
    weights: tuple[int, ...], c: RaisingFunction, bounds: list[Fraction]
) -> _ProfileProblem:
    stack = WPSStack(weights)
    total = stack.total_weight
    residues = tuple(r for r in stack.index_set if r != 0)
    raw = [[total * ((-a * r) % 1) + a * c(r) for a in weights] for r in residues]
    power = math.lcm(1, *(e.denominator for row in raw for e in row))
    exponents = tuple(tuple(int(e * power) for e in row) for row in raw)
    thresholds = tuple(
        tuple(_as_pair(b ** (a * power)) for a in weights) for b in bounds
    )
    supports: list[_Support] = []
    for indices in _supports(len(weights)):
        if not support_allowed([weights[i] for i in indices], c):
            continue
        integral = tuple(
            tuple(i for i in indices if (weights[i] * r).denominator == 1) for r in residues
        )
        half = any(weights[i] % 2 for i in indices)
        supports.append(_Support(indices, half, integral))
    return _ProfileProblem(
        weights, total, power, residues, exponents, thresholds, tuple(supports)
    )


def _as_pair(value: Fraction) -> tuple[int, int]:
    return value.numerator, value.denominator


def _prime_limit(problem: _ProfileProblem) -> int:
    limit = 1
    for ri, row in enumerate(problem.exponents):
        for support in problem.supports:
            if not support.integral[ri]:
                continue
            caps = [
                iroot(problem.thresholds[-1][i][0] // problem.thresholds[-1][i][1], row[i])
                for i in support.indices
                if row[i] > 0
            ]
            if caps:
                limit = max(limit, min(caps))
    return limit


def _mobius_limit(problem: _ProfileProblem) -> int:
    """Largest d2 any profile can reach: the empty profile at the largest sample."""
    last = len(problem.thresholds) - 1
    return max(
        (min(problem.y_bound(last, i, 1) for i in s.indices) for s in problem.supports),
        default=0,
    )


def _profile_count(
    problem: _ProfileProblem,
    profile: list[tuple[int, int]],
    products: list[int],
    supports: list[_Support],
    mobius: np.ndarray,
    sample: int,
) -> int:
    rad = math.prod(p for p, _ in profile)
    count = 0
    for support in supports:
        bounds = [problem.y_bound(sample, i, products[i]) for i in support.indices]
        top = min(bounds)
        if top == 0:
            continue
        d = np.arange(1, top + 1, dtype=np.int64)
        mu = mobius[1 : top + 1].astype(np.int64)
        if rad > 1:
            mu = np.where(np.gcd(d, rad) == 1, mu, 0)
        acc = 0
        for chosen in itertools.product((False, True), repeat=len(profile)):
            sign = -1 if sum(chosen) % 2 else 1
            term = mu.copy()
            for i, y in zip(support.indices, bounds, strict=True):
                g = 1
                for (p, ri), pick in zip(profile, chosen, strict=True):
                    if pick and i in support.integral[ri]:
                        g *= p
                term *= 2 * (y // (d * g))
            acc += sign * int(term.sum())
        count += acc // 2 if support.half else acc
    return count


def _children(
    problem: _ProfileProblem,
    primes: list[int],
    start: int,
    products: list[int],
    supports: list[_Support],
) -> Iterator[tuple[int, int, list[int], list[_Support]]]:
    """Viable one-prime extensions (prime index, residue index, products, supports)."""
    alive = list(range(len(problem.residues)))
    for idx in range(start, len(primes)):
        q = primes[idx]
        survivors: list[int] = []
        for ri in alive:
            row = problem.exponents[ri]
            child = [m * q ** row[i] for i, m in enumerate(products)]
            viable = [
                s
                for s in supports
                if s.integral[ri] and all(problem.fits(i, child[i]) for i in s.indices)
            ]
            if viable:
                survivors.append(ri)
                yield idx, ri, child, viable
        # viability only gets harder as q grows
        alive = survivors
        if not alive:
            return


def profile_unit(
    problem: _ProfileProblem,
    primes: list[int],
    mobius: np.ndarray,
    unit: int,
    units: int,
    budget: int,
) -> list[int]:
    """Counts over the profiles whose first prime has index = unit (mod units).

    Unit 0 also owns the empty profile. The last entry of the result is the
    number of profiles visited.
    """
    samples = len(problem.thresholds)
    counts = [0] * samples
    visited = 0

    def visit(
        profile: list[tuple[int, int]], products: list[int], supports: list[_Support]
    ) -> None:
        nonlocal visited
        visited += 1
        if visited > budget:
            msg = f"more than {budget} sector profiles"
            raise BudgetExceededError(msg, budget)
        for s in range(samples):
            counts[s] += _profile_count(problem, profile, products, supports, mobius, s)

    def descend(
        profile: list[tuple[int, int]], start: int, products: list[int], supports: list[_Support]
    ) -> None:
        for idx, ri, child, viable in _children(problem, primes, start, products, supports):
            extended = [*profile, (primes[idx], ri)]
            visit(extended, child, viable)
            descend(extended, idx + 1, child, viable)

    root_products = [1] * len(problem.weights)
    root_supports = list(problem.supports)
    if unit == 0:
        visit([], root_products, root_supports)
    for idx, ri, child, viable in _children(problem, primes, 0, root_products, root_supports):
        if idx % units != unit:
            continue
        profile = [(primes[idx], ri)]
        visit(profile, child, viable)
        descend(profile, idx + 1, child, viable)
    return [*counts, visited]


def box_count(weights: Sequence[int], bound: float | int | Fraction) -> int:
    """Quasi-toric N(B): reduced tuples in |x_i| <= B^(a_i/|a|), modulo sign."""
    exact = exact_bound(bound)
    if exact < 1:
        return 0
    total = sum(weights)
    sides = [iroot(floor_fraction(exact**a), total) for a in weights]
    tops = [iroot(x, a) for x, a in zip(sides, weights, strict=True)]
    mobius = mobius_sieve(max(tops)).astype(np.int64)
    count = 0
    for support in _supports(len(weights)):
        top = min(tops[i] for i in support)
        d = np.arange(1, top + 1, dtype=np.int64)
        term = mobius[1 : top + 1].copy()
        for i in support:
            term *= 2 * (sides[i] // d ** weights[i])
        acc = int(term.sum())
        count += acc // 2 if any(weights[i] % 2 for i in support) else acc
    return count


def _is_quasi_toric(stack: WPSStack, c: RaisingFunction) -> bool:
    return dict(c.values) == dict(quasi_toric_raising(stack).values)


def _check_weights(weights: Sequence[int], settings: CountingConfig) -> tuple[int, ...]:
    weights = tuple(int(a) for a in weights)
    if not 1 <= len(weights) <= settings.wps_max_length:
        msg = f"wps counting supports 1 to {settings.wps_max_length} weights, got {len(weights)}"
        raise CountingError(msg)
    if any(a < 1 or a > settings.wps_max_weight for a in weights):
        msg = f"weights must lie in 1..{settings.wps_max_weight}, got {weights}"
        raise CountingError(msg)
    return weights


def wps_count(
    weights: Sequence[int],
    variant: HeightVariant | str | RaisingFunction,
    samples: list[float] | list[int],
    *,
    settings: CountingConfig | None = None,
    strategy: CountStrategy | str = CountStrategy.AUTO,
) -> CountSeries:
    """N(B) = #{points of P(a)(Q) with height <= B} at every sample bound.

    Supports failing the Northcott check are excluded from the count.

    Args:
        weights: Positive weights a_0, ..., a_n
        variant: "stable", "quasi_toric" or a raising function on wps(a)
        samples: Sample bounds B
        settings: Workers, budgets and weight limits
        strategy: auto, box (quasi-toric only) or profiles

    Raises:
        CountingError: For unsupported weights or a box request on another height.
        BudgetExceededError: If the profile or prime budget is exceeded.
    """
    settings = settings or CountingConfig()
    weights = _check_weights(weights, settings)
    stack = WPSStack(weights)
    c = resolve_raising(stack, variant)
    bounds = normalize_samples(samples)
    exact = [exact_bound(b) for b in bounds]
    mode = CountStrategy(strategy)
    quasi_toric = _is_quasi_toric(stack, c)
    if mode is CountStrategy.BOX and not quasi_toric:
        msg = "the box strategy only applies to the quasi-toric height"
        raise CountingError(msg)
    if mode is CountStrategy.AUTO:
        mode = CountStrategy.BOX if quasi_toric else CountStrategy.PROFILES

    start = time.perf_counter()
    if mode is CountStrategy.BOX:
        counts = [box_count(weights, b) for b in exact]
    else:
        counts = _profile_counts(weights, c, exact, settings)

    series = build_series(stack.describe(), c.table_text(), bounds, counts)
    log_series_complete(
        series.family,
        series.raising,
        len(bounds),
        counts[-1],
        (time.perf_counter() - start) * 1000,
    )
    return series


def _profile_counts(
    weights: tuple[int, ...],
    c: RaisingFunction,
    bounds: list[Fraction],
    settings: CountingConfig,
) -> list[int]:
    positive = [b for b in bounds if b >= 1]
    if not positive:
        return [0] * len(bounds)
    problem = _build_problem(weights, c, positive)
    prime_limit = _prime_limit(problem)
    if prime_limit > settings.mu_sieve_limit:
        msg = f"prime range {prime_limit} exceeds the sieve limit {settings.mu_sieve_limit}"
        raise BudgetExceededError(msg, settings.mu_sieve_limit)
    primes = prime_sieve(prime_limit).tolist()
    mobius = mobius_sieve(_mobius_limit(problem))
    units = settings.workers * 4 if settings.workers > 1 else 1
    jobs = [
        (problem, primes, mobius, unit, units, settings.wps_profile_budget)
        for unit in range(units)
    ]
    merged = run_units(
        f"wps{weights}", profile_unit, jobs, len(positive) + 1, workers=settings.workers
    )
    visited = merged.pop()
    if visited > settings.wps_profile_budget:
        msg = f"{visited} sector profiles exceed the budget {settings.wps_profile_budget}"
        raise BudgetExceededError(msg, settings.wps_profile_budget)
    logger.debug("Visited %d sector profiles for wps%s", visited, weights)
    return [0] * (len(bounds) - len(positive)) + merged

"""Residue maps and exact heights for mu_l classes and weighted projective points.

Heights are kept as FormalHeight values: rational exponents at finite primes
and archimedean factors base**exponent. Comparisons against a bound are done
exactly by clearing denominators; only ``value`` goes through floats.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import TYPE_CHECKING

from stackcount.counting.arith import exact_bound, factorize, lcm_of_denominators, valuation
from stackcount.errors import CountingError
from stackcount.sectors import MuStack, RaisingFunction, WPSStack, quasi_toric_raising, zero_raising

if TYPE_CHECKING:
    from collections.abc import Iterator


class HeightVariant(str, Enum):
    """Named raising functions on weighted projective stacks."""

    STABLE = "stable"
    QUASI_TORIC = "quasi_toric"


@dataclass(frozen=True)
class FormalHeight:
    """prod_k base_k**e_k * prod_p p**f_p with exact rational exponents.

    Attributes:
        finite_part: Exponent f_p for each prime p with f_p != 0
        archimedean_factors: (base, exponent) pairs of the archimedean part
    """

    finite_part: Mapping[int, Fraction] = field(default_factory=dict)
    archimedean_factors: tuple[tuple[int, Fraction], ...] = ()

    def _exponent_pairs(self) -> Iterator[tuple[int, Fraction]]:
        yield from self.archimedean_factors
        yield from self.finite_part.items()

    @property
    def archimedean_part(self) -> float:
        return math.exp(sum(float(e) * math.log(b) for b, e in self.archimedean_factors if b > 1))

    @property
    def value(self) -> float:
        return math.exp(self.log_value)

    @property
    def log_value(self) -> float:
        return sum(float(e) * math.log(b) for b, e in self._exponent_pairs() if b > 1)

    def power_value(self) -> tuple[Fraction, int]:
        """(H**D, D) with D the least common denominator of every exponent."""
        pairs = [(b, e) for b, e in self._exponent_pairs() if b > 1 and e != 0]
        denominator = lcm_of_denominators([e for _, e in pairs])
        total = Fraction(1)
        for base, exponent in pairs:
            scaled = int(exponent * denominator)
            total *= Fraction(base) ** scaled
        return total, denominator

    def at_most(self, bound: float | int | Fraction) -> bool:
        """Exact test H <= bound."""
        b = exact_bound(bound)
        if b <= 0:
            return False
        power, denominator = self.power_value()
        return power <= b**denominator

    def __mul__(self, other: FormalHeight) -> FormalHeight:
        finite = dict(self.finite_part)
        for p, e in other.finite_part.items():
            finite[p] = finite.get(p, Fraction(0)) + e
        finite = {p: e for p, e in sorted(finite.items()) if e != 0}
        return FormalHeight(finite, self.archimedean_factors + other.archimedean_factors)

    def __str__(self) -> str:
        parts = [f"{b}^{e}" for b, e in self.archimedean_factors if b > 1 and e != 0]
        parts += [f"{p}^{e}" for p, e in self.finite_part.items()]
        return "*".join(parts) or "1"


# mu_l classes


def mu_residue(a: int, p: int, l: int) -> int:
    """ord_p(a) mod l.

    Raises:
        CountingError: If a = 0.
    """
    if a == 0:
        msg = "the residue of 0 is undefined"
        raise CountingError(msg)
    return valuation(a, p) % l


def mu_height(a: int, l: int, c: RaisingFunction) -> FormalHeight:
    """Height prod_{p | a} p**c(ord_p(a) mod l) of the Kummer class of a.

    Raises:
        CountingError: If a = 0, a is not l-power-free, or c lives elsewhere.
    """
    if not isinstance(c.stack, MuStack) or c.stack.l != l:
        msg = f"raising function lives on {c.stack.describe()}, not mu({l})"
        raise CountingError(msg)
    if a == 0:
        msg = "the height of 0 is undefined"
        raise CountingError(msg)
    finite: dict[int, Fraction] = {}
    for p, k in sorted(factorize(a).items()):
        if k >= l:
            msg = f"{a} is not {l}-th power free"
            raise CountingError(msg)
        exponent = c(k % l)
        if exponent:
            finite[p] = exponent
    return FormalHeight(finite)


# weighted projective points


def _check_tuple(weights: Sequence[int], x: Sequence[int]) -> None:
    if len(weights) != len(x):
        msg = f"tuple {tuple(x)} does not match weights {tuple(weights)}"
        raise CountingError(msg)
    if all(v == 0 for v in x):
        msg = "the zero tuple is not a point"
        raise CountingError(msg)


def wps_residue(weights: Sequence[int], x: Sequence[int], p: int) -> Fraction:
    """r = min_i ord_p(x_i) / a_i over nonzero coordinates of a p-reduced tuple.

    Raises:
        CountingError: If the tuple is zero or not p-reduced.
    """
    _check_tuple(weights, x)
    r = min(Fraction(valuation(v, p), a) for v, a in zip(x, weights, strict=True) if v != 0)
    if r >= 1:
        msg = f"{tuple(x)} is not reduced at {p}"
        raise CountingError(msg)
    return r


def _canonical_sign(weights: Sequence[int], x: list[int]) -> list[int]:
    for v, a in zip(x, weights, strict=True):
        if v != 0 and a % 2 == 1:
            if v < 0:
                return [-u if w % 2 else u for u, w in zip(x, weights, strict=True)]
            break
    return x


def reduce_wps(weights: Sequence[int], x: Sequence[int]) -> tuple[int, ...]:
    """Canonical reduced representative of the weighted scaling class of x.

    Divides out p**a_i from every coordinate while possible, then makes the
    first nonzero odd-weight coordinate positive.
    """
    _check_tuple(weights, x)
    values = [int(v) for v in x]
    g = reduce(math.gcd, (abs(v) for v in values if v != 0))
    for p in sorted(factorize(g)):
        k = min(valuation(v, p) // a for v, a in zip(values, weights, strict=True) if v != 0)
        if k:
            values = [v // p ** (a * k) for v, a in zip(values, weights, strict=True)]
    return tuple(_canonical_sign(weights, values))


def resolve_raising(
    weights: Sequence[int] | WPSStack,
    variant: HeightVariant | str | RaisingFunction,
) -> RaisingFunction:
    """Turn a height variant name into its raising function on P(a)."""
    stack = weights if isinstance(weights, WPSStack) else WPSStack(tuple(weights))
    if isinstance(variant, RaisingFunction):
        if variant.stack != stack:
            msg = f"raising function lives on {variant.stack.describe()}, not {stack.describe()}"
            raise CountingError(msg)
        return variant
    try:
        kind = HeightVariant(variant)
    except ValueError as e:
        msg = f"unknown height variant {variant!r}"
        raise CountingError(msg) from e
    if kind is HeightVariant.STABLE:
        return zero_raising(stack)
    return quasi_toric_raising(stack)


def _archimedean_max(weights: Sequence[int], x: Sequence[int]) -> tuple[int, Fraction]:
    total = sum(weights)
    best: tuple[int, Fraction] = (1, Fraction(0))
    best_key = Fraction(0)
    scale = math.lcm(*weights)
    for v, a in zip(x, weights, strict=True):
        if v == 0:
            continue
        # compare |x_i|^(|a|/a_i) through |x_i|^(scale/a_i)
        key = Fraction(abs(v)) ** (scale // a)
        if key > best_key:
            best_key = key
            best = (abs(v), Fraction(total, a))
    return best


def wps_height(
    weights: Sequence[int],
    x: Sequence[int],
    variant: HeightVariant | str | RaisingFunction = HeightVariant.QUASI_TORIC,
) -> FormalHeight:
    """Height of the point [x] on P(a), computed on the reduced representative.

    The stable height is prod_v max_i |x_i|_v^(|a|/a_i). A raising function c
    multiplies it by prod_p p**c(r_p); the quasi-toric function c(r) = r|a|
    leaves exactly the archimedean maximum.

    Raises:
        CountingError: If x is zero or does not match the weights.
    """
    c = resolve_raising(weights, variant)
    reduced = reduce_wps(weights, x)
    total = sum(weights)
    g = reduce(math.gcd, (abs(v) for v in reduced if v != 0))
    finite: dict[int, Fraction] = {}
    for p in sorted(factorize(g)):
        r = wps_residue(weights, reduced, p)
        exponent = c(r) - r * total
        if exponent:
            finite[p] = exponent
    return FormalHeight(finite, (_archimedean_max(weights, reduced),))

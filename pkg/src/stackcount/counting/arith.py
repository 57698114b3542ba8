"""Sieves and exact integer helpers shared by the enumerators and oracles."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import numpy.typing as npt

IntArray = npt.NDArray[np.int64]


def prime_sieve(limit: int) -> IntArray:
    """All primes <= limit, ascending."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def mobius_sieve(limit: int) -> npt.NDArray[np.int8]:
    """mu(0..limit) with the convention mu(0) = 0."""
    mu = np.ones(limit + 1, dtype=np.int8)
    if limit >= 0:
        mu[0] = 0
    for p in prime_sieve(limit).tolist():
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
    return mu


def smallest_prime_factor_sieve(limit: int) -> IntArray:
    """spf(0..limit); spf(0) = 0 and spf(1) = 1."""
    spf = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            unset = block == np.arange(p * p, limit + 1, p, dtype=np.int64)
            block[unset] = p
    return spf


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division; {} for |n| <= 1."""
    n = abs(n)
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def valuation(n: int, p: int) -> int:
    """ord_p(n) for n != 0."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def iroot(n: int, k: int) -> int:
    """Largest x >= 0 with x**k <= n, exact for arbitrarily large n."""
    if n <= 0:
        return 0
    if k == 1:
        return n
    log_root = math.log(n) / k
    if log_root < 33:
        x = int(math.exp(log_root))
        while x > 0 and x**k > n:
            x -= 1
        while (x + 1) ** k <= n:
            x += 1
        return x
    # integer Newton from above
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def floor_fraction(value: Fraction) -> int:
    return value.numerator // value.denominator


def exact_bound(bound: float | int | Fraction) -> Fraction:
    """The exact rational value of a sample bound (floats are taken bit-exact)."""
    if isinstance(bound, Fraction):
        return bound
    return Fraction(bound)


def lcm_of_denominators(values: list[Fraction]) -> int:
    denominator = 1
    for value in values:
        denominator = math.lcm(denominator, value.denominator)
    return denominator

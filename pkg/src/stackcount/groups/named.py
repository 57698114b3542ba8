"""Constructors for the named permutation groups."""

from __future__ import annotations

from typing import TYPE_CHECKING

from stackcount.errors import GroupError
from stackcount.groups.group import DEFAULT_CLOSURE_LIMIT, FiniteGroup, generate_group
from stackcount.groups.permutation import GroupElement

if TYPE_CHECKING:
    from collections.abc import Sequence


def cycle(points: Sequence[int], degree: int) -> GroupElement:
    return GroupElement.from_cycles([points], degree)


def symmetric_group(n: int, *, limit: int = DEFAULT_CLOSURE_LIMIT) -> FiniteGroup:
    """S_n in its natural action, generated by (1,2) and (1,...,n)."""
    if n < 1:
        msg = f"n must be positive, got {n}"
        raise GroupError(msg)
    if n == 1:
        return generate_group([], degree=1)
    return generate_group([cycle([1, 2], n), cycle(range(1, n + 1), n)], limit=limit)


def alternating_group(n: int, *, limit: int = DEFAULT_CLOSURE_LIMIT) -> FiniteGroup:
    """A_n in its natural action, generated by the 3-cycles (1,2,k)."""
    if n < 3:
        return generate_group([], degree=max(n, 1))
    return generate_group([cycle([1, 2, k], n) for k in range(3, n + 1)], limit=limit)


def cyclic_group(n: int) -> FiniteGroup:
    """C_n acting regularly on 1..n."""
    if n == 1:
        return generate_group([], degree=1)
    return generate_group([cycle(range(1, n + 1), n)])


def abelian_group(orders: Sequence[int]) -> FiniteGroup:
    """Direct product of cyclic groups, each acting on its own block of points.

    Factors of order 1 are skipped; an empty product is the trivial group on
    one point.
    """
    factors = [m for m in orders if m > 1]
    degree = sum(factors) or 1
    generators: list[GroupElement] = []
    offset = 0
    for m in factors:
        generators.append(cycle(range(offset + 1, offset + m + 1), degree))
        offset += m
    return generate_group(generators, degree=degree)


def kluners_group() -> FiniteGroup:
    """C_3 wr C_2 inside S_6: <(1,2,3), (4,5,6), (1,4)(2,5)(3,6)>, of order 18."""
    return generate_group(
        [
            cycle([1, 2, 3], 6),
            cycle([4, 5, 6], 6),
            GroupElement.from_cycles([[1, 4], [2, 5], [3, 6]], 6),
        ]
    )


def kluners_normal_subgroup() -> FiniteGroup:
    """The 3-Sylow subgroup N = <(1,2,3), (4,5,6)> of the Kluners group."""
    return generate_group([cycle([1, 2, 3], 6), cycle([4, 5, 6], 6)])


def kluners_swap() -> GroupElement:
    """The block swap (1,4)(2,5)(3,6), which conjugates one C_3 factor onto the other."""
    return GroupElement.from_cycles([[1, 4], [2, 5], [3, 6]], 6)

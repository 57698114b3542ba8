"""Finite permutation groups: closure, conjugacy, subgroups, normal closures.

All enumerations are breadth-first closures over explicit element sets.
Element lists are kept sorted (lexicographic by image tuple) so that every
derived list comes out in the same order on every run.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

from stackcount.errors import GroupError
from stackcount.groups.permutation import GroupElement

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Iterator, Sequence

logger = logging.getLogger(__name__)

DEFAULT_CLOSURE_LIMIT = 10_000
DEFAULT_SUBGROUP_ORDER_LIMIT = 360


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A permutation group with its full element list.

    Attributes:
        degree: Size of the permuted set {1..degree}
        generators: Generators the group was built from
        elements: All elements, sorted lexicographically
    """

    degree: int
    generators: tuple[GroupElement, ...]
    elements: tuple[GroupElement, ...]

    @cached_property
    def element_set(self) -> frozenset[GroupElement]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(g.order for g in self.elements))

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def __contains__(self, item: object) -> bool:
        return item in self.element_set

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.degree == other.degree and self.element_set == other.element_set

    def __hash__(self) -> int:
        return hash((self.degree, self.element_set))

    def is_subgroup_of(self, other: FiniteGroup) -> bool:
        return self.degree == other.degree and self.element_set <= other.element_set

    def describe(self) -> str:
        """Generator list in cycle notation, e.g. "<(1,2,3), (4,5,6)>"."""
        gens = [g for g in self.generators if not g.is_identity]
        return "<" + ", ".join(str(g) for g in gens) + ">"


@dataclass(frozen=True)
class ConjClass:
    """A conjugacy class, represented by its smallest member."""

    representative: GroupElement
    members: frozenset[GroupElement]

    @property
    def size(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[GroupElement]:
        return sorted(self.members)

    def __str__(self) -> str:
        return "{" + ", ".join(str(g) for g in self.sorted_members()) + "}"


def generate_group(
    generators: Sequence[GroupElement],
    *,
    degree: int | None = None,
    limit: int = DEFAULT_CLOSURE_LIMIT,
) -> FiniteGroup:
    """Close a generator list under composition.

    Args:
        generators: Generating permutations, all of one degree
        degree: Degree to use when generators is empty
        limit: Largest closure allowed

    Returns:
        The generated group

    Raises:
        GroupError: If degrees disagree or the closure exceeds limit.
    """
    if generators:
        degrees = {g.degree for g in generators}
        if len(degrees) != 1:
            msg = f"generators have mixed degrees {sorted(degrees)}"
            raise GroupError(msg)
        (found,) = degrees
        if degree is not None and degree != found:
            msg = f"generators have degree {found}, expected {degree}"
            raise GroupError(msg)
        degree = found
    elif degree is None:
        msg = "degree is required when there are no generators"
        raise GroupError(msg)

    identity = GroupElement.identity(degree)
    elements = {identity}
    frontier: deque[GroupElement] = deque([identity])
    gens = [g for g in generators if not g.is_identity]
    while frontier:
        current = frontier.popleft()
        for g in gens:
            product = g * current
            if product not in elements:
                elements.add(product)
                if len(elements) > limit:
                    msg = f"group closure exceeds the bound of {limit} elements"
                    raise GroupError(msg)
                frontier.append(product)
    return FiniteGroup(
        degree=degree, generators=tuple(generators), elements=tuple(sorted(elements))
    )


def orbit_partition(
    elements: Iterable[GroupElement],
    maps: Sequence[Callable[[GroupElement], GroupElement]],
) -> list[frozenset[GroupElement]]:
    """Split elements into orbits of the group generated by bijections maps.

    The maps must permute the element set. Orbits come out ordered by their
    smallest element, so an orbit containing the identity comes first.
    """
    ordered = sorted(elements)
    assigned: set[GroupElement] = set()
    orbits: list[frozenset[GroupElement]] = []
    for start in ordered:
        if start in assigned:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            current = frontier.pop()
            for move in maps:
                image = move(current)
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        assigned |= orbit
        orbits.append(frozenset(orbit))
    return orbits


def conjugation_maps(group: FiniteGroup) -> list[Callable[[GroupElement], GroupElement]]:
    """One conjugation map per non-identity generator."""
    maps: list[Callable[[GroupElement], GroupElement]] = []
    for h in group.generators:
        if h.is_identity:
            continue
        h_inv = h.inverse()
        maps.append(lambda g, h=h, h_inv=h_inv: h * g * h_inv)
    return maps


def conjugacy_classes(group: FiniteGroup) -> list[ConjClass]:
    """Conjugacy classes of group, identity class first, ordered by smallest member."""
    orbits = orbit_partition(group.elements, conjugation_maps(group))
    return [ConjClass(representative=min(orbit), members=orbit) for orbit in orbits]


def index(g: GroupElement) -> int:
    """Malle index: degree minus the number of <g>-orbits on 1..degree."""
    return g.degree - len(g.orbits)


def subgroups(
    group: FiniteGroup, *, limit: int = DEFAULT_SUBGROUP_ORDER_LIMIT
) -> list[FiniteGroup]:
    """Enumerate every subgroup, trivial and full included.

    Subgroups are grown breadth-first by adjoining one cyclic subgroup at a
    time and deduplicated by element set. The result is ordered by order and
    then by sorted element tuple.

    Raises:
        GroupError: If the group order exceeds limit.
    """
    if group.order > limit:
        msg = f"subgroup enumeration is bounded to order {limit}, group has order {group.order}"
        raise GroupError(msg)

    cyclic: dict[frozenset[GroupElement], GroupElement] = {}
    for g in group.elements:
        if g.is_identity:
            continue
        span = frozenset(g**k for k in range(g.order))
        cyclic.setdefault(span, g)

    trivial = generate_group([], degree=group.degree)
    known: dict[frozenset[GroupElement], FiniteGroup] = {trivial.element_set: trivial}
    queue: deque[FiniteGroup] = deque([trivial])
    while queue:
        current = queue.popleft()
        for span, g in cyclic.items():
            if span <= current.element_set:
                continue
            grown = generate_group([*current.generators, g], degree=group.degree)
            if grown.element_set not in known:
                known[grown.element_set] = grown
                queue.append(grown)

    logger.debug("Enumerated %d subgroups of a group of order %d", len(known), group.order)
    return sorted(known.values(), key=lambda h: (h.order, h.elements))


def normal_closure(group: FiniteGroup, subset: Iterable[GroupElement]) -> FiniteGroup:
    """Smallest normal subgroup of group containing subset.

    Raises:
        GroupError: If subset is not contained in group.
    """
    seeds = list(subset)
    outside = [g for g in seeds if g not in group]
    if outside:
        msg = f"{outside[0]} is not an element of the group"
        raise GroupError(msg)
    conjugates: set[GroupElement] = set()
    for orbit in orbit_partition(seeds, conjugation_maps(group)):
        conjugates |= orbit
    generators = sorted(g for g in conjugates if not g.is_identity)
    return generate_group(generators, degree=group.degree)


def is_normal(subgroup: FiniteGroup, group: FiniteGroup) -> bool:
    members = subgroup.element_set
    return all(
        g.conjugate_by(h) in members for h in group.generators for g in subgroup.generators
    )

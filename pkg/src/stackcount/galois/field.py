"""Field descriptors: the cyclotomic image of Galois as a unit subgroup.

A field F is modeled only by the subgroup U of (Z/eZ)^* through which its
absolute Galois group acts on e-th roots of unity. U = (Z/eZ)^* is the
rational field; U = {1} means F contains the e-th roots of unity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

from stackcount.errors import FieldError

if TYPE_CHECKING:
    from collections.abc import Iterable


def units_mod(modulus: int) -> list[int]:
    """Residues 1..modulus coprime to modulus; [1] for modulus 1."""
    if modulus == 1:
        return [1]
    return [u for u in range(1, modulus) if math.gcd(u, modulus) == 1]


def multiplicative_span(generators: Iterable[int], modulus: int) -> frozenset[int]:
    """Subgroup of (Z/modulus Z)^* generated by generators."""
    if modulus == 1:
        return frozenset({1})
    gens = [g % modulus for g in generators]
    span = {1}
    frontier = [1]
    while frontier:
        current = frontier.pop()
        for g in gens:
            product = current * g % modulus
            if product not in span:
                span.add(product)
                frontier.append(product)
    return frozenset(span)


def unit_group_generators(modulus: int) -> list[int]:
    """A small generating set of (Z/modulus Z)^*, chosen greedily in increasing order."""
    generators: list[int] = []
    span = frozenset({1})
    for u in units_mod(modulus):
        if u not in span:
            generators.append(u)
            span = multiplicative_span(generators, modulus)
    return generators


@dataclass(frozen=True)
class FieldDescriptor:
    """Image U of the Galois group in (Z/eZ)^*.

    Attributes:
        modulus: e
        unit_generators: Generators of U, reduced mod e and sorted
    """

    modulus: int
    unit_generators: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.modulus < 1:
            msg = f"modulus must be positive, got {self.modulus}"
            raise FieldError(msg)
        for g in self.unit_generators:
            if math.gcd(g, self.modulus) != 1:
                msg = f"{g} is not a unit modulo {self.modulus}"
                raise FieldError(msg)
        nontrivial = {g % self.modulus for g in self.unit_generators} - {1 % self.modulus}
        reduced = tuple(sorted(nontrivial))
        object.__setattr__(self, "unit_generators", reduced)

    @classmethod
    def rationals(cls, modulus: int) -> FieldDescriptor:
        """Q: the full unit group."""
        return cls(modulus, tuple(unit_group_generators(modulus)))

    @classmethod
    def split(cls, modulus: int) -> FieldDescriptor:
        """A field containing the e-th roots of unity: U = {1}."""
        return cls(modulus, ())

    @cached_property
    def units(self) -> frozenset[int]:
        return multiplicative_span(self.unit_generators, self.modulus)

    def contains(self, u: int) -> bool:
        if self.modulus == 1:
            return True
        return u % self.modulus in self.units

    @property
    def is_rational(self) -> bool:
        return len(self.units) == len(units_mod(self.modulus))

    @property
    def is_split(self) -> bool:
        return self.units == frozenset({1})

    def restrict(self, modulus: int) -> FieldDescriptor:
        """Reduce U to a divisor of the modulus.

        Raises:
            FieldError: If modulus does not divide self.modulus.
        """
        if modulus < 1 or self.modulus % modulus != 0:
            msg = (
                f"field modulus {self.modulus} is not a multiple of the group exponent {modulus}"
            )
            raise FieldError(msg)
        return FieldDescriptor(modulus, self.unit_generators)

    def __str__(self) -> str:
        if self.is_rational:
            return "Q"
        if self.is_split:
            return "split"
        return f"U({self.modulus}; " + ",".join(str(g) for g in self.unit_generators) + ")"

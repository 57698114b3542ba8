"""Galois action on sectors of BG: F-conjugacy classes and twisted orbits.

Sectors of BG over F are the orbits of G under conjugation combined with the
power maps g -> g^u, u in U. Twisted forms of a constant group are modeled by
an involution phi of H and one of three correlations between phi and the
cyclotomic action (trivial, synchronized through a quadratic character,
independent).
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from stackcount.errors import TwistError
from stackcount.galois.field import (
    FieldDescriptor,
    multiplicative_span,
    unit_group_generators,
    units_mod,
)
from stackcount.groups import FiniteGroup, GroupElement, conjugacy_classes, orbit_partition
from stackcount.groups.group import conjugation_maps

logger = logging.getLogger(__name__)

ElementMap = Callable[[GroupElement], GroupElement]


@dataclass(frozen=True)
class FConjClass:
    """An F-conjugacy class, represented by its smallest member."""

    representative: GroupElement
    members: frozenset[GroupElement]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def is_identity(self) -> bool:
        return self.representative.is_identity

    def sorted_members(self) -> list[GroupElement]:
        return sorted(self.members)

    def __str__(self) -> str:
        return str(self.representative)


def power_maps(units: Iterable[int]) -> list[ElementMap]:
    return [lambda g, u=u: g**u for u in units if u != 1]


def f_conjugacy_classes(group: FiniteGroup, field_descriptor: FieldDescriptor) -> list[FConjClass]:
    """Partition group into F-conjugacy classes.

    The field is first reduced to modulus exp(G). Classes are ordered by their
    smallest member, so the identity class {1} comes first.

    Raises:
        FieldError: If the field modulus is not a multiple of exp(G).
    """
    reduced = field_descriptor.restrict(group.exponent)
    maps = conjugation_maps(group) + power_maps(reduced.unit_generators)
    return [
        FConjClass(representative=min(orbit), members=orbit)
        for orbit in orbit_partition(group.elements, maps)
    ]


def refines(group: FiniteGroup, classes: list[FConjClass]) -> bool:
    """True if every ordinary conjugacy class lies inside one of classes."""
    owner = {g: i for i, cls in enumerate(classes) for g in cls.members}
    return all(
        len({owner[g] for g in conj.members}) == 1 for conj in conjugacy_classes(group)
    )


@dataclass(frozen=True)
class QuadraticCharacter:
    """A homomorphism (Z/eZ)^* -> {+1, -1}, stored by its kernel."""

    modulus: int
    kernel: frozenset[int]

    def __post_init__(self) -> None:
        units = frozenset(units_mod(self.modulus))
        if not self.kernel <= units or 1 % max(self.modulus, 2) not in self.kernel:
            msg = f"kernel {sorted(self.kernel)} is not a set of units modulo {self.modulus}"
            raise TwistError(msg)
        if multiplicative_span(self.kernel, self.modulus) != self.kernel:
            msg = f"kernel {sorted(self.kernel)} is not a subgroup"
            raise TwistError(msg)
        if len(self.kernel) * 2 != len(units) and self.kernel != units:
            msg = f"kernel {sorted(self.kernel)} does not have index 1 or 2"
            raise TwistError(msg)

    def epsilon(self, u: int) -> int:
        """0 where the character is +1, 1 where it is -1."""
        return 0 if u % self.modulus in self.kernel else 1

    @property
    def is_trivial(self) -> bool:
        return len(self.kernel) == len(units_mod(self.modulus))

    def __str__(self) -> str:
        return f"ker={{{','.join(str(u) for u in sorted(self.kernel))}}} mod {self.modulus}"


def quadratic_characters(modulus: int) -> list[QuadraticCharacter]:
    """All nontrivial quadratic characters of (Z/modulus Z)^*, ordered by kernel."""
    gens = unit_group_generators(modulus)
    found: dict[frozenset[int], QuadraticCharacter] = {}
    for signs in itertools.product((0, 1), repeat=len(gens)):
        if not any(signs):
            continue
        values = _extend_signs(gens, signs, modulus)
        if values is None:
            continue
        kernel = frozenset(u for u, eps in values.items() if eps == 0)
        found.setdefault(kernel, QuadraticCharacter(modulus, kernel))
    return [found[k] for k in sorted(found, key=sorted)]


def _extend_signs(gens: list[int], signs: tuple[int, ...], modulus: int) -> dict[int, int] | None:
    values = {1: 0}
    frontier = [1]
    while frontier:
        current = frontier.pop()
        for g, s in zip(gens, signs, strict=True):
            image = current * g % modulus
            value = (values[current] + s) % 2
            if image in values:
                if values[image] != value:
                    return None
            else:
                values[image] = value
                frontier.append(image)
    return values


class TwistMode(str, Enum):
    """How the twist involution correlates with the cyclotomic action."""

    TRIVIAL = "trivial"
    SYNCHRONIZED = "synchronized"
    INDEPENDENT = "independent"


@dataclass(frozen=True)
class TwistDatum:
    """A twisted form of the constant group H.

    Attributes:
        group: The constant group H
        exponent: Modulus e of the cyclotomic action
        involution: phi as a map on the elements of H
        mode: Correlation between phi and the cyclotomic action
        character: The quadratic character, in synchronized mode only
    """

    group: FiniteGroup
    exponent: int
    involution: Mapping[GroupElement, GroupElement] = field(compare=False, hash=False)
    mode: TwistMode = TwistMode.TRIVIAL
    character: QuadraticCharacter | None = None

    def __post_init__(self) -> None:
        h = self.group
        if self.exponent % h.exponent != 0:
            msg = f"group exponent {h.exponent} does not divide {self.exponent}"
            raise TwistError(msg)
        phi = self.involution
        if set(phi) != h.element_set or set(phi.values()) != h.element_set:
            msg = "involution must be a bijection of the group's elements"
            raise TwistError(msg)
        for a in h.elements:
            if phi[phi[a]] != a:
                msg = f"involution does not square to the identity at {a}"
                raise TwistError(msg)
            for b in h.generators:
                if phi[a * b] != phi[a] * phi[b]:
                    msg = "involution is not a group automorphism"
                    raise TwistError(msg)
        if self.mode is TwistMode.SYNCHRONIZED:
            if self.character is None:
                msg = "synchronized mode needs a quadratic character"
                raise TwistError(msg)
            if self.character.modulus != self.exponent:
                msg = (
                    f"character modulus {self.character.modulus} differs from "
                    f"exponent {self.exponent}"
                )
                raise TwistError(msg)
        elif self.character is not None:
            msg = f"{self.mode.value} mode takes no character"
            raise TwistError(msg)

    @classmethod
    def by_conjugation(
        cls,
        group: FiniteGroup,
        exponent: int,
        conjugator: GroupElement,
        mode: TwistMode = TwistMode.TRIVIAL,
        character: QuadraticCharacter | None = None,
    ) -> TwistDatum:
        """Use phi(g) = t g t^-1 for a permutation t normalizing the group.

        Raises:
            TwistError: If t does not normalize the group.
        """
        t_inv = conjugator.inverse()
        phi = {g: conjugator * g * t_inv for g in group.elements}
        if not set(phi.values()) <= group.element_set:
            msg = f"{conjugator} does not normalize {group.describe()}"
            raise TwistError(msg)
        return cls(group, exponent, phi, mode, character)

    def with_mode(self, mode: TwistMode, character: QuadraticCharacter | None = None) -> TwistDatum:
        return TwistDatum(self.group, self.exponent, self.involution, mode, character)

    @cached_property
    def is_identity_involution(self) -> bool:
        return all(a == b for a, b in self.involution.items())

    def describe(self) -> str:
        if self.mode is TwistMode.SYNCHRONIZED:
            return f"synchronized({self.character})"
        return self.mode.value


def twisted_orbits(twist: TwistDatum) -> list[frozenset[GroupElement]]:
    """Orbits of H under conjugation and the mode's combined Galois maps.

    Orbits are ordered by smallest element; the identity orbit {1} is first.
    """
    phi = twist.involution
    units = unit_group_generators(twist.exponent)
    maps: list[ElementMap] = conjugation_maps(twist.group)
    if twist.mode is TwistMode.TRIVIAL:
        maps += power_maps(units)
    elif twist.mode is TwistMode.SYNCHRONIZED:
        character = twist.character
        assert character is not None
        for u in units:
            if character.epsilon(u):
                maps.append(lambda g, u=u: phi[g**u])
            elif u != 1:
                maps.append(lambda g, u=u: g**u)
    else:
        maps += power_maps(units)
        maps.append(lambda g: phi[g])
    orbits = orbit_partition(twist.group.elements, maps)
    logger.debug("Twist %s splits H into %d orbits", twist.describe(), len(orbits))
    return orbits

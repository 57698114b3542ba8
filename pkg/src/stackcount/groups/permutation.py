"""Permutations of {1..n} and their textual forms.

Elements are stored as the tuple of images of 1..n. Composition follows the
functional convention (g * h)(i) = g(h(i)), so h * g * h.inverse() is the
conjugate of g by h. Elements order lexicographically by image tuple, which
fixes every deterministic ordering downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

from stackcount.errors import PermutationSyntaxError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence


@dataclass(frozen=True, order=True)
class GroupElement:
    """A permutation given by its images of 1..degree."""

    images: tuple[int, ...]

    @classmethod
    def identity(cls, degree: int) -> GroupElement:
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> GroupElement:
        """Build an element from an image list, checking it is a bijection.

        Raises:
            PermutationSyntaxError: If images is not a permutation of 1..n.
        """
        degree = len(images)
        if degree == 0:
            msg = "a permutation needs degree at least 1"
            raise PermutationSyntaxError(msg)
        if sorted(images) != list(range(1, degree + 1)):
            msg = f"images {list(images)} are not a permutation of 1..{degree}"
            raise PermutationSyntaxError(msg)
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> GroupElement:
        """Build an element from disjoint cycles on 1..degree.

        Raises:
            PermutationSyntaxError: If an entry repeats or is out of range.
        """
        images = list(range(1, degree + 1))
        seen: set[int] = set()
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= degree:
                    msg = f"entry {point} out of range 1..{degree}"
                    raise PermutationSyntaxError(msg)
                if point in seen:
                    msg = f"entry {point} repeated"
                    raise PermutationSyntaxError(msg)
                seen.add(point)
            for src, dst in zip(cycle, [*cycle[1:], cycle[0]], strict=True):
                images[src - 1] = dst
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def is_identity(self) -> bool:
        return all(image == point for point, image in enumerate(self.images, start=1))

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: GroupElement) -> GroupElement:
        mine = self.images
        return GroupElement(tuple(mine[i - 1] for i in other.images))

    def inverse(self) -> GroupElement:
        inverse = [0] * len(self.images)
        for point, image in enumerate(self.images, start=1):
            inverse[image - 1] = point
        return GroupElement(tuple(inverse))

    def __pow__(self, exponent: int) -> GroupElement:
        base = self if exponent >= 0 else self.inverse()
        remaining = abs(exponent) % self.order
        result = GroupElement.identity(self.degree)
        while remaining:
            if remaining & 1:
                result = result * base
            base = base * base
            remaining >>= 1
        return result

    def conjugate_by(self, h: GroupElement) -> GroupElement:
        """Return h * self * h^-1."""
        return h * self * h.inverse()

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        """All <g>-orbits on 1..degree, fixed points included, each led by its minimum."""
        seen = [False] * (self.degree + 1)
        result: list[tuple[int, ...]] = []
        for start in range(1, self.degree + 1):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = True
            point = self(start)
            while point != start:
                orbit.append(point)
                seen[point] = True
                point = self(point)
            result.append(tuple(orbit))
        return tuple(result)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Non-trivial cycles, in order of their smallest entry."""
        return tuple(orbit for orbit in self.orbits if len(orbit) > 1)

    @cached_property
    def order(self) -> int:
        return math.lcm(*(len(orbit) for orbit in self.orbits))

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(p) for p in cycle) + ")" for cycle in cycles)


def parse_permutation(text: str, degree: int) -> GroupElement:
    """Parse cycle notation or a one-line image list.

    Accepted forms are "()" for the identity, products of disjoint cycles such
    as "(1,4)(2,5)(3,6)", and image lists such as "[2,3,1,4,5,6]". Whitespace
    is ignored.

    Args:
        text: The permutation text
        degree: Degree of the ambient symmetric group

    Returns:
        The parsed permutation

    Raises:
        PermutationSyntaxError: On malformed syntax, repeated or out-of-range
            entries. The error carries the offset of the offending character.
    """
    if degree < 1:
        msg = f"degree must be positive, got {degree}"
        raise PermutationSyntaxError(msg, 0)
    scanner = _Scanner(text)
    scanner.skip_space()
    if scanner.peek() == "[":
        element = _parse_image_list(scanner, degree)
    else:
        element = _parse_cycles(scanner, degree)
    scanner.skip_space()
    if not scanner.at_end():
        msg = f"unexpected {scanner.peek()!r} after permutation"
        raise PermutationSyntaxError(msg, scanner.pos)
    return element


class _Scanner:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_space(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, char: str) -> None:
        self.skip_space()
        if self.peek() != char:
            found = repr(self.peek()) if self.peek() else "end of input"
            msg = f"expected {char!r}, found {found}"
            raise PermutationSyntaxError(msg, self.pos)
        self.pos += 1

    def integer(self) -> tuple[int, int]:
        self.skip_space()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            found = repr(self.peek()) if self.peek() else "end of input"
            msg = f"expected a positive integer, found {found}"
            raise PermutationSyntaxError(msg, start)
        return int(self.text[start : self.pos]), start


def _parse_cycles(scanner: _Scanner, degree: int) -> GroupElement:
    cycles: list[list[int]] = []
    seen: set[int] = set()
    if scanner.at_end():
        msg = "empty permutation; write () for the identity"
        raise PermutationSyntaxError(msg, scanner.pos)
    while True:
        scanner.skip_space()
        if scanner.at_end() or scanner.peek() != "(":
            break
        scanner.pos += 1
        scanner.skip_space()
        if scanner.peek() == ")":
            scanner.pos += 1
            continue
        cycle: list[int] = []
        while True:
            value, start = scanner.integer()
            if not 1 <= value <= degree:
                msg = f"entry {value} out of range 1..{degree}"
                raise PermutationSyntaxError(msg, start)
            if value in seen:
                msg = f"entry {value} repeated"
                raise PermutationSyntaxError(msg, start)
            seen.add(value)
            cycle.append(value)
            scanner.skip_space()
            if scanner.peek() == ",":
                scanner.pos += 1
                continue
            scanner.expect(")")
            break
        cycles.append(cycle)
    if not cycles and not seen and scanner.pos == 0:
        msg = f"expected '(' or '[', found {scanner.peek()!r}"
        raise PermutationSyntaxError(msg, scanner.pos)
    return GroupElement.from_cycles(cycles, degree)


def _parse_image_list(scanner: _Scanner, degree: int) -> GroupElement:
    scanner.expect("[")
    images: list[int] = []
    while True:
        value, start = scanner.integer()
        if not 1 <= value <= degree:
            msg = f"image {value} out of range 1..{degree}"
            raise PermutationSyntaxError(msg, start)
        if value in images:
            msg = f"image {value} repeated"
            raise PermutationSyntaxError(msg, start)
        images.append(value)
        scanner.skip_space()
        if scanner.peek() == ",":
            scanner.pos += 1
            continue
        scanner.expect("]")
        break
    if len(images) != degree:
        msg = f"image list has {len(images)} entries, expected {degree}"
        raise PermutationSyntaxError(msg, scanner.pos)
    return GroupElement(tuple(images))

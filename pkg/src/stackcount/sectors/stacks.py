"""Stack descriptors and their sectors.

Four families are supported: BG for a finite permutation group over a field
descriptor, the gerbe B(mu_l), weighted projective stacks P(a_0, ..., a_n) and
finite products of these. Each descriptor lists its sectors with exact ages.

Sector labels are plain hashable values:

- BG: the F-conjugacy class (FConjClass)
- B(mu_l): the residue j in 0..l-1, printed as the rational j/l
- P(a): the rational r in I = (union of (1/a_i)Z) intersected with [0, 1)
- products: the tuple of factor labels
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING, Any

from stackcount.errors import PermutationSyntaxError, SectorError
from stackcount.galois import FConjClass, FieldDescriptor, f_conjugacy_classes
from stackcount.groups import FiniteGroup, parse_permutation
from stackcount.rational import format_fraction, fractional_part

if TYPE_CHECKING:
    from collections.abc import Iterator


@dataclass(frozen=True)
class Sector:
    """One connected component of the twisted-jet stack.

    Attributes:
        label: Family-specific label (see module docstring)
        age: Exact rational age
        is_twisted: False only for the untwisted sector
        text: Printable form of the label
    """

    label: Any
    age: Fraction
    is_twisted: bool
    text: str = field(compare=False)


class StackDescriptor(ABC):
    """Common interface of the supported stack families."""

    @property
    @abstractmethod
    def dim(self) -> int: ...

    @property
    @abstractmethod
    def rho(self) -> int: ...

    @abstractmethod
    def _build_sectors(self) -> tuple[Sector, ...]: ...

    @abstractmethod
    def label_text(self, label: Any) -> str:
        """Printable form of a sector label."""

    @abstractmethod
    def parse_label(self, text: str) -> Any:
        """Inverse of label_text.

        Raises:
            SectorError: If text names no sector of this stack.
        """

    @abstractmethod
    def describe(self) -> str:
        """Normalized stack-spec text for this descriptor."""

    def sectors(self) -> tuple[Sector, ...]:
        cached = self.__dict__.get("_sectors")
        if cached is None:
            cached = self._build_sectors()
            object.__setattr__(self, "_sectors", cached)
        return cached

    def twisted_sectors(self) -> tuple[Sector, ...]:
        return tuple(s for s in self.sectors() if s.is_twisted)

    @property
    def untwisted(self) -> Sector:
        return next(s for s in self.sectors() if not s.is_twisted)

    def labels(self) -> list[Any]:
        return [s.label for s in self.sectors()]

    def factors_flat(self) -> Iterator[StackDescriptor]:
        yield self

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True, eq=True)
class BGStack(StackDescriptor):
    """Classifying stack of a constant finite group over a field descriptor.

    Attributes:
        group: The permutation group G
        field: Cyclotomic image of Galois, renormalized to exp(G)
        action_degree: Degree n of the permutation action used by the index
    """

    group: FiniteGroup
    field: FieldDescriptor
    action_degree: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "field", self.field.restrict(self.group.exponent))
        if self.action_degree == 0:
            object.__setattr__(self, "action_degree", self.group.degree)
        elif self.action_degree != self.group.degree:
            msg = (
                f"action degree {self.action_degree} does not match the "
                f"permutation degree {self.group.degree}"
            )
            raise SectorError(msg)

    @property
    def dim(self) -> int:
        return 0

    @property
    def rho(self) -> int:
        return 0

    @cached_property
    def classes(self) -> tuple[FConjClass, ...]:
        return tuple(f_conjugacy_classes(self.group, self.field))

    def _build_sectors(self) -> tuple[Sector, ...]:
        return tuple(
            Sector(label=cls, age=Fraction(0), is_twisted=not cls.is_identity, text=str(cls))
            for cls in self.classes
        )

    def class_of(self, element: Any) -> FConjClass:
        for cls in self.classes:
            if element in cls.members:
                return cls
        msg = f"{element} is not an element of {self.group.describe()}"
        raise SectorError(msg)

    def label_text(self, label: Any) -> str:
        return str(label)

    def parse_label(self, text: str) -> FConjClass:
        try:
            element = parse_permutation(text, self.group.degree)
        except PermutationSyntaxError as e:
            msg = f"bad class label {text!r}: {e}"
            raise SectorError(msg) from e
        return self.class_of(element)

    def describe(self) -> str:
        gens = [g for g in self.group.generators if not g.is_identity] or [self.group.identity]
        return (
            f"bg(degree={self.group.degree}; gens={'|'.join(str(g) for g in gens)}; "
            f"field={self.field})"
        )


@dataclass(frozen=True)
class MuStack(StackDescriptor):
    """The gerbe B(mu_l); sectors are Z/lZ regardless of the field."""

    l: int  # noqa: E741

    def __post_init__(self) -> None:
        if self.l < 1:
            msg = f"mu(l) needs l >= 1, got {self.l}"
            raise SectorError(msg)

    @property
    def dim(self) -> int:
        return 0

    @property
    def rho(self) -> int:
        return 0

    def _build_sectors(self) -> tuple[Sector, ...]:
        return tuple(
            Sector(label=j, age=Fraction(0), is_twisted=j != 0, text=self.label_text(j))
            for j in range(self.l)
        )

    def label_text(self, label: Any) -> str:
        return format_fraction(Fraction(label, self.l))

    def parse_label(self, text: str) -> int:
        value = _parse_rational_label(text)
        scaled = value * self.l
        if scaled.denominator != 1 or not 0 <= scaled < self.l:
            msg = f"{text!r} is not a sector of mu({self.l}); expected j/{self.l} in [0, 1)"
            raise SectorError(msg)
        return int(scaled)

    def describe(self) -> str:
        return f"mu({self.l})"


@dataclass(frozen=True)
class WPSStack(StackDescriptor):
    """Weighted projective stack P(a_0, ..., a_n)."""

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(self.weights))
        if not self.weights:
            msg = "wps needs at least one weight"
            raise SectorError(msg)
        if any(a < 1 for a in self.weights):
            msg = f"weights must be positive, got {list(self.weights)}"
            raise SectorError(msg)

    @property
    def dim(self) -> int:
        return len(self.weights) - 1

    @property
    def rho(self) -> int:
        return 1 if len(self.weights) > 1 else 0

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    @cached_property
    def index_set(self) -> tuple[Fraction, ...]:
        """I = (union of (1/a_i)Z) intersected with [0, 1), ascending."""
        return tuple(sorted({Fraction(k, a) for a in self.weights for k in range(a)}))

    def age(self, r: Fraction) -> Fraction:
        return sum((fractional_part(-a * r) for a in self.weights), Fraction(0))

    def _build_sectors(self) -> tuple[Sector, ...]:
        return tuple(
            Sector(label=r, age=self.age(r), is_twisted=r != 0, text=format_fraction(r))
            for r in self.index_set
        )

    def label_text(self, label: Any) -> str:
        return format_fraction(label)

    def parse_label(self, text: str) -> Fraction:
        value = _parse_rational_label(text)
        if value not in self.index_set:
            msg = f"{text!r} is not a sector of {self.describe()}"
            raise SectorError(msg)
        return value

    def describe(self) -> str:
        return "wps(" + ",".join(str(a) for a in self.weights) + ")"


@dataclass(frozen=True)
class ProductStack(StackDescriptor):
    """Finite product of supported stacks; sectors are tuples of factor sectors."""

    factors: tuple[StackDescriptor, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 2:
            msg = "a product needs at least two factors"
            raise SectorError(msg)

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def rho(self) -> int:
        return sum(f.rho for f in self.factors)

    def _build_sectors(self) -> tuple[Sector, ...]:
        result: list[Sector] = []
        for combo in itertools.product(*(f.sectors() for f in self.factors)):
            label = tuple(s.label for s in combo)
            result.append(
                Sector(
                    label=label,
                    age=sum((s.age for s in combo), Fraction(0)),
                    is_twisted=any(s.is_twisted for s in combo),
                    text=self.label_text(label),
                )
            )
        return tuple(result)

    def label_text(self, label: Any) -> str:
        parts = [f.label_text(x) for f, x in zip(self.factors, label, strict=True)]
        return "(" + ", ".join(parts) + ")"

    def parse_label(self, text: str) -> tuple[Any, ...]:
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            msg = f"product label {text!r} must be a parenthesized tuple"
            raise SectorError(msg)
        parts = split_top_level(body[1:-1], ",")
        if len(parts) != len(self.factors):
            msg = f"product label {text!r} has {len(parts)} entries, expected {len(self.factors)}"
            raise SectorError(msg)
        return tuple(f.parse_label(p) for f, p in zip(self.factors, parts, strict=True))

    def factors_flat(self) -> Iterator[StackDescriptor]:
        for f in self.factors:
            yield from f.factors_flat()

    def describe(self) -> str:
        return "prod(" + ", ".join(f.describe() for f in self.factors) + ")"


def split_top_level(text: str, separator: str) -> list[str]:
    """Split on separator outside (), [] and {} groups; parts are stripped."""
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for char in text:
        if char in "([{":
            depth += 1
        elif char in ")]}":
            depth -= 1
        if char == separator and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(char)
    parts.append("".join(current).strip())
    return parts


def _parse_rational_label(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        msg = f"sector label {text!r} is not a rational"
        raise SectorError(msg) from e

"""Parse tree of the stack-spec mini-language.

    spec  := bg | mu | wps | prod
    bg    := "bg(" ["degree=" n ";"] "gens=" perm ("|" perm)* [";" "field=" field] ")"
    field := "Q" | "split" | "U(" e ";" u ("," u)* ")"
    mu    := "mu(" l ")"
    wps   := "wps(" a0 ("," ai)* ")"
    prod  := "prod(" spec ("," spec)+ ")"

Nodes print in normalized form: no optional whitespace except ", " between
product factors and "; " between bg items, permutations in canonical cycle
notation and the bg degree always explicit.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from typing import TypeAlias


class FieldKind(str, Enum):
    RATIONALS = "Q"
    SPLIT = "split"
    UNITS = "U"


@dataclass(frozen=True)
class FieldNode:
    kind: FieldKind = FieldKind.RATIONALS
    modulus: int = 0
    generators: tuple[int, ...] = ()

    def render(self) -> str:
        if self.kind is FieldKind.UNITS:
            return f"U({self.modulus}; " + ",".join(str(u) for u in self.generators) + ")"
        return self.kind.value


@dataclass(frozen=True)
class BGNode:
    """bg(...): a permutation group of the given degree over a field."""

    degree: int
    gens: tuple[str, ...]
    field: FieldNode = FieldNode()
    position: int = dataclasses.field(default=0, compare=False)

    def render(self) -> str:
        return f"bg(degree={self.degree}; gens={'|'.join(self.gens)}; field={self.field.render()})"


@dataclass(frozen=True)
class MuNode:
    l: int  # noqa: E741
    position: int = dataclasses.field(default=0, compare=False)

    def render(self) -> str:
        return f"mu({self.l})"


@dataclass(frozen=True)
class WPSNode:
    weights: tuple[int, ...]
    position: int = dataclasses.field(default=0, compare=False)

    def render(self) -> str:
        return "wps(" + ",".join(str(a) for a in self.weights) + ")"


@dataclass(frozen=True)
class ProdNode:
    factors: tuple[StackSpecAST, ...]
    position: int = dataclasses.field(default=0, compare=False)

    def render(self) -> str:
        return "prod(" + ", ".join(f.render() for f in self.factors) + ")"


StackSpecAST: TypeAlias = BGNode | MuNode | WPSNode | ProdNode


def print_spec(node: StackSpecAST) -> str:
    return node.render()

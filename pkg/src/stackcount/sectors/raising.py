"""Raising functions on sectors, age_c, junior sectors and adequacy.

A raising function is a total table of nonnegative rationals on the sectors of
one stack, vanishing on the untwisted sector. Built-in constructors cover the
index function of BG, the quasi-toric function r -> r*|a| of P(a), constants,
the zero function and box-sums over products.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from stackcount.errors import SectorError
from stackcount.groups import index
from stackcount.rational import format_fraction, to_fraction
from stackcount.sectors.stacks import (
    BGStack,
    ProductStack,
    StackDescriptor,
    WPSStack,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RaisingFunction:
    """A raising function c on the sectors of one stack.

    Attributes:
        stack: The stack whose sectors c is defined on
        values: Label -> c-value, total over stack.sectors()
    """

    stack: StackDescriptor
    values: Mapping[Any, Fraction] = field(hash=False)

    def __post_init__(self) -> None:
        labels = self.stack.labels()
        missing = [self.stack.label_text(x) for x in labels if x not in self.values]
        if missing:
            msg = f"raising function is not total; missing sectors {', '.join(missing)}"
            raise SectorError(msg)
        extra = [k for k in self.values if k not in set(labels)]
        if extra:
            msg = f"raising function has values on unknown sectors {extra!r}"
            raise SectorError(msg)
        normalized: dict[Any, Fraction] = {}
        for label in labels:
            try:
                value = to_fraction(self.values[label])
            except ValueError as e:
                msg = f"c({self.stack.label_text(label)}) is not a rational: {e}"
                raise SectorError(msg) from e
            if value < 0:
                msg = f"c({self.stack.label_text(label)}) = {value} is negative"
                raise SectorError(msg)
            normalized[label] = value
        untwisted = self.stack.untwisted.label
        if normalized[untwisted] != 0:
            msg = "raising function must vanish on the untwisted sector"
            raise SectorError(msg)
        object.__setattr__(self, "values", normalized)

    def __call__(self, label: Any) -> Fraction:
        try:
            return self.values[label]
        except KeyError as e:
            msg = f"{label!r} is not a sector of {self.stack.describe()}"
            raise SectorError(msg) from e

    def twisted_values(self) -> dict[Any, Fraction]:
        return {s.label: self.values[s.label] for s in self.stack.twisted_sectors()}

    def scaled(self, factor: Fraction | int) -> RaisingFunction:
        """Return factor * c.

        Raises:
            SectorError: If factor is negative.
        """
        factor = Fraction(factor)
        if factor < 0:
            msg = f"scale factor must be nonnegative, got {factor}"
            raise SectorError(msg)
        return RaisingFunction(self.stack, {k: v * factor for k, v in self.values.items()})

    def __add__(self, other: RaisingFunction) -> RaisingFunction:
        if other.stack != self.stack:
            msg = "cannot add raising functions on different stacks"
            raise SectorError(msg)
        return RaisingFunction(self.stack, {k: v + other.values[k] for k, v in self.values.items()})

    def table_text(self) -> str:
        """Render as table:{label:value,...} over twisted sectors."""
        entries = [
            f"{self.stack.label_text(s.label)}:{format_fraction(self.values[s.label])}"
            for s in self.stack.twisted_sectors()
        ]
        return "table:{" + ",".join(entries) + "}"


def table_raising(stack: StackDescriptor, table: Mapping[Any, Any]) -> RaisingFunction:
    """Build a raising function from a label -> value map.

    Keys may be labels or their printed forms ("1/3", "(1,2,3)", "(1/3, 1/2)").
    The untwisted sector defaults to 0.

    Raises:
        SectorError: On unknown labels, missing twisted sectors or bad values.
    """
    known = set(stack.labels())
    values: dict[Any, Any] = {}
    for key, value in table.items():
        label = key if key in known else stack.parse_label(str(key))
        if label in values:
            msg = f"sector {stack.label_text(label)} listed twice"
            raise SectorError(msg)
        values[label] = value
    values.setdefault(stack.untwisted.label, 0)
    return RaisingFunction(stack, values)


def constant_raising(stack: StackDescriptor, value: Fraction | int) -> RaisingFunction:
    """c = value on every twisted sector."""
    values = {s.label: Fraction(value) if s.is_twisted else Fraction(0) for s in stack.sectors()}
    return RaisingFunction(stack, values)


def zero_raising(stack: StackDescriptor) -> RaisingFunction:
    """c = 0: the stable height."""
    return constant_raising(stack, 0)


def quasi_toric_raising(weights: Sequence[int] | WPSStack) -> RaisingFunction:
    """c(Y_r) = r * |a| on P(a)."""
    stack = weights if isinstance(weights, WPSStack) else WPSStack(tuple(weights))
    total = stack.total_weight
    return RaisingFunction(stack, {r: r * total for r in stack.index_set})


def index_raising(stack: BGStack) -> RaisingFunction:
    """c([g]) = ind(g) for the chosen permutation action.

    Raises:
        SectorError: If stack is not BG.
    """
    if not isinstance(stack, BGStack):
        msg = f"the index raising function needs a bg stack, got {stack.describe()}"
        raise SectorError(msg)
    values: dict[Any, Fraction] = {}
    for cls in stack.classes:
        values[cls] = Fraction(index(cls.representative))
    return RaisingFunction(stack, values)


def boxplus(
    *functions: RaisingFunction,
    stack: ProductStack | None = None,
) -> RaisingFunction:
    """(c_1 [+] ... [+] c_k)(y_1, ..., y_k) = c_1(y_1) + ... + c_k(y_k).

    Args:
        functions: One raising function per factor, in factor order
        stack: Target product; built from the factors when omitted

    Raises:
        SectorError: If stack's factors differ from the functions' stacks.
    """
    if len(functions) < 2:
        msg = "boxplus needs at least two raising functions"
        raise SectorError(msg)
    factors = tuple(c.stack for c in functions)
    if stack is None:
        stack = ProductStack(factors)
    elif stack.factors != factors:
        msg = (
            f"factor mismatch: {stack.describe()} vs "
            f"({', '.join(f.describe() for f in factors)})"
        )
        raise SectorError(msg)
    values = {
        s.label: sum((c(x) for c, x in zip(functions, s.label, strict=True)), Fraction(0))
        for s in stack.sectors()
    }
    return RaisingFunction(stack, values)


def _check_stack(stack: StackDescriptor, c: RaisingFunction) -> None:
    if c.stack != stack:
        msg = f"raising function lives on {c.stack.describe()}, not {stack.describe()}"
        raise SectorError(msg)


def age_c(stack: StackDescriptor, c: RaisingFunction) -> dict[Any, Fraction]:
    """age + c on every sector, in sector order."""
    _check_stack(stack, c)
    return {s.label: s.age + c(s.label) for s in stack.sectors()}


def junior_count(stack: StackDescriptor, c: RaisingFunction) -> int:
    """Number of twisted sectors with age_c exactly 1."""
    _check_stack(stack, c)
    return sum(1 for s in stack.twisted_sectors() if s.age + c(s.label) == 1)


@dataclass(frozen=True)
class Adequacy:
    """Outcome of an adequacy check with a human-readable reason."""

    adequate: bool
    reason: str

    def __bool__(self) -> bool:
        return self.adequate


def is_supported_fano(stack: StackDescriptor) -> bool:
    """WPS, or a product with at most one positive-dimensional WPS factor."""
    positive = [f for f in stack.factors_flat() if f.dim > 0]
    return len(positive) <= 1 and all(isinstance(f, WPSStack) for f in positive)


def is_adequate(stack: StackDescriptor, c: RaisingFunction) -> Adequacy:
    """Check whether (omega^-1, c) (or (O, c) in dimension 0) is adequate.

    Raises:
        SectorError: For positive-dimensional stacks outside the supported
            Fano families.
    """
    _check_stack(stack, c)
    if stack.dim > 0 and not is_supported_fano(stack):
        msg = f"adequacy is only decided for wps and wps x (dim 0) products, not {stack.describe()}"
        raise SectorError(msg)
    twisted = stack.twisted_sectors()
    for s in twisted:
        value = s.age + c(s.label)
        if value < 1:
            return Adequacy(False, f"age_c({s.text}) = {format_fraction(value)} < 1")
    if stack.dim == 0:
        if not twisted:
            return Adequacy(False, "no twisted sector")
        least = min(c(s.label) for s in twisted)
        if least != 1:
            return Adequacy(False, f"min twisted c = {format_fraction(least)}, not 1")
    return Adequacy(True, "age_c >= 1 on every twisted sector")

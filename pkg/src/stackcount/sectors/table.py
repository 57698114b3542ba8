"""Tabulated sectors with their ages and raised ages."""

from __future__ import annotations

from typing import TYPE_CHECKING

from pydantic import BaseModel, ConfigDict

from stackcount.errors import SectorError
from stackcount.rational import Rational

if TYPE_CHECKING:
    from stackcount.sectors.raising import RaisingFunction
    from stackcount.sectors.stacks import StackDescriptor


class SectorRow(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    label: str
    twisted: bool
    age: Rational
    c: Rational | None = None
    age_c: Rational | None = None
    junior: bool | None = None


class SectorTable(BaseModel):
    """Every sector of a stack in enumeration order.

    Attributes:
        stack: Normalized stack-spec text
        raising: Raising function as table text, if one was given
        dim: Dimension of the stack
        rho: Picard number
        junior_count: Number of c-junior twisted sectors, if c was given
        sectors: One row per sector
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    stack: str
    raising: str | None = None
    dim: int
    rho: int
    junior_count: int | None = None
    sectors: list[SectorRow]


def sector_table(stack: StackDescriptor, c: RaisingFunction | None = None) -> SectorTable:
    """Tabulate sectors; c, age_c and juniority are filled in when c is given.

    Raises:
        SectorError: If c lives on another stack.
    """
    if c is not None and c.stack != stack:
        msg = f"raising function lives on {c.stack.describe()}, not {stack.describe()}"
        raise SectorError(msg)
    rows: list[SectorRow] = []
    for sector in stack.sectors():
        if c is None:
            rows.append(SectorRow(label=sector.text, twisted=sector.is_twisted, age=sector.age))
            continue
        value = c(sector.label)
        raised = sector.age + value
        rows.append(
            SectorRow(
                label=sector.text,
                twisted=sector.is_twisted,
                age=sector.age,
                c=value,
                age_c=raised,
                junior=sector.is_twisted and raised == 1,
            )
        )
    return SectorTable(
        stack=stack.describe(),
        raising=None if c is None else c.table_text(),
        dim=stack.dim,
        rho=stack.rho,
        junior_count=None if c is None else sum(1 for r in rows if r.junior),
        sectors=rows,
    )

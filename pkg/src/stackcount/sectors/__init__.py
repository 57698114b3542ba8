"""Sector calculus: stacks, sectors, ages and raising functions."""

from stackcount.sectors.raising import (
    Adequacy,
    RaisingFunction,
    age_c,
    boxplus,
    constant_raising,
    index_raising,
    is_adequate,
    is_supported_fano,
    junior_count,
    quasi_toric_raising,
    table_raising,
    zero_raising,
)
from stackcount.sectors.stacks import (
    BGStack,
    MuStack,
    ProductStack,
    Sector,
    StackDescriptor,
    WPSStack,
    split_top_level,
)
from stackcount.sectors.table import SectorRow, SectorTable, sector_table

__all__ = [
    "Adequacy",
    "BGStack",
    "MuStack",
    "ProductStack",
    "RaisingFunction",
    "Sector",
    "SectorRow",
    "SectorTable",
    "StackDescriptor",
    "WPSStack",
    "age_c",
    "boxplus",
    "constant_raising",
    "index_raising",
    "is_adequate",
    "is_supported_fano",
    "junior_count",
    "quasi_toric_raising",
    "sector_table",
    "split_top_level",
    "table_raising",
    "zero_raising",
]

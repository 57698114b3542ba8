"""Finite permutation groups.

Usage:
    from stackcount.groups import parse_permutation, generate_group, conjugacy_classes

    g = parse_permutation("(1,2,3)", 6)
    G = generate_group([g, parse_permutation("(1,4)(2,5)(3,6)", 6)])
"""

from stackcount.groups.group import (
    DEFAULT_CLOSURE_LIMIT,
    DEFAULT_SUBGROUP_ORDER_LIMIT,
    ConjClass,
    FiniteGroup,
    conjugacy_classes,
    generate_group,
    index,
    is_normal,
    normal_closure,
    orbit_partition,
    subgroups,
)
from stackcount.groups.named import (
    abelian_group,
    alternating_group,
    cyclic_group,
    kluners_group,
    kluners_normal_subgroup,
    kluners_swap,
    symmetric_group,
)
from stackcount.groups.permutation import GroupElement, parse_permutation

__all__ = [
    "DEFAULT_CLOSURE_LIMIT",
    "DEFAULT_SUBGROUP_ORDER_LIMIT",
    "ConjClass",
    "FiniteGroup",
    "GroupElement",
    "abelian_group",
    "alternating_group",
    "conjugacy_classes",
    "cyclic_group",
    "generate_group",
    "index",
    "is_normal",
    "kluners_group",
    "kluners_normal_subgroup",
    "kluners_swap",
    "normal_closure",
    "orbit_partition",
    "parse_permutation",
    "subgroups",
    "symmetric_group",
]

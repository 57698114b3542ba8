"""Tests for stack descriptors, raising functions and sector tables."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import TYPE_CHECKING

import pytest

from stackcount.errors import SectorError
from stackcount.galois import FieldDescriptor
from stackcount.groups import cyclic_group, parse_permutation
from stackcount.sectors import (
    BGStack,
    MuStack,
    ProductStack,
    StackDescriptor,
    WPSStack,
    age_c,
    boxplus,
    constant_raising,
    index_raising,
    is_adequate,
    is_supported_fano,
    junior_count,
    quasi_toric_raising,
    sector_table,
    split_top_level,
    table_raising,
    zero_raising,
)

if TYPE_CHECKING:
    from stackcount.groups import FiniteGroup
    from stackcount.sectors import RaisingFunction

pytestmark = pytest.mark.unit

F = Fraction


def _table_one_raising(stack: ProductStack) -> RaisingFunction:
    wps, mu = stack.factors
    assert isinstance(wps, WPSStack)
    return boxplus(quasi_toric_raising(wps), constant_raising(mu, 1), stack=stack)


# ============================================================================
# Stack families
# ============================================================================


class TestMuStack:
    def test_sectors(self) -> None:
        stack = MuStack(4)
        assert [s.text for s in stack.sectors()] == ["0", "1/4", "1/2", "3/4"]
        assert all(s.age == 0 for s in stack.sectors())
        assert stack.untwisted.label == 0
        assert (stack.dim, stack.rho) == (0, 0)

    def test_parse_label(self) -> None:
        assert MuStack(4).parse_label("1/2") == 2
        assert MuStack(4).parse_label(" 3/4 ") == 3
        with pytest.raises(SectorError, match="not a sector of mu"):
            MuStack(4).parse_label("1/3")
        with pytest.raises(SectorError, match="not a rational"):
            MuStack(4).parse_label("half")

    def test_l_must_be_positive(self) -> None:
        with pytest.raises(SectorError):
            MuStack(0)


class TestWPSStack:
    def test_p23_ages(self) -> None:
        stack = WPSStack((2, 3))
        assert stack.index_set == (F(0), F(1, 3), F(1, 2), F(2, 3))
        assert [s.age for s in stack.sectors()] == [F(0), F(1, 3), F(1, 2), F(2, 3)]
        assert (stack.dim, stack.rho, stack.total_weight) == (1, 1, 5)

    def test_p112_has_a_junior_sector(self) -> None:
        stack = WPSStack((1, 1, 2))
        assert stack.index_set == (F(0), F(1, 2))
        assert stack.age(F(1, 2)) == 1
        assert junior_count(stack, zero_raising(stack)) == 1

    def test_age_sums_over_all_weights(self) -> None:
        stack = WPSStack((2, 4))
        assert stack.age(F(1, 4)) == F(1, 2) + F(0)
        assert stack.age(F(1, 2)) == 0

    def test_single_weight_is_zero_dimensional(self) -> None:
        stack = WPSStack((3,))
        assert (stack.dim, stack.rho) == (0, 0)
        assert len(stack.sectors()) == 3

    def test_parse_label(self) -> None:
        assert WPSStack((2, 3)).parse_label("2/3") == F(2, 3)
        with pytest.raises(SectorError):
            WPSStack((2, 3)).parse_label("1/4")

    @pytest.mark.parametrize("weights", [(), (0, 1), (2, -1)])
    def test_bad_weights(self, weights: tuple[int, ...]) -> None:
        with pytest.raises(SectorError):
            WPSStack(weights)

    def test_describe(self) -> None:
        assert WPSStack((1, 1, 2)).describe() == "wps(1,1,2)"


class TestBGStack:
    def test_s3_over_q(self, bg_s3_over_q: BGStack) -> None:
        assert [s.text for s in bg_s3_over_q.sectors()] == ["()", "(2,3)", "(1,2,3)"]
        assert bg_s3_over_q.describe() == "bg(degree=3; gens=(1,2)|(1,2,3); field=Q)"

    def test_field_is_restricted_to_exponent(self, s3: FiniteGroup) -> None:
        stack = BGStack(s3, FieldDescriptor.rationals(12))
        assert stack.field.modulus == 6

    def test_parse_label_maps_to_class(self, bg_s3_over_q: BGStack) -> None:
        cls = bg_s3_over_q.parse_label("(1,3,2)")
        assert str(cls) == "(1,2,3)"
        with pytest.raises(SectorError, match="bad class label"):
            bg_s3_over_q.parse_label("(1,4)")

    def test_action_degree_must_match(self, s3: FiniteGroup) -> None:
        with pytest.raises(SectorError, match="action degree"):
            BGStack(s3, FieldDescriptor.rationals(6), action_degree=4)

    def test_cyclic_sectors_depend_on_field(self) -> None:
        group = cyclic_group(5)
        assert len(BGStack(group, FieldDescriptor.rationals(5)).sectors()) == 2
        assert len(BGStack(group, FieldDescriptor.split(5)).sectors()) == 5
        assert len(BGStack(group, FieldDescriptor(5, (4,))).sectors()) == 3


class TestProductStack:
    def test_table_one_order_and_ages(self, table_one_stack: ProductStack) -> None:
        texts = [s.text for s in table_one_stack.sectors()]
        assert texts == [
            "(0, 0)",
            "(0, 1/2)",
            "(1/3, 0)",
            "(1/3, 1/2)",
            "(1/2, 0)",
            "(1/2, 1/2)",
            "(2/3, 0)",
            "(2/3, 1/2)",
        ]
        assert [s.age for s in table_one_stack.sectors()] == [
            F(0), F(0), F(1, 3), F(1, 3), F(1, 2), F(1, 2), F(2, 3), F(2, 3)
        ]

    def test_parse_label(self, table_one_stack: ProductStack) -> None:
        assert table_one_stack.parse_label("(1/3, 1/2)") == (F(1, 3), 1)
        with pytest.raises(SectorError, match="expected 2"):
            table_one_stack.parse_label("(1/3)")
        with pytest.raises(SectorError, match="parenthesized"):
            table_one_stack.parse_label("1/3, 1/2")

    def test_needs_two_factors(self) -> None:
        with pytest.raises(SectorError):
            ProductStack((MuStack(2),))

    def test_split_top_level(self) -> None:
        assert split_top_level("a, (b, c), [d, e]", ",") == ["a", "(b, c)", "[d, e]"]

    def test_additivity_on_random_products(self) -> None:
        rng = random.Random(424242)

        def random_factor() -> StackDescriptor:
            if rng.random() < 0.4:
                return MuStack(rng.randint(1, 6))
            return WPSStack(tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 3))))

        for _ in range(1000):
            factors = (random_factor(), random_factor())
            stack = ProductStack(factors)
            left, right = factors
            assert len(stack.sectors()) == len(left.sectors()) * len(right.sectors())
            c_left = constant_raising(left, rng.randint(0, 3))
            c_right = constant_raising(right, F(rng.randint(0, 6), 2))
            summed = boxplus(c_left, c_right, stack=stack)
            raised = age_c(stack, summed)
            left_ages = {s.label: s.age for s in left.sectors()}
            right_ages = {s.label: s.age for s in right.sectors()}
            for sector in rng.sample(stack.sectors(), min(5, len(stack.sectors()))):
                x, y = sector.label
                assert sector.age == left_ages[x] + right_ages[y]
                assert raised[sector.label] == left_ages[x] + c_left(x) + right_ages[y] + c_right(y)


# ============================================================================
# Raising functions
# ============================================================================


class TestRaisingFunction:
    def test_quasi_toric(self) -> None:
        c = quasi_toric_raising((2, 3))
        assert [c(r) for r in (F(1, 3), F(1, 2), F(2, 3))] == [F(5, 3), F(5, 2), F(10, 3)]
        assert c.table_text() == "table:{1/3:5/3,1/2:5/2,2/3:10/3}"

    def test_index_raising(self, bg_s3_over_q: BGStack) -> None:
        c = index_raising(bg_s3_over_q)
        assert [c(s.label) for s in bg_s3_over_q.sectors()] == [0, 1, 2]

    def test_index_raising_needs_bg(self) -> None:
        with pytest.raises(SectorError, match="needs a bg stack"):
            index_raising(MuStack(2))  # type: ignore[arg-type]

    def test_table_raising_accepts_printed_labels(self) -> None:
        stack = WPSStack((2, 3))
        c = table_raising(stack, {"1/3": 1, "1/2": "3/2", F(2, 3): 2})
        assert c(F(1, 2)) == F(3, 2)
        assert c(F(0)) == 0

    def test_table_raising_rejects_duplicates(self) -> None:
        with pytest.raises(SectorError, match="listed twice"):
            table_raising(MuStack(2), {"1/2": 1, 1: 2})

    def test_must_be_total(self) -> None:
        with pytest.raises(SectorError, match="not total"):
            table_raising(WPSStack((2, 3)), {"1/3": 1})

    def test_must_be_nonnegative(self) -> None:
        with pytest.raises(SectorError, match="negative"):
            table_raising(MuStack(2), {"1/2": -1})

    def test_must_vanish_on_untwisted(self) -> None:
        with pytest.raises(SectorError, match="vanish"):
            table_raising(MuStack(2), {"0": 1, "1/2": 1})

    def test_scaled_and_sum(self) -> None:
        stack = MuStack(3)
        c = constant_raising(stack, 1)
        assert (c.scaled(F(1, 2)) + c)(1) == F(3, 2)
        with pytest.raises(SectorError):
            c.scaled(-1)
        with pytest.raises(SectorError, match="different stacks"):
            c + constant_raising(MuStack(2), 1)

    def test_boxplus_factor_mismatch(self, table_one_stack: ProductStack) -> None:
        half = constant_raising(MuStack(2), 1)
        with pytest.raises(SectorError, match="factor mismatch"):
            boxplus(half, half, stack=table_one_stack)
        with pytest.raises(SectorError, match="at least two"):
            boxplus(half)

    def test_table_one_age_c(self, table_one_stack: ProductStack) -> None:
        c = _table_one_raising(table_one_stack)
        assert list(age_c(table_one_stack, c).values()) == [0, 1, 2, 3, 3, 4, 4, 5]
        assert junior_count(table_one_stack, c) == 1

    def test_age_c_checks_stack(self) -> None:
        with pytest.raises(SectorError, match="lives on"):
            age_c(MuStack(3), constant_raising(MuStack(2), 1))


class TestAdequacy:
    def test_zero_dimensional(self, bg_s3_over_q: BGStack) -> None:
        assert is_adequate(bg_s3_over_q, index_raising(bg_s3_over_q))
        halved = is_adequate(bg_s3_over_q, index_raising(bg_s3_over_q).scaled(F(1, 2)))
        assert not halved
        assert "< 1" in halved.reason
        doubled = is_adequate(bg_s3_over_q, index_raising(bg_s3_over_q).scaled(2))
        assert not doubled
        assert "min twisted c = 2" in doubled.reason

    def test_trivial_group_has_no_twisted_sector(self) -> None:
        assert not is_adequate(MuStack(1), zero_raising(MuStack(1)))

    def test_wps(self) -> None:
        stack = WPSStack((2, 3))
        assert is_adequate(stack, quasi_toric_raising(stack))
        assert not is_adequate(stack, zero_raising(stack))
        assert is_adequate(WPSStack((1, 1, 2)), zero_raising(WPSStack((1, 1, 2))))

    def test_supported_fano(self, table_one_stack: ProductStack) -> None:
        assert is_supported_fano(table_one_stack)
        assert is_supported_fano(MuStack(2))
        two_curves = ProductStack((WPSStack((1, 1)), WPSStack((1, 1))))
        assert not is_supported_fano(two_curves)
        with pytest.raises(SectorError, match="only decided"):
            is_adequate(two_curves, zero_raising(two_curves))


# ============================================================================
# Sector tables
# ============================================================================


class TestSectorTable:
    def test_without_raising(self) -> None:
        table = sector_table(WPSStack((2, 3)))
        assert table.raising is None
        assert table.junior_count is None
        assert [row.c for row in table.sectors] == [None] * 4

    def test_table_one(self, table_one_stack: ProductStack) -> None:
        table = sector_table(table_one_stack, _table_one_raising(table_one_stack))
        assert table.stack == "prod(wps(2,3), mu(2))"
        assert (table.dim, table.rho, table.junior_count) == (1, 1, 1)
        assert [row.age_c for row in table.sectors] == [0, 1, 2, 3, 3, 4, 4, 5]
        assert [row.label for row in table.sectors if row.junior] == ["(0, 1/2)"]
        assert table.model_dump(mode="json")["sectors"][2]["c"] == "5/3"

    def test_stack_mismatch(self) -> None:
        with pytest.raises(SectorError, match="lives on"):
            sector_table(MuStack(3), constant_raising(MuStack(2), 1))

    def test_bg_labels_use_representatives(self, kluners: FiniteGroup) -> None:
        group_stack = BGStack(kluners, FieldDescriptor.rationals(6))
        table = sector_table(group_stack, index_raising(group_stack))
        element = parse_permutation("(1,2,3)", 6)
        assert str(group_stack.class_of(element)) in [row.label for row in table.sectors]

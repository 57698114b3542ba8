"""Tests for field descriptors, F-conjugacy and twisted orbits."""

from __future__ import annotations

import random
from typing import TYPE_CHECKING

import pytest

from stackcount.errors import FieldError, TwistError
from stackcount.galois import (
    FieldDescriptor,
    QuadraticCharacter,
    TwistDatum,
    TwistMode,
    f_conjugacy_classes,
    quadratic_characters,
    refines,
    twisted_orbits,
    units_mod,
)
from stackcount.groups import (
    GroupElement,
    conjugacy_classes,
    cyclic_group,
    generate_group,
    index,
    kluners_normal_subgroup,
    kluners_swap,
    parse_permutation,
    symmetric_group,
)

if TYPE_CHECKING:
    from stackcount.groups import FiniteGroup

pytestmark = pytest.mark.unit


def _orbit_texts(orbits: list[frozenset]) -> list[set[str]]:
    return [{str(g) for g in orbit} for orbit in orbits]


# ============================================================================
# Field descriptors
# ============================================================================


class TestFieldDescriptor:
    def test_units_mod(self) -> None:
        assert units_mod(1) == [1]
        assert units_mod(6) == [1, 5]
        assert units_mod(8) == [1, 3, 5, 7]

    def test_rationals_and_split(self) -> None:
        q = FieldDescriptor.rationals(12)
        assert q.is_rational
        assert q.units == frozenset({1, 5, 7, 11})
        assert str(q) == "Q"
        split = FieldDescriptor.split(12)
        assert split.is_split
        assert str(split) == "split"

    def test_intermediate_field(self) -> None:
        field = FieldDescriptor(12, (5,))
        assert not field.is_rational
        assert not field.is_split
        assert field.contains(17)
        assert not field.contains(7)
        assert str(field) == "U(12; 5)"

    def test_generators_are_normalized(self) -> None:
        assert FieldDescriptor(12, (17, 1, 5)).unit_generators == (5,)

    def test_non_unit_is_rejected(self) -> None:
        with pytest.raises(FieldError, match="not a unit"):
            FieldDescriptor(12, (4,))

    def test_restrict(self) -> None:
        assert FieldDescriptor.rationals(12).restrict(6).is_rational
        assert FieldDescriptor.split(12).restrict(3).is_split
        with pytest.raises(FieldError, match="not a multiple"):
            FieldDescriptor.rationals(12).restrict(5)


# ============================================================================
# F-conjugacy
# ============================================================================


class TestFConjugacy:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_split_field_gives_conjugacy_classes(self, n: int) -> None:
        group = symmetric_group(n)
        f_classes = f_conjugacy_classes(group, FieldDescriptor.split(group.exponent))
        ordinary = conjugacy_classes(group)
        assert [c.members for c in f_classes] == [c.members for c in ordinary]

    def test_kluners_split_matches_conjugacy(self, kluners: FiniteGroup) -> None:
        f_classes = f_conjugacy_classes(kluners, FieldDescriptor.split(6))
        assert [c.members for c in f_classes] == [c.members for c in conjugacy_classes(kluners)]
        assert len(f_classes) == 9

    def test_rational_classes_of_symmetric_groups(self, s4: FiniteGroup) -> None:
        assert len(f_conjugacy_classes(s4, FieldDescriptor.rationals(s4.exponent))) == 5

    def test_cyclic_group_over_q_and_split(self) -> None:
        group = cyclic_group(3)
        assert len(f_conjugacy_classes(group, FieldDescriptor.rationals(3))) == 2
        assert len(f_conjugacy_classes(group, FieldDescriptor.split(3))) == 3

    def test_kluners_over_q(self, kluners: FiniteGroup) -> None:
        classes = f_conjugacy_classes(kluners, FieldDescriptor.rationals(6))
        assert len(classes) == 6
        assert classes[0].is_identity
        assert refines(kluners, classes)

    def test_field_modulus_must_cover_exponent(self, kluners: FiniteGroup) -> None:
        with pytest.raises(FieldError):
            f_conjugacy_classes(kluners, FieldDescriptor.rationals(4))

    def test_random_groups(self) -> None:
        rng = random.Random(20240611)
        for _ in range(1000):
            degree = rng.randint(1, 4)
            gens: list[GroupElement] = []
            for _ in range(rng.randint(1, 2)):
                images = list(range(1, degree + 1))
                rng.shuffle(images)
                gens.append(GroupElement.from_images(images))
            group = generate_group(gens)
            split = f_conjugacy_classes(group, FieldDescriptor.split(group.exponent))
            assert [c.members for c in split] == [c.members for c in conjugacy_classes(group)]
            rational = f_conjugacy_classes(group, FieldDescriptor.rationals(group.exponent))
            assert refines(group, rational)
            assert len(rational) <= len(split)
            for cls in rational:
                for u in units_mod(group.exponent):
                    assert all(g**u in cls.members for g in cls.members)

    @pytest.mark.parametrize("modulus_factor", [1, 2, 5])
    def test_index_is_constant_on_classes(self, modulus_factor: int) -> None:
        for group in (symmetric_group(5), generate_group([parse_permutation("(1,2,3,4,5,6)", 6)])):
            field = FieldDescriptor.rationals(group.exponent * modulus_factor)
            for cls in f_conjugacy_classes(group, field):
                assert len({index(g) for g in cls.members}) == 1


# ============================================================================
# Quadratic characters
# ============================================================================


class TestQuadraticCharacters:
    def test_mod_8(self) -> None:
        kernels = [sorted(chi.kernel) for chi in quadratic_characters(8)]
        assert kernels == [[1, 3], [1, 5], [1, 7]]

    def test_cyclic_unit_groups(self) -> None:
        assert [sorted(chi.kernel) for chi in quadratic_characters(6)] == [[1]]
        assert [sorted(chi.kernel) for chi in quadratic_characters(5)] == [[1, 4]]
        assert quadratic_characters(2) == []

    def test_epsilon(self) -> None:
        chi = QuadraticCharacter(8, frozenset({1, 3}))
        assert [chi.epsilon(u) for u in (1, 3, 5, 7, 11)] == [0, 0, 1, 1, 0]
        assert not chi.is_trivial

    def test_kernel_must_be_index_two_subgroup(self) -> None:
        with pytest.raises(TwistError, match="not a subgroup"):
            QuadraticCharacter(8, frozenset({1, 3, 5}))
        with pytest.raises(TwistError, match="not a set of units"):
            QuadraticCharacter(8, frozenset({1, 2}))


# ============================================================================
# Twisted forms
# ============================================================================


class TestTwistDatum:
    @pytest.fixture
    def swap_twist(self) -> TwistDatum:
        return TwistDatum.by_conjugation(kluners_normal_subgroup(), 6, kluners_swap())

    def test_trivial_mode_orbits(self, swap_twist: TwistDatum) -> None:
        orbits = _orbit_texts(twisted_orbits(swap_twist))
        assert orbits[0] == {"()"}
        assert len(orbits) == 5
        assert {"(1,2,3)", "(1,3,2)"} in orbits

    def test_independent_mode_merges_factors(self, swap_twist: TwistDatum) -> None:
        orbits = _orbit_texts(twisted_orbits(swap_twist.with_mode(TwistMode.INDEPENDENT)))
        assert len(orbits) == 4
        assert {"(1,2,3)", "(1,3,2)", "(4,5,6)", "(4,6,5)"} in orbits

    def test_synchronized_mode(self, swap_twist: TwistDatum) -> None:
        (chi,) = quadratic_characters(6)
        twist = swap_twist.with_mode(TwistMode.SYNCHRONIZED, chi)
        orbits = _orbit_texts(twisted_orbits(twist))
        assert len(orbits) == 6
        assert {"(1,2,3)", "(4,6,5)"} in orbits
        assert {"(1,2,3)(4,6,5)"} in orbits
        assert twist.describe() == "synchronized(ker={1} mod 6)"

    def test_orbits_partition_the_group(self, swap_twist: TwistDatum) -> None:
        for mode in TwistMode:
            character = quadratic_characters(6)[0] if mode is TwistMode.SYNCHRONIZED else None
            orbits = twisted_orbits(swap_twist.with_mode(mode, character))
            assert sum(len(o) for o in orbits) == 9

    def test_synchronized_needs_character(self, swap_twist: TwistDatum) -> None:
        with pytest.raises(TwistError, match="needs a quadratic character"):
            swap_twist.with_mode(TwistMode.SYNCHRONIZED)
        with pytest.raises(TwistError, match="takes no character"):
            swap_twist.with_mode(TwistMode.INDEPENDENT, quadratic_characters(6)[0])

    def test_character_modulus_must_match(self, swap_twist: TwistDatum) -> None:
        with pytest.raises(TwistError, match="differs from"):
            swap_twist.with_mode(TwistMode.SYNCHRONIZED, quadratic_characters(3)[0])

    def test_exponent_must_be_multiple(self) -> None:
        with pytest.raises(TwistError, match="does not divide"):
            TwistDatum.by_conjugation(kluners_normal_subgroup(), 4, kluners_swap())

    def test_conjugator_must_normalize(self) -> None:
        group = generate_group([parse_permutation("(1,2)", 3)])
        with pytest.raises(TwistError, match="does not normalize"):
            TwistDatum.by_conjugation(group, 2, parse_permutation("(1,3)", 3))

    def test_identity_involution(self) -> None:
        group = cyclic_group(3)
        twist = TwistDatum.by_conjugation(group, 3, group.identity)
        assert twist.is_identity_involution
        assert not TwistDatum.by_conjugation(
            kluners_normal_subgroup(), 3, kluners_swap()
        ).is_identity_involution

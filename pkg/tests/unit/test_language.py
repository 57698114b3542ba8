"""Tests for the stack-spec and raising-spec parsers."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from stackcount.galois import FieldDescriptor
from stackcount.groups import symmetric_group
from stackcount.language import (
    BGNode,
    FieldKind,
    FieldNode,
    MuNode,
    ProdNode,
    SpecError,
    SpecSemanticError,
    SpecSyntaxError,
    WPSNode,
    load_stack,
    normalize_spec,
    parse_raising_spec,
    parse_stack_spec,
    print_spec,
)
from stackcount.language.parser import MAX_NESTING, MAX_SECTORS
from stackcount.sectors import (
    BGStack,
    MuStack,
    ProductStack,
    WPSStack,
    boxplus,
    constant_raising,
    index_raising,
    quasi_toric_raising,
    table_raising,
)

pytestmark = pytest.mark.unit

VALID_SPECS = [
    "mu(3)",
    "wps(1,1,2)",
    "prod(wps(2,3), mu(2))",
    "bg(degree=4; gens=(1,2)|(3,4); field=U(4; 3))",
    "bg(gens=[2,3,1]; field=split)",
    "prod(bg(gens=(1,2)), prod(mu(2), mu(3)))",
]
FUZZ_ALPHABET = "bgmuwpsrod(),;|=0123456789 QUsplitfeadegn{}[]:/+\t"


def _mutate(rng: random.Random, text: str) -> str:
    i = rng.randrange(len(text) + 1)
    j = rng.randrange(i, len(text) + 1)
    choice = rng.randrange(5)
    if choice == 0:
        return text[:i] + rng.choice(FUZZ_ALPHABET) + text[i:]
    if choice == 1:
        return text[:i] + text[i + 1 :]
    if choice == 2:
        return text[:i] + rng.choice(FUZZ_ALPHABET) + text[i + 1 :]
    if choice == 3:
        return text[:i]
    return text[:j] + text[i:j] + text[j:]


# ============================================================================
# Stack specs
# ============================================================================


class TestParseStackSpec:
    def test_nodes(self) -> None:
        assert parse_stack_spec(" mu( 3 ) ") == MuNode(3)
        assert parse_stack_spec("wps(2, 3)") == WPSNode((2, 3))
        assert parse_stack_spec("prod(wps(2,3),mu(2))") == ProdNode((WPSNode((2, 3)), MuNode(2)))

    def test_bg_node(self) -> None:
        node = parse_stack_spec("bg(gens=(1,2)|(1,2,3))")
        assert node == BGNode(3, ("(1,2)", "(1,2,3)"), FieldNode(FieldKind.RATIONALS))

    def test_bg_field(self) -> None:
        node = parse_stack_spec("bg(degree=4; gens=(1,2,3,4); field=U(4; 3))")
        assert isinstance(node, BGNode)
        assert node.field == FieldNode(FieldKind.UNITS, 4, (3,))
        assert node.field.render() == "U(4; 3)"

    def test_image_list_is_canonicalized(self) -> None:
        assert normalize_spec("bg(gens=[2,3,1])") == "bg(degree=3; gens=(1,2,3); field=Q)"

    @pytest.mark.parametrize(
        ("text", "normalized"),
        [
            ("prod( wps(2, 3) ,mu(2) )", "prod(wps(2,3), mu(2))"),
            ("bg(gens=(1,2)|(1,2,3))", "bg(degree=3; gens=(1,2)|(1,2,3); field=Q)"),
            ("bg( field = split ; gens=(1,2) ; degree=5)", "bg(degree=5; gens=(1,2); field=split)"),
            ("wps(007)", "wps(7)"),
        ],
    )
    def test_normalize(self, text: str, normalized: str) -> None:
        assert normalize_spec(text) == normalized
        assert normalize_spec(normalized) == normalized
        assert print_spec(parse_stack_spec(text)) == normalized

    @pytest.mark.parametrize(
        ("text", "error", "position"),
        [
            ("", SpecSyntaxError, 0),
            ("wps(0,1)", SpecSemanticError, 4),
            ("mu(0)", SpecSemanticError, 3),
            ("prod(mu(2))", SpecSemanticError, 0),
            ("mu(2) x", SpecSyntaxError, 6),
            ("foo(1)", SpecSyntaxError, 0),
            ("mu 2", SpecSyntaxError, 3),
            ("mu(2", SpecSyntaxError, 4),
            ("wps(1,,2)", SpecSyntaxError, 6),
            ("bg(degree=2; gens=(1,3))", SpecSemanticError, 18),
            ("bg(degree=3)", SpecSyntaxError, 3),
            ("bg(gens=(1,2); gens=(1,2))", SpecSyntaxError, 15),
            ("bg(gens=(1,2); field=R)", SpecSyntaxError, 21),
            ("mu(1234567890123456789)", SpecSyntaxError, 3),
            ("mu(100000000000000000)", SpecSemanticError, 3),
            ("mu(10001)", SpecSemanticError, 3),
            ("wps(6000, 6000)", SpecSemanticError, 4),
            ("prod(mu(1000), mu(1000))", SpecSemanticError, 0),
            ("prod(mu(2), prod(wps(100,100), mu(30)))", SpecSemanticError, 0),
        ],
    )
    def test_errors(self, text: str, error: type[SpecError], position: int) -> None:
        with pytest.raises(error) as exc_info:
            parse_stack_spec(text)
        assert exc_info.value.position == position
        assert f"(at byte {position})" in str(exc_info.value)

    def test_sector_limit_is_inclusive(self) -> None:
        assert parse_stack_spec(f"mu({MAX_SECTORS})") == MuNode(MAX_SECTORS)
        assert parse_stack_spec("prod(mu(100), mu(100))").render() == "prod(mu(100), mu(100))"

    def test_positions_are_byte_offsets(self) -> None:
        with pytest.raises(SpecSemanticError) as exc_info:
            parse_stack_spec("\u3000mu(0)")
        assert exc_info.value.position == 6

    def test_invalid_utf8(self) -> None:
        with pytest.raises(SpecSyntaxError) as exc_info:
            parse_stack_spec(b"mu(\xff)")
        assert exc_info.value.position == 3

    def test_nesting_limit(self) -> None:
        spec = "mu(2)"
        for _ in range(MAX_NESTING + 2):
            spec = f"prod({spec}, mu(2))"
        with pytest.raises(SpecSyntaxError, match="nested deeper"):
            parse_stack_spec(spec)

    def test_fuzzed_input_never_escapes(self) -> None:
        rng = random.Random(4242)
        parsed = 0
        for case in range(2000):
            if case % 4 == 0:
                text = "".join(rng.choice(FUZZ_ALPHABET) for _ in range(rng.randint(0, 30)))
            else:
                text = rng.choice(VALID_SPECS)
                for _ in range(rng.randint(1, 3)):
                    text = _mutate(rng, text)
            try:
                normalized = normalize_spec(text)
            except SpecError as e:
                assert 0 <= e.position <= len(text.encode())
            else:
                parsed += 1
                assert normalize_spec(normalized) == normalized
        assert parsed > 0


class TestLoadStack:
    def test_descriptors(self) -> None:
        assert load_stack("mu(3)") == MuStack(3)
        assert load_stack("wps(2,3)") == WPSStack((2, 3))
        stack = load_stack("prod(wps(2,3), mu(2))")
        assert isinstance(stack, ProductStack)
        assert stack.factors == (WPSStack((2, 3)), MuStack(2))

    def test_bg_group(self) -> None:
        stack = load_stack("bg(gens=(1,2)|(1,2,3))")
        assert isinstance(stack, BGStack)
        assert stack.group.order == 6
        assert stack.group == symmetric_group(3)
        assert stack.field == FieldDescriptor.rationals(6)

    def test_split_field(self) -> None:
        stack = load_stack("bg(gens=(1,2,3); field=split)")
        assert isinstance(stack, BGStack)
        assert stack.field.is_split

    def test_closure_limit(self) -> None:
        with pytest.raises(SpecSemanticError) as exc_info:
            load_stack("prod(mu(2), bg(gens=(1,2,3,4,5,6,7,8)|(1,2)))", closure_limit=100)
        assert exc_info.value.position == 12

    def test_product_sector_limit_counts_built_groups(self) -> None:
        cycle = ",".join(str(i) for i in range(1, 201))
        spec = f"prod(mu(100), bg(gens=({cycle}); field=split))"
        with pytest.raises(SpecSemanticError, match="more than") as exc_info:
            load_stack(spec)
        assert exc_info.value.position == 0
        assert len(load_stack(f"prod(mu(50), bg(gens=({cycle}); field=split))").sectors()) == 10_000


# ============================================================================
# Raising specs
# ============================================================================


class TestParseRaisingSpec:
    @pytest.fixture
    def table_one(self) -> ProductStack:
        stack = load_stack("prod(wps(2,3), mu(2))")
        assert isinstance(stack, ProductStack)
        return stack

    def test_box_sum_of_terms(self, table_one: ProductStack) -> None:
        wps, mu = table_one.factors
        expected = boxplus(quasi_toric_raising(wps), constant_raising(mu, 1), stack=table_one)
        assert parse_raising_spec("builtin:quasitoric+builtin:constant:1", table_one) == expected
        assert (
            parse_raising_spec("boxplus(builtin:quasitoric, table:{1/2:1})", table_one) == expected
        )

    def test_table(self) -> None:
        stack = MuStack(3)
        c = parse_raising_spec("table:{1/3: 1/2, 2/3: 0.5}", stack)
        assert c == table_raising(stack, {1: Fraction(1, 2), 2: Fraction(1, 2)})

    def test_pointwise_sum(self) -> None:
        stack = MuStack(3)
        c = parse_raising_spec("builtin:constant:1 + builtin:constant:1/2", stack)
        assert c == constant_raising(stack, Fraction(3, 2))

    def test_index(self) -> None:
        stack = load_stack("bg(gens=(1,2)|(1,2,3))")
        assert isinstance(stack, BGStack)
        assert parse_raising_spec("builtin:index", stack) == index_raising(stack)

    @pytest.mark.parametrize(
        ("text", "error", "position"),
        [
            ("builtin:index", SpecSemanticError, 0),
            ("builtin:quasitoric", SpecSemanticError, 0),
            ("builtin:foo", SpecSyntaxError, 0),
            ("table:{1/2:1,1/2:2}", SpecSemanticError, 13),
            ("table:{1/2:x}", SpecSyntaxError, 11),
            ("table:1/2:1", SpecSyntaxError, 6),
            ("builtin:zero+", SpecSyntaxError, 13),
            ("boxplus(builtin:zero, builtin:zero)", SpecSemanticError, 0),
            ("magic", SpecSyntaxError, 0),
        ],
    )
    def test_errors(self, text: str, error: type[SpecError], position: int) -> None:
        with pytest.raises(error) as exc_info:
            parse_raising_spec(text, MuStack(2))
        assert exc_info.value.position == position

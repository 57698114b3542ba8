"""Parsers for stack specs and raising-function specs.

Stack specs follow the grammar in ``stackcount.language.ast``. Raising specs
are a top-level "+" list of terms:

    term := "builtin:index" | "builtin:quasitoric" | "builtin:zero"
          | "builtin:constant:" value
          | "table:{" label ":" value ("," label ":" value)* "}"
          | "boxplus(" raising ("," raising)+ ")"

On a product of k factors a list of exactly k terms is the box-sum of the
terms, each read on its own factor. Otherwise the terms are read on the whole
stack and added pointwise.

Every error carries the byte offset of the offending input.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import TYPE_CHECKING

from stackcount.errors import PermutationSyntaxError, StackcountError
from stackcount.galois import FieldDescriptor
from stackcount.groups import DEFAULT_CLOSURE_LIMIT, generate_group, parse_permutation
from stackcount.language.ast import (
    BGNode,
    FieldKind,
    FieldNode,
    MuNode,
    ProdNode,
    StackSpecAST,
    WPSNode,
)
from stackcount.rational import to_fraction
from stackcount.sectors import (
    BGStack,
    MuStack,
    ProductStack,
    StackDescriptor,
    WPSStack,
    boxplus,
    constant_raising,
    index_raising,
    quasi_toric_raising,
    table_raising,
    zero_raising,
)

if TYPE_CHECKING:
    from collections.abc import Callable

    from stackcount.sectors import RaisingFunction

MAX_NESTING = 32
MAX_DIGITS = 18
MAX_DEGREE = 10_000
MAX_SECTORS = 10_000

_INTEGER = re.compile(r"[0-9]+")
_RATIONAL = re.compile(r"-?[0-9]+(/[0-9]+)?|-?[0-9]*\.[0-9]+")


class SpecError(StackcountError):
    """Base class for mini-language errors."""

    def __init__(self, message: str, position: int) -> None:
        """Initialize SpecError.

        Args:
            message: Error description
            position: Byte offset of the offending input
        """
        self.position = position
        super().__init__(f"{message} (at byte {position})")


class SpecSyntaxError(SpecError):
    """Raised when input does not match the grammar."""


class SpecSemanticError(SpecError):
    """Raised for well-formed input naming an invalid object."""


class _Source:
    """Input text plus conversion of character indices to byte offsets."""

    def __init__(self, text: str | bytes) -> None:
        if isinstance(text, bytes):
            try:
                text = text.decode("utf-8")
            except UnicodeDecodeError as e:
                msg = "input is not valid UTF-8"
                raise SpecSyntaxError(msg, e.start) from e
        self.text = text

    def offset(self, index: int) -> int:
        return len(self.text[:index].encode("utf-8", "surrogatepass"))

    def syntax(self, message: str, index: int) -> SpecSyntaxError:
        return SpecSyntaxError(message, self.offset(index))

    def semantic(self, message: str, index: int) -> SpecSemanticError:
        return SpecSemanticError(message, self.offset(index))


def _found(text: str, index: int) -> str:
    return repr(text[index]) if index < len(text) else "end of input"


def _split(source: _Source, start: int, end: int, separator: str) -> list[tuple[int, int]]:
    """Spans of source.text[start:end] split on separator outside brackets."""
    spans: list[tuple[int, int]] = []
    depth = 0
    part = start
    for i in range(start, end):
        char = source.text[i]
        if char in "([{":
            depth += 1
        elif char in ")]}":
            depth -= 1
            if depth < 0:
                msg = f"unbalanced {char!r}"
                raise source.syntax(msg, i)
        elif char == separator and depth == 0:
            spans.append((part, i))
            part = i + 1
    if depth != 0:
        msg = "unclosed bracket"
        raise source.syntax(msg, end)
    spans.append((part, end))
    return spans


def _strip(source: _Source, span: tuple[int, int]) -> tuple[int, int]:
    start, end = span
    while start < end and source.text[start].isspace():
        start += 1
    while end > start and source.text[end - 1].isspace():
        end -= 1
    return start, end


def _closing(source: _Source, open_index: int) -> int:
    """Index of the bracket closing the one at open_index."""
    pairs = {"(": ")", "[": "]", "{": "}"}
    stack: list[str] = []
    for i in range(open_index, len(source.text)):
        char = source.text[i]
        if char in pairs:
            stack.append(pairs[char])
        elif char in ")]}":
            if not stack or stack.pop() != char:
                msg = f"unbalanced {char!r}"
                raise source.syntax(msg, i)
            if not stack:
                return i
    msg = f"unclosed {source.text[open_index]!r}"
    raise source.syntax(msg, len(source.text))


def _integer(source: _Source, span: tuple[int, int], what: str) -> int:
    start, end = _strip(source, span)
    token = source.text[start:end]
    if not _INTEGER.fullmatch(token):
        msg = f"expected {what}, found {token!r}" if token else f"expected {what}"
        raise source.syntax(msg, start)
    if len(token) > MAX_DIGITS:
        msg = f"{what} has more than {MAX_DIGITS} digits"
        raise source.syntax(msg, start)
    return int(token)


# =============================================================================
# Stack specs
# =============================================================================


def parse_stack_spec(text: str | bytes) -> StackSpecAST:
    """Parse a stack spec such as "prod(wps(2,3), mu(2))".

    Whitespace between tokens is ignored.

    Raises:
        SpecSyntaxError: On input outside the grammar.
        SpecSemanticError: On a zero weight, l = 0, a one-factor product or a
            permutation entry above the declared degree.
    """
    source = _Source(text)
    start, end = _strip(source, (0, len(source.text)))
    if start == end:
        msg = "empty stack spec"
        raise source.syntax(msg, start)
    return _parse_node(source, start, end, 0)


def _parse_node(source: _Source, start: int, end: int, depth: int) -> StackSpecAST:
    if depth > MAX_NESTING:
        msg = f"stack spec nested deeper than {MAX_NESTING} levels"
        raise source.syntax(msg, start)
    text = source.text
    name_end = start
    while name_end < end and text[name_end].isalpha():
        name_end += 1
    name = text[start:name_end]
    if name not in {"bg", "mu", "wps", "prod"}:
        msg = f"expected bg, mu, wps or prod, found {text[start:end][:12]!r}"
        raise source.syntax(msg, start)
    open_index = name_end
    while open_index < end and text[open_index].isspace():
        open_index += 1
    if open_index >= end or text[open_index] != "(":
        msg = f"expected '(' after {name}, found {_found(text, open_index)}"
        raise source.syntax(msg, open_index)
    close_index = _closing(source, open_index)
    if close_index >= end:
        msg = f"unclosed '(' after {name}"
        raise source.syntax(msg, end)
    trailing = _strip(source, (close_index + 1, end))
    if trailing[0] != trailing[1]:
        msg = f"unexpected {_found(text, trailing[0])} after {name}(...)"
        raise source.syntax(msg, trailing[0])
    body = (open_index + 1, close_index)

    if name == "mu":
        l = _integer(source, body, "l")  # noqa: E741
        if l < 1:
            msg = "mu(l) needs l >= 1"
            raise source.semantic(msg, open_index + 1)
        if l > MAX_SECTORS:
            msg = f"mu(l) above the sector limit {MAX_SECTORS}"
            raise source.semantic(msg, open_index + 1)
        return MuNode(l, position=source.offset(start))
    if name == "wps":
        weights: list[int] = []
        for span in _split(source, *body, ","):
            weight = _integer(source, span, "a weight")
            if weight < 1:
                msg = "weights must be positive"
                raise source.semantic(msg, _strip(source, span)[0])
            weights.append(weight)
        if sum(weights) > MAX_SECTORS:
            msg = f"weights sum above the sector limit {MAX_SECTORS}"
            raise source.semantic(msg, open_index + 1)
        return WPSNode(tuple(weights), position=source.offset(start))
    if name == "prod":
        factors = [
            _parse_node(source, *_nonempty(source, span, "a factor"), depth + 1)
            for span in _split(source, *body, ",")
        ]
        if len(factors) < 2:
            msg = "a product needs at least two factors"
            raise source.semantic(msg, start)
        if math.prod(_sector_bound(f) for f in factors) > MAX_SECTORS:
            msg = f"product has more than {MAX_SECTORS} sectors"
            raise source.semantic(msg, start)
        return ProdNode(tuple(factors), position=source.offset(start))
    return _parse_bg(source, start, body)


def _sector_bound(node: StackSpecAST) -> int:
    # bg factors are checked once their groups are built
    if isinstance(node, MuNode):
        return node.l
    if isinstance(node, WPSNode):
        return sum(node.weights)
    if isinstance(node, ProdNode):
        return math.prod(_sector_bound(f) for f in node.factors)
    return 1


def _nonempty(source: _Source, span: tuple[int, int], what: str) -> tuple[int, int]:
    stripped = _strip(source, span)
    if stripped[0] == stripped[1]:
        msg = f"expected {what}"
        raise source.syntax(msg, stripped[0])
    return stripped


def _parse_bg(source: _Source, start: int, body: tuple[int, int]) -> BGNode:
    text = source.text
    items: dict[str, tuple[int, int]] = {}
    for span in _split(source, *body, ";"):
        item_start, item_end = _nonempty(source, span, "degree=, gens= or field=")
        eq = text.find("=", item_start, item_end)
        if eq < 0:
            msg = "expected key=value"
            raise source.syntax(msg, item_start)
        key = text[item_start:eq].strip()
        if key not in {"degree", "gens", "field"}:
            msg = f"unknown bg key {key!r}"
            raise source.syntax(msg, item_start)
        if key in items:
            msg = f"bg key {key!r} given twice"
            raise source.syntax(msg, item_start)
        items[key] = (eq + 1, item_end)
    if "gens" not in items:
        msg = "bg needs gens="
        raise source.syntax(msg, body[0])

    gen_spans = [_nonempty(source, s, "a permutation") for s in _split(source, *items["gens"], "|")]
    points = [m for s in gen_spans for m in _INTEGER.finditer(text, *s)]
    for m in points:
        if len(m.group()) > MAX_DIGITS:
            msg = f"permutation entry has more than {MAX_DIGITS} digits"
            raise source.syntax(msg, m.start())
    largest = max((int(m.group()) for m in points), default=1)
    if "degree" in items:
        degree = _integer(source, items["degree"], "a degree")
        if degree < 1:
            msg = "degree must be positive"
            raise source.semantic(msg, _strip(source, items["degree"])[0])
    else:
        degree = largest
    if max(degree, largest) > MAX_DEGREE:
        msg = f"permutation degree above {MAX_DEGREE}"
        raise source.semantic(msg, items["gens"][0])

    gens: list[str] = []
    for gen_start, gen_end in gen_spans:
        gen_text = text[gen_start:gen_end]
        try:
            element = parse_permutation(gen_text, max(degree, largest))
        except PermutationSyntaxError as e:
            raise source.syntax(str(e), gen_start + (e.position or 0)) from e
        if any(p > degree for cycle in element.cycles() for p in cycle):
            msg = f"permutation {gen_text!r} moves points above degree {degree}"
            raise source.semantic(msg, gen_start)
        gens.append(str(element))

    field_node = FieldNode()
    if "field" in items:
        field_node = _parse_field(source, items["field"])
    return BGNode(degree, tuple(gens), field_node, position=source.offset(start))


def _parse_field(source: _Source, span: tuple[int, int]) -> FieldNode:
    start, end = _nonempty(source, span, "a field descriptor")
    token = source.text[start:end]
    if token == FieldKind.RATIONALS.value:
        return FieldNode(FieldKind.RATIONALS)
    if token == FieldKind.SPLIT.value:
        return FieldNode(FieldKind.SPLIT)
    if not token.startswith("U"):
        msg = f"expected Q, split or U(e; u,...), found {token!r}"
        raise source.syntax(msg, start)
    open_index = start + 1
    while open_index < end and source.text[open_index].isspace():
        open_index += 1
    if open_index >= end or source.text[open_index] != "(" or source.text[end - 1] != ")":
        msg = "expected U(e; u,...)"
        raise source.syntax(msg, start)
    parts = _split(source, open_index + 1, end - 1, ";")
    if len(parts) != 2:  # noqa: PLR2004
        msg = "expected U(e; u,...)"
        raise source.syntax(msg, start)
    modulus = _integer(source, parts[0], "a modulus")
    if modulus < 1:
        msg = "modulus must be positive"
        raise source.semantic(msg, parts[0][0])
    generators: list[int] = []
    gen_start, gen_end = _strip(source, parts[1])
    if gen_start < gen_end:
        spans = _split(source, gen_start, gen_end, ",")
        generators = [_integer(source, s, "a unit") for s in spans]
    return FieldNode(FieldKind.UNITS, modulus, tuple(generators))


def build_stack(
    node: StackSpecAST, *, closure_limit: int = DEFAULT_CLOSURE_LIMIT
) -> StackDescriptor:
    """Turn a parse tree into a stack descriptor.

    Raises:
        SpecSemanticError: If the group closure exceeds closure_limit or the
            field does not fit the group. Positions point at the node.
    """
    try:
        if isinstance(node, MuNode):
            return MuStack(node.l)
        if isinstance(node, WPSNode):
            return WPSStack(node.weights)
        if isinstance(node, ProdNode):
            factors = tuple(build_stack(f, closure_limit=closure_limit) for f in node.factors)
            if math.prod(len(f.sectors()) for f in factors) > MAX_SECTORS:
                msg = f"product has more than {MAX_SECTORS} sectors"
                raise SpecSemanticError(msg, node.position)
            return ProductStack(factors)
        elements = [parse_permutation(g, node.degree) for g in node.gens]
        group = generate_group(elements, degree=node.degree, limit=closure_limit)
        if node.field.kind is FieldKind.RATIONALS:
            field = FieldDescriptor.rationals(group.exponent)
        elif node.field.kind is FieldKind.SPLIT:
            field = FieldDescriptor.split(group.exponent)
        else:
            field = FieldDescriptor(node.field.modulus, node.field.generators)
        return BGStack(group, field)
    except SpecError:
        raise
    except StackcountError as e:
        raise SpecSemanticError(str(e), node.position) from e


def load_stack(text: str | bytes, *, closure_limit: int = DEFAULT_CLOSURE_LIMIT) -> StackDescriptor:
    """parse_stack_spec followed by build_stack."""
    return build_stack(parse_stack_spec(text), closure_limit=closure_limit)


def normalize_spec(text: str | bytes) -> str:
    return parse_stack_spec(text).render()


# =============================================================================
# Raising specs
# =============================================================================


def parse_raising_spec(text: str | bytes, stack: StackDescriptor) -> RaisingFunction:
    """Read a raising-function spec on the given stack.

    Raises:
        SpecSyntaxError: On input outside the grammar.
        SpecSemanticError: If a term does not apply to its stack or a table
            is not a valid raising function.
    """
    source = _Source(text)
    start, end = _nonempty(source, (0, len(source.text)), "a raising function")
    return _raising_expr(source, start, end, stack, 0)


def _raising_expr(
    source: _Source, start: int, end: int, stack: StackDescriptor, depth: int
) -> RaisingFunction:
    if depth > MAX_NESTING:
        msg = f"raising spec nested deeper than {MAX_NESTING} levels"
        raise source.syntax(msg, start)
    terms = [_nonempty(source, s, "a raising term") for s in _split(source, start, end, "+")]
    if isinstance(stack, ProductStack) and len(terms) == len(stack.factors):
        parts = [
            _raising_term(source, *span, factor, depth)
            for span, factor in zip(terms, stack.factors, strict=True)
        ]
        return _semantic(source, start, lambda: boxplus(*parts, stack=stack))
    result = _raising_term(source, *terms[0], stack, depth)
    for span in terms[1:]:
        term = _raising_term(source, *span, stack, depth)
        result = _semantic(source, span[0], lambda r=result, t=term: r + t)
    return result


def _raising_term(
    source: _Source, start: int, end: int, stack: StackDescriptor, depth: int
) -> RaisingFunction:
    token = source.text[start:end]
    if token.startswith("builtin:"):
        name = token.removeprefix("builtin:")
        if name == "index":
            if not isinstance(stack, BGStack):
                msg = f"builtin:index needs a bg stack, not {stack.describe()}"
                raise source.semantic(msg, start)
            return _semantic(source, start, lambda: index_raising(stack))
        if name == "quasitoric":
            if not isinstance(stack, WPSStack):
                msg = f"builtin:quasitoric needs a wps stack, not {stack.describe()}"
                raise source.semantic(msg, start)
            return quasi_toric_raising(stack)
        if name == "zero":
            return zero_raising(stack)
        if name.startswith("constant:"):
            value = _rational(source, start + len("builtin:constant:"), end)
            return _semantic(source, start, lambda: constant_raising(stack, value))
        msg = f"unknown builtin {name!r}; expected index, quasitoric, zero or constant:<v>"
        raise source.syntax(msg, start)
    if token.startswith("table:"):
        return _raising_table(source, start + len("table:"), end, stack)
    if token.startswith("boxplus"):
        open_index = start + len("boxplus")
        while open_index < end and source.text[open_index].isspace():
            open_index += 1
        if open_index >= end or source.text[open_index] != "(":
            msg = "expected '(' after boxplus"
            raise source.syntax(msg, open_index)
        close_index = _closing(source, open_index)
        if close_index != end - 1:
            msg = "unexpected input after boxplus(...)"
            raise source.syntax(msg, close_index + 1)
        spans = _split(source, open_index + 1, close_index, ",")
        args = [_nonempty(source, s, "a raising function") for s in spans]
        if not isinstance(stack, ProductStack) or len(args) != len(stack.factors):
            msg = f"boxplus with {len(args)} arguments does not match {stack.describe()}"
            raise source.semantic(msg, start)
        parts = [
            _raising_expr(source, *span, factor, depth + 1)
            for span, factor in zip(args, stack.factors, strict=True)
        ]
        return _semantic(source, start, lambda: boxplus(*parts, stack=stack))
    msg = f"expected builtin:, table: or boxplus(, found {token[:12]!r}"
    raise source.syntax(msg, start)


def _raising_table(
    source: _Source, start: int, end: int, stack: StackDescriptor
) -> RaisingFunction:
    start, end = _strip(source, (start, end))
    if start >= end or source.text[start] != "{" or _closing(source, start) != end - 1:
        msg = "expected table:{label:value,...}"
        raise source.syntax(msg, start)
    table: dict[str, Fraction] = {}
    inner = _strip(source, (start + 1, end - 1))
    if inner[0] < inner[1]:
        for span in _split(source, *inner, ","):
            entry_start, entry_end = _nonempty(source, span, "label:value")
            colons = _split(source, entry_start, entry_end, ":")
            if len(colons) != 2:  # noqa: PLR2004
                msg = "expected label:value"
                raise source.syntax(msg, entry_start)
            label_start, label_end = _nonempty(source, colons[0], "a sector label")
            label = source.text[label_start:label_end]
            if label in table:
                msg = f"sector {label} listed twice"
                raise source.semantic(msg, label_start)
            table[label] = _rational(source, *colons[1])
    return _semantic(source, start, lambda: table_raising(stack, table))


def _rational(source: _Source, start: int, end: int) -> Fraction:
    start, end = _nonempty(source, (start, end), "a rational value")
    token = source.text[start:end]
    if not _RATIONAL.fullmatch(token):
        msg = f"expected a rational such as 3, 1/2 or 0.5, found {token[:12]!r}"
        raise source.syntax(msg, start)
    if len(token) > 2 * MAX_DIGITS + 1:
        msg = "rational value too long"
        raise source.syntax(msg, start)
    try:
        return to_fraction(token)
    except ValueError as e:
        raise source.syntax(str(e), start) from e


def _semantic(source: _Source, index: int, build: Callable[[], RaisingFunction]) -> RaisingFunction:
    """Run build(), turning domain errors into SpecSemanticError at index."""
    try:
        return build()
    except StackcountError as e:
        raise source.semantic(str(e), index) from e

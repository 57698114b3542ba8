"""Stack-spec and raising-spec mini-language.

Usage:
    from stackcount.language import load_stack, parse_raising_spec

    stack = load_stack("prod(wps(2,3), mu(2))")
    c = parse_raising_spec("builtin:quasitoric+table:{1/2:1}", stack)
"""

from stackcount.language.ast import (
    BGNode,
    FieldKind,
    FieldNode,
    MuNode,
    ProdNode,
    StackSpecAST,
    WPSNode,
    print_spec,
)
from stackcount.language.parser import (
    SpecError,
    SpecSemanticError,
    SpecSyntaxError,
    build_stack,
    load_stack,
    normalize_spec,
    parse_raising_spec,
    parse_stack_spec,
)

__all__ = [
    "BGNode",
    "FieldKind",
    "FieldNode",
    "MuNode",
    "ProdNode",
    "SpecError",
    "SpecSemanticError",
    "SpecSyntaxError",
    "StackSpecAST",
    "WPSNode",
    "build_stack",
    "load_stack",
    "normalize_spec",
    "parse_raising_spec",
    "parse_stack_spec",
    "print_spec",
]

"""MiniJ: tokenizer, parser, type checker and printer for the subject language."""

from .lexer import LexError, Token, tokenize
from .nodes import *  # noqa: F401,F403 re-export the node classes
from .parser import ParseError, parse_method, parse_method_unchecked
from .paths import InvalidPathError, NodePath, replace_at, replace_body, resolve_path, walk
from .printer import (
    PrintabilityError,
    precedence,
    print_method,
    validate_method_printable,
    wrap_if_needed,
)
from .typecheck import MiniJTypeError, TypeInfo, assignable, check_method, expr_type

__all__ = [
    "LexError",
    "Token",
    "tokenize",
    "ParseError",
    "parse_method",
    "parse_method_unchecked",
    "InvalidPathError",
    "NodePath",
    "replace_at",
    "replace_body",
    "resolve_path",
    "walk",
    "PrintabilityError",
    "precedence",
    "print_method",
    "validate_method_printable",
    "wrap_if_needed",
    "MiniJTypeError",
    "TypeInfo",
    "assignable",
    "check_method",
    "expr_type",
]

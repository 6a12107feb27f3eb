"""Canonical pretty-printer for MiniJ ASTs.

Printing is a pure function: structurally equal ASTs produce byte-identical
text. The printer never invents or drops parentheses; instead, every valid
AST must satisfy the precedence constraints checked by
``validate_printable``, which guarantees parse(print(ast)) == ast.
"""

from __future__ import annotations

from .lexer import escape_string
from .nodes import (
    ArrayLit,
    Assign,
    Binary,
    Block,
    BoolLit,
    Break,
    Cast,
    ChainedAssign,
    CompoundAssign,
    Declarator,
    DoubleLit,
    Expr,
    For,
    Foreach,
    If,
    IncDec,
    Index,
    IntLit,
    Length,
    LongLit,
    MethodAst,
    NewArray,
    Paren,
    Param,
    Return,
    Stmt,
    StringLit,
    Switch,
    Ternary,
    Unary,
    Var,
    VarDecl,
    While,
)

PREC_PRIMARY = 11
PREC_POSTFIX = 10
PREC_UNARY = 9
PREC_TERNARY = 1

BINARY_PREC = {
    "*": 7,
    "/": 7,
    "%": 7,
    "+": 6,
    "-": 6,
    "<": 5,
    "<=": 5,
    ">": 5,
    ">=": 5,
    "==": 4,
    "!=": 4,
    "&&": 3,
    "||": 2,
}


class PrintabilityError(Exception):
    """The AST cannot be printed so that reparsing reproduces it."""


def precedence(e: Expr) -> int:
    if isinstance(e, (Index, Length)):
        return PREC_POSTFIX
    if isinstance(e, (Unary, Cast)):
        return PREC_UNARY
    if isinstance(e, Binary):
        return BINARY_PREC[e.op]
    if isinstance(e, Ternary):
        return PREC_TERNARY
    return PREC_PRIMARY


def wrap_if_needed(e: Expr, required: int) -> Expr:
    """Wrap ``e`` in explicit parentheses when its precedence is too low."""
    return e if precedence(e) >= required else Paren(e)


def validate_printable(e: Expr, required: int = PREC_TERNARY) -> None:
    if precedence(e) < required:
        raise PrintabilityError(
            f"{type(e).__name__} needs explicit parentheses in this position"
        )
    if isinstance(e, Binary):
        p = BINARY_PREC[e.op]
        validate_printable(e.left, p)
        validate_printable(e.right, p + 1)
    elif isinstance(e, (Unary, Cast)):
        validate_printable(e.operand, PREC_UNARY)
    elif isinstance(e, Ternary):
        validate_printable(e.cond, PREC_TERNARY + 1)
        validate_printable(e.if_true)
        validate_printable(e.if_false)
    elif isinstance(e, Index):
        validate_printable(e.array, PREC_POSTFIX)
        validate_printable(e.index)
    elif isinstance(e, Length):
        validate_printable(e.array, PREC_POSTFIX)
    elif isinstance(e, Paren):
        validate_printable(e.inner)
    elif isinstance(e, NewArray):
        validate_printable(e.size)
    elif isinstance(e, ArrayLit):
        for el in e.elements:
            validate_printable(el)


def ends_with_open_if(s: Stmt) -> bool:
    """True if the printed statement ends with an if that would capture an else."""
    if isinstance(s, If):
        return True if s.els is None else ends_with_open_if(s.els)
    if isinstance(s, (For, Foreach, While)):
        return ends_with_open_if(s.body)
    return False


def validate_method_printable(ast: MethodAst) -> None:
    """Check every expression position and the dangling-else constraint."""

    def stmt(s: Stmt) -> None:
        if isinstance(s, VarDecl):
            for d in s.declarators:
                if d.init is not None:
                    validate_printable(d.init)
        elif isinstance(s, (Assign, CompoundAssign)):
            validate_printable(s.target, PREC_POSTFIX)
            validate_printable(s.value)
        elif isinstance(s, ChainedAssign):
            validate_printable(s.value)
        elif isinstance(s, Return):
            validate_printable(s.value)
        elif isinstance(s, If):
            validate_printable(s.cond)
            if s.els is not None and ends_with_open_if(s.then):
                raise PrintabilityError(
                    "then-branch ending in an open if must be wrapped in a block"
                )
            stmt(s.then)
            if s.els is not None:
                stmt(s.els)
        elif isinstance(s, Switch):
            validate_printable(s.scrutinee)
            for case in s.cases:
                for st in case.body:
                    stmt(st)
        elif isinstance(s, For):
            if s.init is not None:
                stmt(s.init)
            if s.cond is not None:
                validate_printable(s.cond)
            if s.update is not None:
                stmt(s.update)
            stmt(s.body)
        elif isinstance(s, Foreach):
            validate_printable(s.array)
            stmt(s.body)
        elif isinstance(s, While):
            validate_printable(s.cond)
            stmt(s.body)
        elif isinstance(s, Block):
            for st in s.stmts:
                stmt(st)

    for s in ast.body:
        stmt(s)


# ------------------------------------------------------------------ rendering


def _expr(e: Expr) -> str:
    if isinstance(e, (IntLit, LongLit, DoubleLit)):
        return e.lexeme
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, StringLit):
        return escape_string(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        inner = _expr(e.operand)
        if e.op == "-" and inner.startswith("-"):
            return "- " + inner
        return e.op + inner
    if isinstance(e, Binary):
        return f"{_expr(e.left)} {e.op} {_expr(e.right)}"
    if isinstance(e, Ternary):
        return f"{_expr(e.cond)} ? {_expr(e.if_true)} : {_expr(e.if_false)}"
    if isinstance(e, Paren):
        return f"({_expr(e.inner)})"
    if isinstance(e, Cast):
        return f"({e.type}) {_expr(e.operand)}"
    if isinstance(e, Index):
        return f"{_expr(e.array)}[{_expr(e.index)}]"
    if isinstance(e, Length):
        return f"{_expr(e.array)}.length"
    if isinstance(e, NewArray):
        return f"new int[{_expr(e.size)}]"
    if isinstance(e, ArrayLit):
        return "{" + ", ".join(_expr(el) for el in e.elements) + "}"
    raise TypeError(f"not an expression node: {e!r}")


def _declarator(d: Declarator) -> str:
    s = d.name + ("[]" if d.c_style else "")
    if d.init is not None:
        s += " = " + _expr(d.init)
    return s


def _decl_text(s: VarDecl) -> str:
    head = "final " if s.final else ""
    return f"{head}{s.base_type} " + ", ".join(_declarator(d) for d in s.declarators) + ";"


def _simple_text(s: Stmt) -> str:
    """One-line text (without indent) for non-compound statements."""
    if isinstance(s, VarDecl):
        return _decl_text(s)
    if isinstance(s, Assign):
        return f"{_expr(s.target)} = {_expr(s.value)};"
    if isinstance(s, ChainedAssign):
        return " = ".join(s.targets) + f" = {_expr(s.value)};"
    if isinstance(s, CompoundAssign):
        return f"{_expr(s.target)} {s.op} {_expr(s.value)};"
    if isinstance(s, IncDec):
        return f"{s.op}{s.target};" if s.prefix else f"{s.target}{s.op};"
    if isinstance(s, Return):
        return f"return {_expr(s.value)};"
    if isinstance(s, Break):
        return "break;"
    raise TypeError(f"not a simple statement: {s!r}")


def _pad(ind: int) -> str:
    return "    " * ind


def _stmt_lines(s: Stmt, ind: int, lead: str | None = None) -> list[str]:
    pad = _pad(ind)
    first = lead if lead is not None else pad
    if isinstance(s, Block):
        return [first + "{"] + _block_inner(s, ind) + [pad + "}"]
    if isinstance(s, If):
        return _if_lines(s, ind, first, pad)
    if isinstance(s, Switch):
        lines = [first + f"switch ({_expr(s.scrutinee)}) {{"]
        for case in s.cases:
            label = "default:" if case.label is None else f"case {_expr(case.label)}:"
            lines.append(_pad(ind + 1) + label)
            for st in case.body:
                lines.extend(_stmt_lines(st, ind + 2))
        lines.append(pad + "}")
        return lines
    if isinstance(s, For):
        init = _simple_text(s.init)[:-1] if s.init is not None else ""
        cond = _expr(s.cond) if s.cond is not None else ""
        update = _simple_text(s.update)[:-1] if s.update is not None else ""
        return _with_body(f"for ({init}; {cond}; {update})", s.body, ind, first, pad)
    if isinstance(s, Foreach):
        header = f"for ({s.var_type} {s.var_name} : {_expr(s.array)})"
        return _with_body(header, s.body, ind, first, pad)
    if isinstance(s, While):
        return _with_body(f"while ({_expr(s.cond)})", s.body, ind, first, pad)
    return [first + _simple_text(s)]


def _block_inner(b: Block, ind: int) -> list[str]:
    return [line for st in b.stmts for line in _stmt_lines(st, ind + 1)]


def _with_body(header: str, body: Stmt, ind: int, first: str, pad: str) -> list[str]:
    if isinstance(body, Block):
        return [first + header + " {"] + _block_inner(body, ind) + [pad + "}"]
    body_lines = _stmt_lines(body, ind + 1)
    if len(body_lines) == 1:
        return [first + header + " " + body_lines[0].strip()]
    return [first + header] + body_lines


def _if_lines(s: If, ind: int, first: str, pad: str) -> list[str]:
    header = f"if ({_expr(s.cond)})"
    if isinstance(s.then, Block):
        lines = [first + header + " {"] + _block_inner(s.then, ind)
        if s.els is None:
            lines.append(pad + "}")
            return lines
        return lines + _else_lines(s.els, ind, pad + "} else")
    lines = _with_body(header, s.then, ind, first, pad)
    if s.els is None:
        return lines
    return lines + _else_lines(s.els, ind, pad + "else")


def _else_lines(els: Stmt, ind: int, lead_text: str) -> list[str]:
    pad = _pad(ind)
    if isinstance(els, Block):
        return [lead_text + " {"] + _block_inner(els, ind) + [pad + "}"]
    if isinstance(els, If):
        return _if_lines(els, ind, lead_text + " ", pad)
    body_lines = _stmt_lines(els, ind + 1)
    if len(body_lines) == 1:
        return [lead_text + " " + body_lines[0].strip()]
    return [lead_text] + body_lines


def _param(p: Param) -> str:
    if p.c_style:
        return f"{p.type.base} {p.name}[]"
    return f"{p.type} {p.name}"


def print_method(ast: MethodAst) -> str:
    """Render a method as canonical MiniJ source text."""
    params = ", ".join(_param(p) for p in ast.params)
    lines = [f"{ast.return_type} {ast.name}({params}) {{"]
    for s in ast.body:
        lines.extend(_stmt_lines(s, 1))
    lines.append("}")
    return "\n".join(lines) + "\n"

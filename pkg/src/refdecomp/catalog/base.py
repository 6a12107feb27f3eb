"""Shared machinery for the rewrite-rule catalog."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from ..minij import MethodAst, check_method
from ..minij.nodes import (
    Binary,
    Block,
    BoolLit,
    Expr,
    IntLit,
    Node,
    Paren,
    Stmt,
    SwitchCase,
    Unary,
    map_children,
)
from ..minij.paths import NodePath, replace_at, replace_body, resolve_path, walk
from ..minij.printer import PREC_UNARY, precedence, wrap_if_needed
from ..minij.typecheck import TypeInfo

DETECTOR = "detector"
EXTENDED = "extended"


class StaleSiteError(Exception):
    """The AST no longer has the shape the match site was produced from."""


class GuardViolationError(Exception):
    """Defensive re-check of a rule guard failed at apply time."""


@dataclass(frozen=True)
class MatchSite:
    rule_id: str
    path: NodePath
    bindings: dict = field(default_factory=dict)


@dataclass(frozen=True)
class MatchContext:
    ast: MethodAst
    info: TypeInfo
    target: MethodAst | None = None
    target_info: TypeInfo | None = None


Matcher = Callable[[MatchContext], list[MatchSite]]
Applier = Callable[[MethodAst, MatchSite, TypeInfo], MethodAst]
Scrambler = Callable[[MethodAst, TypeInfo, random.Random], list[MatchSite]]


@dataclass(frozen=True)
class RewriteRule:
    id: str
    name: str
    tier: str
    lhs: str
    rhs: str
    guards: tuple[str, ...]
    invertible: bool
    inverse_id: str | None
    matcher: Matcher = field(compare=False, repr=False)
    applier: Applier = field(compare=False, repr=False)
    scrambler: Scrambler | None = field(default=None, compare=False, repr=False)


def make_context(ast: MethodAst, target: MethodAst | None = None) -> MatchContext:
    info = check_method(ast)
    tinfo = check_method(target) if target is not None else None
    return MatchContext(ast, info, target, tinfo)


# ------------------------------------------------------------ tree utilities


def stmt_lists(ast: MethodAst) -> list[tuple[NodePath, tuple[Stmt, ...], int]]:
    """Every statement-list context in document order.

    Yields (owner_path, statements, child_offset): the j-th statement lives
    at owner_path + (child_offset + j,). The method body has owner_path ().
    """
    out: list[tuple[NodePath, tuple[Stmt, ...], int]] = [((), ast.body, 0)]
    for path, node in walk(ast):
        if isinstance(node, Block):
            out.append((path, node.stmts, 0))
        elif isinstance(node, SwitchCase):
            out.append((path, node.body, 0 if node.label is None else 1))
    return out


def replace_stmt_list(
    ast: MethodAst, owner_path: NodePath, new_stmts: tuple[Stmt, ...]
) -> MethodAst:
    if not owner_path:
        return replace_body(ast, new_stmts)
    owner = resolve_path(ast, owner_path)
    if isinstance(owner, Block):
        return replace_at(ast, owner_path, Block(new_stmts))
    if isinstance(owner, SwitchCase):
        return replace_at(ast, owner_path, SwitchCase(owner.label, new_stmts))
    raise StaleSiteError(f"{type(owner).__name__} does not own a statement list")


def stmt_list_at(ast: MethodAst, owner_path: NodePath) -> tuple[tuple[Stmt, ...], int]:
    """The statements and child offset of a statement-list owner."""
    if not owner_path:
        return ast.body, 0
    owner = resolve_path(ast, owner_path)
    if isinstance(owner, Block):
        return owner.stmts, 0
    if isinstance(owner, SwitchCase):
        return owner.body, 0 if owner.label is None else 1
    raise StaleSiteError(f"{type(owner).__name__} does not own a statement list")


def required_prec(ast: MethodAst, path: NodePath) -> int:
    """Minimum precedence an expression must have at ``path`` to print without
    extra parentheses."""
    from ..minij.nodes import Cast, Index, Length, Ternary

    if len(path) <= 1:
        return 1
    parent = resolve_path(ast, path[:-1])
    pos = path[-1]
    if isinstance(parent, Binary):
        from ..minij.printer import BINARY_PREC

        p = BINARY_PREC[parent.op]
        return p if pos == 0 else p + 1
    if isinstance(parent, (Unary, Cast)):
        return PREC_UNARY
    if isinstance(parent, Ternary):
        return 2 if pos == 0 else 1
    if isinstance(parent, (Index, Length)):
        return 10 if pos == 0 else 1
    return 1


def replace_expr(ast: MethodAst, path: NodePath, new_expr: Expr) -> MethodAst:
    """Replace the expression at ``path``, parenthesizing if the slot needs it."""
    return replace_at(ast, path, wrap_if_needed(new_expr, required_prec(ast, path)))


def move_expr(e: Expr, src_req: int, dst_req: int) -> Expr:
    """Move an expression between positions with different precedence needs.

    Strips a parenthesis that only the source slot forced, then re-wraps for
    the destination. Together with the ``movable`` guard this is an exact
    involution, which is what makes inverse rule pairs restore token-identical
    methods."""
    if isinstance(e, Paren) and precedence(e.inner) < src_req:
        e = e.inner
    return wrap_if_needed(e, dst_req)


def movable(e: Expr, src_req: int) -> bool:
    """False when the expression carries a redundant top-level parenthesis;
    such operands are left for remove-parentheses to canonicalize first."""
    return not (isinstance(e, Paren) and precedence(e.inner) >= src_req)


def non_expr_positions(ast: MethodAst) -> set[NodePath]:
    """Paths where an expression must stay verbatim: assignment-target
    variables and arrays, and switch case labels."""
    from ..minij.nodes import Assign, CompoundAssign, Index

    out: set[NodePath] = set()
    for path, node in walk(ast):
        if isinstance(node, (Assign, CompoundAssign)):
            out.add(path + (0,))
            if isinstance(node.target, Index):
                out.add(path + (0, 0))
        elif isinstance(node, SwitchCase) and node.label is not None:
            out.add(path + (0,))
    return out


def negate(e: Expr) -> Expr:
    """Syntactic boolean negation, an involution on printable conditions.

    Negation chains pair up by parity (`x` with `!x`, `!!x` with `!!!x`, and
    so on), so applying negate twice always restores the original tokens;
    bare boolean literals simply flip.
    """
    n = 0
    core: Expr = e
    while isinstance(core, Unary) and core.op == "!":
        n += 1
        core = core.operand
    if isinstance(core, BoolLit):
        if n == 0:
            return BoolLit(not core.value)
        if n % 2 == 1:
            return Unary("!", e)
        return e.operand  # type: ignore[union-attr]
    if n == 0:
        return Unary("!", wrap_if_needed(e, PREC_UNARY))
    if n % 2 == 0:
        return Unary("!", e)
    operand = e.operand  # type: ignore[union-attr]
    if isinstance(operand, Paren) and precedence(operand.inner) < PREC_UNARY:
        return operand.inner
    return operand


def int_expr(value: int) -> Expr:
    """An int literal expression; negatives as unary minus."""
    if value < 0:
        return Unary("-", IntLit(str(-value)))
    return IntLit(str(value))


NAME_POOL = (
    "tmp",
    "result",
    "value",
    "count",
    "total",
    "item",
    "idx",
    "acc",
    "res",
    "val",
    "num",
    "aux",
)


def fresh_name(rng: random.Random, taken: set[str]) -> str:
    candidates = [n for n in NAME_POOL if n not in taken]
    if candidates:
        return rng.choice(candidates)
    i = 2
    while True:
        name = f"{rng.choice(NAME_POOL)}{i}"
        if name not in taken:
            return name
        i += 1


def harvest_names(ctx: MatchContext) -> list[str]:
    """Identifiers bound in the target but free in the current method,
    in target declaration order. Empty without a target."""
    if ctx.target_info is None:
        return []
    taken = set(ctx.info.var_types) | {ctx.ast.name}
    return [n for n in ctx.target_info.var_types if n not in taken]


def expr_nodes(ast: MethodAst) -> list[tuple[NodePath, Expr]]:
    return [(p, n) for p, n in walk(ast) if isinstance(n, Expr)]


def rewrite_exprs(node: Node, fn) -> Node:
    """Rebuild a statement or expression, offering every read-position
    expression to ``fn(expr, required_prec)``.

    When fn returns a replacement it is used as is (no recursion into it and
    no automatic parenthesization); when it returns None the children are
    rewritten recursively. Assignment targets that are bare variables are
    write positions and are not offered, but index subexpressions are.
    """
    from ..minij.nodes import (
        Assign,
        Cast,
        CompoundAssign,
        Index,
        Length,
        NewArray,
        Switch,
        SwitchCase,
        Ternary,
        ArrayLit,
        Declarator,
    )
    from ..minij.printer import BINARY_PREC

    def expr(e: Expr, req: int) -> Expr:
        replacement = fn(e, req)
        if replacement is not None:
            return replacement
        if isinstance(e, Binary):
            p = BINARY_PREC[e.op]
            return Binary(e.op, expr(e.left, p), expr(e.right, p + 1))
        if isinstance(e, Unary):
            return Unary(e.op, expr(e.operand, PREC_UNARY))
        if isinstance(e, Cast):
            return Cast(e.type, expr(e.operand, PREC_UNARY))
        if isinstance(e, Ternary):
            return Ternary(expr(e.cond, 2), expr(e.if_true, 1), expr(e.if_false, 1))
        if isinstance(e, Paren):
            return Paren(expr(e.inner, 1))
        if isinstance(e, Index):
            return Index(expr(e.array, 10), expr(e.index, 1))
        if isinstance(e, Length):
            return Length(expr(e.array, 10))
        if isinstance(e, NewArray):
            return NewArray(expr(e.size, 1))
        if isinstance(e, ArrayLit):
            return ArrayLit(tuple(expr(el, 1) for el in e.elements))
        return e

    def target(t: Expr) -> Expr:
        if isinstance(t, Index):
            return Index(expr(t.array, 10), expr(t.index, 1))
        return t  # bare variable: a write position

    def stmt(s: Node) -> Node:
        if isinstance(s, Assign):
            return Assign(target(s.target), expr(s.value, 1))
        if isinstance(s, CompoundAssign):
            return CompoundAssign(target(s.target), s.op, expr(s.value, 1))
        if isinstance(s, Declarator):
            return Declarator(s.name, s.c_style, expr(s.init, 1) if s.init else None)
        if isinstance(s, SwitchCase):
            return SwitchCase(s.label, tuple(stmt(st) for st in s.body))
        if isinstance(s, Switch):
            return Switch(expr(s.scrutinee, 1), tuple(stmt(c) for c in s.cases))
        if isinstance(s, Expr):
            return expr(s, 1)
        return map_children(s, stmt)

    return stmt(node)


def node_at(ast: MethodAst, path: NodePath) -> Node:
    node = resolve_path(ast, path)
    if isinstance(node, tuple):
        raise StaleSiteError("path resolves to the body root, not a node")
    return node

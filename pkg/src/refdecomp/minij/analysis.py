"""Small static analyses shared by the type checker and the rewrite rules."""

from __future__ import annotations

from .nodes import (
    Assign,
    Binary,
    Block,
    ChainedAssign,
    CompoundAssign,
    Expr,
    Foreach,
    If,
    IncDec,
    Index,
    NewArray,
    Node,
    Paren,
    Return,
    Stmt,
    Switch,
    Var,
    VarDecl,
    child_nodes,
)


def always_returns(stmts: tuple[Stmt, ...] | list[Stmt]) -> bool:
    """True if executing the statement list always ends in a return."""
    return any(stmt_always_returns(s) for s in stmts)


def stmt_always_returns(s: Stmt) -> bool:
    if isinstance(s, Return):
        return True
    if isinstance(s, Block):
        return always_returns(s.stmts)
    if isinstance(s, If):
        return s.els is not None and stmt_always_returns(s.then) and stmt_always_returns(s.els)
    if isinstance(s, Switch):
        has_default = any(c.label is None for c in s.cases)
        return has_default and all(always_returns(c.body) for c in s.cases)
    return False


def is_pure(e: Expr) -> bool:
    """True if evaluating the expression can never raise a runtime error.

    MiniJ expressions have no side effects, so "pure" reduces to "total":
    no division or modulo, no array indexing, no array allocation.
    """
    if isinstance(e, Binary) and e.op in ("/", "%"):
        return False
    if isinstance(e, (Index, NewArray)):
        return False
    return all(is_pure(c) for c in child_nodes(e) if isinstance(c, Expr))


def free_vars(e: Expr) -> frozenset[str]:
    """Names of all variables referenced in an expression."""
    if isinstance(e, Var):
        return frozenset((e.name,))
    out: set[str] = set()
    for c in child_nodes(e):
        if isinstance(c, Expr):
            out |= free_vars(c)
    return frozenset(out)


def written_vars(s: Stmt) -> frozenset[str]:
    """Variables directly reassigned (assigned, compound-assigned or
    incremented) anywhere inside a statement. Element stores do not count."""
    out: set[str] = set()

    def visit(n: Node) -> None:
        if isinstance(n, (Assign, CompoundAssign)):
            if isinstance(n.target, Var):
                out.add(n.target.name)
        elif isinstance(n, ChainedAssign):
            out.update(n.targets)
        elif isinstance(n, IncDec):
            out.add(n.target)
        for c in child_nodes(n):
            visit(c)

    visit(s)
    return frozenset(out)


def element_written_arrays(s: Stmt) -> frozenset[str]:
    """Array variables with an element store (``a[i] = ...`` or ``a[i] += ...``)."""
    out: set[str] = set()

    def visit(n: Node) -> None:
        if isinstance(n, (Assign, CompoundAssign)):
            t = n.target
            if isinstance(t, Index) and isinstance(t.array, Var):
                out.add(t.array.name)
        for c in child_nodes(n):
            visit(c)

    visit(s)
    return frozenset(out)


def var_uses(n: Node, name: str) -> int:
    """Number of reads of a variable (writes via Assign targets excluded,
    but reads inside index positions of a written element count)."""
    count = 0

    def visit(node: Node) -> None:
        nonlocal count
        if isinstance(node, Var) and node.name == name:
            count += 1
            return
        if isinstance(node, Assign) and isinstance(node.target, Var):
            visit(node.value)
            return
        for c in child_nodes(node):
            visit(c)

    visit(n)
    return count


def mentions_var(n: Node, name: str) -> bool:
    """True if the name occurs anywhere, as a read, write or declaration."""
    if isinstance(n, Var) and n.name == name:
        return True
    if isinstance(n, (IncDec,)) and n.target == name:
        return True
    if isinstance(n, ChainedAssign) and name in n.targets:
        return True
    if isinstance(n, VarDecl) and any(d.name == name for d in n.declarators):
        return True
    if isinstance(n, Foreach) and n.var_name == name:
        return True
    return any(mentions_var(c, name) for c in child_nodes(n))


def declared_names(stmts: tuple[Stmt, ...]) -> frozenset[str]:
    """All variable names declared anywhere in the statements."""
    out: set[str] = set()

    def visit(n: Node) -> None:
        if isinstance(n, VarDecl):
            out.update(d.name for d in n.declarators)
        elif isinstance(n, Foreach):
            out.add(n.var_name)
        for c in child_nodes(n):
            visit(c)

    for s in stmts:
        visit(s)
    return frozenset(out)


def strip_parens(e: Expr) -> Expr:
    while isinstance(e, Paren):
        e = e.inner
    return e

"""AST node definitions for MiniJ, a Java-like method-level language.

All nodes are frozen dataclasses: structural equality is dataclass equality,
and trees can be shared freely between threads. Numeric literals keep their
written lexeme so that representation changes (hex vs decimal vs underscores)
are visible at the token level. Parentheses are explicit ``Paren`` nodes.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class MiniJType:
    base: str  # "int" | "long" | "double" | "boolean" | "String"
    array: bool = False

    def __str__(self) -> str:
        return self.base + "[]" if self.array else self.base


INT = MiniJType("int")
LONG = MiniJType("long")
DOUBLE = MiniJType("double")
BOOLEAN = MiniJType("boolean")
STRING = MiniJType("String")
INT_ARRAY = MiniJType("int", True)

SCALAR_BASES = ("int", "long", "double", "boolean", "String")
NUMERIC_BASES = ("int", "long", "double")
INT_MIN, INT_MAX = -(2**31), 2**31 - 1
LONG_MIN, LONG_MAX = -(2**63), 2**63 - 1


class Node:
    """Marker base class for every AST node."""


class Expr(Node):
    pass


class Stmt(Node):
    pass


def _parse_int_lexeme(lexeme: str) -> int:
    s = lexeme.replace("_", "")
    if s.lower().startswith("0x"):
        return int(s, 16)
    return int(s, 10)


@dataclass(frozen=True)
class IntLit(Expr):
    lexeme: str

    @property
    def value(self) -> int:
        return _parse_int_lexeme(self.lexeme)


@dataclass(frozen=True)
class LongLit(Expr):
    lexeme: str  # includes the L/l suffix

    @property
    def value(self) -> int:
        return _parse_int_lexeme(self.lexeme[:-1])


@dataclass(frozen=True)
class DoubleLit(Expr):
    lexeme: str

    @property
    def value(self) -> float:
        return float(self.lexeme)


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool


@dataclass(frozen=True)
class StringLit(Expr):
    value: str


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # "!" | "-"
    operand: Expr


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Ternary(Expr):
    cond: Expr
    if_true: Expr
    if_false: Expr


@dataclass(frozen=True)
class Paren(Expr):
    inner: Expr


@dataclass(frozen=True)
class Cast(Expr):
    type: MiniJType  # scalar types only
    operand: Expr


@dataclass(frozen=True)
class Index(Expr):
    array: Expr
    index: Expr


@dataclass(frozen=True)
class Length(Expr):
    array: Expr


@dataclass(frozen=True)
class NewArray(Expr):
    size: Expr  # element type is always int


@dataclass(frozen=True)
class ArrayLit(Expr):
    elements: tuple[Expr, ...]


@dataclass(frozen=True)
class Declarator(Node):
    name: str
    c_style: bool = False  # `int a[]` rather than `int[] a`
    init: Expr | None = None


@dataclass(frozen=True)
class VarDecl(Stmt):
    base_type: MiniJType
    declarators: tuple[Declarator, ...]
    final: bool = False


@dataclass(frozen=True)
class Assign(Stmt):
    target: Expr  # Var or Index
    value: Expr


@dataclass(frozen=True)
class ChainedAssign(Stmt):
    targets: tuple[str, ...]  # two or more simple variables, left to right
    value: Expr


@dataclass(frozen=True)
class CompoundAssign(Stmt):
    target: Expr  # Var or Index
    op: str  # "+=", "-=", "*=", "/=", "%="
    value: Expr


@dataclass(frozen=True)
class IncDec(Stmt):
    op: str  # "++" | "--"
    prefix: bool
    target: str  # simple variable only


@dataclass(frozen=True)
class If(Stmt):
    cond: Expr
    then: Stmt
    els: Stmt | None = None


@dataclass(frozen=True)
class SwitchCase(Node):
    label: Expr | None  # IntLit, Unary('-', IntLit) or StringLit; None = default
    body: tuple[Stmt, ...]


@dataclass(frozen=True)
class Switch(Stmt):
    scrutinee: Expr
    cases: tuple[SwitchCase, ...]


@dataclass(frozen=True)
class For(Stmt):
    init: Stmt | None  # VarDecl or Assign
    cond: Expr | None
    update: Stmt | None  # Assign, CompoundAssign or IncDec
    body: Stmt


@dataclass(frozen=True)
class Foreach(Stmt):
    var_type: MiniJType
    var_name: str
    array: Expr
    body: Stmt


@dataclass(frozen=True)
class While(Stmt):
    cond: Expr
    body: Stmt


@dataclass(frozen=True)
class Return(Stmt):
    value: Expr


@dataclass(frozen=True)
class Break(Stmt):
    pass


@dataclass(frozen=True)
class Block(Stmt):
    stmts: tuple[Stmt, ...]


@dataclass(frozen=True)
class Param(Node):
    name: str
    type: MiniJType
    c_style: bool = False


@dataclass(frozen=True)
class MethodAst(Node):
    name: str
    params: tuple[Param, ...]
    return_type: MiniJType
    body: tuple[Stmt, ...]

    def signature(self) -> tuple[tuple[MiniJType, ...], MiniJType]:
        return tuple(p.type for p in self.params), self.return_type


# Ordered child fields per node class. Optional fields that are None and
# tuple fields that are empty contribute no children; tuples are flattened
# in order. This single table drives paths, walking and rebuilding.
_CHILD_FIELDS: dict[type, tuple[str, ...]] = {
    IntLit: (),
    LongLit: (),
    DoubleLit: (),
    BoolLit: (),
    StringLit: (),
    Var: (),
    Unary: ("operand",),
    Binary: ("left", "right"),
    Ternary: ("cond", "if_true", "if_false"),
    Paren: ("inner",),
    Cast: ("operand",),
    Index: ("array", "index"),
    Length: ("array",),
    NewArray: ("size",),
    ArrayLit: ("elements",),
    Declarator: ("init",),
    VarDecl: ("declarators",),
    Assign: ("target", "value"),
    ChainedAssign: ("value",),
    CompoundAssign: ("target", "value"),
    IncDec: (),
    If: ("cond", "then", "els"),
    SwitchCase: ("label", "body"),
    Switch: ("scrutinee", "cases"),
    For: ("init", "cond", "update", "body"),
    Foreach: ("array", "body"),
    While: ("cond", "body"),
    Return: ("value",),
    Break: (),
    Block: ("stmts",),
}


def child_nodes(node: Node) -> tuple[Node, ...]:
    """Flattened, ordered children of a node."""
    out: list[Node] = []
    for name in _CHILD_FIELDS[type(node)]:
        v = getattr(node, name)
        if v is None:
            continue
        if isinstance(v, tuple):
            out.extend(v)
        else:
            out.append(v)
    return tuple(out)


def replace_child(node: Node, index: int, new_child: Node) -> Node:
    """Rebuild ``node`` with the child at flattened position ``index`` swapped."""
    i = 0
    for name in _CHILD_FIELDS[type(node)]:
        v = getattr(node, name)
        if v is None:
            continue
        if isinstance(v, tuple):
            if i + len(v) > index:
                items = list(v)
                items[index - i] = new_child
                return _with_field(node, name, tuple(items))
            i += len(v)
        else:
            if i == index:
                return _with_field(node, name, new_child)
            i += 1
    raise IndexError(f"child index {index} out of range for {type(node).__name__}")


def _with_field(node: Node, name: str, value: object) -> Node:
    kwargs = {f: getattr(node, f) for f in node.__dataclass_fields__}  # type: ignore[attr-defined]
    kwargs[name] = value
    return type(node)(**kwargs)


def map_children(node: Node, fn) -> Node:
    """Rebuild a node with ``fn`` applied to every direct child node."""
    kwargs = {}
    child_fields = _CHILD_FIELDS[type(node)]
    for f in node.__dataclass_fields__:  # type: ignore[attr-defined]
        v = getattr(node, f)
        if f in child_fields and v is not None:
            v = tuple(fn(c) for c in v) if isinstance(v, tuple) else fn(v)
        kwargs[f] = v
    return type(node)(**kwargs)

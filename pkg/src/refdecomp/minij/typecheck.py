"""Type checker and validity rules for MiniJ methods.

Beyond expression typing, a valid method satisfies:

- every name (parameter or local) is declared exactly once per method,
  so there is no shadowing and renames are capture-free by construction;
- every use is in scope;
- String and array locals always carry an initializer (no null values);
- switch cases carry distinct constant labels and end in break or return,
  with an optional default group last;
- break appears only directly under a switch case (never binding a loop);
- the body provably returns on every path, while code after a return is
  allowed (it is simply dead);
- the printed form reparses to the same tree (see printer.validate_printable).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .analysis import always_returns
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
    MiniJType,
    NewArray,
    Paren,
    Return,
    Stmt,
    StringLit,
    Switch,
    Ternary,
    Unary,
    Var,
    VarDecl,
    While,
    BOOLEAN,
    DOUBLE,
    INT,
    INT_ARRAY,
    INT_MAX,
    LONG,
    LONG_MAX,
    NUMERIC_BASES,
    STRING,
)
from .printer import validate_method_printable


class MiniJTypeError(Exception):
    def __init__(self, message: str, path: tuple[int, ...] | None = None):
        if path is not None:
            message = f"at {list(path)}: {message}"
        super().__init__(message)
        self.path = path


@dataclass
class TypeInfo:
    """Result of a successful check: flat variable types plus per-node types.

    Node types are keyed by object identity; in MiniJ a variable has one
    type for the whole method, so identical subtrees always agree.
    """

    method: MethodAst
    var_types: dict[str, MiniJType]
    node_types: dict[int, MiniJType] = field(repr=False, default_factory=dict)
    final_vars: frozenset[str] = frozenset()

    def type_of(self, e: Expr) -> MiniJType:
        t = self.node_types.get(id(e))
        if t is None:
            t = expr_type(e, self.var_types)
        return t


def is_numeric(t: MiniJType) -> bool:
    return not t.array and t.base in NUMERIC_BASES


def promote(a: MiniJType, b: MiniJType) -> MiniJType:
    if DOUBLE in (a, b):
        return DOUBLE
    if LONG in (a, b):
        return LONG
    return INT


def assignable(src: MiniJType, dst: MiniJType) -> bool:
    if src == dst:
        return True
    if src == INT and dst in (LONG, DOUBLE):
        return True
    if src == LONG and dst == DOUBLE:
        return True
    return False


def expr_type(
    e: Expr,
    var_types: dict[str, MiniJType],
    record: dict[int, MiniJType] | None = None,
    visible: set[str] | None = None,
) -> MiniJType:
    """Bottom-up expression typing against a flat variable environment."""

    def fail(msg: str) -> MiniJTypeError:
        return MiniJTypeError(msg)

    def recur(x: Expr) -> MiniJType:
        return expr_type(x, var_types, record, visible)

    t: MiniJType
    if isinstance(e, IntLit):
        if not 0 <= e.value <= INT_MAX:
            raise fail(f"int literal {e.lexeme} out of range")
        t = INT
    elif isinstance(e, LongLit):
        if not 0 <= e.value <= LONG_MAX:
            raise fail(f"long literal {e.lexeme} out of range")
        t = LONG
    elif isinstance(e, DoubleLit):
        t = DOUBLE
    elif isinstance(e, BoolLit):
        t = BOOLEAN
    elif isinstance(e, StringLit):
        t = STRING
    elif isinstance(e, Var):
        if e.name not in var_types:
            raise fail(f"undeclared variable {e.name}")
        if visible is not None and e.name not in visible:
            raise fail(f"variable {e.name} is not in scope here")
        t = var_types[e.name]
    elif isinstance(e, Unary):
        ot = recur(e.operand)
        if e.op == "!":
            if ot != BOOLEAN:
                raise fail("! needs a boolean operand")
            t = BOOLEAN
        else:
            if not is_numeric(ot):
                raise fail("unary - needs a numeric operand")
            t = ot
    elif isinstance(e, Binary):
        lt, rt = recur(e.left), recur(e.right)
        op = e.op
        if op == "+" and STRING in (lt, rt):
            if lt.array or rt.array:
                raise fail("cannot concatenate an array to a String")
            t = STRING
        elif op in ("+", "-", "*", "/", "%"):
            if not (is_numeric(lt) and is_numeric(rt)):
                raise fail(f"operator {op} needs numeric operands")
            t = promote(lt, rt)
        elif op in ("<", "<=", ">", ">="):
            if not (is_numeric(lt) and is_numeric(rt)):
                raise fail(f"operator {op} needs numeric operands")
            t = BOOLEAN
        elif op in ("==", "!="):
            if is_numeric(lt) and is_numeric(rt):
                pass
            elif lt == rt and lt in (BOOLEAN, STRING):
                pass
            else:
                raise fail(f"operator {op} cannot compare {lt} and {rt}")
            t = BOOLEAN
        elif op in ("&&", "||"):
            if lt != BOOLEAN or rt != BOOLEAN:
                raise fail(f"operator {op} needs boolean operands")
            t = BOOLEAN
        else:
            raise fail(f"unknown operator {op}")
    elif isinstance(e, Ternary):
        if recur(e.cond) != BOOLEAN:
            raise fail("ternary condition must be boolean")
        tt, ft = recur(e.if_true), recur(e.if_false)
        if tt == ft:
            t = tt
        elif is_numeric(tt) and is_numeric(ft):
            t = promote(tt, ft)
        else:
            raise fail(f"ternary branches have incompatible types {tt} and {ft}")
    elif isinstance(e, Paren):
        t = recur(e.inner)
    elif isinstance(e, Cast):
        if e.type.array:
            raise fail("cannot cast to an array type")
        ot = recur(e.operand)
        if ot == e.type:
            pass
        elif is_numeric(ot) and is_numeric(e.type):
            pass
        else:
            raise fail(f"cannot cast {ot} to {e.type}")
        t = e.type
    elif isinstance(e, Index):
        if recur(e.array) != INT_ARRAY:
            raise fail("indexing needs an int[]")
        if recur(e.index) != INT:
            raise fail("array index must be an int")
        t = INT
    elif isinstance(e, Length):
        if recur(e.array) != INT_ARRAY:
            raise fail(".length needs an int[]")
        t = INT
    elif isinstance(e, NewArray):
        if recur(e.size) != INT:
            raise fail("array size must be an int")
        t = INT_ARRAY
    elif isinstance(e, ArrayLit):
        raise fail("array literal is only allowed as a declaration initializer")
    else:
        raise fail(f"unknown expression node {type(e).__name__}")
    if record is not None:
        record[id(e)] = t
    return t


def case_label_value(label: Expr) -> int | str:
    if isinstance(label, IntLit):
        return label.value
    if isinstance(label, Unary) and label.op == "-" and isinstance(label.operand, IntLit):
        return -label.operand.value
    if isinstance(label, StringLit):
        return label.value
    raise MiniJTypeError("case label must be an int or string literal")


class _Checker:
    def __init__(self, method: MethodAst):
        self.method = method
        self.var_types: dict[str, MiniJType] = {}
        self.node_types: dict[int, MiniJType] = {}
        self.final_vars: set[str] = set()
        self.scopes: list[set[str]] = [set()]

    def fail(self, msg: str) -> MiniJTypeError:
        return MiniJTypeError(msg)

    # scope helpers -------------------------------------------------------

    def declare(self, name: str, ty: MiniJType, final: bool = False) -> None:
        if name in self.var_types:
            raise self.fail(f"variable {name} is declared more than once")
        self.var_types[name] = ty
        self.scopes[-1].add(name)
        if final:
            self.final_vars.add(name)

    def visible(self) -> set[str]:
        out: set[str] = set()
        for s in self.scopes:
            out |= s
        return out

    # type helpers --------------------------------------------------------

    def expr(self, e: Expr) -> MiniJType:
        return expr_type(e, self.var_types, self.node_types, self.visible())

    def check_assign_target(self, target: Expr) -> MiniJType:
        if isinstance(target, Var):
            t = self.expr(target)
            if target.name in self.final_vars:
                raise self.fail(f"cannot assign to final variable {target.name}")
            return t
        if isinstance(target, Index):
            return self.expr(target)
        raise self.fail("assignment target must be a variable or array element")

    # statements ----------------------------------------------------------

    def run(self) -> TypeInfo:
        m = self.method
        for p in m.params:
            if p.type.array and p.type.base != "int":
                raise self.fail("only int arrays are supported")
            self.declare(p.name, p.type)
        for s in m.body:
            self.stmt(s, in_case=False)
        if not always_returns(m.body):
            raise self.fail("method does not return on every path")
        validate_method_printable(m)
        return TypeInfo(m, self.var_types, self.node_types, frozenset(self.final_vars))

    def stmt(self, s: Stmt, in_case: bool) -> None:
        if isinstance(s, VarDecl):
            self.var_decl(s)
        elif isinstance(s, Assign):
            t = self.check_assign_target(s.target)
            vt = self.value_type(s.value, t)
            if not assignable(vt, t):
                raise self.fail(f"cannot assign {vt} to {t}")
        elif isinstance(s, ChainedAssign):
            if len(s.targets) < 2:
                raise self.fail("chained assignment needs at least two targets")
            types = []
            for name in s.targets:
                t = self.expr(Var(name))
                if name in self.final_vars:
                    raise self.fail(f"cannot assign to final variable {name}")
                types.append(t)
            vt = self.expr(s.value)
            # value flows right to left: v into the last target, then each
            # target's value into the one before it.
            if not assignable(vt, types[-1]):
                raise self.fail(f"cannot assign {vt} to {types[-1]}")
            for i in range(len(types) - 1, 0, -1):
                if not assignable(types[i], types[i - 1]):
                    raise self.fail(f"cannot assign {types[i]} to {types[i - 1]}")
        elif isinstance(s, CompoundAssign):
            t = self.check_assign_target(s.target)
            expanded = Binary(s.op[:-1], s.target, s.value)
            et = expr_type(expanded, self.var_types, None, self.visible())
            if not assignable(et, t):
                raise self.fail(f"{s.op} would need a narrowing conversion to {t}")
            self.expr(s.value)
        elif isinstance(s, IncDec):
            t = self.expr(Var(s.target))
            if not is_numeric(t):
                raise self.fail(f"{s.op} needs a numeric variable")
            if s.target in self.final_vars:
                raise self.fail(f"cannot assign to final variable {s.target}")
        elif isinstance(s, If):
            if self.expr(s.cond) != BOOLEAN:
                raise self.fail("if condition must be boolean")
            self.branch(s.then, in_case)
            if s.els is not None:
                self.branch(s.els, in_case)
        elif isinstance(s, Switch):
            self.switch(s)
        elif isinstance(s, For):
            self.scopes.append(set())
            if s.init is not None:
                if isinstance(s.init, VarDecl):
                    self.var_decl(s.init)
                elif isinstance(s.init, Assign):
                    self.stmt(s.init, in_case=False)
                else:
                    raise self.fail("for initializer must be a declaration or assignment")
            if s.cond is not None and self.expr(s.cond) != BOOLEAN:
                raise self.fail("for condition must be boolean")
            if s.update is not None:
                if not isinstance(s.update, (Assign, CompoundAssign, IncDec)):
                    raise self.fail("for update must be an assignment or increment")
                self.stmt(s.update, in_case=False)
            self.branch(s.body, in_case=False)
            self.scopes.pop()
        elif isinstance(s, Foreach):
            if s.var_type != INT:
                raise self.fail("foreach variable must be an int")
            if self.expr(s.array) != INT_ARRAY:
                raise self.fail("foreach needs an int[]")
            self.scopes.append(set())
            self.declare(s.var_name, INT)
            self.branch(s.body, in_case=False)
            self.scopes.pop()
        elif isinstance(s, While):
            if self.expr(s.cond) != BOOLEAN:
                raise self.fail("while condition must be boolean")
            self.branch(s.body, in_case=False)
        elif isinstance(s, Return):
            vt = self.expr(s.value)
            if not assignable(vt, self.method.return_type):
                raise self.fail(f"cannot return {vt} from a {self.method.return_type} method")
        elif isinstance(s, Break):
            if not in_case:
                raise self.fail("break is only allowed inside a switch case")
        elif isinstance(s, Block):
            self.scopes.append(set())
            for st in s.stmts:
                self.stmt(st, in_case)
            self.scopes.pop()
        else:
            raise self.fail(f"unknown statement node {type(s).__name__}")

    def branch(self, s: Stmt, in_case: bool) -> None:
        if isinstance(s, VarDecl):
            raise self.fail("a declaration cannot be the sole statement of a branch")
        self.stmt(s, in_case)

    def value_type(self, value: Expr, target_type: MiniJType) -> MiniJType:
        if isinstance(value, ArrayLit):
            if target_type != INT_ARRAY:
                raise self.fail("array literal needs an int[] target")
            for el in value.elements:
                if self.expr(el) != INT:
                    raise self.fail("array literal elements must be ints")
            self.node_types[id(value)] = INT_ARRAY
            return INT_ARRAY
        return self.expr(value)

    def var_decl(self, s: VarDecl) -> None:
        if not s.declarators:
            raise self.fail("declaration without declarators")
        for d in s.declarators:
            if d.c_style:
                if s.base_type.array:
                    raise self.fail("multi-dimensional arrays are not supported")
                if s.base_type.base != "int":
                    raise self.fail("only int arrays are supported")
                ty = INT_ARRAY
            else:
                ty = s.base_type
            if ty.array and ty.base != "int":
                raise self.fail("only int arrays are supported")
            if d.init is None:
                if s.final:
                    raise self.fail(f"final variable {d.name} needs an initializer")
                if ty in (STRING, INT_ARRAY):
                    raise self.fail(f"{ty} variable {d.name} needs an initializer")
            else:
                vt = self.value_type(d.init, ty)
                if not assignable(vt, ty):
                    raise self.fail(f"cannot initialize {ty} {d.name} with {vt}")
            self.declare(d.name, ty, s.final)

    def switch(self, s: Switch) -> None:
        st = self.expr(s.scrutinee)
        if st not in (INT, STRING):
            raise self.fail("switch scrutinee must be an int or String")
        if not s.cases:
            raise self.fail("switch needs at least one case")
        seen: set[int | str] = set()
        for i, case in enumerate(s.cases):
            if case.label is None:
                if i != len(s.cases) - 1:
                    raise self.fail("default must be the last switch case")
            else:
                v = case_label_value(case.label)
                if st == INT and not isinstance(v, int):
                    raise self.fail("case label type does not match int scrutinee")
                if st == STRING and not isinstance(v, str):
                    raise self.fail("case label type does not match String scrutinee")
                if isinstance(v, int) and not (-(2**31) <= v <= INT_MAX):
                    raise self.fail("case label out of int range")
                if v in seen:
                    raise self.fail(f"duplicate case label {v!r}")
                seen.add(v)
            if not case.body:
                raise self.fail("switch case body cannot be empty")
            last = case.body[-1]
            if not isinstance(last, (Break, Return)):
                raise self.fail("switch case must end in break or return")
            self.scopes.append(set())
            for st_ in case.body:
                self.stmt(st_, in_case=True)
            self.scopes.pop()


def check_method(method: MethodAst) -> TypeInfo:
    """Validate a method and return its typing information.

    Raises MiniJTypeError on any violation.
    """
    return _Checker(method).run()

"""Seeded random generator of valid MiniJ methods.

Produces methods that deliberately exercise the whole catalog surface:
boolean algebra, equality chains, switches, guard tails, canonical counter
loops, compound-assignment shapes, declaration clusters, varied literal
representations, redundant parentheses and identity casts. Every generated
method type-checks and terminates on all inputs within the default budget
(loops are counter-bounded).
"""

from __future__ import annotations

import random

from .minij import MethodAst, check_method, wrap_if_needed
from .minij.nodes import (
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
    NewArray,
    Param,
    Paren,
    Return,
    Stmt,
    StringLit,
    Switch,
    SwitchCase,
    Ternary,
    Unary,
    Var,
    VarDecl,
    While,
    BOOLEAN,
    DOUBLE,
    INT,
    INT_ARRAY,
    LONG,
    MiniJType,
    STRING,
)
from .minij.printer import BINARY_PREC, PREC_UNARY

_PARAM_NAMES = ("x", "y", "n", "m", "k", "p", "q", "flag", "s", "t", "a", "b", "data")
_DUAL_LOGIC = {"&&": "||", "||": "&&"}
_LOCAL_NAMES = ("v", "w", "u", "r", "z", "sum", "out", "cur", "best", "left0", "right0")


def _int_literal(rng: random.Random, lo: int = 0, hi: int = 99) -> IntLit:
    v = rng.randint(lo, hi)
    style = rng.random()
    if style < 0.08:
        return IntLit("0x" + format(v, "X"))
    if style < 0.12 and v >= 1000:
        return IntLit(format(v, "_"))
    return IntLit(str(v))


class MethodGenerator:
    """Deterministic generator: equal seeds give equal methods."""

    def __init__(self, seed: int, min_stmts: int = 3, max_stmts: int = 14):
        self.rng = random.Random(seed)
        self.min_stmts = min_stmts
        self.max_stmts = max_stmts

    # ------------------------------------------------------------ plumbing

    def _fresh(self, pool=_LOCAL_NAMES) -> str:
        for name in pool:
            if name not in self.taken:
                self.taken.add(name)
                return name
        i = 2
        while True:
            name = f"{self.rng.choice(pool)}{i}"
            if name not in self.taken:
                self.taken.add(name)
                return name
            i += 1

    def _vars_of(self, ty: MiniJType, writable: bool = False) -> list[str]:
        return [
            n
            for n, t in self.vars.items()
            if t == ty and (not writable or n not in self.finals)
        ]

    # ---------------------------------------------------------- expressions

    def expr(self, ty: MiniJType, depth: int = 2) -> Expr:
        rng = self.rng
        if ty == INT:
            return self._int_expr(depth)
        if ty == BOOLEAN:
            return self._bool_expr(depth)
        if ty == LONG:
            if depth > 0 and rng.random() < 0.4:
                op = rng.choice(("+", "-", "*"))
                p = BINARY_PREC[op]
                l = self._num_operand(LONG, depth - 1, p)
                r = self._num_operand(LONG, depth - 1, p + 1)
                return Binary(op, l, r)
            names = self._vars_of(LONG)
            if names and rng.random() < 0.6:
                return Var(rng.choice(names))
            return LongLit(str(rng.randint(0, 500)) + "L")
        if ty == DOUBLE:
            if depth > 0 and rng.random() < 0.35:
                op = rng.choice(("+", "-", "*"))
                p = BINARY_PREC[op]
                return Binary(
                    op,
                    wrap_if_needed(self.expr(DOUBLE, depth - 1), p),
                    wrap_if_needed(self.expr(rng.choice((DOUBLE, INT)), depth - 1), p + 1),
                )
            names = self._vars_of(DOUBLE)
            if names and rng.random() < 0.6:
                return Var(rng.choice(names))
            return DoubleLit(f"{rng.randint(0, 9)}.{rng.randint(0, 99)}")
        if ty == STRING:
            names = self._vars_of(STRING)
            if depth > 0 and rng.random() < 0.5:
                left: Expr = (
                    Var(rng.choice(names)) if names and rng.random() < 0.5 else StringLit(
                        rng.choice(("v=", "r:", "", "ok "))
                    )
                )
                tail_ty = rng.choice((INT, BOOLEAN, STRING, DOUBLE))
                right = wrap_if_needed(self.expr(tail_ty, 0), BINARY_PREC["+"] + 1)
                return Binary("+", left, right)
            if names and rng.random() < 0.5:
                return Var(rng.choice(names))
            return StringLit(rng.choice(("", "a", "ab", "x1", "no")))
        if ty == INT_ARRAY:
            names = self._vars_of(INT_ARRAY)
            if names:
                return Var(rng.choice(names))
            return NewArray(IntLit(str(rng.randint(0, 5))))
        raise ValueError(f"cannot generate {ty}")

    def _num_operand(self, ty: MiniJType, depth: int, req: int) -> Expr:
        return wrap_if_needed(self.expr(ty, depth), req)

    def _int_atom(self) -> Expr:
        rng = self.rng
        names = self._vars_of(INT)
        arrays = self._vars_of(INT_ARRAY)
        choices = ["lit"]
        if names:
            choices += ["var", "var", "var"]
        if arrays:
            choices += ["length", "index"]
        kind = rng.choice(choices)
        if kind == "var":
            return Var(rng.choice(names))
        if kind == "length":
            return Length(Var(rng.choice(arrays)))
        if kind == "index":
            return Index(Var(rng.choice(arrays)), IntLit(str(rng.randint(0, 3))))
        return _int_literal(rng)

    def _int_expr(self, depth: int) -> Expr:
        rng = self.rng
        if depth <= 0:
            return self._int_atom()
        roll = rng.random()
        if roll < 0.45:
            op = rng.choice(("+", "+", "-", "*", "%", "/"))
            p = BINARY_PREC[op]
            left = wrap_if_needed(self._int_expr(depth - 1), p)
            if op in ("/", "%"):
                # keep division by a nonzero literal so errors stay rare
                right: Expr = IntLit(str(rng.randint(1, 9)))
            else:
                right = wrap_if_needed(self._int_expr(depth - 1), p + 1)
            return Binary(op, left, right)
        if roll < 0.5:
            return Unary("-", wrap_if_needed(self._int_atom(), PREC_UNARY))
        if roll < 0.55:
            return Paren(self._int_expr(depth - 1))
        if roll < 0.6:
            return Cast(INT, wrap_if_needed(self._int_atom(), PREC_UNARY))
        if roll < 0.68:
            cond = wrap_if_needed(self._bool_expr(depth - 1), 2)
            return Ternary(cond, self._int_atom(), self._int_atom())
        return self._int_atom()

    def _bool_expr(self, depth: int) -> Expr:
        rng = self.rng
        bools = self._vars_of(BOOLEAN)
        if depth <= 0:
            if bools and rng.random() < 0.7:
                return Var(rng.choice(bools))
            return BoolLit(rng.random() < 0.5)
        roll = rng.random()
        if roll < 0.35:
            op = rng.choice(("<", "<=", ">", ">=", "==", "!="))
            p = BINARY_PREC[op]
            return Binary(
                op,
                wrap_if_needed(self._int_expr(depth - 1), p),
                wrap_if_needed(self._int_expr(depth - 1), p + 1),
            )
        if roll < 0.6:
            op = rng.choice(("&&", "||"))
            p = BINARY_PREC[op]
            return Binary(
                op,
                wrap_if_needed(self._bool_expr(depth - 1), p),
                wrap_if_needed(self._bool_expr(depth - 1), p + 1),
            )
        if roll < 0.75:
            return Unary("!", wrap_if_needed(self._bool_expr(depth - 1), PREC_UNARY))
        if roll < 0.8 and bools:
            return Paren(self._bool_expr(depth - 1))
        if bools and rng.random() < 0.7:
            return Var(rng.choice(bools))
        return BoolLit(rng.random() < 0.5)

    # ----------------------------------------------------------- statements

    def _declare(self, ty: MiniJType, init: Expr | None, final: bool = False) -> VarDecl:
        name = self._fresh()
        self.vars[name] = ty
        if final:
            self.finals.add(name)
        return VarDecl(ty, (Declarator(name, False, init),), final)

    def _simple_mutation(self) -> Stmt | None:
        rng = self.rng
        ints = self._vars_of(INT, writable=True)
        if not ints:
            return None
        name = rng.choice(ints)
        roll = rng.random()
        if roll < 0.25:
            return IncDec(rng.choice(("++", "--")), rng.random() < 0.5, name)
        if roll < 0.5:
            return CompoundAssign(Var(name), rng.choice(("+=", "-=", "*=")), self._int_expr(1))
        if roll < 0.7:
            # compound-convertible shape
            op = rng.choice(("+", "-", "*"))
            rhs = wrap_if_needed(self._int_expr(1), BINARY_PREC[op] + 1)
            return Assign(Var(name), Binary(op, Var(name), rhs))
        return Assign(Var(name), self._int_expr(1))

    def _branch_block(self, terminal: bool) -> Block:
        stmts: list[Stmt] = []
        m = self._simple_mutation()
        if m is not None and self.rng.random() < 0.7:
            stmts.append(m)
        if terminal:
            stmts.append(Return(self._return_expr()))
        elif not stmts:
            stmts.append(Assign(*self._any_assign()))
        return Block(tuple(stmts))

    def _any_assign(self):
        rng = self.rng
        ints = self._vars_of(INT, writable=True)
        if ints:
            return Var(rng.choice(ints)), self._int_expr(1)
        raise AssertionError("no writable int variable available")

    def _return_expr(self) -> Expr:
        rt = self.return_type
        return self.expr(rt, 2)

    def _template_stmts(self) -> list[Stmt]:
        """One random feature template, as a list of statements."""
        rng = self.rng
        kind = rng.choice(self.templates)
        if kind == "decl":
            ty = rng.choice((INT, INT, INT, LONG, DOUBLE, BOOLEAN, STRING))
            init: Expr | None = self.expr(ty, rng.randint(1, 2))
            final = rng.random() < 0.15
            if ty == INT and not final and rng.random() < 0.25:
                init = None
            return [self._declare(ty, init, final)]
        if kind == "equation":
            ints = self._vars_of(INT)
            if len(ints) < 1:
                return []
            a = Var(rng.choice(ints))
            b: Expr = Var(rng.choice(ints)) if rng.random() < 0.6 else _int_literal(rng)
            c: Expr = Var(rng.choice(ints)) if rng.random() < 0.4 else _int_literal(rng)
            if rng.random() < 0.5:
                test: Expr = Binary("==", Binary("+", a, b), c)
            else:
                test = Binary("==", a, Binary("-", c, b))
            name = self._fresh(("eq", "same", "hit"))
            self.vars[name] = BOOLEAN
            return [VarDecl(BOOLEAN, (Declarator(name, False, test),))]
        if kind == "negated-logic":
            bools = self._vars_of(BOOLEAN)
            if len(bools) < 1:
                return []
            a = Var(rng.choice(bools))
            b = Var(rng.choice(bools))
            op = rng.choice(("&&", "||"))
            inner = Binary(op, a, b)
            e: Expr = Unary("!", Paren(inner)) if rng.random() < 0.5 else Binary(
                _DUAL_LOGIC[op], Unary("!", a), Unary("!", b)
            )
            name = self._fresh(("neg", "both", "any2"))
            self.vars[name] = BOOLEAN
            return [VarDecl(BOOLEAN, (Declarator(name, False, e),))]
        if kind == "decl-pair":
            a = self._fresh()
            self.vars[a] = INT
            b = self._fresh()
            self.vars[b] = INT
            return [
                VarDecl(
                    INT,
                    (
                        Declarator(a, False, _int_literal(rng)),
                        Declarator(b, False, _int_literal(rng)),
                    ),
                )
            ]
        if kind == "decl-then-assign":
            name = self._fresh()
            self.vars[name] = INT
            return [
                VarDecl(INT, (Declarator(name, False, None),)),
                Assign(Var(name), self._int_expr(2)),
            ]
        if kind == "mutate":
            m = self._simple_mutation()
            return [m] if m is not None else []
        if kind == "chain":
            ints = self._vars_of(INT, writable=True)
            if len(ints) >= 2:
                a, b = rng.sample(ints, 2)
                return [ChainedAssign((a, b), self._int_expr(1))]
            return []
        if kind == "if":
            cond = self._bool_expr(2)
            blocky = rng.random()
            then_stmt: Stmt
            if blocky < 0.6:
                then_stmt = self._branch_block(False)
            else:
                m = self._simple_mutation()
                if m is None:
                    return []
                then_stmt = m
            if rng.random() < 0.5:
                els: Stmt | None = (
                    self._branch_block(False) if blocky < 0.6 else self._simple_mutation()
                )
                if els is None:
                    els = self._branch_block(False)
            else:
                els = None
            return [If(cond, then_stmt, els)]
        if kind == "cond-assign-pair":
            ints = self._vars_of(INT, writable=True)
            if not ints:
                return []
            x = rng.choice(ints)
            return [
                If(
                    self._bool_expr(1),
                    Assign(Var(x), self._int_atom()),
                    Assign(Var(x), self._int_atom()),
                )
            ]
        if kind == "guard":
            return [If(self._bool_expr(2), Block((Return(self._return_expr()),)))]
        if kind == "eq-chain":
            scruts = self._vars_of(INT)
            if not scruts:
                return []
            x = rng.choice(scruts)
            arms = []
            used = rng.sample(range(0, 9), rng.randint(2, 3))
            node: Stmt | None = self._branch_block(False) if rng.random() < 0.6 else None
            for v in reversed(used):
                cond = Binary("==", Var(x), IntLit(str(v)))
                node = If(cond, self._branch_block(False), node)
            assert node is not None
            return [node]
        if kind == "switch":
            scruts = self._vars_of(INT)
            if not scruts:
                return []
            x = rng.choice(scruts)
            labels = rng.sample(range(0, 9), rng.randint(2, 3))
            cases = []
            for v in labels:
                body: list[Stmt] = []
                m = self._simple_mutation()
                if m is not None:
                    body.append(m)
                if rng.random() < 0.35:
                    body.append(Return(self._return_expr()))
                else:
                    body.append(Break())
                cases.append(SwitchCase(IntLit(str(v)), tuple(body)))
            if rng.random() < 0.6:
                cases.append(SwitchCase(None, (Break(),)))
            return [Switch(Var(x), tuple(cases))]
        if kind == "for-array":
            arrays = self._vars_of(INT_ARRAY)
            ints = self._vars_of(INT, writable=True)
            if not arrays or not ints:
                return []
            arr = rng.choice(arrays)
            acc = rng.choice(ints)
            i = self._fresh(("i", "j", "k2", "idx2"))  # loop-scoped, not visible after
            body = Block(
                (CompoundAssign(Var(acc), "+=", Index(Var(arr), Var(i))),)
            )
            return [
                For(
                    VarDecl(INT, (Declarator(i, False, IntLit("0")),)),
                    Binary("<", Var(i), Length(Var(arr))),
                    IncDec("++", False, i),
                    body,
                )
            ]
        if kind == "foreach":
            arrays = self._vars_of(INT_ARRAY)
            ints = self._vars_of(INT, writable=True)
            if not arrays or not ints:
                return []
            arr = rng.choice(arrays)
            acc = rng.choice(ints)
            it = self._fresh(("item", "el", "cur2"))  # loop-scoped, not visible after
            body = Block(
                (Assign(Var(acc), Binary("+", Var(acc), Var(it))),)
            )
            return [Foreach(INT, it, Var(arr), body)]
        if kind == "while":
            ints = self._vars_of(INT, writable=True)
            if not ints:
                return []
            c = self._fresh(("c2", "left2", "steps"))
            self.vars[c] = INT
            acc = rng.choice(ints)
            body = Block(
                (
                    CompoundAssign(Var(acc), "+=", Var(c)),
                    IncDec("--", False, c),
                )
            )
            return [
                VarDecl(INT, (Declarator(c, False, IntLit(str(rng.randint(1, 6)))),)),
                While(Binary(">", Var(c), IntLit("0")), body),
            ]
        if kind == "array-decl":
            name = self._fresh(("arr2", "buf", "tmp3"))
            self.vars[name] = INT_ARRAY
            if rng.random() < 0.5:
                lit = ArrayLit(tuple(_int_literal(rng, 0, 9) for _ in range(rng.randint(0, 4))))
                return [VarDecl(INT_ARRAY, (Declarator(name, False, lit),))]
            return [
                VarDecl(
                    INT_ARRAY,
                    (Declarator(name, False, NewArray(IntLit(str(rng.randint(0, 5))))),),
                )
            ]
        return []

    # -------------------------------------------------------------- driving

    def method(self, name: str = "sample") -> MethodAst:
        rng = self.rng
        self.vars: dict[str, MiniJType] = {}
        self.taken: set[str] = set()
        self.finals: set[str] = set()
        self.templates = [
            "decl",
            "decl",
            "equation",
            "negated-logic",
            "decl-pair",
            "decl-then-assign",
            "mutate",
            "mutate",
            "chain",
            "if",
            "cond-assign-pair",
            "guard",
            "eq-chain",
            "switch",
            "for-array",
            "foreach",
            "while",
            "array-decl",
        ]
        n_params = rng.randint(1, 3)
        params = []
        for i in range(n_params):
            ty = rng.choice(
                (INT, INT, INT, BOOLEAN, INT_ARRAY, LONG, DOUBLE, STRING)
            )
            pname = self._fresh(_PARAM_NAMES)
            self.vars[pname] = ty
            c_style = ty == INT_ARRAY and rng.random() < 0.25
            params.append(Param(pname, ty, c_style))
        self.return_type = rng.choice((INT, INT, INT, BOOLEAN, LONG, DOUBLE, STRING))

        body: list[Stmt] = []
        # Seed at least one mutable int so mutation templates always apply.
        body.append(self._declare(INT, self._int_expr(1)))
        want = rng.randint(self.min_stmts, self.max_stmts)
        attempts = 0
        while len(body) < want and attempts < want * 6:
            attempts += 1
            body.extend(self._template_stmts())
        # Terminal: either a both-return conditional or a plain return.
        if rng.random() < 0.3:
            body.append(
                If(
                    self._bool_expr(2),
                    Block((Return(self._return_expr()),)),
                    Block((Return(self._return_expr()),)),
                )
            )
        else:
            body.append(Return(self._return_expr()))
        if rng.random() < 0.15:
            m = self._simple_mutation()
            if m is not None:
                body.append(m)  # dead code after the return
        ast = MethodAst(name, tuple(params), self.return_type, tuple(body))
        check_method(ast)
        return ast


def generate_methods(count: int, seed: int, min_stmts: int = 3, max_stmts: int = 14):
    """A deterministic batch of distinct valid methods."""
    out = []
    for i in range(count):
        gen = MethodGenerator(seed * 1_000_003 + i, min_stmts, max_stmts)
        out.append(gen.method(f"m{i}"))
    return out

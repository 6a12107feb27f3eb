"""Recursive-descent parser producing a type-checked MethodAst."""

from __future__ import annotations

from . import lexer
from .lexer import Token, tokenize
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
    MiniJType,
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
)

TYPE_KEYWORDS = ("int", "long", "double", "boolean", "String")

COMPOUND_OPS = ("+=", "-=", "*=", "/=", "%=")


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        detail = f"{line}:{col}: {message}"
        if expected:
            detail += " (expected " + " or ".join(expected) + ")"
        super().__init__(detail)
        self.line = line
        self.col = col
        self.expected = expected


class _TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, lexeme: str, offset: int = 0) -> bool:
        t = self.peek(offset)
        return t is not None and t.lexeme == lexeme

    def at_kind(self, kind: str, offset: int = 0) -> bool:
        t = self.peek(offset)
        return t is not None and t.kind == kind

    def advance(self) -> Token:
        t = self.peek()
        if t is None:
            raise self.error("unexpected end of input")
        self.pos += 1
        return t

    def expect(self, lexeme: str) -> Token:
        t = self.peek()
        if t is None or t.lexeme != lexeme:
            raise self.error(
                f"found {t.lexeme!r}" if t else "unexpected end of input", (lexeme,)
            )
        return self.advance()

    def error(self, message: str, expected: tuple[str, ...] = ()) -> ParseError:
        t = self.peek()
        if t is None:
            last = self.tokens[-1] if self.tokens else None
            line, col = (last.line, last.col) if last else (1, 1)
        else:
            line, col = t.line, t.col
        return ParseError(message, line, col, expected)


def parse_method(source: str) -> MethodAst:
    """Parse one complete MiniJ method and type check it."""
    from .typecheck import check_method

    ast = parse_method_unchecked(source)
    check_method(ast)
    return ast


def parse_method_unchecked(source: str) -> MethodAst:
    ts = _TokenStream(tokenize(source))
    p = _Parser(ts)
    method = p.method()
    if ts.peek() is not None:
        raise ts.error("trailing input after method")
    return method


class _Parser:
    def __init__(self, ts: _TokenStream):
        self.ts = ts

    # ------------------------------------------------------------- structure

    def method(self) -> MethodAst:
        return_type = self.type_name()
        name = self.identifier()
        self.ts.expect("(")
        params: list[Param] = []
        if not self.ts.at(")"):
            params.append(self.param())
            while self.ts.at(","):
                self.ts.advance()
                params.append(self.param())
        self.ts.expect(")")
        self.ts.expect("{")
        body: list[Stmt] = []
        while not self.ts.at("}"):
            body.append(self.statement())
        self.ts.expect("}")
        return MethodAst(name, tuple(params), return_type, tuple(body))

    def param(self) -> Param:
        ty = self.type_name()
        name = self.identifier()
        c_style = False
        if self.ts.at("[") and self.ts.at("]", 1):
            if ty.array:
                raise self.ts.error("multi-dimensional arrays are not supported")
            if ty.base != "int":
                raise self.ts.error("only int arrays are supported")
            self.ts.advance()
            self.ts.advance()
            c_style = True
            ty = MiniJType(ty.base, True)
        return Param(name, ty, c_style)

    def type_name(self) -> MiniJType:
        t = self.ts.peek()
        if t is None or t.lexeme not in TYPE_KEYWORDS:
            raise self.ts.error("not a type", TYPE_KEYWORDS)
        self.ts.advance()
        base = t.lexeme
        if self.ts.at("[") and self.ts.at("]", 1):
            self.ts.advance()
            self.ts.advance()
            if base != "int":
                raise self.ts.error("only int arrays are supported")
            return MiniJType(base, True)
        return MiniJType(base)

    def identifier(self) -> str:
        t = self.ts.peek()
        if t is None or t.kind != lexer.IDENTIFIER:
            raise self.ts.error("expected identifier")
        self.ts.advance()
        return t.lexeme

    # ------------------------------------------------------------ statements

    def statement(self, allow_decl: bool = True) -> Stmt:
        t = self.ts.peek()
        if t is None:
            raise self.ts.error("unexpected end of input")
        lex = t.lexeme
        if lex == "{":
            return self.block()
        if lex == "if":
            return self.if_statement()
        if lex == "switch":
            return self.switch_statement()
        if lex == "for":
            return self.for_statement()
        if lex == "while":
            return self.while_statement()
        if lex == "return":
            self.ts.advance()
            value = self.expression()
            self.ts.expect(";")
            return Return(value)
        if lex == "break":
            self.ts.advance()
            self.ts.expect(";")
            return Break()
        if lex == "final" or lex in TYPE_KEYWORDS:
            if not allow_decl:
                raise self.ts.error("variable declaration is not allowed here")
            decl = self.var_decl()
            self.ts.expect(";")
            return decl
        return self.simple_statement()

    def block(self) -> Block:
        self.ts.expect("{")
        stmts: list[Stmt] = []
        while not self.ts.at("}"):
            stmts.append(self.statement())
        self.ts.expect("}")
        return Block(tuple(stmts))

    def branch(self) -> Stmt:
        return self.statement(allow_decl=False)

    def if_statement(self) -> If:
        self.ts.expect("if")
        self.ts.expect("(")
        cond = self.expression()
        self.ts.expect(")")
        then = self.branch()
        els = None
        if self.ts.at("else"):
            self.ts.advance()
            els = self.branch()
        return If(cond, then, els)

    def switch_statement(self) -> Switch:
        self.ts.expect("switch")
        self.ts.expect("(")
        scrutinee = self.expression()
        self.ts.expect(")")
        self.ts.expect("{")
        cases: list[SwitchCase] = []
        while not self.ts.at("}"):
            if self.ts.at("case"):
                self.ts.advance()
                label = self.case_label()
            elif self.ts.at("default"):
                self.ts.advance()
                label = None
            else:
                raise self.ts.error("expected case or default")
            self.ts.expect(":")
            body: list[Stmt] = []
            while not (self.ts.at("case") or self.ts.at("default") or self.ts.at("}")):
                body.append(self.statement())
            cases.append(SwitchCase(label, tuple(body)))
        self.ts.expect("}")
        return Switch(scrutinee, tuple(cases))

    def case_label(self) -> Expr:
        t = self.ts.peek()
        if t is None:
            raise self.ts.error("expected case label")
        if t.lexeme == "-":
            self.ts.advance()
            lit = self.ts.peek()
            if lit is None or lit.kind != lexer.INT_LITERAL:
                raise self.ts.error("expected int literal after -")
            self.ts.advance()
            return Unary("-", IntLit(lit.lexeme))
        if t.kind == lexer.INT_LITERAL:
            self.ts.advance()
            return IntLit(t.lexeme)
        if t.kind == lexer.STRING_LITERAL:
            self.ts.advance()
            return StringLit(lexer.string_value(t.lexeme))
        raise self.ts.error("case label must be an int or string literal")

    def for_statement(self) -> Stmt:
        self.ts.expect("for")
        self.ts.expect("(")
        t = self.ts.peek()
        if t is not None and t.lexeme in TYPE_KEYWORDS:
            # Either a foreach (`for (int x : arr)`) or an init declaration.
            mark = self.ts.pos
            var_type = self.type_name()
            name = self.identifier()
            if self.ts.at(":"):
                self.ts.advance()
                arr = self.expression()
                self.ts.expect(")")
                body = self.branch()
                return Foreach(var_type, name, arr, body)
            self.ts.pos = mark
        init: Stmt | None = None
        if not self.ts.at(";"):
            if (t := self.ts.peek()) is not None and (
                t.lexeme in TYPE_KEYWORDS or t.lexeme == "final"
            ):
                init = self.var_decl()
            else:
                init = self.simple_statement(consume_semicolon=False)
                if not isinstance(init, Assign):
                    raise self.ts.error("for initializer must be a declaration or assignment")
        self.ts.expect(";")
        cond = None if self.ts.at(";") else self.expression()
        self.ts.expect(";")
        update: Stmt | None = None
        if not self.ts.at(")"):
            update = self.simple_statement(consume_semicolon=False)
        self.ts.expect(")")
        body = self.branch()
        return For(init, cond, update, body)

    def while_statement(self) -> While:
        self.ts.expect("while")
        self.ts.expect("(")
        cond = self.expression()
        self.ts.expect(")")
        return While(cond, self.branch())

    def var_decl(self) -> VarDecl:
        final = False
        if self.ts.at("final"):
            self.ts.advance()
            final = True
        base = self.type_name()
        declarators = [self.declarator(base)]
        while self.ts.at(","):
            self.ts.advance()
            declarators.append(self.declarator(base))
        return VarDecl(base, tuple(declarators), final)

    def declarator(self, base: MiniJType) -> Declarator:
        name = self.identifier()
        c_style = False
        if self.ts.at("[") and self.ts.at("]", 1):
            if base.array:
                raise self.ts.error("multi-dimensional arrays are not supported")
            if base.base != "int":
                raise self.ts.error("only int arrays are supported")
            self.ts.advance()
            self.ts.advance()
            c_style = True
        init: Expr | None = None
        if self.ts.at("="):
            self.ts.advance()
            if self.ts.at("{"):
                init = self.array_literal()
            else:
                init = self.expression()
        return Declarator(name, c_style, init)

    def array_literal(self) -> ArrayLit:
        self.ts.expect("{")
        elements: list[Expr] = []
        if not self.ts.at("}"):
            elements.append(self.expression())
            while self.ts.at(","):
                self.ts.advance()
                elements.append(self.expression())
        self.ts.expect("}")
        return ArrayLit(tuple(elements))

    def simple_statement(self, consume_semicolon: bool = True) -> Stmt:
        t = self.ts.peek()
        if t is None:
            raise self.ts.error("unexpected end of input")
        if t.lexeme in ("++", "--"):
            self.ts.advance()
            name = self.identifier()
            stmt: Stmt = IncDec(t.lexeme, True, name)
        else:
            target = self.lvalue()
            op = self.ts.peek()
            if op is None:
                raise self.ts.error("incomplete statement")
            if op.lexeme in ("++", "--"):
                if not isinstance(target, Var):
                    raise self.ts.error("increment target must be a simple variable")
                self.ts.advance()
                stmt = IncDec(op.lexeme, False, target.name)
            elif op.lexeme in COMPOUND_OPS:
                self.ts.advance()
                stmt = CompoundAssign(target, op.lexeme, self.expression())
            elif op.lexeme == "=":
                self.ts.advance()
                targets = [target]
                # Chained assignment: a = b = expr;
                while (
                    isinstance(targets[-1], Var)
                    and self.ts.at_kind(lexer.IDENTIFIER)
                    and self.ts.at("=", 1)
                ):
                    targets.append(Var(self.identifier()))
                    self.ts.expect("=")
                value = self.expression()
                if len(targets) > 1:
                    stmt = ChainedAssign(tuple(v.name for v in targets), value)  # type: ignore[union-attr]
                else:
                    stmt = Assign(targets[0], value)
            else:
                raise self.ts.error(
                    f"found {op.lexeme!r}", ("=", "+=", "-=", "*=", "/=", "%=", "++", "--")
                )
        if consume_semicolon:
            self.ts.expect(";")
        return stmt

    def lvalue(self) -> Expr:
        name = self.identifier()
        if self.ts.at("["):
            self.ts.advance()
            idx = self.expression()
            self.ts.expect("]")
            return Index(Var(name), idx)
        return Var(name)

    # ----------------------------------------------------------- expressions

    def expression(self) -> Expr:
        return self.ternary()

    def ternary(self) -> Expr:
        cond = self.logical_or()
        if self.ts.at("?"):
            self.ts.advance()
            if_true = self.expression()
            self.ts.expect(":")
            if_false = self.ternary()
            return Ternary(cond, if_true, if_false)
        return cond

    def _binary_left(self, ops: tuple[str, ...], sub) -> Expr:
        left = sub()
        while (t := self.ts.peek()) is not None and t.lexeme in ops and t.kind == lexer.OPERATOR:
            self.ts.advance()
            left = Binary(t.lexeme, left, sub())
        return left

    def logical_or(self) -> Expr:
        return self._binary_left(("||",), self.logical_and)

    def logical_and(self) -> Expr:
        return self._binary_left(("&&",), self.equality)

    def equality(self) -> Expr:
        return self._binary_left(("==", "!="), self.relational)

    def relational(self) -> Expr:
        return self._binary_left(("<", "<=", ">", ">="), self.additive)

    def additive(self) -> Expr:
        return self._binary_left(("+", "-"), self.multiplicative)

    def multiplicative(self) -> Expr:
        return self._binary_left(("*", "/", "%"), self.unary)

    def unary(self) -> Expr:
        t = self.ts.peek()
        if t is not None and t.lexeme in ("!", "-") and t.kind == lexer.OPERATOR:
            self.ts.advance()
            return Unary(t.lexeme, self.unary())
        # A cast is '(' followed by a scalar type keyword and ')'.
        if (
            t is not None
            and t.lexeme == "("
            and (nxt := self.ts.peek(1)) is not None
            and nxt.lexeme in TYPE_KEYWORDS
            and (after := self.ts.peek(2)) is not None
            and after.lexeme == ")"
        ):
            self.ts.advance()
            ty = MiniJType(self.ts.advance().lexeme)
            self.ts.expect(")")
            return Cast(ty, self.unary())
        return self.postfix()

    def postfix(self) -> Expr:
        e = self.primary()
        while True:
            if self.ts.at("["):
                self.ts.advance()
                idx = self.expression()
                self.ts.expect("]")
                e = Index(e, idx)
            elif self.ts.at(".") and self.ts.at("length", 1):
                self.ts.advance()
                self.ts.advance()
                e = Length(e)
            else:
                return e

    def primary(self) -> Expr:
        t = self.ts.peek()
        if t is None:
            raise self.ts.error("expected expression")
        if t.kind == lexer.INT_LITERAL:
            self.ts.advance()
            return IntLit(t.lexeme)
        if t.kind == lexer.LONG_LITERAL:
            self.ts.advance()
            return LongLit(t.lexeme)
        if t.kind == lexer.DOUBLE_LITERAL:
            self.ts.advance()
            return DoubleLit(t.lexeme)
        if t.kind == lexer.BOOL_LITERAL:
            self.ts.advance()
            return BoolLit(t.lexeme == "true")
        if t.kind == lexer.STRING_LITERAL:
            self.ts.advance()
            return StringLit(lexer.string_value(t.lexeme))
        if t.kind == lexer.IDENTIFIER:
            self.ts.advance()
            return Var(t.lexeme)
        if t.lexeme == "(":
            self.ts.advance()
            inner = self.expression()
            self.ts.expect(")")
            return Paren(inner)
        if t.lexeme == "new":
            self.ts.advance()
            self.ts.expect("int")
            self.ts.expect("[")
            size = self.expression()
            self.ts.expect("]")
            return NewArray(size)
        raise self.ts.error(f"found {t.lexeme!r} where an expression was expected")

"""Tokenizer for MiniJ source text.

Comments and whitespace are discarded. Joining the produced lexemes with
single spaces and re-tokenizing yields the same token sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

KEYWORDS = frozenset(
    {
        "int",
        "long",
        "double",
        "boolean",
        "String",
        "if",
        "else",
        "switch",
        "case",
        "default",
        "break",
        "for",
        "while",
        "return",
        "final",
        "new",
    }
)

# Longest match first.
OPERATORS = (
    "++",
    "--",
    "+=",
    "-=",
    "*=",
    "/=",
    "%=",
    "==",
    "!=",
    "<=",
    ">=",
    "&&",
    "||",
    "+",
    "-",
    "*",
    "/",
    "%",
    "=",
    "<",
    ">",
    "!",
    "?",
    ":",
)

SEPARATORS = "(){}[];,."

IDENTIFIER = "identifier"
KEYWORD = "keyword"
INT_LITERAL = "int_literal"
LONG_LITERAL = "long_literal"
DOUBLE_LITERAL = "double_literal"
BOOL_LITERAL = "bool_literal"
STRING_LITERAL = "string_literal"
OPERATOR = "operator"
SEPARATOR = "separator"

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", '"': '"', "\\": "\\"}
_UNESCAPES = {"\n": "\\n", "\t": "\\t", "\r": "\\r", '"': '\\"', "\\": "\\\\"}


class LexError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def __post_init__(self):
        if not self.lexeme:
            raise ValueError("token lexeme must be non-empty")

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.lexeme!r})"


def escape_string(value: str) -> str:
    """Render a string value as a canonical double-quoted literal lexeme."""
    return '"' + "".join(_UNESCAPES.get(c, c) for c in value) + '"'


def string_value(lexeme: str) -> str:
    """Decode a string literal lexeme into its runtime value."""
    body = lexeme[1:-1]
    out = []
    i = 0
    while i < len(body):
        c = body[i]
        if c == "\\":
            out.append(_ESCAPES[body[i + 1]])
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


class _Scanner:
    def __init__(self, source: str):
        self.src = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> LexError:
        return LexError(message, self.line, self.col)

    def peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.src[i] if i < len(self.src) else ""

    def advance(self) -> str:
        c = self.src[self.pos]
        self.pos += 1
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return c

    def skip_trivia(self) -> None:
        while self.pos < len(self.src):
            c = self.peek()
            if c.isspace():
                self.advance()
            elif c == "/" and self.peek(1) == "/":
                while self.pos < len(self.src) and self.peek() != "\n":
                    self.advance()
            elif c == "/" and self.peek(1) == "*":
                start_line, start_col = self.line, self.col
                self.advance()
                self.advance()
                while True:
                    if self.pos >= len(self.src):
                        raise LexError("unterminated block comment", start_line, start_col)
                    if self.peek() == "*" and self.peek(1) == "/":
                        self.advance()
                        self.advance()
                        break
                    self.advance()
            else:
                return


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_" or c == "$"


def _is_ident_char(c: str) -> bool:
    return c.isalnum() or c == "_" or c == "$"


def _lex_number(s: _Scanner) -> Token:
    line, col = s.line, s.col
    start = s.pos
    if s.peek() == "0" and s.peek(1) in ("x", "X"):
        s.advance()
        s.advance()
        digits = 0
        while s.peek() and (s.peek() in "0123456789abcdefABCDEF" or s.peek() == "_"):
            if s.peek() != "_":
                digits += 1
            s.advance()
        if digits == 0:
            raise s.error("hex literal needs at least one digit")
        lexeme = s.src[start : s.pos]
        if lexeme[2] == "_" or lexeme[-1] == "_":
            raise s.error("misplaced underscore in numeric literal")
        if s.peek() in ("l", "L"):
            s.advance()
            return Token(LONG_LITERAL, s.src[start : s.pos], line, col)
        return Token(INT_LITERAL, lexeme, line, col)

    while s.peek().isdigit() or s.peek() == "_":
        s.advance()
    int_part = s.src[start : s.pos]
    if int_part.startswith("_") or int_part.endswith("_"):
        raise s.error("misplaced underscore in numeric literal")

    is_double = False
    if s.peek() == "." and s.peek(1).isdigit():
        is_double = True
        s.advance()
        while s.peek().isdigit():
            s.advance()
    if s.peek() in ("e", "E") and (
        s.peek(1).isdigit() or (s.peek(1) in "+-" and s.peek(2).isdigit())
    ):
        is_double = True
        s.advance()
        if s.peek() in "+-":
            s.advance()
        while s.peek().isdigit():
            s.advance()
    if is_double:
        if "_" in s.src[start : s.pos]:
            raise s.error("underscores are not supported in double literals")
        return Token(DOUBLE_LITERAL, s.src[start : s.pos], line, col)
    if s.peek() in ("l", "L"):
        s.advance()
        return Token(LONG_LITERAL, s.src[start : s.pos], line, col)
    return Token(INT_LITERAL, int_part, line, col)


def _lex_string(s: _Scanner) -> Token:
    line, col = s.line, s.col
    start = s.pos
    s.advance()  # opening quote
    while True:
        if s.pos >= len(s.src):
            raise LexError("unterminated string literal", line, col)
        c = s.peek()
        if c == "\n":
            raise LexError("unterminated string literal", line, col)
        if c == "\\":
            s.advance()
            esc = s.peek()
            if esc not in _ESCAPES:
                raise s.error(f"unsupported escape sequence \\{esc}")
            s.advance()
            continue
        s.advance()
        if c == '"':
            return Token(STRING_LITERAL, s.src[start : s.pos], line, col)


def tokenize(source: str) -> list[Token]:
    """Lex MiniJ source into tokens, raising LexError with position on bad input."""
    s = _Scanner(source)
    tokens: list[Token] = []
    while True:
        s.skip_trivia()
        if s.pos >= len(s.src):
            return tokens
        c = s.peek()
        line, col = s.line, s.col
        if c.isdigit():
            tokens.append(_lex_number(s))
        elif _is_ident_start(c):
            start = s.pos
            while s.peek() and _is_ident_char(s.peek()):
                s.advance()
            word = s.src[start : s.pos]
            if word in ("true", "false"):
                tokens.append(Token(BOOL_LITERAL, word, line, col))
            elif word in KEYWORDS:
                tokens.append(Token(KEYWORD, word, line, col))
            else:
                tokens.append(Token(IDENTIFIER, word, line, col))
        elif c == '"':
            tokens.append(_lex_string(s))
        elif c in SEPARATORS:
            s.advance()
            tokens.append(Token(SEPARATOR, c, line, col))
        else:
            for op in OPERATORS:
                if s.src.startswith(op, s.pos):
                    for _ in op:
                        s.advance()
                    tokens.append(Token(OPERATOR, op, line, col))
                    break
            else:
                raise s.error(f"illegal character {c!r}")

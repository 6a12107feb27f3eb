import pytest

from refdecomp.minij import (
    InvalidPathError,
    PrintabilityError,
    parse_method,
    print_method,
    resolve_path,
    tokenize,
    validate_method_printable,
)
from refdecomp.minij.nodes import (
    Assign,
    Binary,
    Block,
    If,
    IntLit,
    MethodAst,
    Param,
    Return,
    Unary,
    Var,
    INT,
    BOOLEAN,
)


def keys(text):
    return [(t.kind, t.lexeme) for t in tokenize(text)]


def test_parse_print_token_identity():
    src = "int f(int x){return x+1;}"
    out = print_method(parse_method(src))
    assert keys(out) == keys(src)


def test_structurally_equal_asts_print_byte_identical():
    src = "int f(int x) {   return   x + 1 ; }"
    a = parse_method(src)
    b = parse_method(print_method(a))
    assert a == b
    assert print_method(a) == print_method(b)


def test_explicit_parentheses_survive_printing():
    src = "int f(int x){return (x)+((1));}"
    out = print_method(parse_method(src))
    assert keys(out) == keys(src)
    assert "(x)" in out.replace(" ", "")


def test_round_trip_on_generated_corpus(method_corpus):
    for ast in method_corpus:
        text = print_method(ast)
        assert parse_method(text) == ast, text


def test_printing_is_pure(method_corpus):
    for ast in method_corpus[:30]:
        assert print_method(ast) == print_method(ast)


def test_respacing_round_trip_on_corpus(method_corpus):
    for ast in method_corpus[:50]:
        toks = tokenize(print_method(ast))
        respaced = " ".join(t.lexeme for t in toks)
        assert [(t.kind, t.lexeme) for t in tokenize(respaced)] == [
            (t.kind, t.lexeme) for t in toks
        ]


def test_nested_unary_minus_never_merges():
    src = "int f(int x){return - -x;}"
    ast = parse_method(src)
    assert keys(print_method(ast)) == keys(src)


def test_resolve_path_examples():
    ast = parse_method("int f(int x){return x+1;}")
    assert resolve_path(ast, ()) == ast.body
    assert resolve_path(ast, (0,)) is ast.body[0]
    with pytest.raises(InvalidPathError):
        resolve_path(ast, (5,))
    with pytest.raises(InvalidPathError):
        resolve_path(ast, (0, 9))


def test_printability_rejects_precedence_violation():
    bad = Binary("*", Binary("+", Var("x"), IntLit("1")), IntLit("2"))
    method = MethodAst("f", (Param("x", INT),), INT, (Return(bad),))
    with pytest.raises(PrintabilityError):
        validate_method_printable(method)


def test_printability_rejects_dangling_else_ambiguity():
    inner_open = If(Var("d"), Assign(Var("x"), IntLit("1")))
    method = MethodAst(
        "f",
        (Param("c", BOOLEAN), Param("d", BOOLEAN)),
        INT,
        (
            Assign(Var("x"), IntLit("0")),  # placeholder; x undeclared is fine here
            If(Var("c"), inner_open, Assign(Var("x"), IntLit("2"))),
        ),
    )
    with pytest.raises(PrintabilityError):
        validate_method_printable(method)


def test_blockless_branches_print_and_reparse():
    src = "int f(boolean c){int x = 0; if (c) x = 1; else x = 2; return x;}"
    ast = parse_method(src)
    assert parse_method(print_method(ast)) == ast

import pytest

from refdecomp.minij import (
    MiniJTypeError,
    ParseError,
    parse_method,
    print_method,
)
from refdecomp.minij.nodes import (
    Binary,
    ChainedAssign,
    Foreach,
    IntLit,
    Paren,
    Return,
    Switch,
    Ternary,
    INT_ARRAY,
)


def test_minimal_method():
    ast = parse_method("int f(int x){return x+1;}")
    assert ast.name == "f"
    assert len(ast.params) == 1
    assert ast.params[0].name == "x"
    assert len(ast.body) == 1
    assert isinstance(ast.body[0], Return)


def test_undeclared_variable_rejected():
    with pytest.raises(MiniJTypeError):
        parse_method("int f(){return y;}")


def test_c_style_array_parameter():
    ast = parse_method("int f(int a[]){return a.length;}")
    assert ast.params[0].type == INT_ARRAY
    assert ast.params[0].c_style
    # the two spellings differ at the token level but give the same type
    ast2 = parse_method("int f(int[] a){return a.length;}")
    assert not ast2.params[0].c_style
    assert ast2.params[0].type == INT_ARRAY


def test_parse_error_carries_position_and_expected():
    with pytest.raises(ParseError) as err:
        parse_method("int f() { return 1 }")
    assert err.value.line == 1
    assert err.value.col > 1
    assert ";" in err.value.expected


def test_precedence_shapes():
    ast = parse_method("int f(int a, int b, int c){return a+b*c;}")
    ret = ast.body[0]
    assert isinstance(ret.value, Binary) and ret.value.op == "+"
    assert isinstance(ret.value.right, Binary) and ret.value.right.op == "*"


def test_parens_are_explicit_nodes():
    ast = parse_method("int f(int a){return (a);}")
    assert isinstance(ast.body[0].value, Paren)


def test_ternary_right_associative():
    ast = parse_method("int f(boolean a, boolean b){return a ? 1 : b ? 2 : 3;}")
    outer = ast.body[0].value
    assert isinstance(outer, Ternary)
    assert isinstance(outer.if_false, Ternary)


def test_chained_assignment():
    ast = parse_method("int f(int x){int a; int b; a = b = x; return a;}")
    chain = ast.body[2]
    assert isinstance(chain, ChainedAssign)
    assert chain.targets == ("a", "b")


def test_foreach_and_switch_parse():
    src = """
    int f(int[] a, int x) {
        int t = 0;
        for (int v : a) { t += v; }
        switch (x) {
            case 1:
                t = 1;
                break;
            default:
                break;
        }
        return t;
    }
    """
    ast = parse_method(src)
    assert isinstance(ast.body[1], Foreach)
    assert isinstance(ast.body[2], Switch)


def test_dangling_else_binds_inner():
    ast = parse_method(
        "int f(boolean c, boolean d){ int x = 0; if (c) if (d) x = 1; else x = 2; return x; }"
    )
    outer = ast.body[1]
    assert outer.els is None
    assert outer.then.els is not None


@pytest.mark.parametrize(
    "src",
    [
        "int f() { return 1; } trailing",
        "int f(long[] a) { return 0; }",
        "int f() { int x = ; return 0; }",
        "int f() { if (true) int x = 1; return 0; }",
        "void f() { return 1; }",
        "int f() { for (1+1; true; ) { } return 0; }",
    ],
)
def test_parse_rejections(src):
    with pytest.raises((ParseError, MiniJTypeError)):
        parse_method(src)


def test_negative_case_labels():
    ast = parse_method(
        "int f(int x){ switch (x) { case -1: return 0; default: return 1; } }"
    )
    label = ast.body[0].cases[0].label
    assert label is not None and not isinstance(label, IntLit)
    assert print_method(ast).count("case -1:") == 1

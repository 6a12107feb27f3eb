import pytest

from refdecomp.minij import MiniJTypeError, check_method, parse_method
from refdecomp.minij.nodes import DOUBLE, INT, LONG, STRING


def reject(src):
    with pytest.raises(MiniJTypeError):
        parse_method(src)


def accept(src):
    return parse_method(src)


def test_declare_once_per_method():
    reject("int f(int x) { int x = 1; return x; }")
    reject("int f() { int a = 1; { int a = 2; } return a; }")
    reject("int f() { { int a = 1; } { int a = 2; } return a; }")


def test_use_before_declaration_and_scope():
    reject("int f() { return a; }")
    reject("int f(boolean c) { if (c) { int a = 1; } return a; }")
    accept("int f(boolean c) { int a = 1; if (c) { a = 2; } return a; }")


def test_switch_rules():
    reject("int f(int x) { switch (x) { case 1: } return 0; }")  # empty body
    reject("int f(int x) { switch (x) { case 1: x = 1; } return 0; }")  # no break
    reject(
        "int f(int x) { switch (x) { case 1: break; case 1: break; } return 0; }"
    )  # duplicate labels
    reject(
        "int f(int x) { switch (x) { case 0x1: break; case 1: break; } return 0; }"
    )  # duplicate by value
    reject(
        "int f(int x) { switch (x) { default: break; case 1: break; } return 0; }"
    )  # default must be last
    reject('int f(long x) { switch (x) { case 1: break; } return 0; }')
    accept(
        'int f(String s) { switch (s) { case "a": return 1; default: break; } return 0; }'
    )


def test_break_placement():
    reject("int f() { break; return 0; }")
    reject("int f(int x) { while (x > 0) { break; } return 0; }")
    reject(
        "int f(int x) { switch (x) { case 1: while (x > 0) { break; } break; } return 0; }"
    )
    accept(
        "int f(int x, boolean c) { switch (x) { case 1: if (c) { x = 2; } break; } return x; }"
    )


def test_definite_return():
    reject("int f(boolean c) { if (c) { return 1; } }")
    accept("int f(boolean c) { if (c) { return 1; } return 2; }")
    accept("int f(boolean c) { if (c) { return 1; } else { return 2; } }")
    reject("int f(int x) { while (x > 0) { return 1; } }")
    accept(
        "int f(int x) { switch (x) { case 1: return 1; default: return 0; } }"
    )
    # code after a return is dead but legal
    accept("int f() { return 1; int dead = 2; }")


def test_final_rules():
    reject("int f() { final int a; a = 1; return a; }")
    reject("int f() { final int a = 1; a = 2; return a; }")
    reject("int f() { final int a = 1; a++; return a; }")
    accept("int f() { final int a = 1; return a; }")


def test_null_free_initializer_rules():
    reject("int f() { String s; return 0; }")
    reject("int f() { int[] a; return 0; }")
    accept("int f() { int a; a = 1; return a; }")  # primitives default-initialize


def test_typing_rules():
    reject("int f(boolean b) { return b + 1; }")
    reject("int f(long x) { int y = x; return y; }")  # narrowing
    accept("long f(int x) { long y = x; return y; }")  # widening
    reject("boolean f(int[] a, int[] b) { return a == b; }")
    reject('String f(int[] a) { return "" + a; }')
    reject("int f(int x) { x += 1.5; return x; }")  # compound narrowing
    accept('String f(String s) { s += 1; return s; }')
    reject("int f(double d) { switch (d) { case 1: break; } return 0; }")
    reject("int f() { return (int) new int[1]; }")
    accept("int f(double d) { return (int) d; }")


def test_increment_needs_numeric_variable():
    reject("int f(boolean b) { b++; return 0; }")
    accept("double f(double d) { d++; return d; }")


def test_chained_assignment_typing():
    accept("long f(int x) { long a; int b; a = b = x; return a; }")
    reject("int f(int x) { int a; long b; a = b = x; return a; }")


def test_expression_types_assigned(method_corpus):
    from refdecomp.minij.nodes import Expr
    from refdecomp.minij.paths import walk
    from refdecomp.minij.nodes import ArrayLit

    for ast in method_corpus[:40]:
        info = check_method(ast)
        for _, node in walk(ast):
            if isinstance(node, Expr) and not isinstance(node, ArrayLit):
                assert info.type_of(node) is not None

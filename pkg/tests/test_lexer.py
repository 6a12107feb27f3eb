import pytest

from refdecomp.minij import LexError, tokenize
from refdecomp.minij.lexer import escape_string, string_value


def lexemes(src):
    return [t.lexeme for t in tokenize(src)]


def test_return_statement_is_five_tokens():
    tokens = tokenize("return x+1;")
    assert [(t.kind, t.lexeme) for t in tokens] == [
        ("keyword", "return"),
        ("identifier", "x"),
        ("operator", "+"),
        ("int_literal", "1"),
        ("separator", ";"),
    ]


def test_hex_literal_is_one_token():
    tokens = tokenize("0xA")
    assert len(tokens) == 1
    assert tokens[0].kind == "int_literal"
    assert tokens[0].lexeme == "0xA"


def test_comments_are_discarded():
    assert lexemes("int a = /*c*/ 1;") == ["int", "a", "=", "1", ";"]
    assert lexemes("int a = 1; // trailing\n") == ["int", "a", "=", "1", ";"]


def test_underscore_and_long_literals():
    tokens = tokenize("1_000 42L 0xFFL 2.5 1e3")
    kinds = [t.kind for t in tokens]
    assert kinds == ["int_literal", "long_literal", "long_literal", "double_literal", "double_literal"]


@pytest.mark.parametrize(
    "src",
    [
        'String s = "unterminated;',
        "int a = 1_;",
        "int a = 0x;",
        "char c;",  # no char type: 'char' lexes as identifier, but '@' below fails
        "int @ = 1;",
        "/* never closed",
        'String s = "bad \\q escape";',
    ],
)
def test_lex_errors_have_positions(src):
    if src == "char c;":
        tokenize(src)  # lexes fine (char is just an identifier); not an error
        return
    with pytest.raises(LexError) as err:
        tokenize(src)
    assert err.value.line >= 1
    assert err.value.col >= 1


def test_respacing_round_trip():
    src = 'int f(int[] a) { String s = "x\\n"; return a[0] - -1; }'
    tokens = tokenize(src)
    respaced = " ".join(t.lexeme for t in tokens)
    assert [(t.kind, t.lexeme) for t in tokenize(respaced)] == [
        (t.kind, t.lexeme) for t in tokens
    ]


def test_string_escape_round_trip():
    for value in ("", "a", 'say "hi"', "tab\there", "nl\nend", "back\\slash", "\r"):
        assert string_value(escape_string(value)) == value


def test_token_lexeme_nonempty():
    from refdecomp.minij.lexer import Token

    with pytest.raises(ValueError):
        Token("identifier", "")

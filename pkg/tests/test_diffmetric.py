import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refdecomp.diffmetric import (
    BaselineZeroError,
    DeltaSize,
    method_tokens,
    sim,
    token_delta,
)
from refdecomp.minij import parse_method
from refdecomp.minij.lexer import Token

from _oracles import lcs_exhaustive, lcs_recursive


def toks(*lexemes):
    return [Token("identifier", lx) for lx in lexemes]


def oracle_delta(a, b):
    ka = [(t.kind, t.lexeme) for t in a]
    kb = [(t.kind, t.lexeme) for t in b]
    common = lcs_recursive(ka, kb)
    return DeltaSize(added=len(kb) - common, deleted=len(ka) - common)


def test_identical_sequences():
    a = toks("a", "b", "c")
    d = token_delta(a, a)
    assert (d.added, d.deleted, d.total) == (0, 0, 0)


def test_single_substitution_against_exhaustive_oracle():
    a, b = toks("a", "b", "c"), toks("a", "x", "c")
    # frozen expected value, cross-checked by enumerating all subsequences
    assert lcs_exhaustive([t.lexeme for t in a], [t.lexeme for t in b]) == 2
    d = token_delta(a, b)
    assert (d.added, d.deleted, d.total) == (1, 1, 2)


def test_empty_baseline():
    d = token_delta([], toks("a", "b"))
    assert (d.added, d.deleted, d.total) == (2, 0, 2)


def test_tokens_compare_by_kind_and_lexeme():
    a = [Token("identifier", "x")]
    b = [Token("keyword", "x")]
    assert token_delta(a, b).total == 2


def test_symmetry_and_reflexivity_random():
    rng = random.Random(5)
    for _ in range(200):
        a = toks(*(rng.choice("abcxyz") for _ in range(rng.randrange(12))))
        b = toks(*(rng.choice("abcxyz") for _ in range(rng.randrange(12))))
        ab, ba = token_delta(a, b), token_delta(b, a)
        assert ab.total == ba.total
        assert token_delta(a, a).total == 0
        assert ab == oracle_delta(a, b)


@settings(max_examples=300, deadline=None)
@given(
    st.lists(st.sampled_from("abcde"), max_size=24),
    st.lists(st.sampled_from("abcde"), max_size=24),
)
def test_delta_matches_recursive_oracle(xs, ys):
    a, b = toks(*xs), toks(*ys)
    assert token_delta(a, b) == oracle_delta(a, b)


def test_total_zero_iff_equal():
    rng = random.Random(11)
    for _ in range(100):
        a = toks(*(rng.choice("ab") for _ in range(rng.randrange(8))))
        b = toks(*(rng.choice("ab") for _ in range(rng.randrange(8))))
        d = token_delta(a, b)
        assert (d.total == 0) == (
            [(t.kind, t.lexeme) for t in a] == [(t.kind, t.lexeme) for t in b]
        )


# ------------------------------------------------------------------- scores


def test_sim_one_when_mid_matches_right():
    left = parse_method("int f(int x) { return x + 1; }")
    right = parse_method("int f(int x) { return 1 + x; }")
    assert sim(right, left, right).value == 1.0


def test_sim_zero_when_nothing_explained():
    left = parse_method("int f(int x) { return x + 1; }")
    right = parse_method("int f(int x) { return x + 2; }")
    assert sim(left, left, right).value == 0.0


def test_half_explained_token_example():
    # left=[a b c], right=[a x c], mid=[a b x c]: residual 1 over baseline 2
    left, right, mid = toks("a", "b", "c"), toks("a", "x", "c"), toks("a", "b", "x", "c")
    base = token_delta(left, right)
    resid = token_delta(mid, right)
    assert base == oracle_delta(left, right)
    assert resid == oracle_delta(mid, right)
    assert (base.total, resid.total) == (2, 1)
    assert 1.0 - resid.total / base.total == 0.5


def test_sim_is_monotone_in_residual():
    left = parse_method("int f(int a, int b, int c, int x) { return a + b + c; }")
    right = parse_method("int f(int a, int b, int c, int x) { return a + x + c; }")
    mid = parse_method("int f(int a, int b, int c, int x) { return a + x + b; }")
    value = sim(mid, left, right).value
    assert value <= 1.0
    assert sim(right, left, right).value == 1.0
    assert sim(left, left, right).value == 0.0
    # mid explains the x but breaks the c, so it sits strictly between penalties
    assert value == 1.0 - token_delta(method_tokens(mid), method_tokens(right)).total / (
        token_delta(method_tokens(left), method_tokens(right)).total
    )


def test_sim_endpoint_identities(method_corpus):
    for left, right in zip(method_corpus[:12], method_corpus[12:24]):
        lt, rt = method_tokens(left), method_tokens(right)
        if token_delta(lt, rt).total == 0:
            continue
        assert sim(left, left, right).value == 0.0
        assert sim(right, left, right).value == 1.0


def test_baseline_zero_policy():
    left = parse_method("int f(int x) { return x; }")
    mid = parse_method("int f(int x) { return x + 0; }")
    assert sim(left, left, left).value == 1.0
    with pytest.raises(BaselineZeroError):
        sim(mid, left, left)


def test_kernels_agree_when_both_present():
    try:
        from refdecomp._lcs import lcs_length as cython_lcs
    except ImportError:
        pytest.skip("compiled kernel not built")
    from refdecomp._lcs_fallback import lcs_length as python_lcs

    rng = random.Random(3)
    for _ in range(300):
        a = [rng.randrange(6) for _ in range(rng.randrange(40))]
        b = [rng.randrange(6) for _ in range(rng.randrange(40))]
        assert cython_lcs(a, b) == python_lcs(a, b) == lcs_recursive(a, b)

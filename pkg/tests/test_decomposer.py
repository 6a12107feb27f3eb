import json
import random

from refdecomp.catalog import apply_match, find_matches, get_rule, scramble_sites
from refdecomp.decomposer import (
    ALL_TIERS,
    DecompositionConfig,
    decompose_pair,
    greedy_decompose,
    unify_names,
)
from refdecomp.diffmetric import method_tokens, token_delta
from refdecomp.minij import check_method, parse_method, print_method

DETECTOR_ONLY = DecompositionConfig(tiers=frozenset({"detector"}))


def delta(a, b):
    return token_delta(method_tokens(a), method_tokens(b)).total


def test_unify_names_two_steps():
    left = parse_method("int f(int a){ return a; }")
    right = parse_method("int g(int b){ return b; }")
    mid, steps, skipped = unify_names(left, right)
    assert [s.rule_id for s in steps] == ["rename-method", "rename-parameter"]
    assert mid.name == "g" and mid.params[0].name == "b"
    assert not skipped
    # the recorded deltas match recomputation on this one-line pair
    assert steps[0].delta_before == delta(left, right)
    assert steps[-1].delta_after == delta(mid, right) == 0


def test_unify_names_noop_when_identical():
    ast = parse_method("int f(int a){ return a; }")
    mid, steps, skipped = unify_names(ast, ast)
    assert mid == ast and steps == [] and skipped == []


def test_unify_names_arity_mismatch_renames_method_only():
    left = parse_method("int f(int a){ return a; }")
    right = parse_method("int g(int x, int y){ return x + y; }")
    mid, steps, _ = unify_names(left, right)
    assert [s.rule_id for s in steps] == ["rename-method"]
    assert mid.params[0].name == "a"


def test_unify_names_records_collision():
    left = parse_method("int f(int a){ int b = a; return b; }")
    right = parse_method("int f(int b){ return b; }")
    mid, steps, skipped = unify_names(left, right)
    assert steps == []
    assert any("collision" in s for s in skipped)
    assert mid == left


def test_greedy_zero_steps_on_identical():
    ast = parse_method("int f(int x){ return x + 1; }")
    final, steps, snaps = greedy_decompose(ast, ast)
    assert final == ast and steps == [] and snaps == []


def test_greedy_single_de_morgan_recovery():
    right = parse_method("boolean f(boolean a, boolean b){ return !(a && b); }")
    site = find_matches("apply-de-morgans-law", right)[0]
    left = apply_match(right, site)  # the scramble
    final, steps, _ = greedy_decompose(left, right)
    assert [s.rule_id for s in steps] == ["apply-de-morgans-law"]
    assert method_tokens(final) == method_tokens(right)


def test_greedy_cannot_explain_literal_change():
    left = parse_method("int f(int x){ return x + 1; }")
    right = parse_method("int f(int x){ return x + 2; }")
    final, steps, _ = greedy_decompose(left, right)
    assert steps == []
    assert delta(final, right) == 2


def test_trace_monotone_and_complete():
    right = parse_method(
        "int f(boolean c, int a, int b){ if (c) { return a; } return b; }"
    )
    left = parse_method(
        "int q(boolean c, int a, int b){ if (c) { return a; } else { return b; } }"
    )
    trace = decompose_pair(left, right)
    assert trace.fully_decomposed and trace.sim_final == 1.0
    deltas = [s.delta_before for s in trace.steps] + [trace.steps[-1].delta_after]
    assert all(x > y for x, y in zip(deltas, deltas[1:]))
    assert 0.0 <= trace.sim_after_stage_a <= trace.sim_final


def test_decompose_pair_identical():
    ast = parse_method("int f(int x){ return x; }")
    trace = decompose_pair(ast, ast)
    assert trace.sim_final == 1.0
    assert trace.fully_decomposed
    assert trace.steps == []


def test_decompose_pair_reports_counterexample_with_precheck():
    left = parse_method("int f(int x){ return x + 1; }")
    right = parse_method("int f(int x){ return x + 2; }")
    config = DecompositionConfig(precheck=True)
    trace = decompose_pair(left, right, config)
    assert trace.not_equivalent is not None
    assert trace.sim_final == 0.0 and not trace.fully_decomposed


def test_determinism_byte_identical_reports():
    rng = random.Random(4)
    right = parse_method(
        "int calc(int x, int[] a){ int t = 0; for (int i = 0; i < a.length; i++) { t += a[i]; } if (x == 1) { return t; } return t + x; }"
    )
    current = right
    for _ in range(3):
        info = check_method(current)
        for rule_id in ("replace-for-with-foreach", "apply-de-morgans-law", "introduce-parentheses"):
            sites = scramble_sites(get_rule(rule_id), current, info, rng)
            if sites:
                current = apply_match(current, sites[0], info)
                break
    left = current
    config = DecompositionConfig(seed=99)
    r1 = json.dumps(decompose_pair(left, right, config).to_report(True), sort_keys=True)
    r2 = json.dumps(decompose_pair(left, right, config).to_report(True), sort_keys=True)
    assert r1 == r2


def test_gate_verifies_every_step(method_corpus):
    from refdecomp.equivalence import check_equivalent

    right = parse_method(
        "int f(boolean c, int a){ int r = 0; if (c) { r = a; } else { r = a + 1; } return r; }"
    )
    left = parse_method(
        "int g(boolean c, int a){ int r = 0; if (!c) { r = a + 1; } else { r = a; } return r; }"
    )
    trace = decompose_pair(left, right)
    # re-verify each step against its snapshots
    snaps = [print_method(left)] + [None] * len(trace.steps)
    texts = trace.snapshots
    assert len(texts) == len(trace.steps) + 1
    for before_text, after_text in zip(texts, texts[1:]):
        verdict = check_equivalent(
            parse_method(before_text), parse_method(after_text), n=200, seed=5
        )
        assert verdict.consistent


def test_beam_width_subsumes_greedy():
    right = parse_method("boolean f(boolean a, boolean b){ return !(a && b); }")
    left = parse_method("boolean g(boolean a, boolean b){ return !a || !b; }")
    greedy = decompose_pair(left, right, DecompositionConfig(beam_width=1, seed=3))
    beam = decompose_pair(left, right, DecompositionConfig(beam_width=3, seed=3))
    assert greedy.sim_final == beam.sim_final == 1.0


def test_tier_restriction_blocks_extended_rules():
    right = parse_method(
        "int f(boolean c, int a, int b){ if (c) { return a; } return b; }"
    )
    left = parse_method(
        "int f(boolean c, int a, int b){ if (c) { return a; } else { return b; } }"
    )
    full = decompose_pair(left, right)
    detector_only = decompose_pair(left, right, DETECTOR_ONLY)
    assert full.sim_final == 1.0
    assert detector_only.sim_final < 1.0  # the guard-clause rewrite is extended-tier

"""The behavior-preserving rewrite-rule catalog.

Rules come in two tiers: ``detector`` mirrors the method-level refactorings a
refactoring detector reports (renames, extract/inline variable, variable
typing and modifiers), and ``extended`` covers the structural rewrites beyond
that. Static guards on each rule are necessary but deliberately conservative;
the decomposer additionally verifies every application by differential
execution before accepting it.
"""

from __future__ import annotations

import random

from ..minij import MethodAst, check_method
from ..minij.typecheck import TypeInfo
from .base import (
    DETECTOR,
    EXTENDED,
    GuardViolationError,
    MatchContext,
    MatchSite,
    RewriteRule,
    StaleSiteError,
    make_context,
)
from . import control, expressions, naming, statements

ALL_RULES: tuple[RewriteRule, ...] = tuple(
    sorted(
        naming.RULES + expressions.RULES + statements.RULES + control.RULES,
        key=lambda r: r.id,
    )
)

_BY_ID = {r.id: r for r in ALL_RULES}
assert len(_BY_ID) == len(ALL_RULES), "duplicate rule ids"


def list_rules() -> list[RewriteRule]:
    """All rules in stable id order."""
    return list(ALL_RULES)


def get_rule(rule_id: str) -> RewriteRule:
    try:
        return _BY_ID[rule_id]
    except KeyError:
        raise KeyError(f"unknown rule id {rule_id!r}") from None


def find_matches(
    rule: RewriteRule | str,
    ast: MethodAst,
    target: MethodAst | None = None,
    ctx: MatchContext | None = None,
) -> list[MatchSite]:
    """Match sites of one rule, in deterministic document order.

    ``target`` guides rules that need names or fragments that do not occur
    in ``ast`` (renames, extractions, representation changes). A precomputed
    ``ctx`` avoids re-type-checking when matching many rules against one
    method.
    """
    if isinstance(rule, str):
        rule = get_rule(rule)
    if ctx is None:
        ctx = make_context(ast, target)
    return rule.matcher(ctx)


def scramble_sites(
    rule: RewriteRule, ast: MethodAst, info: TypeInfo, rng: random.Random
) -> list[MatchSite]:
    """Sites for applying a rule without a target, synthesizing any fresh
    names from a deterministic pool."""
    if rule.scrambler is not None:
        return rule.scrambler(ast, info, rng)
    return rule.matcher(MatchContext(ast, info))


def apply_match(ast: MethodAst, site: MatchSite, info: TypeInfo | None = None) -> MethodAst:
    """Apply one match site; the result re-type-checks and differs from the
    input by at least one token.

    Raises StaleSiteError if the tree changed since matching and
    GuardViolationError if a defensive guard re-check fails.
    """
    rule = get_rule(site.rule_id)
    if info is None:
        info = check_method(ast)
    out = rule.applier(ast, site, info)
    check_method(out)  # includes printability validation
    # Structural equality coincides with token equality here: printing is a
    # function of the tree and reparsing the printed tokens restores it.
    if out == ast:
        raise StaleSiteError(f"{rule.id} produced a token-identical method")
    return out


__all__ = [
    "ALL_RULES",
    "DETECTOR",
    "EXTENDED",
    "GuardViolationError",
    "MatchContext",
    "MatchSite",
    "RewriteRule",
    "StaleSiteError",
    "apply_match",
    "find_matches",
    "get_rule",
    "list_rules",
    "make_context",
    "scramble_sites",
]

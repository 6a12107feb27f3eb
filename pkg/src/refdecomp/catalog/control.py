"""Extended-tier control-flow rules: conditionals, guard clauses, switches
and loops."""

from __future__ import annotations

import random

from ..minij import MethodAst
from ..minij.analysis import (
    always_returns,
    element_written_arrays,
    mentions_var,
    var_uses,
    written_vars,
)
from ..minij.nodes import (
    Assign,
    Binary,
    Block,
    Break,
    Declarator,
    Expr,
    For,
    Foreach,
    If,
    IncDec,
    Index,
    IntLit,
    Length,
    Node,
    Return,
    Stmt,
    StringLit,
    Switch,
    SwitchCase,
    Ternary,
    Var,
    VarDecl,
    INT,
    STRING,
)
from ..minij.paths import replace_at, walk
from ..minij.printer import ends_with_open_if
from ..minij.typecheck import TypeInfo, case_label_value
from .base import (
    EXTENDED,
    MatchContext,
    MatchSite,
    RewriteRule,
    StaleSiteError,
    fresh_name,
    harvest_names,
    movable,
    move_expr,
    negate,
    node_at,
    replace_stmt_list,
    stmt_list_at,
    stmt_lists,
)


def _contains_break(stmts) -> bool:
    def visit(n: Node) -> bool:
        if isinstance(n, Break):
            return True
        from ..minij.nodes import child_nodes

        return any(visit(c) for c in child_nodes(n))

    return any(visit(s) for s in stmts)


# ----------------------------------------------- conditional <-> expression


def _cond_to_expr_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for path, node in walk(ctx.ast):
        match node:
            case If(c, Assign(Var(x), _), Assign(Var(x2), _)) if x == x2:
                if movable(c, 1):
                    sites.append(MatchSite("conditional-to-expression", path, {}))
            case _:
                pass
    return sites


def _cond_to_expr_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case If(c, Assign(Var(x), a), Assign(Var(x2), b)) if x == x2:
            built = Assign(Var(x), Ternary(move_expr(c, 1, 2), a, b))
            return replace_at(ast, site.path, built)
    raise StaleSiteError("conditional no longer matches")


def _expr_to_cond_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for path, node in walk(ctx.ast):
        match node:
            case Assign(Var(_), Ternary(_, _, _)):
                sites.append(
                    MatchSite("replace-conditional-operator-with-if", path, {})
                )
            case _:
                pass
    return sites


def _expr_to_cond_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case Assign(Var(x), Ternary(c, a, b)):
            built = If(move_expr(c, 2, 1), Assign(Var(x), a), Assign(Var(x), b))
            return replace_at(ast, site.path, built)
    raise StaleSiteError("assignment no longer matches")


# --------------------------------------------------------- reverse conditional


def _reverse_cond_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for path, node in walk(ctx.ast):
        if isinstance(node, If) and node.els is not None:
            if not ends_with_open_if(node.els):
                sites.append(MatchSite("reverse-conditional", path, {}))
    return sites


def _reverse_cond_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not (isinstance(node, If) and node.els is not None):
        raise StaleSiteError("no if/else at site")
    if ends_with_open_if(node.els):
        raise StaleSiteError("swapped branch would capture the else")
    return replace_at(ast, site.path, If(negate(node.cond), node.els, node.then))


# ---------------------------------------------------- swap conditional branches


def _eq_test(e: Expr):
    """(scrutinee, literal value, literal node) for `X == literal`."""
    match e:
        case Binary("==", x, (IntLit() | StringLit()) as lit):
            return x, lit.value, lit
    return None


def _swap_branches_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for path, node in walk(ctx.ast):
        match node:
            case If(c1, a, If(c2, b, _)) if (t1 := _eq_test(c1)) and (t2 := _eq_test(c2)):
                x1, v1, _ = t1
                x2, v2, _ = t2
                if x1 == x2 and v1 != v2 and not ends_with_open_if(b):
                    sites.append(MatchSite("swap-conditional-branches", path, {}))
            case _:
                pass
    return sites


def _swap_branches_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case If(c1, a, If(c2, b, rest)):
            return replace_at(ast, site.path, If(c2, b, If(c1, a, rest)))
    raise StaleSiteError("conditional chain no longer matches")


# ------------------------------------------------------ split/merge conditional


def _split_cond_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for path, node in walk(ctx.ast):
        match node:
            case If(Binary("||", c1, c2), then, _):
                if (
                    movable(c1, 2)
                    and movable(c2, 3)
                    and not ends_with_open_if(then)
                ):
                    sites.append(MatchSite("split-conditional-branch", path, {}))
            case _:
                pass
    return sites


def _split_cond_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case If(Binary("||", c1, c2), then, els):
            inner = If(move_expr(c2, 3, 1), then, els)
            built = If(move_expr(c1, 2, 1), then, inner)
            return replace_at(ast, site.path, built)
    raise StaleSiteError("conditional no longer matches")


def _merge_cond_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for path, node in walk(ctx.ast):
        match node:
            case If(c1, then1, If(c2, then2, _)) if then1 == then2:
                if movable(c1, 1) and movable(c2, 1):
                    sites.append(MatchSite("merge-conditional-branch", path, {}))
            case _:
                pass
    return sites


def _merge_cond_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case If(c1, then1, If(c2, then2, rest)) if then1 == then2:
            cond = Binary("||", move_expr(c1, 1, 2), move_expr(c2, 1, 3))
            return replace_at(ast, site.path, If(cond, then1, rest))
    raise StaleSiteError("conditional chain no longer matches")


# ------------------------------------------------- decompose conditional branch


def _decompose_cond_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for path, node in walk(ctx.ast):
        match node:
            case If(Binary("&&", c1, c2), _, None):
                if movable(c1, 3) and movable(c2, 4):
                    sites.append(MatchSite("decompose-conditional-branch", path, {}))
            case _:
                pass
    return sites


def _decompose_cond_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case If(Binary("&&", c1, c2), then, None):
            inner = If(move_expr(c2, 4, 1), then)
            built = If(move_expr(c1, 3, 1), inner)
            return replace_at(ast, site.path, built)
    raise StaleSiteError("conditional no longer matches")


# --------------------------------------------------------------- guard clauses


def _guard_matches(ctx: MatchContext) -> list[MatchSite]:
    # Only the tail position is matched: splicing the else there is exactly
    # undone by re-absorbing everything that follows the guard.
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        if not stmts:
            continue
        j = len(stmts) - 1
        match stmts[j]:
            case If(_, Block(then_stmts), Block()) if always_returns(then_stmts):
                sites.append(
                    MatchSite(
                        "replace-nested-conditional-with-guard-clauses",
                        owner_path + (offset + j,),
                        {},
                    )
                )
            case _:
                pass
    return sites


def _guard_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not (0 <= j < len(stmts)):
        raise StaleSiteError("statement index out of range")
    s = stmts[j]
    match s:
        case If(c, Block(then_stmts) as then, Block(else_stmts)) if always_returns(
            then_stmts
        ):
            guard = If(c, then)
            return replace_stmt_list(
                ast, owner_path, stmts[:j] + (guard,) + else_stmts + stmts[j + 1 :]
            )
    raise StaleSiteError("conditional no longer matches")


def _unguard_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        owner = None
        if owner_path:
            from ..minij.paths import resolve_path

            owner = resolve_path(ctx.ast, owner_path)
        if isinstance(owner, SwitchCase):
            continue  # the conditional would displace the break/return tail
        for j, s in enumerate(stmts[:-1]):
            match s:
                case If(_, Block(then_stmts), None) if always_returns(then_stmts):
                    sites.append(
                        MatchSite(
                            "replace-guard-clause-with-conditional",
                            owner_path + (offset + j,),
                            {},
                        )
                    )
                case _:
                    pass
    return sites


def _unguard_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not (0 <= j < len(stmts) - 1):
        raise StaleSiteError("guard clause has no following statements")
    s = stmts[j]
    match s:
        case If(c, Block() as then, None) if always_returns(then.stmts):
            merged = If(c, then, Block(stmts[j + 1 :]))
            return replace_stmt_list(ast, owner_path, stmts[:j] + (merged,))
    raise StaleSiteError("guard clause no longer matches")


# -------------------------------------------------------------- if <-> switch


def _chain_arms(node: Stmt):
    """Decompose an if/else-if chain of equality tests into
    (scrutinee, [(label_expr, block)], default_block | None)."""
    arms = []
    scrutinee = None
    cur = node
    while True:
        match cur:
            case If(c, Block() as blk, els):
                t = _eq_test(c)
                if t is None:
                    return None
                x, _, lit = t
                if scrutinee is None:
                    scrutinee = x
                elif x != scrutinee:
                    return None
                arms.append((lit, blk))
                if els is None:
                    return scrutinee, arms, None
                if isinstance(els, Block):
                    return scrutinee, arms, els
                cur = els
            case _:
                return None


def _if_to_switch_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for path, node in walk(ctx.ast):
        if not isinstance(node, If):
            continue
        parsed = _chain_arms(node)
        if parsed is None:
            continue
        scrutinee, arms, default = parsed
        if len(arms) < 2:
            continue
        st = ctx.info.type_of(scrutinee)
        if st not in (INT, STRING):
            continue
        if not movable(scrutinee, 4):
            continue
        values = [case_label_value(lit) for lit, _ in arms]
        if len(set(values)) != len(values):
            continue
        if any(_contains_break(blk.stmts) for _, blk in arms):
            continue
        if default is not None and _contains_break(default.stmts):
            continue
        sites.append(MatchSite("replace-if-with-switch", path, {}))
    return sites


def _group_of(blk: Block) -> tuple[Stmt, ...]:
    if blk.stmts and isinstance(blk.stmts[-1], Return):
        return blk.stmts
    return blk.stmts + (Break(),)


def _if_to_switch_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    parsed = _chain_arms(node) if isinstance(node, If) else None
    if parsed is None:
        raise StaleSiteError("equality chain no longer matches")
    scrutinee, arms, default = parsed
    cases = [SwitchCase(lit, _group_of(blk)) for lit, blk in arms]
    if default is not None:
        cases.append(SwitchCase(None, _group_of(default)))
    built = Switch(move_expr(scrutinee, 4, 1), tuple(cases))
    return replace_at(ast, site.path, built)


def _switch_to_if_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for path, node in walk(ctx.ast):
        if not isinstance(node, Switch):
            continue
        labeled = [c for c in node.cases if c.label is not None]
        if len(labeled) < 2:
            continue
        if not movable(node.scrutinee, 1):
            continue
        ok = True
        for c in node.cases:
            if not c.body:
                ok = False
                break
            body = c.body[:-1] if isinstance(c.body[-1], Break) else c.body
            if _contains_break(body):
                ok = False
                break
            if body and isinstance(c.body[-1], Break) and always_returns(body):
                ok = False  # a dead trailing break would not be regenerated
                break
        if ok:
            sites.append(MatchSite("replace-switch-with-if", path, {}))
    return sites


def _switch_to_if_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not isinstance(node, Switch):
        raise StaleSiteError("no switch at site")
    labeled = [c for c in node.cases if c.label is not None]
    default = next((c for c in node.cases if c.label is None), None)

    def arm_block(c: SwitchCase) -> Block:
        body = c.body
        if body and isinstance(body[-1], Break):
            body = body[:-1]
        return Block(body)

    els: Stmt | None = arm_block(default) if default is not None else None
    scrutinee = move_expr(node.scrutinee, 1, 4)
    for c in reversed(labeled):
        cond = Binary("==", scrutinee, c.label)
        els = If(cond, arm_block(c), els)
    assert isinstance(els, If)
    return replace_at(ast, site.path, els)


# ---------------------------------------------------------------- loop rules


def _canonical_counter_for(node: Stmt):
    """Unpack `for (int i = 0; i < arr.length; i++) body` exactly."""
    match node:
        case For(
            VarDecl(base, (Declarator(i_name, False, IntLit("0")),), False),
            Binary("<", Var(cond_i), Length(Var(arr))),
            IncDec("++", False, upd_i),
            body,
        ) if base == INT and cond_i == i_name and upd_i == i_name:
            return i_name, arr, body
    return None


def _index_only_uses(body: Stmt, i: str, arr: str) -> bool:
    """Every read of i is exactly as the index in arr[i]."""
    uses = var_uses(body, i)
    hits = 0

    def visit(n: Node) -> None:
        nonlocal hits
        match n:
            case Index(Var(a), Var(x)) if a == arr and x == i:
                hits += 1
        from ..minij.nodes import child_nodes

        for c in child_nodes(n):
            visit(c)

    visit(body)
    return uses == hits


def _for_to_foreach_matches(ctx: MatchContext) -> list[MatchSite]:
    names = harvest_names(ctx)
    sites = []
    for path, node in walk(ctx.ast):
        unpacked = _canonical_counter_for(node)
        if unpacked is None:
            continue
        i, arr, body = unpacked
        if i in written_vars(body) or arr in written_vars(body):
            continue
        if arr in element_written_arrays(body):
            continue
        if not _index_only_uses(body, i, arr):
            continue
        for name in names:
            if not mentions_var(body, name):
                sites.append(
                    MatchSite("replace-for-with-foreach", path, {"var": name})
                )
    return sites


def _substitute_index(body: Stmt, arr: str, i: str, var: str) -> Stmt:
    def rec(n: Node) -> Node:
        match n:
            case Index(Var(a), Var(x)) if a == arr and x == i:
                return Var(var)
        from ..minij.nodes import map_children

        return map_children(n, rec)

    return rec(body)


def _for_to_foreach_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    unpacked = _canonical_counter_for(node)
    if unpacked is None:
        raise StaleSiteError("loop no longer matches the canonical counter form")
    i, arr, body = unpacked
    var = site.bindings["var"]
    if var in info.var_types:
        raise StaleSiteError(f"name {var} is already bound")
    new_body = _substitute_index(body, arr, i, var)
    return replace_at(ast, site.path, Foreach(INT, var, Var(arr), new_body))


def _for_to_foreach_scramble(ast: MethodAst, info: TypeInfo, rng: random.Random):
    name = fresh_name(rng, set(info.var_types) | {ast.name})
    sites = []
    for path, node in walk(ast):
        unpacked = _canonical_counter_for(node)
        if unpacked is None:
            continue
        i, arr, body = unpacked
        if i in written_vars(body) or arr in written_vars(body):
            continue
        if arr in element_written_arrays(body):
            continue
        if not _index_only_uses(body, i, arr):
            continue
        sites.append(MatchSite("replace-for-with-foreach", path, {"var": name}))
    return sites


def _foreach_to_for_matches(ctx: MatchContext) -> list[MatchSite]:
    names = harvest_names(ctx)
    sites = []
    for path, node in walk(ctx.ast):
        match node:
            case Foreach(vt, v, Var(arr), body) if vt == INT:
                if v in written_vars(body) or arr in written_vars(body):
                    continue
                if arr in element_written_arrays(body):
                    continue
                for name in names:
                    if not mentions_var(body, name):
                        sites.append(
                            MatchSite("replace-foreach-with-for", path, {"index": name})
                        )
            case _:
                pass
    return sites


def _foreach_to_for_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case Foreach(_, v, Var(arr), body):
            i = site.bindings["index"]
            if i in info.var_types:
                raise StaleSiteError(f"name {i} is already bound")

            def rec(n: Node) -> Node:
                if isinstance(n, Var) and n.name == v:
                    return Index(Var(arr), Var(i))
                from ..minij.nodes import map_children

                return map_children(n, rec)

            built = For(
                VarDecl(INT, (Declarator(i, False, IntLit("0")),)),
                Binary("<", Var(i), Length(Var(arr))),
                IncDec("++", False, i),
                rec(body),
            )
            return replace_at(ast, site.path, built)
    raise StaleSiteError("foreach no longer matches")


def _foreach_to_for_scramble(ast: MethodAst, info: TypeInfo, rng: random.Random):
    name = fresh_name(rng, set(info.var_types) | {ast.name})
    sites = []
    for path, node in walk(ast):
        match node:
            case Foreach(vt, v, Var(arr), body) if vt == INT:
                if v in written_vars(body) or arr in written_vars(body):
                    continue
                if arr in element_written_arrays(body):
                    continue
                sites.append(MatchSite("replace-foreach-with-for", path, {"index": name}))
            case _:
                pass
    return sites


def _r(id, name, lhs, rhs, guards, invertible, inverse, matcher, applier, scrambler=None):
    return RewriteRule(
        id=id,
        name=name,
        tier=EXTENDED,
        lhs=lhs,
        rhs=rhs,
        guards=guards,
        invertible=invertible,
        inverse_id=inverse,
        matcher=matcher,
        applier=applier,
        scrambler=scrambler,
    )


RULES = [
    _r(
        "conditional-to-expression",
        "Conditional to Expression",
        "if ($e1) $v1 = $e2; else $v1 = $e3;",
        "$v1 = $e1 ? $e2 : $e3;",
        ("branch types form a valid conditional expression",),
        True,
        "replace-conditional-operator-with-if",
        _cond_to_expr_matches,
        _cond_to_expr_apply,
    ),
    _r(
        "replace-conditional-operator-with-if",
        "Replace Conditional Operator with If",
        "$v1 = $e1 ? $e2 : $e3;",
        "if ($e1) $v1 = $e2; else $v1 = $e3;",
        (),
        True,
        "conditional-to-expression",
        _expr_to_cond_matches,
        _expr_to_cond_apply,
    ),
    _r(
        "reverse-conditional",
        "Reverse Conditional",
        "if ($e1) $s1 else $s2",
        "if (!$e1) $s2 else $s1",
        ("swapped branch must not capture the else",),
        True,
        "reverse-conditional",
        _reverse_cond_matches,
        _reverse_cond_apply,
    ),
    _r(
        "swap-conditional-branches",
        "Swap Conditional Branches",
        "if ($e1 == $c1) $s1 else if ($e1 == $c2) $s2 ...",
        "if ($e1 == $c2) $s2 else if ($e1 == $c1) $s1 ...",
        ("same scrutinee", "distinct constant labels"),
        True,
        "swap-conditional-branches",
        _swap_branches_matches,
        _swap_branches_apply,
    ),
    _r(
        "split-conditional-branch",
        "Split Conditional Branch",
        "if ($e1 || $e2) $s1",
        "if ($e1) $s1 else if ($e2) $s1",
        (),
        True,
        "merge-conditional-branch",
        _split_cond_matches,
        _split_cond_apply,
    ),
    _r(
        "merge-conditional-branch",
        "Merge Conditional Branch",
        "if ($e1) $s1 else if ($e2) $s1",
        "if ($e1 || $e2) $s1",
        ("identical branches",),
        True,
        "split-conditional-branch",
        _merge_cond_matches,
        _merge_cond_apply,
    ),
    _r(
        "decompose-conditional-branch",
        "Decompose Conditional Branch",
        "if ($e1 && $e2) $s1",
        "if ($e1) if ($e2) $s1",
        ("no else branch",),
        False,
        None,
        _decompose_cond_matches,
        _decompose_cond_apply,
    ),
    _r(
        "replace-nested-conditional-with-guard-clauses",
        "Replace Nested Conditional with Guard Clauses",
        "if ($e1) { ...return... } else { $s1 }",
        "if ($e1) { ...return... } $s1",
        ("then-branch always returns",),
        True,
        "replace-guard-clause-with-conditional",
        _guard_matches,
        _guard_apply,
    ),
    _r(
        "replace-guard-clause-with-conditional",
        "Replace Guard Clause with Conditional",
        "if ($e1) { ...return... } $s1",
        "if ($e1) { ...return... } else { $s1 }",
        ("then-branch always returns", "statements follow"),
        True,
        "replace-nested-conditional-with-guard-clauses",
        _unguard_matches,
        _unguard_apply,
    ),
    _r(
        "replace-if-with-switch",
        "Replace If with Switch",
        "if ($e1 == $c1) { ... } else if ($e1 == $c2) { ... }",
        "switch ($e1) { case $c1: ... case $c2: ... }",
        ("int or String scrutinee", "distinct labels", "no break in arms"),
        True,
        "replace-switch-with-if",
        _if_to_switch_matches,
        _if_to_switch_apply,
    ),
    _r(
        "replace-switch-with-if",
        "Replace Switch with If",
        "switch ($e1) { case $c1: ... }",
        "if ($e1 == $c1) { ... }",
        ("no nested break beyond group tails",),
        True,
        "replace-if-with-switch",
        _switch_to_if_matches,
        _switch_to_if_apply,
    ),
    _r(
        "replace-for-with-foreach",
        "Replace For with Foreach",
        "for (int $i = 0; $i < $a.length; $i++) ... $a[$i] ...",
        "for (int $v1 : $a) ... $v1 ...",
        ("index used only as $a[$i]", "$a and elements not written"),
        True,
        "replace-foreach-with-for",
        _for_to_foreach_matches,
        _for_to_foreach_apply,
        _for_to_foreach_scramble,
    ),
    _r(
        "replace-foreach-with-for",
        "Replace Foreach with For",
        "for (int $v1 : $a) ... $v1 ...",
        "for (int $i = 0; $i < $a.length; $i++) ... $a[$i] ...",
        ("loop variable and array not written",),
        True,
        "replace-for-with-foreach",
        _foreach_to_for_matches,
        _foreach_to_for_apply,
        _foreach_to_for_scramble,
    ),
]

"""Detector-tier rules: renames, extract/inline variable, variable typing
and the final modifier."""

from __future__ import annotations

import random

from ..minij import MethodAst
from ..minij.analysis import free_vars, is_pure, declared_names, var_uses, written_vars
from ..minij.nodes import (
    Assign,
    Binary,
    Block,
    Cast,
    ChainedAssign,
    CompoundAssign,
    Declarator,
    DoubleLit,
    Expr,
    Foreach,
    IncDec,
    IntLit,
    LongLit,
    Node,
    Param,
    Paren,
    Return,
    Stmt,
    StringLit,
    Switch,
    Var,
    VarDecl,
    BoolLit,
    DOUBLE,
    INT,
    LONG,
    STRING,
    map_children,
)
from ..minij.paths import walk
from ..minij.printer import wrap_if_needed
from ..minij.typecheck import TypeInfo, expr_type
from .base import (
    DETECTOR,
    GuardViolationError,
    MatchContext,
    MatchSite,
    RewriteRule,
    StaleSiteError,
    fresh_name,
    harvest_names,
    node_at,
    replace_stmt_list,
    rewrite_exprs,
    stmt_list_at,
    stmt_lists,
)


def rename_in_method(ast: MethodAst, old: str, new: str) -> MethodAst:
    """Rename a variable or parameter everywhere, including declarations."""

    def rec(n: Node) -> Node:
        if isinstance(n, Var):
            return Var(new) if n.name == old else n
        if isinstance(n, IncDec):
            return IncDec(n.op, n.prefix, new if n.target == old else n.target)
        if isinstance(n, ChainedAssign):
            ts = tuple(new if t == old else t for t in n.targets)
            return ChainedAssign(ts, rec(n.value))
        if isinstance(n, Declarator):
            name = new if n.name == old else n.name
            return Declarator(name, n.c_style, rec(n.init) if n.init else None)
        if isinstance(n, Foreach):
            name = new if n.var_name == old else n.var_name
            return Foreach(n.var_type, name, rec(n.array), rec(n.body))
        return map_children(n, rec)

    params = tuple(
        Param(new, p.type, p.c_style) if p.name == old else p for p in ast.params
    )
    return MethodAst(ast.name, params, ast.return_type, tuple(rec(s) for s in ast.body))


def _locals_in_decl_order(info: TypeInfo) -> list[str]:
    param_names = {p.name for p in info.method.params}
    return [n for n in info.var_types if n not in param_names]


# ------------------------------------------------------------- rename method


def _rename_method_matches(ctx: MatchContext) -> list[MatchSite]:
    if ctx.target is not None and ctx.target.name != ctx.ast.name:
        return [MatchSite("rename-method", (), {"new_name": ctx.target.name})]
    return []


def _rename_method_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    new = site.bindings["new_name"]
    if new == ast.name:
        raise StaleSiteError("method already has that name")
    return MethodAst(new, ast.params, ast.return_type, ast.body)


def _rename_method_scramble(ast: MethodAst, info: TypeInfo, rng: random.Random):
    taken = set(info.var_types) | {ast.name}
    return [MatchSite("rename-method", (), {"new_name": fresh_name(rng, taken)})]


# ---------------------------------------------------------- rename parameter


def _rename_param_matches(ctx: MatchContext) -> list[MatchSite]:
    if ctx.target is None or len(ctx.target.params) != len(ctx.ast.params):
        return []
    sites = []
    for i, (p, tp) in enumerate(zip(ctx.ast.params, ctx.target.params)):
        if p.name != tp.name and tp.name not in ctx.info.var_types:
            sites.append(
                MatchSite("rename-parameter", (), {"param_index": i, "new_name": tp.name})
            )
    return sites


def _rename_param_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    i = site.bindings["param_index"]
    new = site.bindings["new_name"]
    if not 0 <= i < len(ast.params) or ast.params[i].name == new:
        raise StaleSiteError("parameter index no longer matches")
    if new in info.var_types:
        raise GuardViolationError(f"name {new} is already bound")
    return rename_in_method(ast, ast.params[i].name, new)


def _rename_param_scramble(ast: MethodAst, info: TypeInfo, rng: random.Random):
    if not ast.params:
        return []
    taken = set(info.var_types) | {ast.name}
    i = rng.randrange(len(ast.params))
    return [
        MatchSite("rename-parameter", (), {"param_index": i, "new_name": fresh_name(rng, taken)})
    ]


# ----------------------------------------------------------- rename variable


def _rename_var_matches(ctx: MatchContext) -> list[MatchSite]:
    candidates = harvest_names(ctx)
    if not candidates:
        return []
    assert ctx.target_info is not None
    sites = []
    for v in _locals_in_decl_order(ctx.info):
        if v in ctx.target_info.var_types:
            continue
        for n in candidates:
            sites.append(MatchSite("rename-variable", (), {"old": v, "new": n}))
    return sites


def _rename_var_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    old, new = site.bindings["old"], site.bindings["new"]
    if old not in info.var_types:
        raise StaleSiteError(f"no variable named {old}")
    if new in info.var_types:
        raise GuardViolationError(f"name {new} is already bound")
    return rename_in_method(ast, old, new)


def _rename_var_scramble(ast: MethodAst, info: TypeInfo, rng: random.Random):
    locals_ = _locals_in_decl_order(info)
    if not locals_:
        return []
    taken = set(info.var_types) | {ast.name}
    return [
        MatchSite(
            "rename-variable",
            (),
            {"old": rng.choice(locals_), "new": fresh_name(rng, taken)},
        )
    ]


# ---------------------------------------------------------- extract variable


def _is_trivial(e: Expr) -> bool:
    return isinstance(e, (IntLit, LongLit, DoubleLit, BoolLit, StringLit, Var))


def _is_occurrence(node: Expr, e: Expr, req: int) -> bool:
    # A parenthesized occurrence counts only when the parentheses are
    # required by the position, so that extract and inline restore each
    # other's output token for token.
    from ..minij.printer import precedence

    if node == e:
        return True
    return isinstance(node, Paren) and node.inner == e and precedence(e) < req


def _occurrences(stmt: Stmt, e: Expr) -> int:
    """Occurrences of e (modulo required parentheses) in read positions."""
    count = 0

    def fn(node: Expr, req: int):
        nonlocal count
        if _is_occurrence(node, e, req):
            count += 1
            return node
        return None

    rewrite_exprs(stmt, fn)
    return count


def _replace_occurrences(stmt: Stmt, e: Expr, replacement: Expr) -> Stmt:
    def fn(node: Expr, req: int):
        if _is_occurrence(node, e, req):
            return wrap_if_needed(replacement, req)
        return None

    return rewrite_exprs(stmt, fn)


def _extract_sites_for(
    ctx: MatchContext, e: Expr, name: str, ty, rule_id: str = "extract-variable"
) -> list[MatchSite]:
    """Statement positions where `ty name = e;` can be hoisted out."""
    if not is_pure(e):
        return []
    try:
        et = expr_type(e, ctx.info.var_types)
    except Exception:
        return []
    if et != ty:
        # an exact type match keeps every use site's arithmetic width intact
        return []
    sites = []
    fv = free_vars(e)
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j, s in enumerate(stmts):
            if _occurrences(s, e) < 1:
                continue
            if written_vars(s) & (fv | {name}):
                continue
            if fv & declared_names((s,)):
                continue
            sites.append(
                MatchSite(
                    rule_id,
                    owner_path + (offset + j,),
                    {"expr": e, "name": name, "type": ty},
                )
            )
    return sites


def _extract_var_matches(ctx: MatchContext) -> list[MatchSite]:
    if ctx.target is None or ctx.target_info is None:
        return []
    sites = []
    seen: set[tuple] = set()
    for _, node in walk(ctx.target):
        if not isinstance(node, VarDecl):
            continue
        for d in node.declarators:
            if d.init is None or d.c_style or node.base_type.array:
                continue
            if d.name in ctx.info.var_types or d.name == ctx.ast.name:
                continue
            key = (d.name, d.init)
            if key in seen:
                continue
            seen.add(key)
            sites.extend(_extract_sites_for(ctx, d.init, d.name, node.base_type))
    return sites


def _extract_var_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    e = site.bindings["expr"]
    name = site.bindings["name"]
    ty = site.bindings["type"]
    if name in info.var_types:
        raise GuardViolationError(f"name {name} is already bound")
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not 0 <= j < len(stmts) or _occurrences(stmts[j], e) < 1:
        raise StaleSiteError("extraction statement no longer matches")
    decl = VarDecl(ty, (Declarator(name, False, e),))
    new_stmt = _replace_occurrences(stmts[j], e, Var(name))
    return replace_stmt_list(
        ast, owner_path, stmts[:j] + (decl, new_stmt) + stmts[j + 1 :]
    )


def _extract_var_scramble(ast: MethodAst, info: TypeInfo, rng: random.Random):
    from ..minij.nodes import ArrayLit

    ctx = MatchContext(ast, info)
    candidates = []
    for _, node in walk(ast):
        if not isinstance(node, Expr) or _is_trivial(node):
            continue
        if isinstance(node, (Paren, ArrayLit)) or not is_pure(node):
            continue
        if node not in candidates:
            candidates.append(node)
    if not candidates:
        return []
    name = fresh_name(rng, set(info.var_types) | {ast.name})
    sites = []
    for e in candidates:
        try:
            ty = expr_type(e, info.var_types)
        except Exception:
            continue
        if ty.array:
            continue
        sites.extend(_extract_sites_for(ctx, e, name, ty))
    return sites


# ----------------------------------------------------------- inline variable


def _inline_var_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    method_writes = written_vars(Block(ctx.ast.body))
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j in range(len(stmts) - 1):
            d = stmts[j]
            if not (isinstance(d, VarDecl) and len(d.declarators) == 1):
                continue
            decl = d.declarators[0]
            if decl.init is None or decl.c_style or d.base_type.array:
                continue
            if not is_pure(decl.init):
                continue
            if ctx.info.type_of(decl.init) != d.base_type:
                continue  # widening initializer: inlining would change widths
            v = decl.name
            if v in method_writes:
                continue
            s = stmts[j + 1]
            uses_in_s = var_uses(s, v)
            if uses_in_s < 1:
                continue
            total_uses = sum(var_uses(st, v) for st in ctx.ast.body)
            if total_uses != uses_in_s:
                continue
            if written_vars(s) & free_vars(decl.init):
                continue
            sites.append(
                MatchSite("inline-variable", owner_path + (offset + j,), {"name": v})
            )
    return sites


def _inline_var_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not 0 <= j < len(stmts) - 1:
        raise StaleSiteError("declaration is no longer followed by a statement")
    d = stmts[j]
    if not (
        isinstance(d, VarDecl)
        and len(d.declarators) == 1
        and d.declarators[0].name == site.bindings["name"]
        and d.declarators[0].init is not None
    ):
        raise StaleSiteError("declaration no longer matches")
    v = d.declarators[0].name
    e = d.declarators[0].init

    def fn(node: Expr, req: int):
        if isinstance(node, Var) and node.name == v:
            return wrap_if_needed(e, req)
        return None

    new_stmt = rewrite_exprs(stmts[j + 1], fn)
    return replace_stmt_list(ast, owner_path, stmts[:j] + (new_stmt,) + stmts[j + 2 :])


# ------------------------------------------------------- change variable type


def _widening_contexts_ok(ctx: MatchContext, v: str) -> bool:
    """True if every use of ``v`` keeps its observable value when the variable
    widens from int to long: comparisons, string concatenation, widening
    stores and returns, and casts. Any arithmetic use may change wrap
    behavior and disqualifies the variable."""
    ast = ctx.ast
    info = ctx.info
    paths = {}
    for path, node in walk(ast):
        paths[path] = node
        if isinstance(node, IncDec) and node.target == v:
            return False
        if isinstance(node, ChainedAssign) and v in node.targets:
            return False
        if isinstance(node, Switch):
            scrut = node.scrutinee
            while isinstance(scrut, Paren):
                scrut = scrut.inner
            if isinstance(scrut, Var) and scrut.name == v:
                return False
    for path, node in paths.items():
        if not (isinstance(node, Var) and node.name == v):
            continue
        # climb out of parentheses
        ppath = path[:-1]
        while ppath and isinstance(paths.get(ppath), Paren):
            ppath = ppath[:-1]
        if not ppath:
            return False
        parent = paths.get(ppath)
        pos = path[len(ppath)]
        if isinstance(parent, Binary):
            if parent.op in ("<", "<=", ">", ">=", "==", "!="):
                continue
            if parent.op == "+" and info.type_of(parent) == STRING:
                continue
            return False
        if isinstance(parent, Cast):
            continue
        if isinstance(parent, Assign):
            if pos == 1 and isinstance(parent.target, Var):
                if info.var_types[parent.target.name] in (LONG, DOUBLE):
                    continue
            if pos == 0:
                continue  # store into v widens, value unchanged
            return False
        if isinstance(parent, CompoundAssign):
            if pos == 1 and isinstance(parent.target, Var):
                if info.var_types[parent.target.name] in (LONG, DOUBLE):
                    continue
            return False
        if isinstance(parent, Declarator):
            dtype = info.var_types.get(parent.name)
            if dtype in (LONG, DOUBLE):
                continue
            return False
        if isinstance(parent, Return):
            if ast.return_type in (LONG, DOUBLE):
                continue
            return False
        return False
    return True


def _change_type_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    if ctx.target_info is not None:
        wanted = {
            n for n, t in ctx.target_info.var_types.items() if t == LONG
        }
    else:
        wanted = None
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j, s in enumerate(stmts):
            if not (isinstance(s, VarDecl) and s.base_type == INT and not s.final):
                continue
            if any(d.c_style for d in s.declarators):
                continue
            if wanted is not None and not any(d.name in wanted for d in s.declarators):
                continue
            if all(_widening_contexts_ok(ctx, d.name) for d in s.declarators):
                sites.append(
                    MatchSite("change-variable-type", owner_path + (offset + j,), {})
                )
    return sites


def _change_type_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not (isinstance(node, VarDecl) and node.base_type == INT):
        raise StaleSiteError("declaration no longer matches")
    from ..minij.paths import replace_at

    return replace_at(ast, site.path, VarDecl(LONG, node.declarators, node.final))


# -------------------------------------------------------- variable modifiers


def _add_modifier_matches(ctx: MatchContext) -> list[MatchSite]:
    writes = written_vars(Block(ctx.ast.body))
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j, s in enumerate(stmts):
            if not (isinstance(s, VarDecl) and not s.final):
                continue
            if any(d.init is None for d in s.declarators):
                continue
            if any(d.name in writes for d in s.declarators):
                continue
            sites.append(
                MatchSite("add-variable-modifier", owner_path + (offset + j,), {})
            )
    return sites


def _add_modifier_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not (isinstance(node, VarDecl) and not node.final):
        raise StaleSiteError("declaration no longer matches")
    if any(d.init is None for d in node.declarators):
        raise GuardViolationError("final needs initializers")
    from ..minij.paths import replace_at

    return replace_at(ast, site.path, VarDecl(node.base_type, node.declarators, True))


def _remove_modifier_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j, s in enumerate(stmts):
            if isinstance(s, VarDecl) and s.final:
                sites.append(
                    MatchSite("remove-variable-modifier", owner_path + (offset + j,), {})
                )
    return sites


def _remove_modifier_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not (isinstance(node, VarDecl) and node.final):
        raise StaleSiteError("declaration no longer matches")
    from ..minij.paths import replace_at

    return replace_at(ast, site.path, VarDecl(node.base_type, node.declarators, False))


RULES = [
    RewriteRule(
        id="rename-method",
        name="Rename Method",
        tier=DETECTOR,
        lhs="$T $name(...) { ... }",
        rhs="$T $name2(...) { ... }",
        guards=(),
        invertible=True,
        inverse_id="rename-method",
        matcher=_rename_method_matches,
        applier=_rename_method_apply,
        scrambler=_rename_method_scramble,
    ),
    RewriteRule(
        id="rename-parameter",
        name="Rename Parameter",
        tier=DETECTOR,
        lhs="$T $p",
        rhs="$T $p2",
        guards=("target name unbound",),
        invertible=True,
        inverse_id="rename-parameter",
        matcher=_rename_param_matches,
        applier=_rename_param_apply,
        scrambler=_rename_param_scramble,
    ),
    RewriteRule(
        id="rename-variable",
        name="Rename Variable",
        tier=DETECTOR,
        lhs="$v1",
        rhs="$v2",
        guards=("target name unbound",),
        invertible=True,
        inverse_id="rename-variable",
        matcher=_rename_var_matches,
        applier=_rename_var_apply,
        scrambler=_rename_var_scramble,
    ),
    RewriteRule(
        id="extract-variable",
        name="Extract Variable",
        tier=DETECTOR,
        lhs="use of $e1",
        rhs="$T $v1 = $e1; ... $v1",
        guards=("$e1 pure", "free($e1) not written in the statement", "$v1 unbound"),
        invertible=True,
        inverse_id="inline-variable",
        matcher=_extract_var_matches,
        applier=_extract_var_apply,
        scrambler=_extract_var_scramble,
    ),
    RewriteRule(
        id="inline-variable",
        name="Inline Variable",
        tier=DETECTOR,
        lhs="$T $v1 = $e1; use of $v1",
        rhs="use of $e1",
        guards=(
            "$e1 pure",
            "$v1 never reassigned",
            "all uses in the next statement",
            "free($e1) not written in that statement",
        ),
        invertible=True,
        inverse_id="extract-variable",
        matcher=_inline_var_matches,
        applier=_inline_var_apply,
    ),
    RewriteRule(
        id="change-variable-type",
        name="Change Variable Type",
        tier=DETECTOR,
        lhs="int $v1",
        rhs="long $v1",
        guards=("every use is width-insensitive", "result re-type-checks"),
        invertible=False,
        inverse_id=None,
        matcher=_change_type_matches,
        applier=_change_type_apply,
    ),
    RewriteRule(
        id="add-variable-modifier",
        name="Add Variable Modifier",
        tier=DETECTOR,
        lhs="$T $v1 = $e1;",
        rhs="final $T $v1 = $e1;",
        guards=("variable never reassigned", "initializer present"),
        invertible=True,
        inverse_id="remove-variable-modifier",
        matcher=_add_modifier_matches,
        applier=_add_modifier_apply,
    ),
    RewriteRule(
        id="remove-variable-modifier",
        name="Remove Variable Modifier",
        tier=DETECTOR,
        lhs="final $T $v1 = $e1;",
        rhs="$T $v1 = $e1;",
        guards=(),
        invertible=True,
        inverse_id="add-variable-modifier",
        matcher=_remove_modifier_matches,
        applier=_remove_modifier_apply,
    ),
]

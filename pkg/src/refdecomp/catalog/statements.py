"""Extended-tier statement rules: blocks, declarations, assignments,
increments, dead code and declaration style."""

from __future__ import annotations

import random

from ..minij import MethodAst
from ..minij.analysis import (
    declared_names,
    is_pure,
    free_vars,
    mentions_var,
    stmt_always_returns,
    var_uses,
    written_vars,
)
from ..minij.nodes import (
    Assign,
    Binary,
    Block,
    BoolLit,
    Break,
    ChainedAssign,
    CompoundAssign,
    Declarator,
    Expr,
    For,
    Foreach,
    If,
    IncDec,
    Paren,
    Param,
    Return,
    Stmt,
    SwitchCase,
    Var,
    VarDecl,
    While,
    BOOLEAN,
    DOUBLE,
    INT,
    INT_ARRAY,
    LONG,
)
from ..minij.paths import replace_at, walk
from ..minij.printer import BINARY_PREC, precedence, validate_method_printable
from ..minij.typecheck import TypeInfo, assignable
from .base import (
    EXTENDED,
    MatchContext,
    MatchSite,
    RewriteRule,
    StaleSiteError,
    fresh_name,
    movable,
    move_expr,
    node_at,
    replace_stmt_list,
    stmt_list_at,
    stmt_lists,
)

_BRANCH_FIELDS = {If: ("then", "els"), For: ("body",), Foreach: ("body",), While: ("body",)}


def _branch_positions(ast: MethodAst):
    """(path_of_branch_stmt, parent, field) for every branch slot in use."""
    out = []
    for path, node in walk(ast):
        if isinstance(node, If):
            out.append((path + (1,), node, "then"))
            if node.els is not None:
                out.append((path + (2,), node, "els"))
        elif isinstance(node, For):
            idx = sum(x is not None for x in (node.init, node.cond, node.update))
            out.append((path + (idx,), node, "body"))
        elif isinstance(node, (Foreach, While)):
            out.append((path + (1,), node, "body"))
    return out


def _case_tail_ok(owner, stmts: tuple[Stmt, ...]) -> bool:
    """A switch case group must keep ending in break or return."""
    if not isinstance(owner, SwitchCase):
        return True
    return bool(stmts) and isinstance(stmts[-1], (Break, Return))


def _owner_node(ast: MethodAst, owner_path):
    from ..minij.paths import resolve_path

    return None if not owner_path else resolve_path(ast, owner_path)


# ------------------------------------------------------------------- blocks


def _wrap_block_matches(ctx: MatchContext) -> list[MatchSite]:
    return [
        MatchSite("wrap-statement-in-block", path, {})
        for path, parent, field_name in _branch_positions(ctx.ast)
        if not isinstance(node_at(ctx.ast, path), Block)
    ]


def _wrap_block_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if isinstance(node, Block) or not isinstance(node, Stmt):
        raise StaleSiteError("branch is already a block")
    return replace_at(ast, site.path, Block((node,)))


def _unwrap_block_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for path, parent, field_name in _branch_positions(ctx.ast):
        node = node_at(ctx.ast, path)
        if not (isinstance(node, Block) and len(node.stmts) == 1):
            continue
        inner = node.stmts[0]
        if isinstance(inner, VarDecl):
            continue  # a declaration cannot stand alone as a branch
        candidate = replace_at(ctx.ast, path, inner)
        try:
            validate_method_printable(candidate)
        except Exception:
            continue  # would create a dangling-else ambiguity
        sites.append(MatchSite("unwrap-statement-from-block", path, {}))
    return sites


def _unwrap_block_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not (isinstance(node, Block) and len(node.stmts) == 1):
        raise StaleSiteError("not a single-statement block")
    if isinstance(node.stmts[0], VarDecl):
        raise StaleSiteError("cannot unwrap a declaration")
    return replace_at(ast, site.path, node.stmts[0])


# --------------------------------------------------------- declaration split


def _split_decl_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j, s in enumerate(stmts):
            if isinstance(s, VarDecl) and len(s.declarators) >= 2:
                sites.append(
                    MatchSite("split-variable-declaration", owner_path + (offset + j,), {})
                )
    return sites


def _split_decl_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not (0 <= j < len(stmts)):
        raise StaleSiteError("statement index out of range")
    s = stmts[j]
    if not (isinstance(s, VarDecl) and len(s.declarators) >= 2):
        raise StaleSiteError("not a multi-declarator declaration")
    head = VarDecl(s.base_type, (s.declarators[0],), s.final)
    rest = VarDecl(s.base_type, s.declarators[1:], s.final)
    return replace_stmt_list(ast, owner_path, stmts[:j] + (head, rest) + stmts[j + 1 :])


def _merge_decl_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j in range(len(stmts) - 1):
            a, b = stmts[j], stmts[j + 1]
            if (
                isinstance(a, VarDecl)
                and isinstance(b, VarDecl)
                and len(a.declarators) == 1
                and a.base_type == b.base_type
                and a.final == b.final
            ):
                sites.append(
                    MatchSite("merge-variable-declaration", owner_path + (offset + j,), {})
                )
    return sites


def _merge_decl_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not (0 <= j < len(stmts) - 1):
        raise StaleSiteError("statement index out of range")
    a, b = stmts[j], stmts[j + 1]
    if not (
        isinstance(a, VarDecl)
        and isinstance(b, VarDecl)
        and len(a.declarators) == 1
        and a.base_type == b.base_type
        and a.final == b.final
    ):
        raise StaleSiteError("adjacent declarations no longer match")
    merged = VarDecl(a.base_type, a.declarators + b.declarators, a.final)
    return replace_stmt_list(ast, owner_path, stmts[:j] + (merged,) + stmts[j + 2 :])


# ------------------------------------------- declaration vs initialization

_PRIMITIVES = (INT, LONG, DOUBLE, BOOLEAN)


def _split_init_matches(ctx: MatchContext) -> list[MatchSite]:
    from ..minij.nodes import ArrayLit

    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        owner = _owner_node(ctx.ast, owner_path)
        for j, s in enumerate(stmts):
            if not (
                isinstance(s, VarDecl)
                and not s.final
                and len(s.declarators) == 1
                and s.base_type in _PRIMITIVES
                and not s.declarators[0].c_style
                and s.declarators[0].init is not None
                and not isinstance(s.declarators[0].init, ArrayLit)
            ):
                continue
            if j == len(stmts) - 1 and isinstance(owner, SwitchCase):
                continue  # the assignment would displace the break/return tail
            sites.append(
                MatchSite(
                    "split-declaration-and-initialization", owner_path + (offset + j,), {}
                )
            )
    return sites


def _split_init_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not (0 <= j < len(stmts)):
        raise StaleSiteError("statement index out of range")
    s = stmts[j]
    if not (
        isinstance(s, VarDecl)
        and len(s.declarators) == 1
        and s.declarators[0].init is not None
        and not s.final
    ):
        raise StaleSiteError("declaration no longer matches")
    d = s.declarators[0]
    decl = VarDecl(s.base_type, (Declarator(d.name, d.c_style, None),))
    init = Assign(Var(d.name), d.init)
    return replace_stmt_list(ast, owner_path, stmts[:j] + (decl, init) + stmts[j + 1 :])


def _consolidate_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j in range(len(stmts) - 1):
            d, a = stmts[j], stmts[j + 1]
            if not (
                isinstance(d, VarDecl)
                and not d.final
                and len(d.declarators) == 1
                and d.declarators[0].init is None
                and d.base_type in _PRIMITIVES
            ):
                continue
            if not (
                isinstance(a, Assign)
                and isinstance(a.target, Var)
                and a.target.name == d.declarators[0].name
            ):
                continue
            if d.declarators[0].name in free_vars(a.value):
                continue  # the value reads the default-initialized variable
            sites.append(
                MatchSite(
                    "consolidate-declaration-and-initialization",
                    owner_path + (offset + j,),
                    {},
                )
            )
    return sites


def _consolidate_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not (0 <= j < len(stmts) - 1):
        raise StaleSiteError("statement index out of range")
    d, a = stmts[j], stmts[j + 1]
    if not (
        isinstance(d, VarDecl)
        and len(d.declarators) == 1
        and d.declarators[0].init is None
        and isinstance(a, Assign)
        and isinstance(a.target, Var)
        and a.target.name == d.declarators[0].name
    ):
        raise StaleSiteError("declaration/assignment pair no longer matches")
    decl = VarDecl(d.base_type, (Declarator(d.declarators[0].name, False, a.value),))
    return replace_stmt_list(ast, owner_path, stmts[:j] + (decl,) + stmts[j + 2 :])


# --------------------------------------------------------- return variables


def _intro_return_var_matches(ctx: MatchContext) -> list[MatchSite]:
    if ctx.target is None or ctx.target_info is None:
        return []
    patterns = []
    for owner_path, stmts, offset in stmt_lists(ctx.target):
        for j in range(len(stmts) - 1):
            d, r = stmts[j], stmts[j + 1]
            if (
                isinstance(d, VarDecl)
                and len(d.declarators) == 1
                and d.declarators[0].init is not None
                and not d.declarators[0].c_style
                and not d.final
                and isinstance(r, Return)
                and r.value == Var(d.declarators[0].name)
                and d.declarators[0].name not in ctx.info.var_types
            ):
                patterns.append((d.declarators[0].name, d.base_type, d.declarators[0].init))
    sites = []
    seen = set()
    for name, ty, init in patterns:
        key = (name, ty, init)
        if key in seen:
            continue
        seen.add(key)
        sites.extend(_intro_return_sites(ctx, name, ty, init))
    return sites


def _intro_return_sites(ctx: MatchContext, name, ty, init) -> list[MatchSite]:
    from ..minij.typecheck import expr_type

    try:
        et = expr_type(init, ctx.info.var_types)
    except Exception:
        return []
    if not assignable(et, ty) or not assignable(ty, ctx.ast.return_type):
        return []
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        owner = _owner_node(ctx.ast, owner_path)
        for j, s in enumerate(stmts):
            if isinstance(s, Return) and s.value == init:
                sites.append(
                    MatchSite(
                        "introduce-return-variable",
                        owner_path + (offset + j,),
                        {"name": name, "type": ty},
                    )
                )
    return sites


def _intro_return_var_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    name, ty = site.bindings["name"], site.bindings["type"]
    if name in info.var_types:
        raise StaleSiteError(f"name {name} is already bound")
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not (0 <= j < len(stmts)) or not isinstance(stmts[j], Return):
        raise StaleSiteError("no return statement at site")
    ret: Return = stmts[j]
    decl = VarDecl(ty, (Declarator(name, False, ret.value),))
    return replace_stmt_list(
        ast, owner_path, stmts[:j] + (decl, Return(Var(name))) + stmts[j + 1 :]
    )


def _intro_return_var_scramble(ast: MethodAst, info: TypeInfo, rng: random.Random):
    name = fresh_name(rng, set(info.var_types) | {ast.name})
    sites = []
    for owner_path, stmts, offset in stmt_lists(ast):
        for j, s in enumerate(stmts):
            if isinstance(s, Return):
                from ..minij.nodes import ArrayLit

                if isinstance(s.value, ArrayLit):
                    continue
                from ..minij.typecheck import expr_type

                ty = expr_type(s.value, info.var_types)
                sites.append(
                    MatchSite(
                        "introduce-return-variable",
                        owner_path + (offset + j,),
                        {"name": name, "type": ty},
                    )
                )
    return sites


def _inline_return_var_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j in range(len(stmts) - 1):
            d, r = stmts[j], stmts[j + 1]
            if not (
                isinstance(d, VarDecl)
                and not d.final
                and len(d.declarators) == 1
                and not d.declarators[0].c_style
                and d.declarators[0].init is not None
                and isinstance(r, Return)
                and r.value == Var(d.declarators[0].name)
            ):
                continue
            v = d.declarators[0].name
            total_uses = sum(var_uses(st, v) for st in ctx.ast.body)
            if total_uses != 1:
                continue
            if v in written_vars(Block(ctx.ast.body)):
                continue
            sites.append(
                MatchSite("inline-return-variable", owner_path + (offset + j,), {})
            )
    return sites


def _inline_return_var_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not (0 <= j < len(stmts) - 1):
        raise StaleSiteError("statement index out of range")
    d, r = stmts[j], stmts[j + 1]
    if not (
        isinstance(d, VarDecl)
        and len(d.declarators) == 1
        and d.declarators[0].init is not None
        and isinstance(r, Return)
        and r.value == Var(d.declarators[0].name)
    ):
        raise StaleSiteError("declaration/return pair no longer matches")
    return replace_stmt_list(
        ast, owner_path, stmts[:j] + (Return(d.declarators[0].init),) + stmts[j + 2 :]
    )


# ------------------------------------------------------- chained assignment


def _split_chain_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j, s in enumerate(stmts):
            if isinstance(s, ChainedAssign):
                sites.append(
                    MatchSite("split-chained-assignment", owner_path + (offset + j,), {})
                )
    return sites


def _split_chain_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not (0 <= j < len(stmts)) or not isinstance(stmts[j], ChainedAssign):
        raise StaleSiteError("no chained assignment at site")
    s: ChainedAssign = stmts[j]
    first, rest = s.targets[0], s.targets[1:]
    if len(rest) == 1:
        head: Stmt = Assign(Var(rest[0]), s.value)
    else:
        head = ChainedAssign(rest, s.value)
    tail = Assign(Var(first), Var(rest[0]))
    return replace_stmt_list(ast, owner_path, stmts[:j] + (head, tail) + stmts[j + 1 :])


# ------------------------------------------------------ compound assignment

_COMPOUNDABLE = ("+", "-", "*", "/", "%")


def _compound_rhs(op: str, rhs):
    p = BINARY_PREC[op]
    if isinstance(rhs, Paren) and precedence(rhs.inner) < p + 1:
        return rhs.inner  # the paren was forced by the binary slot
    return rhs


def _to_compound_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j, s in enumerate(stmts):
            match s:
                case Assign(Var(x), Binary(op, Var(x2), rhs)) if (
                    op in _COMPOUNDABLE and x == x2
                ):
                    if isinstance(_compound_rhs(op, rhs), Paren):
                        continue  # redundant paren: remove-parentheses first
                    sites.append(
                        MatchSite(
                            "replace-assignment-with-compound-assignment",
                            owner_path + (offset + j,),
                            {},
                        )
                    )
                case _:
                    pass
    return sites


def _to_compound_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case Assign(Var(x), Binary(op, Var(x2), rhs)) if op in _COMPOUNDABLE and x == x2:
            return replace_at(
                ast, site.path, CompoundAssign(Var(x), op + "=", _compound_rhs(op, rhs))
            )
    raise StaleSiteError("assignment no longer matches")


def _from_compound_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j, s in enumerate(stmts):
            if isinstance(s, CompoundAssign) and isinstance(s.target, Var):
                if movable(s.value, 1):
                    sites.append(
                        MatchSite(
                            "replace-compound-assignment-with-assignment",
                            owner_path + (offset + j,),
                            {},
                        )
                    )
    return sites


def _from_compound_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not (isinstance(node, CompoundAssign) and isinstance(node.target, Var)):
        raise StaleSiteError("no compound assignment at site")
    op = node.op[:-1]
    p = BINARY_PREC[op]
    built = Assign(node.target, Binary(op, Var(node.target.name), move_expr(node.value, 1, p + 1)))
    return replace_at(ast, site.path, built)


# ---------------------------------------------------------------- increments


def _incdec_matches(ctx: MatchContext, rule_id: str, want_prefix: bool) -> list[MatchSite]:
    sites = []
    for path, node in walk(ctx.ast):
        if isinstance(node, IncDec) and node.prefix == want_prefix:
            sites.append(MatchSite(rule_id, path, {}))
    return sites


def _incdec_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not isinstance(node, IncDec):
        raise StaleSiteError("no increment at site")
    return replace_at(ast, site.path, IncDec(node.op, not node.prefix, node.target))


# ------------------------------------------------------------ unused variable


def _unused_var_matches(ctx: MatchContext) -> list[MatchSite]:
    writes = written_vars(Block(ctx.ast.body))
    reads = {
        name: sum(var_uses(s, name) for s in ctx.ast.body) for name in ctx.info.var_types
    }
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        owner = _owner_node(ctx.ast, owner_path)
        for j, s in enumerate(stmts):
            if not isinstance(s, VarDecl):
                continue
            for k, d in enumerate(s.declarators):
                if reads.get(d.name, 0) or d.name in writes:
                    continue
                if d.init is not None and not is_pure(d.init):
                    continue
                if len(s.declarators) == 1 and isinstance(owner, SwitchCase) and j == len(
                    stmts
                ) - 1:
                    continue
                sites.append(
                    MatchSite(
                        "remove-unused-variable",
                        owner_path + (offset + j,),
                        {"declarator": k},
                    )
                )
    return sites


def _unused_var_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not (0 <= j < len(stmts)) or not isinstance(stmts[j], VarDecl):
        raise StaleSiteError("no declaration at site")
    s: VarDecl = stmts[j]
    k = site.bindings["declarator"]
    if not 0 <= k < len(s.declarators):
        raise StaleSiteError("declarator index out of range")
    if len(s.declarators) == 1:
        return replace_stmt_list(ast, owner_path, stmts[:j] + stmts[j + 1 :])
    ds = s.declarators[:k] + s.declarators[k + 1 :]
    return replace_stmt_list(
        ast, owner_path, stmts[:j] + (VarDecl(s.base_type, ds, s.final),) + stmts[j + 1 :]
    )


# ------------------------------------------------------------------ dead code


def _bool_cond(e: Expr) -> bool | None:
    return e.value if isinstance(e, BoolLit) else None


def _dead_code_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        owner = _owner_node(ctx.ast, owner_path)
        returned = False
        for j, s in enumerate(stmts):
            if returned:
                rest = stmts[:j] + stmts[j + 1 :]
                names = declared_names((s,))
                if any(mentions_var(o, n) for o in rest for n in names):
                    pass
                elif _case_tail_ok(owner, rest):
                    sites.append(
                        MatchSite(
                            "remove-dead-code",
                            owner_path + (offset + j,),
                            {"form": "after-return"},
                        )
                    )
            if isinstance(s, If) and _bool_cond(s.cond) is not None:
                replacement: tuple[Stmt, ...]
                if _bool_cond(s.cond) is True:
                    replacement = (s.then,)
                elif s.els is not None:
                    replacement = (s.els,)
                else:
                    replacement = ()
                names = declared_names((s,)) - (
                    declared_names(replacement) if replacement else frozenset()
                )
                others = stmts[:j] + stmts[j + 1 :]
                new_list = stmts[:j] + replacement + stmts[j + 1 :]
                if not any(
                    mentions_var(o, n) for o in others for n in names
                ) and _case_tail_ok(owner, new_list):
                    sites.append(
                        MatchSite(
                            "remove-dead-code",
                            owner_path + (offset + j,),
                            {"form": "const-branch"},
                        )
                    )
            if isinstance(s, While) and _bool_cond(s.cond) is False:
                rest = stmts[:j] + stmts[j + 1 :]
                names = declared_names((s,))
                others = rest
                if not any(
                    mentions_var(o, n) for o in others for n in names
                ) and _case_tail_ok(owner, rest):
                    sites.append(
                        MatchSite(
                            "remove-dead-code",
                            owner_path + (offset + j,),
                            {"form": "dead-while"},
                        )
                    )
            if stmt_always_returns(s):
                returned = True
    return sites


def _dead_code_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not (0 <= j < len(stmts)):
        raise StaleSiteError("statement index out of range")
    s = stmts[j]
    form = site.bindings["form"]
    if form == "after-return":
        if not any(stmt_always_returns(p) for p in stmts[:j]):
            raise StaleSiteError("statement is not dead")
        return replace_stmt_list(ast, owner_path, stmts[:j] + stmts[j + 1 :])
    if form == "const-branch":
        if not (isinstance(s, If) and _bool_cond(s.cond) is not None):
            raise StaleSiteError("no constant branch at site")
        if _bool_cond(s.cond) is True:
            repl: tuple[Stmt, ...] = (s.then,)
        elif s.els is not None:
            repl = (s.els,)
        else:
            repl = ()
        return replace_stmt_list(ast, owner_path, stmts[:j] + repl + stmts[j + 1 :])
    if form == "dead-while":
        if not (isinstance(s, While) and _bool_cond(s.cond) is False):
            raise StaleSiteError("no dead loop at site")
        return replace_stmt_list(ast, owner_path, stmts[:j] + stmts[j + 1 :])
    raise StaleSiteError(f"unknown dead-code form {form}")


def _canonical_dead_stmt() -> Stmt:
    return If(BoolLit(False), Block(()))


def _intro_dead_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        owner = _owner_node(ctx.ast, owner_path)
        for j, s in enumerate(stmts):
            if not stmt_always_returns(s):
                continue
            if isinstance(owner, SwitchCase) and j == len(stmts) - 1:
                continue  # the insertion would displace the group tail
            sites.append(
                MatchSite(
                    "introduce-dead-code",
                    owner_path + (offset + j,),
                    {"payload": _canonical_dead_stmt()},
                )
            )
    return sites


def _intro_dead_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    if not (0 <= j < len(stmts)) or not stmt_always_returns(stmts[j]):
        raise StaleSiteError("anchor statement no longer returns")
    payload = site.bindings["payload"]
    return replace_stmt_list(ast, owner_path, stmts[: j + 1] + (payload,) + stmts[j + 1 :])


def _intro_dead_scramble(ast: MethodAst, info: TypeInfo, rng: random.Random):
    payloads: list[Stmt] = [
        If(BoolLit(False), Block(())),
        While(BoolLit(False), Block(())),
        Block(()),
    ]
    numeric_params = [p for p in ast.params if p.type in (INT, LONG, DOUBLE)]
    if numeric_params:
        p = rng.choice(numeric_params)
        lit = IntLit(str(rng.randint(0, 9)))
        payloads.append(If(BoolLit(False), Block((Assign(Var(p.name), lit),))))
    payload = rng.choice(payloads)
    sites = []
    ctx = MatchContext(ast, info)
    for site in _intro_dead_matches(ctx):
        sites.append(MatchSite(site.rule_id, site.path, {"payload": payload}))
    return sites


# ------------------------------------------------- branch by pre-assignment


def _pre_assign_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        owner = _owner_node(ctx.ast, owner_path)
        for j, s in enumerate(stmts):
            match s:
                case If(c, Assign(Var(x), v), Assign(Var(x2), d)) if x == x2:
                    if (
                        is_pure(d)
                        and x not in free_vars(c)
                        and x not in free_vars(v)
                        and _case_tail_ok(
                            owner,
                            stmts[:j] + (Assign(Var(x), d), If(c, Assign(Var(x), v))) + stmts[j + 1 :],
                        )
                    ):
                        sites.append(
                            MatchSite(
                                "remove-branch-by-pre-assignment",
                                owner_path + (offset + j,),
                                {"schema": "remove"},
                            )
                        )
                case _:
                    pass
            if j + 1 < len(stmts):
                match (stmts[j], stmts[j + 1]):
                    case (Assign(Var(x), d), If(c, Assign(Var(x2), v), None)) if x == x2:
                        if (
                            is_pure(d)
                            and x not in free_vars(c)
                            and x not in free_vars(v)
                            and _case_tail_ok(
                                owner,
                                stmts[:j]
                                + (If(c, Assign(Var(x), v), Assign(Var(x), d)),)
                                + stmts[j + 2 :],
                            )
                        ):
                            sites.append(
                                MatchSite(
                                    "remove-branch-by-pre-assignment",
                                    owner_path + (offset + j,),
                                    {"schema": "introduce"},
                                )
                            )
                    case _:
                        pass
    return sites


def _pre_assign_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    owner_path, idx = site.path[:-1], site.path[-1]
    stmts, offset = stmt_list_at(ast, owner_path)
    j = idx - offset
    schema = site.bindings["schema"]
    if schema == "remove":
        if not (0 <= j < len(stmts)):
            raise StaleSiteError("statement index out of range")
        match stmts[j]:
            case If(c, Assign(Var(x), v) as then, Assign(Var(x2), d)) if x == x2:
                pre = Assign(Var(x), d)
                return replace_stmt_list(
                    ast, owner_path, stmts[:j] + (pre, If(c, then)) + stmts[j + 1 :]
                )
        raise StaleSiteError("conditional no longer matches")
    if not (0 <= j < len(stmts) - 1):
        raise StaleSiteError("statement index out of range")
    match (stmts[j], stmts[j + 1]):
        case (Assign(Var(x), d), If(c, Assign(Var(x2), v) as then, None)) if x == x2:
            merged = If(c, then, Assign(Var(x), d))
            return replace_stmt_list(ast, owner_path, stmts[:j] + (merged,) + stmts[j + 2 :])
    raise StaleSiteError("assignment/conditional pair no longer matches")


# ----------------------------------------------------- array declaration style


def _array_style_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for i, p in enumerate(ctx.ast.params):
        if p.type == INT_ARRAY:
            sites.append(
                MatchSite("replace-array-declaration-style", (), {"param_index": i})
            )
    for owner_path, stmts, offset in stmt_lists(ctx.ast):
        for j, s in enumerate(stmts):
            if not (isinstance(s, VarDecl) and len(s.declarators) == 1):
                continue
            d = s.declarators[0]
            if d.c_style or s.base_type == INT_ARRAY:
                sites.append(
                    MatchSite(
                        "replace-array-declaration-style", owner_path + (offset + j,), {}
                    )
                )
    return sites


def _array_style_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    if "param_index" in site.bindings:
        i = site.bindings["param_index"]
        if not (0 <= i < len(ast.params)) or ast.params[i].type != INT_ARRAY:
            raise StaleSiteError("parameter no longer matches")
        p = ast.params[i]
        params = list(ast.params)
        params[i] = Param(p.name, p.type, not p.c_style)
        return MethodAst(ast.name, tuple(params), ast.return_type, ast.body)
    node = node_at(ast, site.path)
    if not (isinstance(node, VarDecl) and len(node.declarators) == 1):
        raise StaleSiteError("declaration no longer matches")
    d = node.declarators[0]
    if d.c_style:
        new = VarDecl(INT_ARRAY, (Declarator(d.name, False, d.init),), node.final)
    elif node.base_type == INT_ARRAY:
        new = VarDecl(INT, (Declarator(d.name, True, d.init),), node.final)
    else:
        raise StaleSiteError("not an array declaration")
    return replace_at(ast, site.path, new)


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
        "wrap-statement-in-block",
        "Wrap Statement in Block",
        "if ($e1) $s1",
        "if ($e1) { $s1 }",
        (),
        True,
        "unwrap-statement-from-block",
        _wrap_block_matches,
        _wrap_block_apply,
    ),
    _r(
        "unwrap-statement-from-block",
        "Unwrap Statement from Block",
        "if ($e1) { $s1 }",
        "if ($e1) $s1",
        ("single statement", "no dangling else", "not a declaration"),
        True,
        "wrap-statement-in-block",
        _unwrap_block_matches,
        _unwrap_block_apply,
    ),
    _r(
        "split-variable-declaration",
        "Split Variable Declaration",
        "$T $v1, $v2;",
        "$T $v1; $T $v2;",
        (),
        True,
        "merge-variable-declaration",
        _split_decl_matches,
        _split_decl_apply,
    ),
    _r(
        "merge-variable-declaration",
        "Merge Variable Declaration",
        "$T $v1; $T $v2;",
        "$T $v1, $v2;",
        ("same base type and finality",),
        True,
        "split-variable-declaration",
        _merge_decl_matches,
        _merge_decl_apply,
    ),
    _r(
        "split-declaration-and-initialization",
        "Split Variable Declaration and Initialization",
        "$T $v1 = $e1;",
        "$T $v1; $v1 = $e1;",
        ("primitive type", "not final"),
        True,
        "consolidate-declaration-and-initialization",
        _split_init_matches,
        _split_init_apply,
    ),
    _r(
        "consolidate-declaration-and-initialization",
        "Consolidate Variable Declaration and Initialization",
        "$T $v1; $v1 = $e1;",
        "$T $v1 = $e1;",
        ("adjacent pair",),
        True,
        "split-declaration-and-initialization",
        _consolidate_matches,
        _consolidate_apply,
    ),
    _r(
        "introduce-return-variable",
        "Introduce Return Variable",
        "return $e1;",
        "$T $v1 = $e1; return $v1;",
        ("$v1 unbound",),
        True,
        "inline-return-variable",
        _intro_return_var_matches,
        _intro_return_var_apply,
        _intro_return_var_scramble,
    ),
    _r(
        "inline-return-variable",
        "Inline Return Variable",
        "$T $v1 = $e1; return $v1;",
        "return $e1;",
        ("$v1 used exactly once",),
        True,
        "introduce-return-variable",
        _inline_return_var_matches,
        _inline_return_var_apply,
    ),
    _r(
        "split-chained-assignment",
        "Split Chained Assignment",
        "$v1 = $v2 = $e1;",
        "$v2 = $e1; $v1 = $v2;",
        (),
        False,
        None,
        _split_chain_matches,
        _split_chain_apply,
    ),
    _r(
        "replace-assignment-with-compound-assignment",
        "Replace Assignment with Compound Assignment",
        "$v1 = $v1 + $e1;",
        "$v1 += $e1;",
        (),
        True,
        "replace-compound-assignment-with-assignment",
        _to_compound_matches,
        _to_compound_apply,
    ),
    _r(
        "replace-compound-assignment-with-assignment",
        "Replace Compound Assignment with Assignment",
        "$v1 += $e1;",
        "$v1 = $v1 + $e1;",
        (),
        True,
        "replace-assignment-with-compound-assignment",
        _from_compound_matches,
        _from_compound_apply,
    ),
    _r(
        "replace-postfix-with-prefix-increment",
        "Replace Postfix Increment/Decrement with Prefix",
        "$v1++;",
        "++$v1;",
        ("statement position only",),
        True,
        "replace-prefix-with-postfix-increment",
        lambda ctx: _incdec_matches(ctx, "replace-postfix-with-prefix-increment", False),
        _incdec_apply,
    ),
    _r(
        "replace-prefix-with-postfix-increment",
        "Replace Prefix Increment/Decrement with Postfix",
        "++$v1;",
        "$v1++;",
        ("statement position only",),
        True,
        "replace-postfix-with-prefix-increment",
        lambda ctx: _incdec_matches(ctx, "replace-prefix-with-postfix-increment", True),
        _incdec_apply,
    ),
    _r(
        "remove-unused-variable",
        "Remove Unused Variable",
        "$T $v1 = $e1;",
        "",
        ("no reads or writes", "pure initializer"),
        False,
        None,
        _unused_var_matches,
        _unused_var_apply,
    ),
    _r(
        "remove-dead-code",
        "Remove Dead Code",
        "return $e1; $s1",
        "return $e1;",
        ("statement unreachable", "declared names unused elsewhere"),
        False,
        None,
        _dead_code_matches,
        _dead_code_apply,
    ),
    _r(
        "introduce-dead-code",
        "Introduce Dead Code",
        "return $e1;",
        "return $e1; if (false) { }",
        ("insertion after a returning statement",),
        True,
        "remove-dead-code",
        _intro_dead_matches,
        _intro_dead_apply,
        _intro_dead_scramble,
    ),
    _r(
        "remove-branch-by-pre-assignment",
        "Remove Branch by Pre-Assignment",
        "if ($e1) $v1 = $e2; else $v1 = $e3;",
        "$v1 = $e3; if ($e1) $v1 = $e2;",
        ("$e3 pure", "$v1 not free in $e1 or $e2"),
        True,
        "remove-branch-by-pre-assignment",
        _pre_assign_matches,
        _pre_assign_apply,
    ),
    _r(
        "replace-array-declaration-style",
        "Replace Array Declaration Style",
        "int[] $v1",
        "int $v1[]",
        (),
        True,
        "replace-array-declaration-style",
        _array_style_matches,
        _array_style_apply,
    ),
]

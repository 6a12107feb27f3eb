"""Extended-tier expression rules: boolean algebra, comparisons, integer
identities, literal representation, parentheses and casts.

Integer restructurings (coefficients, transposition, comparison shifts) are
valid because MiniJ int/long arithmetic wraps: the identities hold in the
modular ring. IEEE doubles get none of these rules.
"""

from __future__ import annotations

from ..minij import MethodAst
from ..minij.analysis import is_pure
from ..minij.nodes import (
    Binary,
    BoolLit,
    Cast,
    Expr,
    IntLit,
    Length,
    LongLit,
    Paren,
    Unary,
    ArrayLit,
    INT,
    INT_MAX,
    INT_MIN,
    LONG,
    LONG_MIN,
)
from ..minij.paths import replace_at, resolve_path, walk
from ..minij.printer import BINARY_PREC, PREC_UNARY, precedence
from ..minij.typecheck import TypeInfo, expr_type
from .base import (
    EXTENDED,
    MatchContext,
    MatchSite,
    RewriteRule,
    StaleSiteError,
    int_expr,
    movable,
    move_expr,
    node_at,
    non_expr_positions,
    required_prec,
    replace_expr,
)

_DUAL = {"&&": "||", "||": "&&"}
_FLIP = {"<": ">", "<=": ">=", ">": "<", ">=": "<="}


def _sites(ast: MethodAst, pred) -> list[MatchSite]:
    out = []
    for path, node in walk(ast):
        site = pred(path, node)
        if site is not None:
            out.append(site)
    return out


# ---------------------------------------------------------------- De Morgan


def _de_morgan_matches(ctx: MatchContext) -> list[MatchSite]:
    def pred(path, node):
        match node:
            case Unary("!", Paren(Binary(("&&" | "||") as op, l, r))):
                p = BINARY_PREC[op]
                if movable(l, p) and movable(r, p + 1):
                    return MatchSite("apply-de-morgans-law", path, {"form": "expand"})
            case Binary(("&&" | "||") as op, Unary("!", x), Unary("!", y)):
                if movable(x, PREC_UNARY) and movable(y, PREC_UNARY):
                    return MatchSite("apply-de-morgans-law", path, {"form": "collapse"})
        return None

    return _sites(ctx.ast, pred)


def _de_morgan_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    form = site.bindings["form"]
    match node:
        case Unary("!", Paren(Binary(("&&" | "||") as op, l, r))) if form == "expand":
            p = BINARY_PREC[op]
            dual = _DUAL[op]
            built = Binary(
                dual,
                Unary("!", move_expr(l, p, PREC_UNARY)),
                Unary("!", move_expr(r, p + 1, PREC_UNARY)),
            )
            return replace_expr(ast, site.path, built)
        case Binary(("&&" | "||") as op, Unary("!", x), Unary("!", y)) if form == "collapse":
            dual = _DUAL[op]
            p = BINARY_PREC[dual]
            built = Unary(
                "!",
                Paren(
                    Binary(
                        dual,
                        move_expr(x, PREC_UNARY, p),
                        move_expr(y, PREC_UNARY, p + 1),
                    )
                ),
            )
            return replace_expr(ast, site.path, built)
    raise StaleSiteError("De Morgan site no longer matches")


# ------------------------------------------------- negation vs inequality


def _neg_as_ineq_matches(ctx: MatchContext) -> list[MatchSite]:
    def pred(path, node):
        match node:
            case Unary("!", Paren(Binary("==", _, _))):
                return MatchSite("apply-negation-as-inequality", path, {})
        return None

    return _sites(ctx.ast, pred)


def _neg_as_ineq_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case Unary("!", Paren(Binary("==", a, b))):
            return replace_expr(ast, site.path, Binary("!=", a, b))
    raise StaleSiteError("negation site no longer matches")


def _ineq_as_neg_matches(ctx: MatchContext) -> list[MatchSite]:
    def pred(path, node):
        match node:
            case Binary("!=", _, _):
                return MatchSite("factor-out-inequality-as-negation", path, {})
        return None

    return _sites(ctx.ast, pred)


def _ineq_as_neg_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case Binary("!=", a, b):
            return replace_expr(ast, site.path, Unary("!", Paren(Binary("==", a, b))))
    raise StaleSiteError("inequality site no longer matches")


# ------------------------------------------------------- double negation


def _double_neg_matches(ctx: MatchContext) -> list[MatchSite]:
    def pred(path, node):
        match node:
            case Unary("!", Unary("!", _)):
                return MatchSite("remove-double-negation", path, {})
        return None

    return _sites(ctx.ast, pred)


def _double_neg_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case Unary("!", Unary("!", x)):
            req = required_prec(ast, site.path)
            return replace_at(ast, site.path, move_expr(x, PREC_UNARY, req))
    raise StaleSiteError("double negation site no longer matches")


# ------------------------------------------------------- constant folding

_FOLD_OPS = {"+", "-", "*", "/", "%", "<", "<=", ">", ">=", "==", "!=", "&&", "||"}


def _fold(e: Expr):
    """(value, type) of a literal-only int/long/boolean expression, or None."""
    if isinstance(e, IntLit):
        return e.value, "int"
    if isinstance(e, LongLit):
        return e.value, "long"
    if isinstance(e, BoolLit):
        return e.value, "boolean"
    if isinstance(e, Paren):
        return _fold(e.inner)
    if isinstance(e, Unary):
        v = _fold(e.operand)
        if v is None:
            return None
        if e.op == "-" and v[1] in ("int", "long"):
            from ..equivalence import _wrap32, _wrap64

            return (_wrap32 if v[1] == "int" else _wrap64)(-v[0]), v[1]
        if e.op == "!" and v[1] == "boolean":
            return (not v[0]), "boolean"
        return None
    if isinstance(e, Binary) and e.op in _FOLD_OPS:
        from ..equivalence import _jdiv, _jrem, _wrap32, _wrap64

        l, r = _fold(e.left), _fold(e.right)
        if l is None or r is None:
            return None
        (lv, lt), (rv, rt) = l, r
        op = e.op
        if op in ("&&", "||"):
            if lt != "boolean" or rt != "boolean":
                return None
            return (lv and rv) if op == "&&" else (lv or rv), "boolean"
        if lt == "boolean" or rt == "boolean":
            if op in ("==", "!=") and lt == rt == "boolean":
                return (lv == rv) if op == "==" else (lv != rv), "boolean"
            return None
        ty = "long" if "long" in (lt, rt) else "int"
        wrap = _wrap64 if ty == "long" else _wrap32
        if op in ("<", "<=", ">", ">=", "==", "!="):
            import operator

            fn = {
                "<": operator.lt,
                "<=": operator.le,
                ">": operator.gt,
                ">=": operator.ge,
                "==": operator.eq,
                "!=": operator.ne,
            }[op]
            return fn(lv, rv), "boolean"
        if op in ("/", "%"):
            if rv == 0:
                return None  # folding away a division error is not allowed
            return wrap(_jrem(lv, rv) if op == "%" else _jdiv(lv, rv)), ty
        fn = {"+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b}[op]
        return wrap(fn(lv, rv)), ty
    return None


def _folded_literal(value, ty: str) -> Expr | None:
    if ty == "boolean":
        return BoolLit(value)
    if ty == "int":
        if value == INT_MIN:
            return None
        if value < 0:
            return Unary("-", IntLit(str(-value)))
        return IntLit(str(value))
    if value == LONG_MIN:
        return None
    if value < 0:
        return Unary("-", LongLit(str(-value) + "L"))
    return LongLit(str(value) + "L")


def _fold_matches(ctx: MatchContext) -> list[MatchSite]:
    forbidden = non_expr_positions(ctx.ast)
    foldable: dict[tuple, tuple] = {}
    for path, node in walk(ctx.ast):
        if isinstance(node, Expr):
            v = _fold(node)
            if v is not None and _folded_literal(*v) is not None:
                foldable[path] = v
    sites = []
    for path, (value, ty) in foldable.items():
        if path in forbidden or path[:-1] in foldable:
            continue
        node = resolve_path(ctx.ast, path)
        lit = _folded_literal(value, ty)
        if lit == node:
            continue  # already in folded form
        sites.append(MatchSite("apply-constant-folding", path, {}))
    return sites


def _fold_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    v = _fold(node)
    if v is None:
        raise StaleSiteError("subexpression is no longer literal-only")
    lit = _folded_literal(*v)
    if lit is None or lit == node:
        raise StaleSiteError("no folded form available")
    return replace_expr(ast, site.path, lit)


# -------------------------------------------------- factor out coefficient


def _factor_matches(ctx: MatchContext) -> list[MatchSite]:
    def pred(path, node):
        match node:
            case Binary("+", Binary("*", c1, e1), Binary("*", c2, e2)) if c1 == c2:
                types = [ctx.info.type_of(x) for x in (node, c1, e1, e2)]
                if all(t == INT for t in types) or all(t == LONG for t in types):
                    if movable(e1, 8) and movable(e2, 8):
                        return MatchSite("factor-out-coefficient", path, {})
        return None

    return _sites(ctx.ast, pred)


def _factor_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case Binary("+", Binary("*", c1, e1), Binary("*", c2, e2)) if c1 == c2:
            built = Binary(
                "*", c1, Paren(Binary("+", move_expr(e1, 8, 6), move_expr(e2, 8, 7)))
            )
            return replace_expr(ast, site.path, built)
    raise StaleSiteError("coefficient site no longer matches")


# ------------------------------------------------------------- parentheses


def _intro_paren_matches(ctx: MatchContext) -> list[MatchSite]:
    forbidden = non_expr_positions(ctx.ast)
    sites = []
    for path, node in walk(ctx.ast):
        if not isinstance(node, Expr) or isinstance(node, ArrayLit):
            continue
        if path in forbidden:
            continue
        sites.append(MatchSite("introduce-parentheses", path, {}))
    return sites


def _intro_paren_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not isinstance(node, Expr) or isinstance(node, ArrayLit):
        raise StaleSiteError("not a parenthesizable expression")
    return replace_at(ast, site.path, Paren(node))


def _remove_paren_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for path, node in walk(ctx.ast):
        if isinstance(node, Paren) and precedence(node.inner) >= required_prec(
            ctx.ast, path
        ):
            sites.append(MatchSite("remove-parentheses", path, {}))
    return sites


def _remove_paren_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not isinstance(node, Paren):
        raise StaleSiteError("no parentheses at site")
    if precedence(node.inner) < required_prec(ast, site.path):
        raise StaleSiteError("parentheses are required here")
    return replace_at(ast, site.path, node.inner)


# -------------------------------------------------- commutation & reversal


def _swap_matches(ctx: MatchContext) -> list[MatchSite]:
    def pred(path, node):
        if not isinstance(node, Binary):
            return None
        op = node.op
        if op in ("&&", "||"):
            # swapping moves the conditionally-evaluated side: both operands
            # must be error-free for short-circuiting to be unobservable
            if not (is_pure(node.left) and is_pure(node.right)):
                return None
        elif op in ("+", "*"):
            if ctx.info.type_of(node) != INT:
                return None  # wrapping int ring only; + may be concat, * may be wider
            if not (is_pure(node.left) or is_pure(node.right)):
                return None
        elif op in ("==", "!="):
            if ctx.info.type_of(node.left) != INT or ctx.info.type_of(node.right) != INT:
                return None
            if not (is_pure(node.left) or is_pure(node.right)):
                return None
        else:
            return None
        p = BINARY_PREC[op]
        if not (movable(node.left, p) and movable(node.right, p + 1)):
            return None
        if _swapped(node) == node:
            return None  # symmetric operands: swapping changes no token
        return MatchSite("swap-commutative-operands", path, {})

    return _sites(ctx.ast, pred)


def _swapped(node: Binary) -> Binary:
    p = BINARY_PREC[node.op]
    return Binary(node.op, move_expr(node.right, p + 1, p), move_expr(node.left, p, p + 1))


def _swap_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not isinstance(node, Binary):
        raise StaleSiteError("no binary operator at site")
    return replace_expr(ast, site.path, _swapped(node))


def _reverse_cmp_matches(ctx: MatchContext) -> list[MatchSite]:
    def pred(path, node):
        match node:
            case Binary(("<" | "<=" | ">" | ">=") as op, l, r):
                p = BINARY_PREC[op]
                if (is_pure(l) or is_pure(r)) and movable(l, p) and movable(r, p + 1):
                    return MatchSite("reverse-comparison-operator", path, {})
        return None

    return _sites(ctx.ast, pred)


def _reverse_cmp_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case Binary(("<" | "<=" | ">" | ">=") as op, l, r):
            p = BINARY_PREC[op]
            built = Binary(_FLIP[op], move_expr(r, p + 1, p), move_expr(l, p, p + 1))
            return replace_expr(ast, site.path, built)
    raise StaleSiteError("comparison site no longer matches")


# ------------------------------------------- inclusive/exclusive comparison


def _incl_excl_matches(ctx: MatchContext) -> list[MatchSite]:
    def pred(path, node):
        match node:
            case Binary("<=", e, IntLit() as c) if c.value < INT_MAX:
                if ctx.info.type_of(e) in (INT, LONG):
                    return MatchSite(
                        "replace-inclusive-comparison-with-exclusive", path, {}
                    )
            case Binary(">=", e, IntLit() as c):
                if ctx.info.type_of(e) in (INT, LONG):
                    return MatchSite(
                        "replace-inclusive-comparison-with-exclusive", path, {}
                    )
        return None

    return _sites(ctx.ast, pred)


def _incl_excl_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    match node:
        case Binary("<=", e, IntLit() as c) if c.value < INT_MAX:
            return replace_expr(ast, site.path, Binary("<", e, int_expr(c.value + 1)))
        case Binary(">=", e, IntLit() as c):
            return replace_expr(ast, site.path, Binary(">", e, int_expr(c.value - 1)))
    raise StaleSiteError("comparison site no longer matches")


# ------------------------------------------ introduce constant to comparison


def _shift_safe(e: Expr) -> bool:
    """Operands whose value plus a small constant provably cannot wrap:
    small literals and array lengths (lengths are bounded by the step
    budget, far below the int maximum)."""
    if isinstance(e, IntLit):
        return e.value <= INT_MAX - 1024
    return isinstance(e, Length)


def _intro_const_matches(ctx: MatchContext) -> list[MatchSite]:
    def pred(path, node):
        match node:
            case Binary(("<" | "<=" | ">" | ">=") as op, l, r):
                if _shift_safe(l) and _shift_safe(r):
                    return MatchSite("introduce-constant-to-comparison", path, {"c": 1})
        return None

    return _sites(ctx.ast, pred)


def _intro_const_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    c = site.bindings.get("c", 1)
    match node:
        case Binary(("<" | "<=" | ">" | ">=") as op, l, r) if _shift_safe(l) and _shift_safe(r):
            p = BINARY_PREC[op]
            built = Binary(
                op,
                Binary("+", move_expr(l, p, 6), IntLit(str(c))),
                Binary("+", move_expr(r, p + 1, 6), IntLit(str(c))),
            )
            return replace_expr(ast, site.path, built)
    raise StaleSiteError("comparison site no longer matches")


# --------------------------------------------------------- transpose equation


def _transpose_types_ok(ctx: MatchContext, parts: tuple[Expr, ...]) -> bool:
    types = {ctx.info.type_of(p) for p in parts}
    return types == {INT} or types == {LONG}


def _transpose_matches(ctx: MatchContext) -> list[MatchSite]:
    sites = []
    for path, node in walk(ctx.ast):
        match node:
            case Binary("==", Binary("+", e1, e2), e3):
                if (
                    _transpose_types_ok(ctx, (e1, e2, e3))
                    and is_pure(e2)
                    and is_pure(e3)
                    and movable(e1, 6)
                    and movable(e2, 7)
                    and movable(e3, 5)
                ):
                    sites.append(
                        MatchSite("transpose-equation", path, {"schema": "separate"})
                    )
            case _:
                pass
        match node:
            case Binary("==", e1, Binary("-", e3, e2)):
                if (
                    _transpose_types_ok(ctx, (e1, e2, e3))
                    and is_pure(e2)
                    and is_pure(e3)
                    and movable(e1, 4)
                    and movable(e3, 6)
                    and movable(e2, 7)
                ):
                    sites.append(
                        MatchSite("transpose-equation", path, {"schema": "combine"})
                    )
            case _:
                pass
    return sites


def _transpose_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    schema = site.bindings["schema"]
    if schema == "separate":
        match node:
            case Binary("==", Binary("+", e1, e2), e3):
                built = Binary(
                    "==",
                    move_expr(e1, 6, 4),
                    Binary("-", move_expr(e3, 5, 6), move_expr(e2, 7, 7)),
                )
                return replace_expr(ast, site.path, built)
    else:
        match node:
            case Binary("==", e1, Binary("-", e3, e2)):
                built = Binary(
                    "==",
                    Binary("+", move_expr(e1, 4, 6), move_expr(e2, 7, 7)),
                    move_expr(e3, 6, 5),
                )
                return replace_expr(ast, site.path, built)
    raise StaleSiteError("equation site no longer matches")


# --------------------------------------------------- numeric representation


def _representations(value: int, suffix: str) -> list[str]:
    reps = [str(value) + suffix, "0x" + format(value, "X") + suffix]
    if value >= 1000:
        reps.append(format(value, "_") + suffix)
    return reps


def _numeric_repr_matches(ctx: MatchContext) -> list[MatchSite]:
    harvested: dict[tuple[str, int], list[str]] = {}
    if ctx.target is not None:
        for _, node in walk(ctx.target):
            if isinstance(node, IntLit):
                harvested.setdefault(("int", node.value), []).append(node.lexeme)
            elif isinstance(node, LongLit):
                harvested.setdefault(("long", node.value), []).append(node.lexeme)
    sites = []
    for path, node in walk(ctx.ast):
        if isinstance(node, IntLit):
            kind, suffix = "int", ""
        elif isinstance(node, LongLit):
            kind, suffix = "long", node.lexeme[-1]
        else:
            continue
        reps = _representations(node.value, suffix)
        reps.extend(harvested.get((kind, node.value), []))
        seen = set()
        for rep in reps:
            if rep != node.lexeme and rep not in seen:
                seen.add(rep)
                sites.append(
                    MatchSite("replace-numeric-representation", path, {"lexeme": rep})
                )
    return sites


def _numeric_repr_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    lex = site.bindings["lexeme"]
    if isinstance(node, IntLit):
        new: Expr = IntLit(lex)
        if IntLit(lex).value != node.value:
            raise StaleSiteError("literal value changed")
    elif isinstance(node, LongLit):
        new = LongLit(lex)
        if LongLit(lex).value != node.value:
            raise StaleSiteError("literal value changed")
    else:
        raise StaleSiteError("no numeric literal at site")
    if new == node:
        raise StaleSiteError("representation unchanged")
    return replace_at(ast, site.path, new)


# ------------------------------------------------------------------- casts


def _intro_cast_matches(ctx: MatchContext) -> list[MatchSite]:
    forbidden = non_expr_positions(ctx.ast)
    sites = []
    for path, node in walk(ctx.ast):
        if not isinstance(node, Expr) or isinstance(node, ArrayLit):
            continue
        if path in forbidden or precedence(node) < PREC_UNARY:
            continue
        if required_prec(ctx.ast, path) > PREC_UNARY:
            continue
        ty = ctx.info.type_of(node)
        if ty.array:
            continue
        sites.append(MatchSite("introduce-cast", path, {}))
    return sites


def _intro_cast_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not isinstance(node, Expr) or precedence(node) < PREC_UNARY:
        raise StaleSiteError("operand cannot take a cast directly")
    ty = expr_type(node, info.var_types)
    if ty.array:
        raise StaleSiteError("cannot cast an array")
    return replace_at(ast, site.path, Cast(ty, node))


def _remove_cast_matches(ctx: MatchContext) -> list[MatchSite]:
    def pred(path, node):
        if isinstance(node, Cast) and ctx.info.type_of(node.operand) == node.type:
            return MatchSite("remove-cast", path, {})
        return None

    return _sites(ctx.ast, pred)


def _remove_cast_apply(ast: MethodAst, site: MatchSite, info: TypeInfo) -> MethodAst:
    node = node_at(ast, site.path)
    if not isinstance(node, Cast):
        raise StaleSiteError("no cast at site")
    if expr_type(node.operand, info.var_types) != node.type:
        raise StaleSiteError("cast is not redundant")
    return replace_at(ast, site.path, node.operand)


def _r(id, name, lhs, rhs, guards, invertible, inverse, matcher, applier):
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
    )


RULES = [
    _r(
        "apply-de-morgans-law",
        "Apply De Morgan's Law",
        "!($e1 && $e2)",
        "!$e1 || !$e2",
        (),
        True,
        "apply-de-morgans-law",
        _de_morgan_matches,
        _de_morgan_apply,
    ),
    _r(
        "apply-negation-as-inequality",
        "Apply Negation as Inequality",
        "!($e1 == $e2)",
        "$e1 != $e2",
        (),
        True,
        "factor-out-inequality-as-negation",
        _neg_as_ineq_matches,
        _neg_as_ineq_apply,
    ),
    _r(
        "factor-out-inequality-as-negation",
        "Factor Out Inequality as Negation",
        "$e1 != $e2",
        "!($e1 == $e2)",
        (),
        True,
        "apply-negation-as-inequality",
        _ineq_as_neg_matches,
        _ineq_as_neg_apply,
    ),
    _r(
        "remove-double-negation",
        "Remove Double Negation",
        "!!$e1",
        "$e1",
        (),
        False,
        None,
        _double_neg_matches,
        _double_neg_apply,
    ),
    _r(
        "apply-constant-folding",
        "Apply Constant Folding",
        "literal-only $e1",
        "its value",
        ("no division by a zero literal", "result representable"),
        False,
        None,
        _fold_matches,
        _fold_apply,
    ),
    _r(
        "factor-out-coefficient",
        "Factor Out Coefficient",
        "$c * $e1 + $c * $e2",
        "$c * ($e1 + $e2)",
        ("all operands share one integer type",),
        False,
        None,
        _factor_matches,
        _factor_apply,
    ),
    _r(
        "introduce-parentheses",
        "Introduce Parentheses",
        "$e1",
        "($e1)",
        (),
        True,
        "remove-parentheses",
        _intro_paren_matches,
        _intro_paren_apply,
    ),
    _r(
        "remove-parentheses",
        "Remove Parentheses",
        "($e1)",
        "$e1",
        ("parentheses redundant",),
        True,
        "introduce-parentheses",
        _remove_paren_matches,
        _remove_paren_apply,
    ),
    _r(
        "swap-commutative-operands",
        "Swap Commutative Operands",
        "$e1 + $e2",
        "$e2 + $e1",
        ("int-typed + * == != or boolean && ||", "operand purity"),
        True,
        "swap-commutative-operands",
        _swap_matches,
        _swap_apply,
    ),
    _r(
        "reverse-comparison-operator",
        "Reverse Comparison Operator",
        "$e1 < $e2",
        "$e2 > $e1",
        ("one operand pure",),
        True,
        "reverse-comparison-operator",
        _reverse_cmp_matches,
        _reverse_cmp_apply,
    ),
    _r(
        "replace-inclusive-comparison-with-exclusive",
        "Replace Inclusive Comparison with Exclusive",
        "$e1 <= $c",
        "$e1 < $c+1",
        ("int literal bound", "no overflow", "integer-typed left side"),
        False,
        None,
        _incl_excl_matches,
        _incl_excl_apply,
    ),
    _r(
        "introduce-constant-to-comparison",
        "Introduce Constant to Comparison Expression",
        "$e1 < $e2",
        "$e1 + $c < $e2 + $c",
        ("both operands provably far from overflow",),
        False,
        None,
        _intro_const_matches,
        _intro_const_apply,
    ),
    _r(
        "transpose-equation",
        "Transpose Equation",
        "$e1 + $e2 == $e3",
        "$e1 == $e3 - $e2",
        ("one integer type throughout", "$e2 and $e3 pure"),
        True,
        "transpose-equation",
        _transpose_matches,
        _transpose_apply,
    ),
    _r(
        "replace-numeric-representation",
        "Replace Numeric Representation",
        "$c",
        "$c in another base",
        (),
        True,
        "replace-numeric-representation",
        _numeric_repr_matches,
        _numeric_repr_apply,
    ),
    _r(
        "introduce-cast",
        "Introduce Cast",
        "$e1",
        "($T) $e1",
        ("cast is an identity",),
        True,
        "remove-cast",
        _intro_cast_matches,
        _intro_cast_apply,
    ),
    _r(
        "remove-cast",
        "Remove Cast",
        "($T) $e1",
        "$e1",
        ("cast is an identity",),
        True,
        "introduce-cast",
        _remove_cast_matches,
        _remove_cast_apply,
    ),
]

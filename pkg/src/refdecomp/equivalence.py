"""Execution-based functional-equivalence oracle for MiniJ methods.

A method is compiled once into a tree of Python closures with Java-faithful
semantics on the subset: 32-bit wrapping int arithmetic, 64-bit long, IEEE
doubles, truncating integer division, short-circuit logic, left-to-right
evaluation, and runtime errors as first-class outcomes. Two methods are
judged equivalent by running both on the same sampled inputs and comparing
outcomes, including error kinds. `consistent` is evidence, not proof: an
untested input may still distinguish the methods.
"""

from __future__ import annotations

import math
import operator
import random
import struct
from dataclasses import dataclass

from .minij import MethodAst, check_method
from .minij.nodes import (
    ArrayLit,
    Assign,
    Binary,
    Block,
    BoolLit,
    Break,
    Cast,
    ChainedAssign,
    CompoundAssign,
    DoubleLit,
    Expr,
    For,
    Foreach,
    If,
    IncDec,
    Index,
    IntLit,
    Length,
    LongLit,
    MiniJType,
    NewArray,
    Paren,
    Return,
    Stmt,
    StringLit,
    Switch,
    Ternary,
    Unary,
    Var,
    VarDecl,
    While,
    BOOLEAN,
    DOUBLE,
    INT,
    INT_ARRAY,
    INT_MAX,
    INT_MIN,
    LONG,
    LONG_MAX,
    LONG_MIN,
    STRING,
)
from .minij.typecheck import TypeInfo, case_label_value, expr_type, promote

DEFAULT_STEP_BUDGET = 100_000

DIV_BY_ZERO = "div_by_zero"
INDEX_OUT_OF_BOUNDS = "index_out_of_bounds"
NEGATIVE_ARRAY_SIZE = "negative_array_size"
SWITCH_FALLTHROUGH = "switch_fallthrough_violation"

_NAN_BITS = struct.pack("<d", float("nan"))


class SignatureMismatchError(Exception):
    pass


@dataclass(frozen=True)
class Outcome:
    kind: str  # "value" | "runtime_error" | "budget_exhausted"
    value: object = None
    error_kind: str | None = None

    @staticmethod
    def of(value: object) -> "Outcome":
        return Outcome("value", value=value)

    @staticmethod
    def error(kind: str) -> "Outcome":
        return Outcome("runtime_error", error_kind=kind)

    @staticmethod
    def exhausted() -> "Outcome":
        return Outcome("budget_exhausted")


def _double_bits(x: float) -> bytes:
    if math.isnan(x):
        return _NAN_BITS
    return struct.pack("<d", x)


def value_equal(a: object, b: object) -> bool:
    if isinstance(a, float) and isinstance(b, float):
        return _double_bits(a) == _double_bits(b)
    if isinstance(a, list) and isinstance(b, list):
        return a == b
    return type(a) is type(b) and a == b


def outcome_equal(a: Outcome, b: Outcome) -> bool:
    if a.kind != b.kind:
        return False
    if a.kind == "value":
        return value_equal(a.value, b.value)
    if a.kind == "runtime_error":
        return a.error_kind == b.error_kind
    return True  # both budget_exhausted


# ------------------------------------------------------------------ signals


class _Return(Exception):
    def __init__(self, value: object):
        self.value = value


class _Break(Exception):
    pass


class _Fail(Exception):
    def __init__(self, kind: str):
        self.kind = kind


class _Budget(Exception):
    pass


class _Frame:
    __slots__ = ("slots", "fuel")

    def __init__(self, nslots: int, fuel: int):
        self.slots = [None] * nslots
        self.fuel = fuel


# --------------------------------------------------------------- arithmetic


def _wrap32(v: int) -> int:
    return ((v + 0x80000000) & 0xFFFFFFFF) - 0x80000000


def _wrap64(v: int) -> int:
    return ((v + 0x8000000000000000) & 0xFFFFFFFFFFFFFFFF) - 0x8000000000000000


def _jdiv(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def _jrem(a: int, b: int) -> int:
    return a - _jdiv(a, b) * b


def _ddiv(a: float, b: float) -> float:
    if b == 0.0:
        if math.isnan(a) or a == 0.0:
            return math.nan
        return math.inf * math.copysign(1.0, a) * math.copysign(1.0, b)
    return a / b


def _drem(a: float, b: float) -> float:
    if math.isnan(a) or math.isnan(b) or math.isinf(a) or b == 0.0:
        return math.nan
    if math.isinf(b):
        return a
    return math.fmod(a, b)


def _d2i(d: float) -> int:
    if math.isnan(d):
        return 0
    if d >= INT_MAX:
        return INT_MAX
    if d <= INT_MIN:
        return INT_MIN
    return int(d)


def _d2l(d: float) -> int:
    if math.isnan(d):
        return 0
    if d >= LONG_MAX:
        return LONG_MAX
    if d <= LONG_MIN:
        return LONG_MIN
    return int(d)


def jdouble_str(d: float) -> str:
    if math.isnan(d):
        return "NaN"
    if math.isinf(d):
        return "Infinity" if d > 0 else "-Infinity"
    r = repr(d)
    if "e" in r:
        mantissa, exp = r.split("e")
        if "." not in mantissa:
            mantissa += ".0"
        return f"{mantissa}E{int(exp)}"
    if "." not in r:
        r += ".0"
    return r


def to_jstring(value: object, ty: MiniJType) -> str:
    if ty == STRING:
        return value  # type: ignore[return-value]
    if ty == BOOLEAN:
        return "true" if value else "false"
    if ty == DOUBLE:
        return jdouble_str(value)  # type: ignore[arg-type]
    return str(value)


def _convert(value_ty: MiniJType, target_ty: MiniJType):
    """Widening conversion applied on assignment, return and promotion."""
    if value_ty == target_ty or target_ty.array or value_ty.array:
        return None
    if target_ty == DOUBLE and value_ty in (INT, LONG):
        return float
    return None  # int -> long keeps the Python int as is


def _cast_fn(src: MiniJType, dst: MiniJType):
    if src == dst:
        return None
    table = {
        (INT, LONG): None,
        (INT, DOUBLE): float,
        (LONG, DOUBLE): float,
        (LONG, INT): _wrap32,
        (DOUBLE, INT): _d2i,
        (DOUBLE, LONG): _d2l,
    }
    return table[(src, dst)]


# ----------------------------------------------------------------- compiler


class CompiledMethod:
    """A method compiled to closures; reusable across many inputs."""

    def __init__(self, method: MethodAst, info: TypeInfo | None = None):
        self.method = method
        self.info: TypeInfo = info if info is not None else check_method(method)
        self._slot: dict[str, int] = {}
        for name in self.info.var_types:
            self._slot[name] = len(self._slot)
        self._param_slots = [self._slot[p.name] for p in method.params]
        self._param_types = [p.type for p in method.params]
        body = [self._stmt(s) for s in method.body]
        self._body = body
        self._nslots = len(self._slot)

    # public ---------------------------------------------------------------

    def run(self, args: tuple, budget: int = DEFAULT_STEP_BUDGET) -> Outcome:
        frame = _Frame(self._nslots, budget)
        slots = frame.slots
        for slot, ty, arg in zip(self._param_slots, self._param_types, args):
            slots[slot] = list(arg) if ty.array else arg
        try:
            for st in self._body:
                st(frame)
            raise AssertionError("method body fell through without returning")
        except _Return as r:
            return Outcome.of(r.value)
        except _Fail as f:
            return Outcome.error(f.kind)
        except _Budget:
            return Outcome.exhausted()

    # expressions ------------------------------------------------------------

    def _type(self, e: Expr) -> MiniJType:
        return self.info.type_of(e)

    def _expr(self, e: Expr):
        t = self._type(e)
        if isinstance(e, IntLit):
            v = e.value
            return lambda f: v
        if isinstance(e, LongLit):
            v = e.value
            return lambda f: v
        if isinstance(e, DoubleLit):
            v = e.value
            return lambda f: v
        if isinstance(e, BoolLit):
            v = e.value
            return lambda f: v
        if isinstance(e, StringLit):
            v = e.value
            return lambda f: v
        if isinstance(e, Var):
            slot = self._slot[e.name]

            def read(f, slot=slot):
                f.fuel -= 1
                return f.slots[slot]

            return read
        if isinstance(e, Paren):
            return self._expr(e.inner)
        if isinstance(e, Unary):
            operand = self._expr(e.operand)
            if e.op == "!":
                return lambda f: not operand(f)
            ot = self._type(e.operand)
            if ot == INT:
                return lambda f: _wrap32(-operand(f))
            if ot == LONG:
                return lambda f: _wrap64(-operand(f))
            return lambda f: -operand(f)
        if isinstance(e, Binary):
            return self._binary(e)
        if isinstance(e, Ternary):
            cond = self._expr(e.cond)
            tt, ft = self._type(e.if_true), self._type(e.if_false)
            a = self._wrapped(self._expr(e.if_true), _convert(tt, t))
            b = self._wrapped(self._expr(e.if_false), _convert(ft, t))
            return lambda f: a(f) if cond(f) else b(f)
        if isinstance(e, Cast):
            operand = self._expr(e.operand)
            fn = _cast_fn(self._type(e.operand), e.type)
            if fn is None:
                return operand
            return lambda f: fn(operand(f))
        if isinstance(e, Index):
            arr = self._expr(e.array)
            idx = self._expr(e.index)

            def index(f):
                f.fuel -= 1
                a = arr(f)
                i = idx(f)
                if 0 <= i < len(a):
                    return a[i]
                raise _Fail(INDEX_OUT_OF_BOUNDS)

            return index
        if isinstance(e, Length):
            arr = self._expr(e.array)
            return lambda f: len(arr(f))
        if isinstance(e, NewArray):
            size = self._expr(e.size)

            def new_array(f):
                n = size(f)
                if n < 0:
                    raise _Fail(NEGATIVE_ARRAY_SIZE)
                f.fuel -= n
                if f.fuel < 0:
                    raise _Budget
                return [0] * n

            return new_array
        if isinstance(e, ArrayLit):
            elements = [self._expr(el) for el in e.elements]
            return lambda f: [el(f) for el in elements]
        raise AssertionError(f"unhandled expression {type(e).__name__}")

    @staticmethod
    def _wrapped(fn, conv):
        if conv is None:
            return fn
        return lambda f: conv(fn(f))

    def _binary(self, e: Binary):
        op = e.op
        lt, rt = self._type(e.left), self._type(e.right)
        left, right = self._expr(e.left), self._expr(e.right)
        if op == "&&":
            return lambda f: left(f) and right(f)
        if op == "||":
            return lambda f: left(f) or right(f)
        if op == "+" and (lt == STRING or rt == STRING):
            return lambda f: to_jstring(left(f), lt) + to_jstring(right(f), rt)
        if op in ("==", "!="):
            if not lt.array and lt.base in ("int", "long", "double"):
                # Java widens both sides to the promoted type; the widening to
                # double is lossy, so it must happen before comparing.
                pt = promote(lt, rt)
                left = self._wrapped(left, _convert(lt, pt))
                right = self._wrapped(right, _convert(rt, pt))
            if op == "==":
                return lambda f: left(f) == right(f)
            return lambda f: left(f) != right(f)
        # numeric operators with promotion
        pt = promote(lt, rt)
        left = self._wrapped(left, _convert(lt, pt))
        right = self._wrapped(right, _convert(rt, pt))
        if op in ("<", "<=", ">", ">="):
            cmp = {"<": operator.lt, "<=": operator.le, ">": operator.gt, ">=": operator.ge}[op]
            return lambda f: cmp(left(f), right(f))
        if pt == DOUBLE:
            if op == "+":
                return lambda f: left(f) + right(f)
            if op == "-":
                return lambda f: left(f) - right(f)
            if op == "*":
                return lambda f: left(f) * right(f)
            if op == "/":
                return lambda f: _ddiv(left(f), right(f))
            return lambda f: _drem(left(f), right(f))
        wrap = _wrap32 if pt == INT else _wrap64
        if op == "+":
            return lambda f: wrap(left(f) + right(f))
        if op == "-":
            return lambda f: wrap(left(f) - right(f))
        if op == "*":
            return lambda f: wrap(left(f) * right(f))

        def int_div(f, rem=(op == "%")):
            a = left(f)
            b = right(f)
            if b == 0:
                raise _Fail(DIV_BY_ZERO)
            return wrap(_jrem(a, b) if rem else _jdiv(a, b))

        return int_div

    # statements -------------------------------------------------------------

    def _store(self, name: str, value_ty: MiniJType):
        slot = self._slot[name]
        conv = _convert(value_ty, self.info.var_types[name])
        return slot, conv

    def _stmt(self, s: Stmt):
        if isinstance(s, VarDecl):
            actions = []
            for d in s.declarators:
                ty = INT_ARRAY if d.c_style else s.base_type
                slot = self._slot[d.name]
                if d.init is None:
                    default = {"int": 0, "long": 0, "double": 0.0, "boolean": False}[ty.base]
                    actions.append((slot, None, None, default))
                else:
                    init_ty = INT_ARRAY if isinstance(d.init, ArrayLit) else self._type(d.init)
                    conv = _convert(init_ty, ty)
                    actions.append((slot, self._expr(d.init), conv, None))

            def decl(f):
                f.fuel -= 1
                if f.fuel < 0:
                    raise _Budget
                for slot, init, conv, default in actions:
                    if init is None:
                        f.slots[slot] = default
                    else:
                        v = init(f)
                        f.slots[slot] = conv(v) if conv else v

            return decl
        if isinstance(s, Assign):
            value = self._expr(s.value)
            if isinstance(s.target, Var):
                vt = INT_ARRAY if isinstance(s.value, ArrayLit) else self._type(s.value)
                slot, conv = self._store(s.target.name, vt)

                def assign(f):
                    f.fuel -= 1
                    if f.fuel < 0:
                        raise _Budget
                    v = value(f)
                    f.slots[slot] = conv(v) if conv else v

                return assign
            arr = self._expr(s.target.array)
            idx = self._expr(s.target.index)

            def elem_assign(f):
                f.fuel -= 1
                if f.fuel < 0:
                    raise _Budget
                a = arr(f)
                i = idx(f)
                if not 0 <= i < len(a):
                    raise _Fail(INDEX_OUT_OF_BOUNDS)
                a[i] = value(f)

            return elem_assign
        if isinstance(s, ChainedAssign):
            value = self._expr(s.value)
            vt = self._type(s.value)
            stores = []
            prev_ty = vt
            for name in reversed(s.targets):
                slot, conv = self._store(name, prev_ty)
                stores.append((slot, conv))
                prev_ty = self.info.var_types[name]

            def chained(f):
                f.fuel -= 1
                if f.fuel < 0:
                    raise _Budget
                v = value(f)
                for slot, conv in stores:
                    v = conv(v) if conv else v
                    f.slots[slot] = v

            return chained
        if isinstance(s, CompoundAssign):
            expanded = Binary(s.op[:-1], s.target, s.value)
            if isinstance(s.target, Var):
                # the expansion re-reads the target; compile it directly
                compute = self._compile_fragment(expanded)
                et = expr_type(expanded, self.info.var_types)
                slot, conv = self._store(s.target.name, et)

                def compound(f):
                    f.fuel -= 1
                    if f.fuel < 0:
                        raise _Budget
                    v = compute(f)
                    f.slots[slot] = conv(v) if conv else v

                return compound
            arr = self._expr(s.target.array)
            idx = self._expr(s.target.index)
            value = self._expr(s.value)
            op = s.op[:-1]
            vt = self._type(s.value)

            def elem_compound(f):
                f.fuel -= 1
                if f.fuel < 0:
                    raise _Budget
                a = arr(f)
                i = idx(f)
                if not 0 <= i < len(a):
                    raise _Fail(INDEX_OUT_OF_BOUNDS)
                r = value(f)
                cur = a[i]
                if op == "+":
                    nv = _wrap32(cur + r)
                elif op == "-":
                    nv = _wrap32(cur - r)
                elif op == "*":
                    nv = _wrap32(cur * r)
                else:
                    if r == 0:
                        raise _Fail(DIV_BY_ZERO)
                    nv = _wrap32(_jrem(cur, r) if op == "%" else _jdiv(cur, r))
                a[i] = nv

            return elem_compound
        if isinstance(s, IncDec):
            ty = self.info.var_types[s.target]
            slot = self._slot[s.target]
            delta = 1 if s.op == "++" else -1
            if ty == INT:
                fn = lambda v: _wrap32(v + delta)
            elif ty == LONG:
                fn = lambda v: _wrap64(v + delta)
            else:
                fn = lambda v: v + delta

            def incdec(f):
                f.fuel -= 1
                if f.fuel < 0:
                    raise _Budget
                f.slots[slot] = fn(f.slots[slot])

            return incdec
        if isinstance(s, If):
            cond = self._expr(s.cond)
            then = self._stmt(s.then)
            els = self._stmt(s.els) if s.els is not None else None

            def if_stmt(f):
                f.fuel -= 1
                if f.fuel < 0:
                    raise _Budget
                if cond(f):
                    then(f)
                elif els is not None:
                    els(f)

            return if_stmt
        if isinstance(s, Switch):
            return self._switch(s)
        if isinstance(s, For):
            init = self._stmt(s.init) if s.init is not None else None
            cond = self._expr(s.cond) if s.cond is not None else None
            update = self._stmt(s.update) if s.update is not None else None
            body = self._stmt(s.body)

            def for_stmt(f):
                if init is not None:
                    init(f)
                while True:
                    f.fuel -= 1
                    if f.fuel < 0:
                        raise _Budget
                    if cond is not None and not cond(f):
                        return
                    body(f)
                    if update is not None:
                        update(f)

            return for_stmt
        if isinstance(s, Foreach):
            arr = self._expr(s.array)
            slot = self._slot[s.var_name]
            body = self._stmt(s.body)

            def foreach(f):
                a = arr(f)
                i = 0
                while i < len(a):
                    f.fuel -= 1
                    if f.fuel < 0:
                        raise _Budget
                    f.slots[slot] = a[i]
                    body(f)
                    i += 1

            return foreach
        if isinstance(s, While):
            cond = self._expr(s.cond)
            body = self._stmt(s.body)

            def while_stmt(f):
                while True:
                    f.fuel -= 1
                    if f.fuel < 0:
                        raise _Budget
                    if not cond(f):
                        return
                    body(f)

            return while_stmt
        if isinstance(s, Return):
            value = self._expr(s.value)
            conv = _convert(self._type(s.value), self.method.return_type)

            def ret(f):
                f.fuel -= 1
                if f.fuel < 0:
                    raise _Budget
                v = value(f)
                raise _Return(conv(v) if conv else v)

            return ret
        if isinstance(s, Break):
            def brk(f):
                raise _Break

            return brk
        if isinstance(s, Block):
            stmts = [self._stmt(st) for st in s.stmts]

            def block(f):
                f.fuel -= 1
                if f.fuel < 0:
                    raise _Budget
                for st in stmts:
                    st(f)

            return block
        raise AssertionError(f"unhandled statement {type(s).__name__}")

    def _switch(self, s: Switch):
        scrutinee = self._expr(s.scrutinee)
        groups = []
        default_index = None
        table: dict[object, int] = {}
        for i, case in enumerate(s.cases):
            groups.append([self._stmt(st) for st in case.body])
            if case.label is None:
                default_index = i
            else:
                table[case_label_value(case.label)] = i

        def switch(f):
            f.fuel -= 1
            if f.fuel < 0:
                raise _Budget
            v = scrutinee(f)
            i = table.get(v, default_index)
            if i is None:
                return
            try:
                for st in groups[i]:
                    st(f)
            except _Break:
                return
            raise _Fail(SWITCH_FALLTHROUGH)

        return switch

    def _compile_fragment(self, e: Expr):
        """Compile an expression that is not part of the checked tree."""
        expr_type(e, self.info.var_types, self.info.node_types)
        return self._expr(e)


def compile_method(method: MethodAst, info: TypeInfo | None = None) -> CompiledMethod:
    return CompiledMethod(method, info)


def evaluate(
    method: MethodAst | CompiledMethod, input_vector: tuple, step_budget: int = DEFAULT_STEP_BUDGET
) -> Outcome:
    """Run the method on one input vector under a step budget."""
    if step_budget <= 0:
        raise ValueError("step_budget must be positive")
    cm = method if isinstance(method, CompiledMethod) else compile_method(method)
    if len(input_vector) != len(cm.method.params):
        raise SignatureMismatchError(
            f"expected {len(cm.method.params)} arguments, got {len(input_vector)}"
        )
    return cm.run(tuple(input_vector), step_budget)


# ----------------------------------------------------------------- sampling

_SMALL_STRINGS = ("x", "y", "ab", "abc", "0", "-", " ", "zz")


def _rand_int(rng: random.Random) -> int:
    r = rng.random()
    if r < 0.6:
        return rng.randint(-16, 16)
    if r < 0.85:
        return rng.randint(-1000, 1000)
    return rng.randint(INT_MIN, INT_MAX)


def _rand_long(rng: random.Random) -> int:
    r = rng.random()
    if r < 0.6:
        return rng.randint(-16, 16)
    if r < 0.85:
        return rng.randint(-100000, 100000)
    return rng.randint(LONG_MIN, LONG_MAX)


def _rand_double(rng: random.Random) -> float:
    r = rng.random()
    if r < 0.5:
        return rng.uniform(-100.0, 100.0)
    if r < 0.8:
        return float(rng.randint(-50, 50))
    if r < 0.9:
        return rng.uniform(-1e12, 1e12)
    return rng.choice((math.nan, math.inf, -math.inf, 0.0, -0.0))


def _rand_string(rng: random.Random) -> str:
    if rng.random() < 0.4:
        return rng.choice(_SMALL_STRINGS)
    return "".join(rng.choice("abxy01") for _ in range(rng.randint(0, 5)))


def _rand_array(rng: random.Random) -> list[int]:
    n = rng.randint(0, 8)
    out = []
    for _ in range(n):
        out.append(rng.choice((INT_MIN, INT_MAX)) if rng.random() < 0.05 else rng.randint(-20, 20))
    return out


_BOUNDARY: dict[str, tuple] = {
    "int": (0, 1, -1, INT_MAX, INT_MIN, 7),
    "long": (0, 1, -1, LONG_MAX, LONG_MIN, 42),
    "double": (0.0, -0.0, 1.0, -1.0, 0.5, math.nan, math.inf, -math.inf),
    "boolean": (False, True),
    "String": ("", "a", "ab"),
}

_RAND = {
    "int": _rand_int,
    "long": _rand_long,
    "double": _rand_double,
    "boolean": lambda rng: rng.random() < 0.5,
    "String": _rand_string,
}


def sample_inputs(
    signature: tuple[MiniJType, ...], n: int, seed: int
) -> list[tuple]:
    """Deterministic input vectors: fixed boundary prefix, then random draws."""
    if n <= 0:
        raise ValueError("n must be positive")
    for ty in signature:
        if ty.array:
            if ty != INT_ARRAY:
                raise ValueError(f"unsupported parameter type {ty}")
        elif ty.base not in _BOUNDARY:
            raise ValueError(f"unsupported parameter type {ty}")
    rng = random.Random(seed)
    vectors = []
    for i in range(n):
        vec = []
        for ty in signature:
            if ty.array:
                prefix: tuple = ([], [0], [1], [-1, 1], [INT_MAX, INT_MIN])
                vec.append(list(prefix[i]) if i < len(prefix) else _rand_array(rng))
            else:
                prefix = _BOUNDARY[ty.base]
                vec.append(prefix[i] if i < len(prefix) else _RAND[ty.base](rng))
        vectors.append(tuple(vec))
    return vectors


# ------------------------------------------------------------- differential


@dataclass(frozen=True)
class Verdict:
    consistent: bool
    input: tuple | None = None
    outcome_a: Outcome | None = None
    outcome_b: Outcome | None = None

    def __bool__(self) -> bool:
        return self.consistent


CONSISTENT = Verdict(True)


def check_equivalent(
    a: MethodAst | CompiledMethod,
    b: MethodAst | CompiledMethod,
    n: int = 200,
    seed: int = 0,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> Verdict:
    """Differential test: equal outcomes on n sampled inputs, or a counterexample.

    Signatures must match positionally (parameter names are free); outcomes
    compare values by type, error kinds exactly, and budget exhaustion on
    both sides as equal.
    """
    ca = a if isinstance(a, CompiledMethod) else compile_method(a)
    cb = b if isinstance(b, CompiledMethod) else compile_method(b)
    sig_a, ret_a = ca.method.signature()
    sig_b, ret_b = cb.method.signature()
    if sig_a != sig_b or ret_a != ret_b:
        raise SignatureMismatchError(
            f"signatures differ: {sig_a} -> {ret_a} vs {sig_b} -> {ret_b}"
        )
    for vec in sample_inputs(sig_a, n, seed):
        oa = ca.run(vec, step_budget)
        ob = cb.run(vec, step_budget)
        if not outcome_equal(oa, ob):
            return Verdict(False, vec, oa, ob)
    return CONSISTENT

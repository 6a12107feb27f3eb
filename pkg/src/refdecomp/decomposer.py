"""Two-stage decomposition pipeline.

Stage A unifies the method and parameter names with the target. Stage B is
an iterative, target-guided search over the rule catalog: every candidate
application must strictly shrink the token delta to the target and pass the
differential-execution gate before it is committed. The default is pure
greedy (largest reduction first, ties by rule id then document order); a
beam width above one explores alternative improving paths in parallel.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field

from .catalog import (
    ALL_RULES,
    DETECTOR,
    EXTENDED,
    GuardViolationError,
    MatchContext,
    MatchSite,
    StaleSiteError,
    apply_match,
)
from .diffmetric import method_tokens, sim, token_delta
from .equivalence import CompiledMethod, Verdict, check_equivalent, compile_method
from .minij import MethodAst, MiniJTypeError, PrintabilityError, print_method
from .minij.typecheck import check_method

ALL_TIERS = frozenset({DETECTOR, EXTENDED})


@dataclass(frozen=True)
class DecompositionConfig:
    tiers: frozenset[str] = ALL_TIERS
    beam_width: int = 1
    max_steps: int = 200
    verify: bool = True
    samples: int = 200
    seed: int = 0
    step_budget: int = 100_000
    precheck: bool = False
    emit_snapshots: bool = True


@dataclass(frozen=True)
class Step:
    rule_id: str
    path: tuple[int, ...]
    delta_before: int
    delta_after: int
    stage: str  # "A" | "B"


@dataclass
class DecompositionTrace:
    pair_id: str
    stage_a_steps: list[Step]
    stage_b_steps: list[Step]
    snapshots: list[str]
    sim_after_stage_a: float
    sim_final: float
    residual_delta: int
    fully_decomposed: bool
    skipped_renames: list[str] = field(default_factory=list)
    not_equivalent: dict | None = None

    @property
    def steps(self) -> list[Step]:
        return self.stage_a_steps + self.stage_b_steps

    def to_report(self, emit_snapshots: bool = False) -> dict:
        report = {
            "pair_id": self.pair_id,
            "sim_after_stage_a": self.sim_after_stage_a,
            "sim_final": self.sim_final,
            "residual_delta_tokens": self.residual_delta,
            "fully_decomposed": self.fully_decomposed,
            "steps": [
                {
                    "rule_id": s.rule_id,
                    "path": list(s.path),
                    "delta_before": s.delta_before,
                    "delta_after": s.delta_after,
                }
                for s in self.steps
            ],
        }
        if emit_snapshots:
            report["snapshots"] = list(self.snapshots)
        if self.skipped_renames:
            report["skipped_renames"] = list(self.skipped_renames)
        if self.not_equivalent is not None:
            report["not_equivalent"] = self.not_equivalent
        return report


def _gate_seed(seed: int, depth: int) -> int:
    return zlib.crc32(f"{seed}:{depth}".encode()) & 0x7FFFFFFF


def _delta_to(m: MethodAst, right_tokens) -> int:
    return token_delta(method_tokens(m), right_tokens).total


def _gate(
    before: MethodAst | CompiledMethod, after: MethodAst, config: DecompositionConfig, depth: int
) -> Verdict:
    return check_equivalent(
        before,
        after,
        n=config.samples,
        seed=_gate_seed(config.seed, depth),
        step_budget=config.step_budget,
    )


def _unify_names_full(
    left: MethodAst, right: MethodAst, config: DecompositionConfig
) -> tuple[MethodAst, list[Step], list[str], list[str]]:
    right_tokens = method_tokens(right)
    mid = left
    steps: list[Step] = []
    skipped: list[str] = []
    snapshots: list[str] = []

    def try_apply(rule_id: str, site: MatchSite, what: str) -> None:
        nonlocal mid
        before = _delta_to(mid, right_tokens)
        try:
            candidate = apply_match(mid, site)
        except (StaleSiteError, GuardViolationError, MiniJTypeError, PrintabilityError):
            skipped.append(f"{what}: not applicable")
            return
        after = _delta_to(candidate, right_tokens)
        if after >= before:
            skipped.append(f"{what}: does not reduce the delta")
            return
        if config.verify and not _gate(mid, candidate, config, len(steps)):
            skipped.append(f"{what}: failed the equivalence gate")
            return
        steps.append(Step(rule_id, site.path, before, after, "A"))
        snapshots.append(print_method(candidate))
        mid = candidate

    if left.name != right.name:
        site = MatchSite("rename-method", (), {"new_name": right.name})
        try_apply("rename-method", site, f"rename method to {right.name}")
    if len(left.params) == len(right.params):
        for i, tp in enumerate(right.params):
            cur = mid.params[i].name
            if cur == tp.name:
                continue
            if tp.name in check_method(mid).var_types:
                skipped.append(f"rename parameter {cur} to {tp.name}: name collision")
                continue
            site = MatchSite("rename-parameter", (), {"param_index": i, "new_name": tp.name})
            try_apply("rename-parameter", site, f"rename parameter {cur} to {tp.name}")
    return mid, steps, skipped, snapshots


def unify_names(
    left: MethodAst, right: MethodAst, config: DecompositionConfig | None = None
) -> tuple[MethodAst, list[Step], list[str]]:
    """Stage A: rename the method and, when arities agree, each parameter to
    the target's names.

    A rename is skipped (and recorded) when the target name is already bound
    or when the rename does not strictly shrink the token delta; arity
    mismatches skip parameter unification entirely.
    """
    mid, steps, skipped, _ = _unify_names_full(left, right, config or DecompositionConfig())
    return mid, steps, skipped


@dataclass(frozen=True)
class _State:
    delta: int
    n_steps: int
    trace_key: tuple
    mid: MethodAst = field(compare=False)
    steps: tuple[Step, ...] = field(compare=False)
    snapshots: tuple[str, ...] = field(compare=False)


def _expand(
    state: _State,
    right: MethodAst,
    right_tokens,
    rules,
    config: DecompositionConfig,
    want: int,
) -> list[_State]:
    """Up to ``want`` gated successors of a state, best reduction first."""
    try:
        ctx_info = check_method(state.mid)
    except MiniJTypeError:
        return []
    target_info = check_method(right)
    ctx = MatchContext(state.mid, ctx_info, right, target_info)
    candidates = []
    for rule in rules:
        try:
            sites = rule.matcher(ctx)
        except Exception:
            continue
        for site_idx, site in enumerate(sites):
            try:
                new_ast = apply_match(state.mid, site, ctx_info)
            except (StaleSiteError, GuardViolationError, MiniJTypeError, PrintabilityError):
                continue
            d = _delta_to(new_ast, right_tokens)
            if d < state.delta:
                candidates.append((d, rule.id, site_idx, site, new_ast))
    candidates.sort(key=lambda c: (c[0], c[1], c[2]))
    out: list[_State] = []
    compiled_before: CompiledMethod | None = None
    for d, rule_id, site_idx, site, new_ast in candidates:
        if len(out) >= want:
            break
        if config.verify:
            if compiled_before is None:
                compiled_before = compile_method(state.mid)
            if not _gate(compiled_before, new_ast, config, state.n_steps):
                continue
        step = Step(rule_id, site.path, state.delta, d, "B")
        out.append(
            _State(
                delta=d,
                n_steps=state.n_steps + 1,
                trace_key=state.trace_key + ((rule_id, site.path),),
                mid=new_ast,
                steps=state.steps + (step,),
                snapshots=state.snapshots + (print_method(new_ast),),
            )
        )
    return out


def greedy_decompose(
    mid: MethodAst, right: MethodAst, config: DecompositionConfig | None = None
) -> tuple[MethodAst, list[Step], list[str]]:
    """Stage B: iterate strictly-improving, gate-verified rule applications
    until none qualifies. Returns the final method, steps and snapshots of
    each intermediate (excluding the input)."""
    config = config or DecompositionConfig()
    rules = [r for r in ALL_RULES if r.tier in config.tiers]
    right_tokens = method_tokens(right)
    start = _State(
        delta=_delta_to(mid, right_tokens),
        n_steps=0,
        trace_key=(),
        mid=mid,
        steps=(),
        snapshots=(),
    )
    best = start
    frontier = [start]
    while frontier:
        if frontier[0].n_steps >= config.max_steps:
            break
        next_states: list[_State] = []
        seen: set[tuple] = set()
        for state in frontier:
            if state.delta == 0:
                continue
            for succ in _expand(state, right, right_tokens, rules, config, config.beam_width):
                key = tuple(t.lexeme for t in method_tokens(succ.mid))
                if key in seen:
                    continue
                seen.add(key)
                next_states.append(succ)
        if not next_states:
            break
        next_states.sort(key=lambda s: (s.delta, s.n_steps, s.trace_key))
        frontier = next_states[: config.beam_width]
        if frontier[0].delta < best.delta or (
            frontier[0].delta == best.delta and frontier[0].trace_key < best.trace_key
        ):
            best = frontier[0]
        if frontier[0].delta == 0:
            break
    return best.mid, list(best.steps), list(best.snapshots)


def decompose_pair(
    left: MethodAst,
    right: MethodAst,
    config: DecompositionConfig | None = None,
    pair_id: str = "pair",
) -> DecompositionTrace:
    """Run stage A then stage B and assemble the full trace.

    A token-identical pair yields a zero-step trace with score 1. With
    ``precheck`` enabled, a counterexample to the pair's own equivalence is
    recorded on the trace but decomposition still runs.
    """
    config = config or DecompositionConfig()
    right_tokens = method_tokens(right)
    baseline = _delta_to(left, right_tokens)
    snapshots = [print_method(left)]
    not_equivalent = None
    if config.precheck:
        verdict = _gate(left, right, config, depth=-1)
        if not verdict.consistent:
            not_equivalent = {
                "input": repr(list(verdict.input)),
                "left": repr(verdict.outcome_a),
                "right": repr(verdict.outcome_b),
            }
    if baseline == 0:
        return DecompositionTrace(
            pair_id=pair_id,
            stage_a_steps=[],
            stage_b_steps=[],
            snapshots=snapshots,
            sim_after_stage_a=1.0,
            sim_final=1.0,
            residual_delta=0,
            fully_decomposed=True,
            not_equivalent=not_equivalent,
        )
    mid_a, steps_a, skipped, snaps_a = _unify_names_full(left, right, config)
    snapshots.extend(snaps_a)
    sim_a = sim(mid_a, left, right).value
    final, steps_b, snaps_b = greedy_decompose(mid_a, right, config)
    snapshots.extend(snaps_b)
    residual = _delta_to(final, right_tokens)
    sim_final = sim(final, left, right).value
    return DecompositionTrace(
        pair_id=pair_id,
        stage_a_steps=steps_a,
        stage_b_steps=steps_b,
        snapshots=snapshots,
        sim_after_stage_a=sim_a,
        sim_final=sim_final,
        residual_delta=residual,
        fully_decomposed=residual == 0,
        skipped_renames=skipped,
        not_equivalent=not_equivalent,
    )

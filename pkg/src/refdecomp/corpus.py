"""Corpus formats, ground-truth pair generation and batch evaluation.

A corpus is a directory of pair subdirectories, each holding ``left.mj`` and
``right.mj`` (plus ``meta.json`` for generated pairs). Generated pairs take a
seed method as the right-hand side and scramble it with gate-verified,
invertible catalog rules to manufacture the left-hand side, so the ground
truth is recoverable by construction.
"""

from __future__ import annotations

import json
import os
import random
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import ALL_RULES, apply_match, scramble_sites
from .decomposer import DecompositionConfig, decompose_pair
from .equivalence import check_equivalent
from .minij import (
    MethodAst,
    LexError,
    MiniJTypeError,
    ParseError,
    parse_method,
    print_method,
    check_method,
)

DEFAULT_GATE_SAMPLES = 200


class CorpusError(Exception):
    pass


@dataclass(frozen=True)
class PairRecord:
    pair_id: str
    left_path: Path
    right_path: Path
    meta: dict | None = None


@dataclass
class EvalSummary:
    rows: list[dict]
    aggregates: dict[str, dict]
    errors: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"rows": self.rows, "aggregates": self.aggregates, "errors": self.errors}


def _derive(seed: int, tag: str) -> int:
    return zlib.crc32(f"{seed}:{tag}".encode()) & 0x7FFFFFFF


# ----------------------------------------------------------------- scrambler


def scramble(
    method: MethodAst,
    k: int,
    rng: random.Random,
    tiers: frozenset[str] | None = None,
    gate_samples: int = DEFAULT_GATE_SAMPLES,
) -> tuple[MethodAst, list[dict]]:
    """Apply up to ``k`` random invertible rules, each gated by differential
    execution. Returns the scrambled method and the ground-truth op list."""
    pool = [r for r in ALL_RULES if r.invertible and (tiers is None or r.tier in tiers)]
    current = method
    ops: list[dict] = []
    for step in range(k):
        rules = pool[:]
        rng.shuffle(rules)
        applied = False
        for rule in rules:
            info = check_method(current)
            try:
                sites = scramble_sites(rule, current, info, rng)
            except Exception:
                continue
            if not sites:
                continue
            order = list(range(len(sites)))
            rng.shuffle(order)
            for idx in order[:4]:
                site = sites[idx]
                try:
                    candidate = apply_match(current, site, info)
                except Exception:
                    continue
                verdict = check_equivalent(
                    current, candidate, n=gate_samples, seed=rng.randrange(2**31)
                )
                if verdict.consistent:
                    ops.append({"rule_id": rule.id, "path": list(site.path)})
                    current = candidate
                    applied = True
                    break
            if applied:
                break
        if not applied:
            break
    return current, ops


def generate_corpus(
    seeds_dir: str | Path,
    out_dir: str | Path,
    n_pairs: int,
    k_max: int,
    seed: int,
    tiers: frozenset[str] | None = None,
    gate_samples: int = DEFAULT_GATE_SAMPLES,
) -> list[PairRecord]:
    """Write a corpus of scrambled pairs; deterministic per seed.

    Seeds too small to take any scramble op (with k > 0 requested) are
    skipped and logged in the corpus manifest.
    """
    seeds_dir = Path(seeds_dir)
    out_dir = Path(out_dir)
    seed_files = sorted(seeds_dir.glob("*.mj"))
    if not seed_files:
        raise CorpusError(f"no .mj seed methods in {seeds_dir}")
    seed_methods = []
    for f in seed_files:
        seed_methods.append((f.name, parse_method(f.read_text(encoding="utf-8"))))
    out_dir.mkdir(parents=True, exist_ok=True)
    records: list[PairRecord] = []
    skipped: list[dict] = []
    for i in range(n_pairs):
        name, right = seed_methods[i % len(seed_methods)]
        pair_rng = random.Random(_derive(seed, f"pair:{i}"))
        k = pair_rng.randint(0, k_max)
        left, ops = scramble(right, k, pair_rng, tiers, gate_samples)
        pair_id = f"pair_{i:04d}"
        if k > 0 and not ops:
            skipped.append({"pair_id": pair_id, "seed_file": name, "requested_k": k})
            continue
        pdir = out_dir / pair_id
        pdir.mkdir(exist_ok=True)
        (pdir / "left.mj").write_text(print_method(left), encoding="utf-8")
        (pdir / "right.mj").write_text(print_method(right), encoding="utf-8")
        meta = {
            "pair_id": pair_id,
            "seed_file": name,
            "seed": seed,
            "requested_k": k,
            "ops": ops,
        }
        (pdir / "meta.json").write_text(
            json.dumps(meta, indent=1, sort_keys=True) + "\n", encoding="utf-8"
        )
        records.append(PairRecord(pair_id, pdir / "left.mj", pdir / "right.mj", meta))
    manifest = {
        "pairs": [r.pair_id for r in records],
        "skipped": skipped,
        "seed": seed,
        "k_max": k_max,
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=1, sort_keys=True) + "\n", encoding="utf-8"
    )
    return records


def load_corpus(corpus_dir: str | Path) -> list[PairRecord]:
    corpus_dir = Path(corpus_dir)
    records = []
    for pdir in sorted(p for p in corpus_dir.iterdir() if p.is_dir()):
        left, right = pdir / "left.mj", pdir / "right.mj"
        if not (left.exists() and right.exists()):
            continue
        meta = None
        meta_path = pdir / "meta.json"
        if meta_path.exists():
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
        records.append(PairRecord(pdir.name, left, right, meta))
    return records


# ---------------------------------------------------------------- evaluation


def _config_with_tiers(base: DecompositionConfig, tier_config: str) -> DecompositionConfig:
    from dataclasses import replace

    from .decomposer import ALL_TIERS
    from .catalog import DETECTOR

    tiers = frozenset({DETECTOR}) if tier_config == "detector" else ALL_TIERS
    return replace(base, tiers=tiers)


def _eval_one(args: tuple) -> tuple[list[dict], list[dict]]:
    pair_id, left_path, right_path, tier_configs, base_config, traces_dir = args
    rows: list[dict] = []
    errors: list[dict] = []
    try:
        left = parse_method(Path(left_path).read_text(encoding="utf-8"))
        right = parse_method(Path(right_path).read_text(encoding="utf-8"))
    except (ParseError, LexError, MiniJTypeError) as exc:
        errors.append({"pair_id": pair_id, "error": str(exc)})
        return rows, errors
    for tier_config in tier_configs:
        config = _config_with_tiers(base_config, tier_config)
        trace = decompose_pair(left, right, config, pair_id=pair_id)
        report = trace.to_report(emit_snapshots=base_config.emit_snapshots)
        report["tier_config"] = tier_config
        if traces_dir is not None:
            path = Path(traces_dir) / f"{pair_id}.{tier_config}.json"
            tmp = path.with_suffix(".tmp")
            tmp.write_text(
                json.dumps(report, indent=1, sort_keys=True) + "\n", encoding="utf-8"
            )
            os.replace(tmp, path)
        rows.append(
            {
                "pair_id": pair_id,
                "tier_config": tier_config,
                "sim_after_stage_a": trace.sim_after_stage_a,
                "sim_final": trace.sim_final,
                "steps": len(trace.steps),
                "fully_decomposed": trace.fully_decomposed,
            }
        )
    return rows, errors


def summarize(rows: list[dict], errors: list[dict] | None = None) -> EvalSummary:
    """Aggregates recomputed exactly from the per-pair rows."""
    aggregates: dict[str, dict] = {}
    by_config: dict[str, list[dict]] = {}
    for row in rows:
        by_config.setdefault(row["tier_config"], []).append(row)
    for tier_config, group in sorted(by_config.items()):
        n = len(group)
        aggregates[tier_config] = {
            "pairs": n,
            "mean_sim_after_stage_a": sum(r["sim_after_stage_a"] for r in group) / n,
            "mean_sim_final": sum(r["sim_final"] for r in group) / n,
            "pairs_with_steps": sum(1 for r in group if r["steps"] > 0),
            "fully_decomposed": sum(1 for r in group if r["fully_decomposed"]),
        }
    return EvalSummary(rows=rows, aggregates=aggregates, errors=errors or [])


def eval_corpus(
    corpus_dir: str | Path,
    out_dir: str | Path,
    tier_configs: tuple[str, ...] = ("all",),
    config: DecompositionConfig | None = None,
    workers: int = 1,
) -> EvalSummary:
    """Decompose every pair under each tier configuration and export
    per-pair traces, a summary JSON and an ascending-sim CSV."""
    config = config or DecompositionConfig(emit_snapshots=False)
    pairs = load_corpus(corpus_dir)
    if not pairs:
        raise CorpusError(f"no pairs found in {corpus_dir}")
    out_dir = Path(out_dir)
    traces_dir = out_dir / "traces"
    traces_dir.mkdir(parents=True, exist_ok=True)
    jobs = [
        (r.pair_id, str(r.left_path), str(r.right_path), tier_configs, config, str(traces_dir))
        for r in pairs
    ]
    rows: list[dict] = []
    errors: list[dict] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for job_rows, job_errors in pool.map(_eval_one, jobs):
                rows.extend(job_rows)
                errors.extend(job_errors)
    else:
        for job in jobs:
            job_rows, job_errors = _eval_one(job)
            rows.extend(job_rows)
            errors.extend(job_errors)
    rows.sort(key=lambda r: (r["tier_config"], r["pair_id"]))
    summary = summarize(rows, errors)
    (out_dir / "summary.json").write_text(
        json.dumps(summary.to_json(), indent=1, sort_keys=True) + "\n", encoding="utf-8"
    )
    csv_rows = sorted(rows, key=lambda r: (r["tier_config"], r["sim_final"], r["pair_id"]))
    lines = ["pair_id,tier_config,sim_final"]
    lines += [f"{r['pair_id']},{r['tier_config']},{r['sim_final']!r}" for r in csv_rows]
    (out_dir / "sim.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return summary


def write_seed_methods(out_dir: str | Path, count: int, seed: int, **gen_kwargs) -> list[Path]:
    """Synthesize seed methods into a directory (one .mj file each)."""
    from .gen import generate_methods

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, m in enumerate(generate_methods(count, seed, **gen_kwargs)):
        p = out_dir / f"seed_{i:03d}.mj"
        p.write_text(print_method(m), encoding="utf-8")
        paths.append(p)
    return paths

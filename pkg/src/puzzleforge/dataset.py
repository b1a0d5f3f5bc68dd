"""Dataset construction: sampling plans, train-set compilation, eval splits,
and fixed-pool ingestion with gold validation.

Leak-freedom is enforced by content-hash instance ids: payloads are
canonicalized before hashing, so a relabeled duplicate collides instead of
slipping through. Compilation skips any id present in an eval manifest and
generates a replacement, keeping the per-task counts intact.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Iterable, Mapping, Sequence

from . import api
from .core.errors import ConfigError, DataLeakError
from .core.jsonl import instance_to_record, record_to_instance
from .core.model import PuzzleInstance, Split, Tier, TIERS, instance_id_for
from .core.registry import REGISTRY, descriptor
from .core.rng import derive_seed
from .tasks import get_task

PRESET_NAMES = ("paper-mix-training", "paper-multistage-1", "paper-multistage-2", "smoke")

EVAL_CELL_TARGET = 50
EVAL_THEORETICAL_MAX = len(REGISTRY) * len(TIERS) * EVAL_CELL_TARGET  # 5400


@dataclass
class SamplingPlan:
    """Requested instance counts per task and tier, plus source metadata."""

    name: str
    task_counts: dict[str, dict[str, int]]
    fixed_pool_upsample: dict[str, int] = field(default_factory=dict)
    source_totals: dict[str, int] = field(default_factory=dict)
    external_sources: dict[str, dict[str, int]] = field(default_factory=dict)
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for task, tiers in self.task_counts.items():
            if task not in REGISTRY:
                raise ConfigError(f"plan {self.name!r}: unknown task {task!r}")
            for tier, count in tiers.items():
                Tier(tier)
                if count < 0:
                    raise ConfigError(f"plan {self.name!r}: negative count for {task}/{tier}")

    @property
    def requested_total(self) -> int:
        return sum(sum(tiers.values()) for tiers in self.task_counts.values())

    def counts_for(self, task_id: str) -> dict[Tier, int]:
        raw = self.task_counts.get(task_id, {})
        return {Tier(t): n for t, n in raw.items()}

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "SamplingPlan":
        return SamplingPlan(
            name=data["name"],
            task_counts={t: dict(v) for t, v in data.get("task_counts", {}).items()},
            fixed_pool_upsample=dict(data.get("fixed_pool_upsample", {})),
            source_totals=dict(data.get("source_totals", {})),
            external_sources={k: dict(v) for k, v in data.get("external_sources", {}).items()},
            metadata=dict(data.get("metadata", {})),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "task_counts": self.task_counts,
            "fixed_pool_upsample": self.fixed_pool_upsample,
            "source_totals": self.source_totals,
            "external_sources": self.external_sources,
            "metadata": self.metadata,
        }


def load_plan(name_or_path: str) -> SamplingPlan:
    """A preset by name, or any plan JSON by path."""
    if name_or_path in PRESET_NAMES:
        ref = resources.files("puzzleforge") / "plans" / f"{name_or_path}.json"
        return SamplingPlan.from_dict(json.loads(ref.read_text(encoding="utf-8")))
    with open(name_or_path, "r", encoding="utf-8") as fh:
        return SamplingPlan.from_dict(json.load(fh))


def plan_source_totals(plan: SamplingPlan) -> dict[str, int]:
    """The plan's declared per-source totals (published numbers, verbatim)."""
    return dict(plan.source_totals)


# ---------------------------------------------------------------------------
# Fixed-pool ingestion
# ---------------------------------------------------------------------------


@dataclass
class IngestReport:
    task_id: str
    accepted: dict[Tier, list[PuzzleInstance]]
    rejected: list[dict[str, Any]]
    flags: list[dict[str, Any]]

    @property
    def accepted_count(self) -> int:
        return sum(len(v) for v in self.accepted.values())


def ingest_pool(task_id: str, records: Iterable[Mapping[str, Any]]) -> IngestReport:
    """Validate raw pool records into instances; quarantine failures.

    Every accepted record's gold must pass the task verifier. Oracle
    disagreements (tasks with machine-checkable gold) are flagged, not
    rewritten.
    """
    task = get_task(task_id)
    desc = descriptor(task_id)
    accepted: dict[Tier, list[PuzzleInstance]] = {t: [] for t in TIERS}
    rejected: list[dict[str, Any]] = []
    flags: list[dict[str, Any]] = []
    seen_ids: set[str] = set()
    for line_no, record in enumerate(records, start=1):
        try:
            payload = record["payload"]
            gold = record["gold"]
            tier = Tier(record.get("tier", "Medium"))
        except (KeyError, ValueError) as exc:
            rejected.append({"line": line_no, "reason": f"schema: {exc!r}"})
            continue
        try:
            prompt = api.render_prompt(task_id, payload)
        except ConfigError as exc:
            rejected.append({"line": line_no, "reason": str(exc)})
            continue
        instance = PuzzleInstance(
            instance_id=record.get("id") or instance_id_for(task_id, payload),
            task_id=task_id,
            category=desc.category,
            tier=tier,
            seed=record.get("seed", 0),
            prompt=prompt,
            payload=payload,
            gold=gold,
            verifier_params=record.get("verifier_params", {}),
        )
        if instance.instance_id in seen_ids:
            rejected.append({"line": line_no, "reason": "duplicate instance id"})
            continue
        verdict = api.verify(instance, api.gold_response(instance))
        if verdict.reward != 1:
            rejected.append(
                {
                    "line": line_no,
                    "reason": f"gold rejected by verifier: {verdict.failure.value}",
                }
            )
            continue
        oracle = getattr(task, "oracle_label", None)
        if oracle is not None:
            label = oracle(payload)
            if label is not None and label.lower() != str(gold.get("label", "")).lower():
                flags.append(
                    {
                        "line": line_no,
                        "id": instance.instance_id,
                        "reason": f"oracle label {label!r} disagrees with gold",
                    }
                )
        seen_ids.add(instance.instance_id)
        accepted[tier].append(instance)
    return IngestReport(task_id, accepted, rejected, flags)


# ---------------------------------------------------------------------------
# Train-set compilation
# ---------------------------------------------------------------------------


def compile_plan(
    plan: SamplingPlan,
    root_seed: int,
    pools: Mapping[str, IngestReport] | None = None,
    eval_ids: set[str] | None = None,
    check_gold: bool = True,
) -> list[PuzzleInstance]:
    """Materialize a plan into a train set.

    Auto tasks get exactly the requested counts (generated instances whose
    ids collide with the eval manifest are regenerated); fixed-pool tasks
    are capped at the pool size per tier.
    """
    pools = pools or {}
    eval_ids = eval_ids or set()
    out: list[PuzzleInstance] = []
    train_ids: set[str] = set()
    for task_id in sorted(plan.task_counts):
        desc = descriptor(task_id)
        counts = plan.counts_for(task_id)
        for tier in TIERS:
            want = counts.get(tier, 0)
            if want == 0:
                continue
            if desc.is_auto:
                taken = 0
                index = 0
                while taken < want:
                    if index > want * 20 + 100:
                        raise ConfigError(
                            f"{task_id}/{tier.value}: could not reach {want} distinct instances"
                        )
                    inst = api.generate_one(task_id, tier, root_seed, index)
                    index += 1
                    if inst.instance_id in eval_ids or inst.instance_id in train_ids:
                        continue
                    if check_gold and api.verify(inst, api.gold_response(inst)).reward != 1:
                        raise ConfigError(f"{task_id}: gold failed verification")
                    out.append(inst.with_split(Split.TRAIN))
                    train_ids.add(inst.instance_id)
                    taken += 1
            else:
                report = pools.get(task_id)
                if report is None:
                    raise ConfigError(f"task {task_id!r} is fixed-pool and no pool was ingested")
                pool = [i for i in report.accepted[tier] if i.instance_id not in eval_ids]
                rng = random.Random(derive_seed(root_seed, "plan", task_id, tier.value))
                take = min(want, len(pool))
                chosen = rng.sample(pool, take)
                upsample = plan.fixed_pool_upsample.get(task_id, 1)
                for inst in chosen:
                    for _ in range(max(1, upsample)):
                        out.append(inst.with_split(Split.TRAIN))
                    train_ids.add(inst.instance_id)
    leak = train_ids & eval_ids
    if leak:
        raise DataLeakError(f"{len(leak)} train ids intersect the eval manifest")
    return out


# ---------------------------------------------------------------------------
# Eval split construction
# ---------------------------------------------------------------------------


@dataclass
class SplitManifest:
    """Which instance ids are reserved for evaluation, cell by cell."""

    cells: dict[str, dict[str, dict[str, Any]]]

    @property
    def ids(self) -> set[str]:
        out: set[str] = set()
        for tiers in self.cells.values():
            for cell in tiers.values():
                out.update(cell["ids"])
        return out

    @property
    def total(self) -> int:
        return sum(cell["count"] for tiers in self.cells.values() for cell in tiers.values())

    @property
    def shortfalls(self) -> list[dict[str, Any]]:
        out = []
        for task, tiers in self.cells.items():
            for tier, cell in tiers.items():
                if cell["count"] < cell["requested"]:
                    out.append(
                        {
                            "task": task,
                            "tier": tier,
                            "requested": cell["requested"],
                            "count": cell["count"],
                            "reason": cell["shortfall_reason"],
                        }
                    )
        return out

    def to_dict(self) -> dict[str, Any]:
        return {"cells": self.cells, "total": self.total, "shortfalls": self.shortfalls}


def build_eval(
    root_seed: int,
    pools: Mapping[str, IngestReport] | None = None,
    per_cell: int = EVAL_CELL_TARGET,
    task_ids: Sequence[str] | None = None,
) -> tuple[SplitManifest, list[PuzzleInstance]]:
    """Sample up to ``per_cell`` instances per (task, tier).

    Cells fall short only when a generator cannot produce enough distinct
    instances or a pool is missing/too small; every shortfall carries a
    machine-readable reason in the manifest.
    """
    pools = pools or {}
    cells: dict[str, dict[str, dict[str, Any]]] = {}
    instances: list[PuzzleInstance] = []
    for task_id in sorted(task_ids if task_ids is not None else REGISTRY):
        desc = descriptor(task_id)
        cells[task_id] = {}
        for tier in TIERS:
            ids: list[str] = []
            reason = None
            if desc.is_auto:
                seen: set[str] = set()
                index = 0
                budget = per_cell * 20 + 200
                eval_seed = derive_seed(root_seed, "eval-split")
                while len(ids) < per_cell and index < budget:
                    inst = api.generate_one(task_id, tier, eval_seed, index)
                    index += 1
                    if inst.instance_id in seen:
                        continue
                    seen.add(inst.instance_id)
                    ids.append(inst.instance_id)
                    instances.append(inst.with_split(Split.EVAL))
                if len(ids) < per_cell:
                    reason = "generator-exhausted: parameter space too small for distinct instances"
            else:
                report = pools.get(task_id)
                if report is None:
                    reason = "pool-missing: no ingested data for this task"
                else:
                    pool = report.accepted[tier]
                    rng = random.Random(derive_seed(root_seed, "eval", task_id, tier.value))
                    take = min(per_cell, len(pool))
                    for inst in rng.sample(pool, take):
                        ids.append(inst.instance_id)
                        instances.append(inst.with_split(Split.EVAL))
                    if take < per_cell:
                        reason = f"pool-exhausted: only {take} records in the {tier.value} cell"
            cells[task_id][tier.value] = {
                "requested": per_cell,
                "count": len(ids),
                "ids": ids,
                "shortfall_reason": reason,
            }
    return SplitManifest(cells), instances


def assert_no_leak(train_ids: Iterable[str], eval_ids: Iterable[str]) -> None:
    overlap = set(train_ids) & set(eval_ids)
    if overlap:
        raise DataLeakError(f"{len(overlap)} ids appear in both train and eval")


def instances_to_records(instances: Iterable[PuzzleInstance]) -> list[dict[str, Any]]:
    return [instance_to_record(i) for i in instances]


def records_to_instances(records: Iterable[Mapping[str, Any]]) -> list[PuzzleInstance]:
    return [record_to_instance(r) for r in records]

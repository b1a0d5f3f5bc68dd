"""In-process bindings for RL trainers: generate, reward, compile_plan.

A trainer calls these directly instead of shelling out to the CLI; every
record that crosses the boundary is plain structured data (the same JSON
objects the CLI writes line by line), so frameworks can stash them in
replay buffers without any wrapper types.

The engine side is pure and reentrant, so all three functions are safe to
call concurrently from multiple workers. Engine errors propagate as the
engine's own exception classes (see ``puzzleforge.core.errors``).
"""

from __future__ import annotations

from typing import Any, Mapping

from puzzleforge import api
from puzzleforge import dataset as _dataset
from puzzleforge.core.jsonl import instance_to_record

__version__ = "0.1.0"

__all__ = ["generate", "reward", "compile_plan", "__version__"]


def generate(
    task: str,
    tier: str,
    count: int,
    seed: int,
    params: Mapping[str, Any] | None = None,
) -> list[dict[str, Any]]:
    """Instance records for one task and tier, identical to CLI output.

    Raises UnknownTaskError for unregistered tasks and ConfigError for
    fixed-pool tasks (which have no generator).
    """
    instances = api.generate(task, tier, count, seed, params=params)
    return [instance_to_record(inst) for inst in instances]


def reward(instance: Mapping[str, Any], response: str, strict: bool = True) -> tuple[int, str]:
    """Score a free-text response against an instance record.

    Returns ``(reward, failure)`` with reward in {0, 1} and failure the
    verdict's failure-class name ("None" when the answer is correct).
    """
    verdict = api.verify(instance, response, strict=strict)
    return verdict.reward, verdict.failure.value


def compile_plan(
    plan: str | Mapping[str, Any],
    seed: int,
    pools: Mapping[str, Any] | None = None,
    eval_ids: set[str] | None = None,
) -> list[dict[str, Any]]:
    """Materialize a sampling plan (preset name, path, or plan dict) into
    train-set records."""
    if isinstance(plan, str):
        loaded = _dataset.load_plan(plan)
    else:
        loaded = _dataset.SamplingPlan.from_dict(plan)
    instances = _dataset.compile_plan(loaded, seed, pools=pools, eval_ids=eval_ids)
    return [instance_to_record(inst) for inst in instances]

"""Engine front-end: seeded generation and free-text reward verification.

Everything here is pure and reentrant. Instances carry their derived
per-slot seed, so generation is order-independent: asking for slot 17 of a
batch always yields the same instance no matter what else was generated.
"""

from __future__ import annotations

import random
from typing import Any, Mapping

from .core.errors import AnswerFormatError, ConfigError, UnknownTaskError
from .core.jsonl import record_to_instance
from .core.model import Failure, PuzzleInstance, Tier, Verdict
from .core.prompts import render
from .core.registry import descriptor
from .core.rng import derive_seed
from .extraction import extract
from .tasks import get_task


def render_prompt(task_id: str, payload: Mapping[str, Any]) -> str:
    """Render a task prompt from a payload (pure, idempotent)."""
    task = get_task(task_id)
    try:
        slots = task.prompt_slots(payload)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{task_id}: payload does not fit the prompt schema: {exc!r}") from exc
    return render(task.descriptor.prompt_template_id, slots)


def generate_one(
    task_id: str,
    tier: Tier | str,
    root_seed: int,
    index: int,
    params: Mapping[str, Any] | None = None,
) -> PuzzleInstance:
    """Instance for one (task, tier, index) slot under a root seed."""
    tier = Tier(tier)
    task = get_task(task_id)
    if not task.descriptor.is_auto:
        raise ConfigError(f"task {task_id!r} is fixed-pool; use ingest")
    seed = derive_seed(root_seed, task_id, tier.value, index)
    rng = random.Random(seed)
    out = task.generate_payload(tier, rng, task.params_for(tier, params))
    return task.build_instance(tier, seed, out)


def generate(
    task_id: str,
    tier: Tier | str,
    count: int,
    root_seed: int,
    start_index: int = 0,
    params: Mapping[str, Any] | None = None,
) -> list[PuzzleInstance]:
    return [
        generate_one(task_id, tier, root_seed, index, params)
        for index in range(start_index, start_index + count)
    ]


def verify(
    instance: PuzzleInstance | Mapping[str, Any],
    response_text: str,
    strict: bool = True,
) -> Verdict:
    """Score a free-text response against an instance: reward in {0, 1}.

    Total over arbitrary input: extraction and parsing failures become
    verdicts, never exceptions.
    """
    if not isinstance(instance, PuzzleInstance):
        instance = record_to_instance(instance)
    try:
        task = get_task(instance.task_id)
    except UnknownTaskError:
        return Verdict.fail(Failure.FORMAT_INVALID, detail=f"unknown task {instance.task_id!r}")

    candidate = extract(response_text, task.extraction, strict=strict)
    if candidate is None:
        if task.sentinels and isinstance(response_text, str) and task.matches_sentinel(response_text):
            candidate = response_text.strip()
        else:
            return Verdict.fail(Failure.EXTRACTION_FAILED)

    try:
        answer = task.parse_answer(candidate)
    except AnswerFormatError as exc:
        return Verdict.fail(Failure.FORMAT_INVALID, extracted=candidate, detail=str(exc))

    verdict = task.check(instance, answer)
    if verdict.extracted is None:
        verdict = Verdict(verdict.reward, verdict.failure, candidate, verdict.detail)
    return verdict


def gold_response(instance: PuzzleInstance) -> str:
    """The instance's gold solution wrapped in the task's answer format."""
    task = get_task(instance.task_id)
    return task.wrap_response(task.gold_answer_text(instance))


def corrupted_response(instance: PuzzleInstance, rng: random.Random | int = 0) -> str:
    """An invalidating mutation of gold, wrapped like a real response."""
    if isinstance(rng, int):
        rng = random.Random(derive_seed(rng, instance.instance_id, "mutation"))
    task = get_task(instance.task_id)
    return task.wrap_response(task.corrupt_answer_text(instance, rng))


def task_descriptor(task_id: str):
    return descriptor(task_id)

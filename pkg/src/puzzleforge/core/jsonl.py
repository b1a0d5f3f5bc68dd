"""JSONL instance records: one self-contained object per line, UTF-8.

Field order is fixed so that equal instances always serialize to equal
bytes: id, task, category, tier, seed, prompt, payload, gold,
verifier_params, split, template_version. ``gold`` and ``verifier_params``
are omitted when absent/empty.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Mapping

from .errors import JsonlParseError
from .model import Category, PuzzleInstance, Split, Tier

_FIELDS = (
    "id",
    "task",
    "category",
    "tier",
    "seed",
    "prompt",
    "payload",
    "gold",
    "verifier_params",
    "split",
    "template_version",
)


def instance_to_record(instance: PuzzleInstance) -> dict[str, Any]:
    record: dict[str, Any] = {
        "id": instance.instance_id,
        "task": instance.task_id,
        "category": instance.category.value,
        "tier": instance.tier.value,
        "seed": instance.seed,
        "prompt": instance.prompt,
        "payload": instance.payload,
    }
    if instance.gold is not None:
        record["gold"] = instance.gold
    if instance.verifier_params:
        record["verifier_params"] = instance.verifier_params
    record["split"] = instance.split.value
    record["template_version"] = instance.template_version
    return record


def record_to_instance(record: Mapping[str, Any]) -> PuzzleInstance:
    return PuzzleInstance(
        instance_id=record["id"],
        task_id=record["task"],
        category=Category(record["category"]),
        tier=Tier(record["tier"]),
        seed=record["seed"],
        prompt=record["prompt"],
        payload=record["payload"],
        gold=record.get("gold"),
        verifier_params=record.get("verifier_params", {}),
        split=Split(record.get("split", "Unassigned")),
        template_version=record.get("template_version", "1"),
    )


def dumps_record(record: Mapping[str, Any]) -> str:
    """Serialize one record with stable field order (known fields first)."""
    ordered = {k: record[k] for k in _FIELDS if k in record}
    for k in record:
        if k not in ordered:
            ordered[k] = record[k]
    return json.dumps(ordered, ensure_ascii=False, separators=(", ", ": "))


def serialize(instances: Iterable[PuzzleInstance]) -> bytes:
    lines = [dumps_record(instance_to_record(inst)) for inst in instances]
    if not lines:
        return b""
    return ("\n".join(lines) + "\n").encode("utf-8")


def deserialize(data: bytes) -> list[PuzzleInstance]:
    instances = []
    for line_no, line in enumerate(data.decode("utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise JsonlParseError(str(exc), line_no) from exc
        try:
            instances.append(record_to_instance(record))
        except (KeyError, ValueError) as exc:
            raise JsonlParseError(f"bad instance record: {exc!r}", line_no) from exc
    return instances


def read_records(data: bytes) -> list[dict[str, Any]]:
    """Parse raw JSONL into dicts without imposing the instance schema."""
    records = []
    for line_no, line in enumerate(data.decode("utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise JsonlParseError(str(exc), line_no) from exc
    return records


def write_jsonl(path: str, records: Iterable[Mapping[str, Any]]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(dumps_record(record))
            fh.write("\n")
            count += 1
    return count

"""Value objects every other module speaks: tasks, tiers, instances, verdicts.

All types are immutable; instances are plain data safe to share between
threads and to round-trip through the JSONL schema in :mod:`.jsonl`.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

TEMPLATE_VERSION = "1"


class Category(str, Enum):
    CRYPTO = "Crypto"
    ARITHMETIC = "Arithmetic"
    LOGIC = "Logic"
    GRID = "Grid"
    GRAPH = "Graph"
    SEARCH = "Search"
    SEQUENTIAL = "Sequential"


class Source(str, Enum):
    AUTO = "Auto"
    FIXED_POOL = "FixedPool"


class Tier(str, Enum):
    EASY = "Easy"
    MEDIUM = "Medium"
    HARD = "Hard"


TIERS = (Tier.EASY, Tier.MEDIUM, Tier.HARD)


class Split(str, Enum):
    TRAIN = "Train"
    EVAL = "Eval"
    UNASSIGNED = "Unassigned"


class Failure(str, Enum):
    NONE = "None"
    EXTRACTION_FAILED = "ExtractionFailed"
    FORMAT_INVALID = "FormatInvalid"
    CONSTRAINT_VIOLATED = "ConstraintViolated"
    WRONG_ANSWER = "WrongAnswer"
    DECLARED_UNSOLVABLE_WRONGLY = "DeclaredUnsolvableWrongly"
    TIMEOUT = "Timeout"


@dataclass(frozen=True)
class Verdict:
    """Result of checking one free-text response. ``reward=1`` iff no failure."""

    reward: int
    failure: Failure
    extracted: str | None = None
    detail: str | None = None

    def __post_init__(self) -> None:
        if (self.reward == 1) != (self.failure is Failure.NONE):
            raise ValueError(f"reward {self.reward} inconsistent with failure {self.failure}")

    @staticmethod
    def ok(extracted: str | None = None) -> "Verdict":
        return Verdict(1, Failure.NONE, extracted)

    @staticmethod
    def fail(failure: Failure, extracted: str | None = None, detail: str | None = None) -> "Verdict":
        return Verdict(0, failure, extracted, detail)


@dataclass(frozen=True)
class TaskDescriptor:
    """Immutable registry entry for one task."""

    task_id: str
    category: Category
    source: Source
    difficulty_vars: Mapping[str, str]
    supports_uniqueness: bool
    prompt_template_id: str

    @property
    def is_auto(self) -> bool:
        return self.source is Source.AUTO


@dataclass(frozen=True)
class Difficulty:
    """A tier plus the concrete difficulty-variable values used for one instance."""

    tier: Tier
    params: Mapping[str, Any] = field(default_factory=dict)


def canonical_payload(task_id: str, payload: Mapping[str, Any]) -> bytes:
    """Canonical encoding used for content-hash ids (sorted keys, compact)."""
    return json.dumps(
        {"task": task_id, "payload": payload},
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=True,
    ).encode("ascii")


def instance_id_for(task_id: str, payload: Mapping[str, Any]) -> str:
    digest = hashlib.sha256(canonical_payload(task_id, payload)).hexdigest()
    return f"{task_id}-{digest[:16]}"


@dataclass(frozen=True)
class PuzzleInstance:
    """One generated or ingested puzzle.

    ``instance_id`` is a pure function of (task_id, payload); the prompt is a
    pure function of (template, payload). ``gold`` holds the canonical
    solution or certification data and is never rendered into the prompt.
    """

    instance_id: str
    task_id: str
    category: Category
    tier: Tier
    seed: int
    prompt: str
    payload: Mapping[str, Any]
    gold: Mapping[str, Any] | None = None
    verifier_params: Mapping[str, Any] = field(default_factory=dict)
    split: Split = Split.UNASSIGNED
    template_version: str = TEMPLATE_VERSION

    def with_split(self, split: Split) -> "PuzzleInstance":
        return PuzzleInstance(
            instance_id=self.instance_id,
            task_id=self.task_id,
            category=self.category,
            tier=self.tier,
            seed=self.seed,
            prompt=self.prompt,
            payload=self.payload,
            gold=self.gold,
            verifier_params=self.verifier_params,
            split=split,
            template_version=self.template_version,
        )

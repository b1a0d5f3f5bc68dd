"""Task plumbing: the interface every generator/verifier pair implements.

A task owns its payload schema, prompt slots, answer parsing, and semantic
check. Generation is pure given the per-instance RNG stream; verification
is pure given the instance. The engine front-end in :mod:`puzzleforge.api`
wires extraction, parsing, and checking into a single reward call.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Mapping, NamedTuple

import random

from ..core.errors import GenerationExhausted
from ..core.model import (
    TEMPLATE_VERSION,
    Category,
    Failure,
    PuzzleInstance,
    Split,
    TaskDescriptor,
    Tier,
    Verdict,
    instance_id_for,
)
from ..core.prompts import render
from ..core.registry import descriptor
from ..extraction import ExtractMode, ExtractionSpec


class Unsolvable:
    """Marker for an answer that declares the puzzle unsolvable."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:  # pragma: no cover
        return "UNSOLVABLE"


UNSOLVABLE = Unsolvable()


class GenOut(NamedTuple):
    payload: dict[str, Any]
    gold: dict[str, Any]
    verifier_params: dict[str, Any]


class PuzzleTask(ABC):
    """One task's generator, prompt binding, parser, and verifier."""

    task_id: str
    extraction: ExtractionSpec = ExtractionSpec(ExtractMode.LAST_FENCED_BLOCK)
    # Per-tier difficulty-variable defaults. These are uncalibrated seeds for
    # the difficulty dial; a calibration pass may override them via `params`.
    tier_params: Mapping[Tier, Mapping[str, Any]] = {}
    # Lowercase fragments that mean "declared unsolvable" for this task.
    sentinels: tuple[str, ...] = ()
    max_generation_tries = 200

    # ---- registry glue ----

    @property
    def descriptor(self) -> TaskDescriptor:
        return descriptor(self.task_id)

    @property
    def category(self) -> Category:
        return self.descriptor.category

    def params_for(self, tier: Tier, override: Mapping[str, Any] | None = None) -> dict[str, Any]:
        params = dict(self.tier_params.get(tier, {}))
        if override:
            unknown = set(override) - set(self.descriptor.difficulty_vars)
            if unknown:
                raise ValueError(f"{self.task_id}: unknown difficulty vars {sorted(unknown)}")
            params.update(override)
        return params

    # ---- generation ----

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        raise NotImplementedError(f"{self.task_id} is fixed-pool; ingest instances instead")

    def build_instance(
        self,
        tier: Tier,
        seed: int,
        out: GenOut,
        split: Split = Split.UNASSIGNED,
    ) -> PuzzleInstance:
        prompt = render(self.descriptor.prompt_template_id, self.prompt_slots(out.payload))
        return PuzzleInstance(
            instance_id=instance_id_for(self.task_id, out.payload),
            task_id=self.task_id,
            category=self.category,
            tier=tier,
            seed=seed,
            prompt=prompt,
            payload=out.payload,
            gold=out.gold,
            verifier_params=out.verifier_params,
            split=split,
            template_version=TEMPLATE_VERSION,
        )

    def exhausted(self, why: str) -> GenerationExhausted:
        return GenerationExhausted(f"{self.task_id}: {why} after {self.max_generation_tries} tries")

    # ---- prompting ----

    @abstractmethod
    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        """Template slot values; raises KeyError/ValueError on bad payloads."""

    # ---- answering ----

    def matches_sentinel(self, candidate: str) -> bool:
        lowered = " ".join(candidate.lower().split())
        return any(s in lowered for s in self.sentinels)

    @abstractmethod
    def parse_answer(self, candidate: str) -> Any:
        """Structured answer or UNSOLVABLE; raises AnswerFormatError otherwise."""

    @abstractmethod
    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        """Semantic verification of a parsed answer against the instance."""

    @abstractmethod
    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        """The gold solution rendered in the task's answer format."""

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        """A task-specific invalidating mutation of the gold answer."""
        raise NotImplementedError

    def wrap_response(self, body: str) -> str:
        if self.extraction.mode is ExtractMode.BOARD_TAGS:
            return f"```\n<begin_board>\n{body}\n<end_board>\n```"
        return f"```\n{body}\n```"

    # ---- shared verdict helpers ----

    @staticmethod
    def ok() -> Verdict:
        return Verdict.ok()

    @staticmethod
    def wrong(detail: str | None = None) -> Verdict:
        return Verdict.fail(Failure.WRONG_ANSWER, detail=detail)

    @staticmethod
    def violated(detail: str | None = None) -> Verdict:
        return Verdict.fail(Failure.CONSTRAINT_VIOLATED, detail=detail)

    @staticmethod
    def malformed(detail: str | None = None) -> Verdict:
        return Verdict.fail(Failure.FORMAT_INVALID, detail=detail)

    @staticmethod
    def wrongly_unsolvable() -> Verdict:
        return Verdict.fail(Failure.DECLARED_UNSOLVABLE_WRONGLY)


def attach_extracted(verdict: Verdict, extracted: str) -> Verdict:
    if verdict.extracted is not None:
        return verdict
    return Verdict(verdict.reward, verdict.failure, extracted, verdict.detail)

"""Deduction tasks: attribute-grid puzzles plus two label-match verifiers.

The grid generator samples a solution table, emits every true relation of
the allowed types, then greedily drops clues while a 2-count CSP solver
still reports a unique solution. The resulting clue set is minimal: remove
any one clue and at least two solutions appear.

The fixed-pool verifiers check closed label sets. Records that carry
machine-readable statements also get a brute-force truth-assignment oracle
at ingestion time.
"""

from __future__ import annotations

import random
from itertools import permutations
from typing import Any, Iterable, Mapping, Sequence

from ..core.model import PuzzleInstance, Tier, Verdict
from ..extraction import ExtractMode, ExtractionSpec, parse_markdown_table
from .base import GenOut, PuzzleTask

ATTRIBUTE_POOLS: dict[str, tuple[str, ...]] = {
    "Food": ("apricot", "lemon", "peach", "olive", "walnut"),
    "Hobby": ("baking", "card-games", "painting", "hiking", "chess"),
    "Job": ("bartender", "writer", "teacher", "pilot", "florist"),
    "Nationality": ("canadian", "egyptian", "finnish", "japanese", "brazilian"),
    "Pet": ("cat", "dog", "parrot", "turtle", "hamster"),
    "Drink": ("tea", "coffee", "juice", "milk", "cocoa"),
    "Color": ("red", "blue", "green", "yellow", "violet"),
    "Sport": ("tennis", "rowing", "cycling", "soccer", "golf"),
}

RELATIONS = ("left_of", "right_of", "same_column", "adjacent")


def _relation_holds(relation: str, pa: int, pb: int) -> bool:
    if relation == "left_of":
        return pa < pb
    if relation == "right_of":
        return pa > pb
    if relation == "same_column":
        return pa == pb
    if relation == "adjacent":
        return abs(pa - pb) == 1
    raise ValueError(f"unknown relation {relation!r}")


def solve_zebra(
    categories: Sequence[str],
    values: Mapping[str, Sequence[str]],
    clues: Sequence[Mapping[str, Any]],
    limit: int = 2,
) -> list[dict[str, tuple[str, ...]]]:
    """Assignments (category -> column-ordered values) satisfying all clues."""
    columns = len(values[categories[0]])
    # Clues indexed by the later category they touch, so each is checked as
    # soon as both of its categories are assigned.
    cat_index = {cat: i for i, cat in enumerate(categories)}
    by_depth: list[list[Mapping[str, Any]]] = [[] for _ in categories]
    for clue in clues:
        depth = max(cat_index[clue["a_cat"]], cat_index[clue["b_cat"]])
        by_depth[depth].append(clue)

    solutions: list[dict[str, tuple[str, ...]]] = []
    assignment: dict[str, dict[str, int]] = {}

    def ok_at(depth: int) -> bool:
        for clue in by_depth[depth]:
            pa = assignment[clue["a_cat"]][clue["a_val"]]
            pb = assignment[clue["b_cat"]][clue["b_val"]]
            if not _relation_holds(clue["relation"], pa, pb):
                return False
        return True

    def backtrack(depth: int) -> bool:
        if depth == len(categories):
            solutions.append(
                {
                    cat: tuple(
                        sorted(values[cat], key=lambda v: assignment[cat][v])
                    )
                    for cat in categories
                }
            )
            return len(solutions) >= limit
        cat = categories[depth]
        for perm in permutations(values[cat]):
            assignment[cat] = {v: i for i, v in enumerate(perm)}
            if ok_at(depth) and backtrack(depth + 1):
                return True
            del assignment[cat]
        return False

    backtrack(0)
    return solutions


class ZebraTask(PuzzleTask):
    task_id = "zebra"
    extraction = ExtractionSpec(ExtractMode.MARKDOWN_TABLE)
    tier_params = {
        Tier.EASY: {"columns": 2, "rows": 3, "rule_types": ("left_of", "right_of")},
        Tier.MEDIUM: {
            "columns": 3,
            "rows": 4,
            "rule_types": ("left_of", "right_of", "same_column"),
        },
        Tier.HARD: {
            "columns": 4,
            "rows": 4,
            "rule_types": ("left_of", "right_of", "same_column", "adjacent"),
        },
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        columns = params["columns"]
        rows = params["rows"]
        rule_types = tuple(params["rule_types"])
        categories = rng.sample(sorted(ATTRIBUTE_POOLS), rows)
        values = {cat: tuple(rng.sample(ATTRIBUTE_POOLS[cat], columns)) for cat in categories}
        solution = {cat: tuple(rng.sample(values[cat], columns)) for cat in categories}
        position = {
            cat: {v: i for i, v in enumerate(solution[cat])} for cat in categories
        }

        clues: list[dict[str, Any]] = []
        for i, cat_a in enumerate(categories):
            for cat_b in categories[i + 1 :]:
                for va in values[cat_a]:
                    for vb in values[cat_b]:
                        for relation in rule_types:
                            if _relation_holds(
                                relation, position[cat_a][va], position[cat_b][vb]
                            ):
                                clues.append(
                                    {
                                        "relation": relation,
                                        "a_cat": cat_a,
                                        "a_val": va,
                                        "b_cat": cat_b,
                                        "b_val": vb,
                                    }
                                )
        rng.shuffle(clues)
        if len(solve_zebra(categories, values, clues, limit=2)) != 1:
            raise self.exhausted("full clue set was not uniquely satisfiable")
        # Greedy minimization: drop each clue that keeps the solution unique.
        idx = 0
        while idx < len(clues):
            trial = clues[:idx] + clues[idx + 1 :]
            if len(solve_zebra(categories, values, trial, limit=2)) == 1:
                clues = trial
            else:
                idx += 1

        payload = {
            "categories": list(categories),
            "values": {cat: list(values[cat]) for cat in categories},
            "clues": clues,
            "columns": columns,
            "rows": rows,
            "min_conditions": len(clues),
        }
        gold = {"table": {cat: list(solution[cat]) for cat in categories}}
        return GenOut(payload, gold, {})

    @staticmethod
    def _clue_text(clue: Mapping[str, Any]) -> str:
        a = f"{clue['a_cat']}:{clue['a_val']}"
        b = f"{clue['b_cat']}:{clue['b_val']}"
        if clue["relation"] == "left_of":
            return f"{a} is on the left of {b}"
        if clue["relation"] == "right_of":
            return f"{a} is on the right of {b}"
        if clue["relation"] == "same_column":
            return f"{a} is in the same column as {b}"
        return f"{a} is next to {b}"

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        categories = payload["categories"]
        values = payload["values"]
        cat_lines = [f"{cat}: {', '.join(values[cat])}" for cat in categories]
        clue_lines = [
            f"{i}. {self._clue_text(clue)}" for i, clue in enumerate(payload["clues"], start=1)
        ]
        skeleton = "\n".join(
            "| " + cat + " | " + " | ".join(["correct answer"] * payload["columns"]) + " |"
            for cat in categories
        )
        return {
            "categories": "\n".join(cat_lines),
            "clues": "\n".join(clue_lines),
            "table_skeleton": skeleton,
        }

    def parse_answer(self, candidate: str) -> Any:
        return parse_markdown_table(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        categories = instance.payload["categories"]
        columns = instance.payload["columns"]
        gold = instance.gold["table"]
        if len(answer) != len(categories):
            return self.malformed(
                f"expected {len(categories)} table rows, got {len(answer)}"
            )
        for row, cat in zip(answer, categories):
            cells = [c for c in row if c]
            if not cells or cells[0].strip().lower() != cat.lower():
                return self.malformed(f"row label {cells[:1]!r} does not match {cat!r}")
            got = [c.strip().lower() for c in cells[1:]]
            if len(got) != columns:
                return self.malformed(f"row {cat!r} needs {columns} value cells")
            if got != [v.lower() for v in gold[cat]]:
                return self.wrong(f"row {cat!r} does not match the solution")
        return self.ok()

    def _render_table(self, instance: PuzzleInstance, table: Mapping[str, Sequence[str]]) -> str:
        return "\n".join(
            "| " + cat + " | " + " | ".join(table[cat]) + " |"
            for cat in instance.payload["categories"]
        )

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return self._render_table(instance, instance.gold["table"])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        table = {cat: list(vals) for cat, vals in instance.gold["table"].items()}
        cat = rng.choice(instance.payload["categories"])
        c1, c2 = rng.sample(range(instance.payload["columns"]), 2)
        table[cat][c1], table[cat][c2] = table[cat][c2], table[cat][c1]
        return self._render_table(instance, table)


# ---------------------------------------------------------------------------
# Knights-and-knaves truth-assignment oracle (used at ingestion).
# ---------------------------------------------------------------------------


def eval_formula(formula: Any, knights: Mapping[str, bool]) -> bool:
    """Evaluate a statement encoded as nested lists against an assignment.

    Forms: ["knight", name], ["knave", name], ["not", f], ["and", f, ...],
    ["or", f, ...], ["iff", f, g], ["same", a, b], ["diff", a, b].
    """
    op = formula[0]
    if op == "knight":
        return knights[formula[1]]
    if op == "knave":
        return not knights[formula[1]]
    if op == "not":
        return not eval_formula(formula[1], knights)
    if op == "and":
        return all(eval_formula(f, knights) for f in formula[1:])
    if op == "or":
        return any(eval_formula(f, knights) for f in formula[1:])
    if op == "iff":
        return eval_formula(formula[1], knights) == eval_formula(formula[2], knights)
    if op == "same":
        return knights[formula[1]] == knights[formula[2]]
    if op == "diff":
        return knights[formula[1]] != knights[formula[2]]
    raise ValueError(f"unknown formula op {op!r}")


def knights_knaves_label(
    people: Sequence[str],
    statements: Iterable[tuple[str, Any]],
    question: Any,
) -> str:
    """Entailment/Contradiction/Unknown by enumerating all 2^n assignments."""
    truth_in_models: list[bool] = []
    for bits in range(1 << len(people)):
        knights = {p: bool(bits >> i & 1) for i, p in enumerate(people)}
        if all(knights[who] == eval_formula(f, knights) for who, f in statements):
            truth_in_models.append(eval_formula(question, knights))
    if truth_in_models and all(truth_in_models):
        return "Entailment"
    if truth_in_models and not any(truth_in_models):
        return "Contradiction"
    return "Unknown"


class _LabelTask(PuzzleTask):
    labels: tuple[str, ...]

    def parse_answer(self, candidate: str) -> Any:
        return candidate.strip().strip("\"'.").strip()

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        lowered = answer.lower()
        if lowered not in {label.lower() for label in self.labels}:
            return self.malformed(f"answer {answer!r} is outside the label set")
        if lowered == instance.gold["label"].lower():
            return self.ok()
        return self.wrong()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return instance.gold["label"]

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        others = [l for l in self.labels if l.lower() != instance.gold["label"].lower()]
        return others[rng.randrange(len(others))]


class KnightsKnavesTask(_LabelTask):
    task_id = "knights_knaves"
    labels = ("Entailment", "Contradiction", "Unknown")

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        return {"scenario": payload["scenario"], "question": payload["question"]}

    def oracle_label(self, payload: Mapping[str, Any]) -> str | None:
        """Recompute the label when the record carries machine-readable logic."""
        logic = payload.get("logic")
        if not logic:
            return None
        statements = [(s[0], s[1]) for s in logic["statements"]]
        return knights_knaves_label(logic["people"], statements, logic["question"])


class FolioTask(_LabelTask):
    task_id = "folio"
    labels = ("True", "False", "Unknown")

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        premises = "\n".join(f"- {p}" for p in payload["premises"])
        return {"premises": premises, "conclusion": payload["conclusion"]}

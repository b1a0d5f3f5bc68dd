"""Registry census, RNG stability, JSONL round-trips, prompt purity."""

import json
import random

import pytest

from puzzleforge import api
from puzzleforge.core import jsonl, rng
from puzzleforge.core.model import (
    Category,
    Failure,
    Tier,
    TIERS,
    Verdict,
    instance_id_for,
)
from puzzleforge.core.registry import (
    EXPECTED_CATEGORY_COUNTS,
    REGISTRY,
    auto_task_ids,
    descriptor,
    register_tasks,
)
from puzzleforge.tasks import get_task, implemented_task_ids


class TestRegistry:
    def test_census(self):
        registry = register_tasks()
        assert len(registry) == 36
        assert sum(1 for d in registry.values() if d.is_auto) == 30
        for category, expected in EXPECTED_CATEGORY_COUNTS.items():
            got = sum(1 for d in registry.values() if d.category is category)
            assert got == expected, category

    def test_lookup_is_total(self):
        for task_id in REGISTRY:
            assert descriptor(task_id).task_id == task_id

    def test_known_entries(self):
        assert descriptor("sudoku9").category is Category.GRID
        assert descriptor("sudoku9").is_auto
        assert descriptor("folio").category is Category.LOGIC
        assert not descriptor("folio").is_auto

    def test_unknown_task(self):
        from puzzleforge.core.errors import UnknownTaskError

        with pytest.raises(UnknownTaskError):
            descriptor("nonesuch")

    def test_every_task_has_an_implementation(self):
        assert set(implemented_task_ids()) == set(REGISTRY)

    def test_tier_params_within_descriptor_schema(self):
        for task_id in auto_task_ids():
            task = get_task(task_id)
            allowed = set(descriptor(task_id).difficulty_vars)
            for tier in TIERS:
                params = task.params_for(tier)
                assert set(params) <= allowed, (task_id, tier, params)


class TestRng:
    def test_same_labels_same_stream(self):
        a = rng.stream(7, "binario", "Easy", 3)
        b = rng.stream(7, "binario", "Easy", 3)
        assert [a.random() for _ in range(20)] == [b.random() for _ in range(20)]

    def test_different_labels_differ(self):
        a = rng.stream(7, "binario", "Easy", 3)
        b = rng.stream(7, "binario", "Easy", 4)
        assert [a.random() for _ in range(5)] != [b.random() for _ in range(5)]

    def test_derive_seed_is_64_bit(self):
        for label in range(100):
            assert 0 <= rng.derive_seed(1, label) <= rng.MAX_SEED


class TestVerdict:
    def test_reward_failure_consistency(self):
        with pytest.raises(ValueError):
            Verdict(1, Failure.WRONG_ANSWER)
        with pytest.raises(ValueError):
            Verdict(0, Failure.NONE)
        assert Verdict.ok().reward == 1
        assert Verdict.fail(Failure.WRONG_ANSWER).reward == 0


class TestInstanceId:
    def test_pure_function_of_task_and_payload(self):
        payload = {"numbers": [1, 2, 3], "target": 24}
        assert instance_id_for("game24", payload) == instance_id_for("game24", payload)
        assert instance_id_for("game24", payload) != instance_id_for("countdown", payload)

    def test_key_order_irrelevant(self):
        a = {"x": 1, "y": [2, 3]}
        b = {"y": [2, 3], "x": 1}
        assert instance_id_for("maze", a) == instance_id_for("maze", b)


class TestJsonl:
    def test_round_trip_identity(self):
        instances = api.generate("game24", Tier.EASY, 3, root_seed=5)
        data = jsonl.serialize(instances)
        again = jsonl.deserialize(data)
        assert jsonl.serialize(again) == data
        assert [i.instance_id for i in again] == [i.instance_id for i in instances]

    def test_empty_list_empty_file(self):
        assert jsonl.serialize([]) == b""
        assert jsonl.deserialize(b"") == []

    def test_two_instances_two_lines(self):
        instances = api.generate("maze", Tier.EASY, 2, root_seed=5)
        lines = jsonl.serialize(instances).decode().splitlines()
        assert len(lines) == 2
        for line in lines:
            record = json.loads(line)
            for key in ("id", "task", "category", "tier", "seed", "prompt", "payload",
                        "split", "template_version"):
                assert key in record

    def test_malformed_line_reports_line_number(self):
        from puzzleforge.core.errors import JsonlParseError

        good = jsonl.serialize(api.generate("game24", Tier.EASY, 1, root_seed=5))
        data = good + b"{oops\n"
        with pytest.raises(JsonlParseError) as err:
            jsonl.deserialize(data)
        assert err.value.line_no == 2


class TestPrompts:
    def test_render_is_pure(self):
        inst = api.generate_one("binario", Tier.EASY, 3, 0)
        again = api.render_prompt("binario", inst.payload)
        assert again == inst.prompt
        assert api.render_prompt("binario", inst.payload) == again

    def test_binario_prompt_shape(self):
        inst = api.generate_one("binario", Tier.EASY, 3, 0)
        assert "Rules:" in inst.prompt
        assert "```" in inst.prompt
        assert inst.prompt.count("unique solution") == 1

    def test_game24_prompt_contains_input_line(self):
        inst = api.generate_one("game24", Tier.EASY, 3, 0)
        numbers = ", ".join(str(n) for n in inst.payload["numbers"])
        assert f"Input: {numbers}" in inst.prompt

    def test_bad_payload_rejected(self):
        from puzzleforge.core.errors import ConfigError

        with pytest.raises(ConfigError):
            api.render_prompt("binario", {"wrong": "shape"})


class TestDeterminism:
    @pytest.mark.parametrize("task_id", ["binario", "kka", "zebra", "maze", "twiddle"])
    def test_equal_seed_equal_instances(self, task_id):
        a = api.generate(task_id, Tier.MEDIUM, 3, root_seed=99)
        b = api.generate(task_id, Tier.MEDIUM, 3, root_seed=99)
        assert jsonl.serialize(a) == jsonl.serialize(b)

    def test_generation_is_order_independent(self):
        batch = api.generate("sudoku4", Tier.EASY, 5, root_seed=3)
        third = api.generate_one("sudoku4", Tier.EASY, 3, index=2)
        assert batch[2].instance_id == third.instance_id
        assert batch[2].prompt == third.prompt


class TestRecordRoundTripVerification:
    """Gold must still verify after instances pass through JSONL (lists vs
    tuples, string keys): the reward loop only ever sees parsed records."""

    def test_every_auto_task(self):
        from puzzleforge.core.registry import auto_task_ids

        for task_id in sorted(auto_task_ids()):
            inst = api.generate_one(task_id, Tier.MEDIUM, 55, 0)
            record = json.loads(jsonl.serialize([inst]).decode())
            gold = api.gold_response(jsonl.record_to_instance(record))
            assert api.verify(record, gold).reward == 1, task_id
            bad = api.corrupted_response(jsonl.record_to_instance(record))
            assert api.verify(record, bad).reward == 0, task_id

    def test_every_fixed_pool_task(self, pools):
        for task_id, report in pools.items():
            inst = next(i for tier in report.accepted.values() for i in tier)
            record = json.loads(jsonl.serialize([inst]).decode())
            gold = api.gold_response(jsonl.record_to_instance(record))
            assert api.verify(record, gold).reward == 1, task_id


class TestDegeneratePayloads:
    def test_smallest_maze_prompt_is_well_formed(self):
        prompt = api.render_prompt("maze", {"grid": ["S"], "rows": 1, "cols": 1})
        assert "1x1 maze map" in prompt
        assert "coordinates (1, 1)" in prompt

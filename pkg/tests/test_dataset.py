"""Plans, compilation, eval splits, ingestion, and leak-freedom."""

import json

import pytest

from puzzleforge import api, dataset
from puzzleforge.core.errors import ConfigError, DataLeakError
from puzzleforge.core.model import Split, Tier
from puzzleforge.core.registry import REGISTRY
from tests.conftest import load_pool_records


class TestPlans:
    def test_presets_load(self):
        for name in dataset.PRESET_NAMES:
            plan = dataset.load_plan(name)
            assert plan.name == name

    def test_mix_training_source_totals(self):
        plan = dataset.load_plan("paper-mix-training")
        totals = dataset.plan_source_totals(plan)
        assert totals == {
            "puzzle_suite": 11557,
            "arc_agi_1": 3160,
            "arc_agi_2": 5934,
            "aime": 1738,
        }

    def test_multistage_source_totals(self):
        stage1 = dataset.plan_source_totals(dataset.load_plan("paper-multistage-1"))
        stage2 = dataset.plan_source_totals(dataset.load_plan("paper-multistage-2"))
        assert stage1 == {"puzzle_suite": 0, "arc_agi_1": 3160, "arc_agi_2": 5934, "aime": 869}
        assert stage2 == {"puzzle_suite": 11557, "arc_agi_1": 395, "arc_agi_2": 989, "aime": 869}

    def test_mix_training_excludes_eight_tasks(self):
        plan = dataset.load_plan("paper-mix-training")
        assert len(plan.task_counts) == 28
        for excluded in plan.metadata["excluded_tasks"]:
            assert excluded not in plan.task_counts
        assert len(plan.metadata["excluded_tasks"]) == 8
        for tiers in plan.task_counts.values():
            assert sum(tiers.values()) == 400

    def test_discrepancy_is_flagged_not_reconciled(self):
        plan = dataset.load_plan("paper-mix-training")
        assert plan.requested_total == 28 * 400
        assert plan.source_totals["puzzle_suite"] == 11557
        assert any("11557" in note for note in plan.metadata["notes"])

    def test_unknown_task_rejected(self):
        with pytest.raises(ConfigError):
            dataset.SamplingPlan("bad", {"nonesuch": {"Easy": 1}})

    def test_negative_count_rejected(self):
        with pytest.raises(ConfigError):
            dataset.SamplingPlan("bad", {"maze": {"Easy": -1}})


class TestIngest:
    def test_quarantines_bad_label(self):
        records = load_pool_records("folio")
        records.append(
            {
                "task": "folio",
                "tier": "Easy",
                "payload": {"premises": ["p"], "conclusion": "c"},
                "gold": {"label": "Maybe"},
            }
        )
        report = dataset.ingest_pool("folio", records)
        assert len(report.rejected) == 1
        assert "verifier" in report.rejected[0]["reason"]

    def test_rejects_duplicate_ids(self):
        records = load_pool_records("folio")
        report = dataset.ingest_pool("folio", records + [records[0]])
        assert any("duplicate" in r["reason"] for r in report.rejected)

    def test_rejects_schema_violation(self):
        report = dataset.ingest_pool("folio", [{"payload": {"premises": []}}])
        assert len(report.rejected) == 1

    def test_accepts_valid_labels(self, pools):
        assert pools["folio"].accepted_count == 6
        assert pools["knights_knaves"].accepted_count == 9

    def test_oracle_disagreement_flagged(self):
        records = load_pool_records("knights_knaves")
        bad = json.loads(json.dumps(records[0]))
        bad["payload"]["scenario"] += " (altered)"
        labels = ["Entailment", "Contradiction", "Unknown"]
        wrong = next(l for l in labels if l != bad["gold"]["label"])
        bad["gold"]["label"] = wrong
        report = dataset.ingest_pool("knights_knaves", [bad])
        assert report.accepted_count == 1  # kept, not overwritten
        assert len(report.flags) == 1


class TestCompile:
    def test_exact_counts_for_auto_tasks(self):
        plan = dataset.SamplingPlan(
            "t", {"maze": {"Easy": 2, "Medium": 2, "Hard": 2}}
        )
        out = dataset.compile_plan(plan, root_seed=5)
        assert len(out) == 6
        assert all(i.split is Split.TRAIN for i in out)
        by_tier = {t: 0 for t in Tier}
        for inst in out:
            by_tier[inst.tier] += 1
        assert by_tier[Tier.EASY] == by_tier[Tier.MEDIUM] == by_tier[Tier.HARD] == 2

    def test_fixed_pool_min_cap(self, pools):
        plan = dataset.SamplingPlan("t", {"full_crosswords": {"Easy": 10}})
        out = dataset.compile_plan(plan, root_seed=5, pools=pools)
        # |F| = 1 in the Easy cell: the request is capped.
        assert len(out) == 1

    def test_missing_pool_is_config_error(self):
        plan = dataset.SamplingPlan("t", {"folio": {"Easy": 1}})
        with pytest.raises(ConfigError):
            dataset.compile_plan(plan, root_seed=5)

    def test_eval_exclusion_regenerates(self):
        plan = dataset.SamplingPlan("t", {"sudoku4": {"Easy": 5}})
        baseline = dataset.compile_plan(plan, root_seed=9)
        eval_ids = {baseline[0].instance_id, baseline[2].instance_id}
        out = dataset.compile_plan(plan, root_seed=9, eval_ids=eval_ids)
        assert len(out) == 5
        assert not ({i.instance_id for i in out} & eval_ids)

    def test_plan_determinism(self):
        plan = dataset.SamplingPlan(
            "t", {"binario": {"Easy": 3}, "kka": {"Medium": 3}}
        )
        a = dataset.compile_plan(plan, root_seed=11)
        b = dataset.compile_plan(plan, root_seed=11)
        assert [i.instance_id for i in a] == [i.instance_id for i in b]

    def test_upsampling_repeats_fixed_records(self, pools):
        plan = dataset.SamplingPlan(
            "t",
            {"big_bench_symbolic": {"Medium": 2}},
            fixed_pool_upsample={"big_bench_symbolic": 3},
        )
        out = dataset.compile_plan(plan, root_seed=5, pools=pools)
        assert len(out) == 6
        assert len({i.instance_id for i in out}) == 2


class TestBuildEval:
    def test_small_cells_and_reasons(self, pools):
        manifest, instances = dataset.build_eval(
            7, pools, per_cell=4, task_ids=["maze", "full_crosswords", "folio"]
        )
        cells = manifest.cells
        for tier in ("Easy", "Medium", "Hard"):
            assert cells["maze"][tier]["count"] == 4
        # Crosswords has 1 Easy + 1 Medium record and nothing Hard.
        assert cells["full_crosswords"]["Easy"]["count"] == 1
        assert cells["full_crosswords"]["Hard"]["count"] == 0
        for shortfall in manifest.shortfalls:
            assert shortfall["reason"]

    def test_missing_pool_reason(self):
        manifest, _ = dataset.build_eval(7, {}, per_cell=2, task_ids=["folio"])
        for tier in ("Easy", "Medium", "Hard"):
            assert "pool-missing" in manifest.cells["folio"][tier]["shortfall_reason"]

    def test_all_auto_subset_exact(self):
        manifest, instances = dataset.build_eval(
            3, {}, per_cell=4, task_ids=["maze", "kka", "twiddle", "game24"]
        )
        assert manifest.total == 4 * 3 * 4
        assert len(instances) == manifest.total
        assert all(i.split is Split.EVAL for i in instances)

    def test_leak_freedom_with_compile(self, pools):
        manifest, _ = dataset.build_eval(3, pools, per_cell=3, task_ids=["sudoku4"])
        plan = dataset.SamplingPlan("t", {"sudoku4": {"Easy": 4, "Medium": 4, "Hard": 4}})
        out = dataset.compile_plan(plan, root_seed=3, pools=pools, eval_ids=manifest.ids)
        dataset.assert_no_leak([i.instance_id for i in out], manifest.ids)

    def test_assert_no_leak_raises(self):
        with pytest.raises(DataLeakError):
            dataset.assert_no_leak(["a", "b"], ["b", "c"])

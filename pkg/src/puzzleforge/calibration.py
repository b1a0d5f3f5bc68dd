"""Attempt-outcome aggregation: pass@k and difficulty-tier assignment.

pass@k for one problem with n attempts and c correct is
1 - C(n-c, k) / C(n, k), computed with big-integer binomials so it is
exact for any n. Task-level numbers average over problems first, then the
tier rule thresholds the averages.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .core.model import Tier

DEFAULT_KS = (1, 10, 100)


def pass_at_k_exact(n: int, c: int, k: int) -> Fraction:
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n, got k={k}, n={n}")
    if not 0 <= c <= n:
        raise ValueError(f"c must satisfy 0 <= c <= n, got c={c}, n={n}")
    return 1 - Fraction(comb(n - c, k), comb(n, k))


def pass_at_k(n: int, c: int, k: int) -> float:
    return float(pass_at_k_exact(n, c, k))


@dataclass(frozen=True)
class CalibrationRecord:
    """Outcome counts for one instance: n attempts, c correct."""

    instance_id: str
    n: int
    c: int

    def __post_init__(self) -> None:
        if self.n < 1 or not 0 <= self.c <= self.n:
            raise ValueError(f"bad calibration record ({self.n=}, {self.c=})")


def mean_pass_at_k(records: Sequence[CalibrationRecord], k: int) -> float:
    """Expectation over problems of pass@k."""
    if not records:
        raise ValueError("no records")
    return float(
        sum(pass_at_k_exact(r.n, r.c, k) for r in records) / len(records)
    )


@dataclass(frozen=True)
class TierRule:
    """Threshold rule over (pass@1, pass@100) averages.

    Easy and Hard cannot overlap because pass@k is nondecreasing in k:
    mean pass@1 >= easy_pass1 implies mean pass@100 > hard_pass100.
    These defaults are ours, not published values.
    """

    easy_pass1: float = 0.5
    hard_pass100: float = 0.3
    ks: tuple[int, ...] = DEFAULT_KS

    def classify(self, means: Mapping[int, float]) -> Tier:
        k_max = max(self.ks)
        if means[1] >= self.easy_pass1:
            return Tier.EASY
        if means[k_max] <= self.hard_pass100:
            return Tier.HARD
        return Tier.MEDIUM


_HARDNESS = {Tier.EASY: 0, Tier.MEDIUM: 1, Tier.HARD: 2}


def assign_tiers(
    records_by_setting: Mapping[str, Sequence[CalibrationRecord]],
    rule: TierRule | None = None,
) -> dict[str, Tier]:
    """Map each parameter setting to a tier, monotone in mean pass@1.

    A setting with lower mean pass@1 (harder for the model) never receives
    an easier tier than a setting with higher mean pass@1.
    """
    rule = rule or TierRule()
    if not records_by_setting:
        raise ValueError("no parameter settings to assign")
    stats: list[tuple[str, float, Tier]] = []
    for setting in sorted(records_by_setting):
        records = list(records_by_setting[setting])
        if not records:
            raise ValueError(f"setting {setting!r} has no records")
        for k in rule.ks:
            for r in records:
                if k > r.n:
                    raise ValueError(
                        f"setting {setting!r}: k={k} exceeds n={r.n} for {r.instance_id}"
                    )
        means = {k: mean_pass_at_k(records, k) for k in rule.ks}
        stats.append((setting, means[1], rule.classify(means)))

    # Easiest-first; clamp so hardness never decreases as pass@1 drops.
    stats.sort(key=lambda item: (-item[1], item[0]))
    out: dict[str, Tier] = {}
    floor = 0
    for setting, _, tier in stats:
        hardness = max(_HARDNESS[tier], floor)
        floor = hardness
        out[setting] = {0: Tier.EASY, 1: Tier.MEDIUM, 2: Tier.HARD}[hardness]
    return out


TIER_MAP_VERSION = "1"


def save_tier_map(
    path: str,
    task_id: str,
    assignments: Mapping[str, Tier],
    settings: Mapping[str, Mapping] | None = None,
    rule: TierRule | None = None,
) -> None:
    """Persist a parameter-setting -> tier map as versioned config.

    ``settings`` maps each setting key to the concrete difficulty-variable
    values it stands for, so generators can consume the file directly via
    :func:`load_tier_map`.
    """
    import json

    rule = rule or TierRule()
    doc = {
        "version": TIER_MAP_VERSION,
        "task": task_id,
        "rule": {"easy_pass1": rule.easy_pass1, "hard_pass100": rule.hard_pass100},
        "tiers": {setting: tier.value for setting, tier in assignments.items()},
        "settings": {k: dict(v) for k, v in (settings or {}).items()},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_tier_map(path: str) -> dict[Tier, list[dict]]:
    """Tier -> list of difficulty-variable dicts, for generator overrides.

    Each entry can be passed straight to ``generate(..., params=entry)``,
    replacing the task's uncalibrated defaults.
    """
    import json

    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("version") != TIER_MAP_VERSION:
        raise ValueError(f"unsupported tier map version {doc.get('version')!r}")
    out: dict[Tier, list[dict]] = {t: [] for t in Tier}
    for setting, tier_name in doc["tiers"].items():
        params = doc.get("settings", {}).get(setting)
        if params is not None:
            out[Tier(tier_name)].append(dict(params))
    return out


def passk_report(
    records: Iterable[Mapping],
    ks: Sequence[int] = DEFAULT_KS,
) -> dict[str, dict[str, float | int]]:
    """Group raw {instance_id, n, c, task?, tier?} records and average.

    Keys are "task/tier" when both present, else "all".
    """
    grouped: dict[str, list[CalibrationRecord]] = {}
    for raw in records:
        rec = CalibrationRecord(raw["instance_id"], raw["n"], raw["c"])
        task = raw.get("task", "all")
        tier = raw.get("tier", "")
        key = f"{task}/{tier}" if tier else task
        grouped.setdefault(key, []).append(rec)
    report: dict[str, dict[str, float | int]] = {}
    for key in sorted(grouped):
        recs = grouped[key]
        row: dict[str, float | int] = {"problems": len(recs)}
        for k in ks:
            bad = [r for r in recs if k > r.n]
            if bad:
                raise ValueError(f"{key}: k={k} exceeds n for {len(bad)} records")
            row[f"pass@{k}"] = mean_pass_at_k(recs, k)
        report[key] = row
    return report

"""Command-line surface: generate datasets, score response files, compute
pass@k reports, build eval splits, compile plans, ingest pools.

Exit codes: 0 success, 1 usage error, 2 data error. All file I/O is JSONL
in the instance schema; reward files are {instance_id, reward, failure}
records written in input order.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Mapping

from . import api, calibration, dataset
from .core.errors import PuzzleForgeError, UnknownTaskError
from .core.jsonl import dumps_record, instance_to_record, read_records
from .core.model import Failure, TIERS, Tier
from .core.registry import descriptor

USAGE_ERROR = 1
DATA_ERROR = 2

DEFAULT_TIMEOUT = 2.0


def _parse_tiers(raw: str) -> list[Tier]:
    if raw.lower() == "all":
        return list(TIERS)
    try:
        return [Tier(part.strip().capitalize()) for part in raw.split(",") if part.strip()]
    except ValueError as exc:
        raise SystemExit(f"bad --tier value {raw!r}: {exc}")


def _write_lines(path: str, records: list[Mapping[str, Any]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(dumps_record(record))
            fh.write("\n")


def _read_jsonl(path: str) -> list[dict[str, Any]]:
    with open(path, "rb") as fh:
        return read_records(fh.read())


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        desc = descriptor(args.task)
    except UnknownTaskError:
        print(f"error: unknown task {args.task!r}", file=sys.stderr)
        return USAGE_ERROR
    if not desc.is_auto:
        print(f"error: task {args.task!r} is fixed-pool; use ingest", file=sys.stderr)
        return USAGE_ERROR
    params = json.loads(args.params) if args.params else None
    records: list[Mapping[str, Any]] = []
    try:
        for tier in _parse_tiers(args.tier):
            for inst in api.generate(args.task, tier, args.count, args.seed, params=params):
                records.append(instance_to_record(inst))
    except PuzzleForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    _write_lines(args.out, records)
    print(f"wrote {len(records)} instances to {args.out}")
    return 0


# ---------------------------------------------------------------------------
# reward
# ---------------------------------------------------------------------------


def _score_one(payload: tuple[dict, str, bool, float]) -> dict[str, Any]:
    record, response, strict, timeout = payload
    start = time.monotonic()
    try:
        verdict = api.verify(record, response, strict=strict)
    except Exception:
        # A malformed instance record must spoil its own reward, never the
        # batch: the RL loop keeps running.
        return {
            "instance_id": record.get("id"),
            "reward": 0,
            "failure": Failure.FORMAT_INVALID.value,
        }
    elapsed = time.monotonic() - start
    if elapsed > timeout:
        return {
            "instance_id": record["id"],
            "reward": 0,
            "failure": Failure.TIMEOUT.value,
        }
    return {
        "instance_id": record["id"],
        "reward": verdict.reward,
        "failure": verdict.failure.value,
    }


def cmd_reward(args: argparse.Namespace) -> int:
    try:
        instances = {r["id"]: r for r in _read_jsonl(args.instances)}
        responses = _read_jsonl(args.responses)
    except (PuzzleForgeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR

    strict = args.strict_extraction or not args.lenient
    jobs: list[tuple[dict, str, bool, float] | None] = []
    out_records: list[dict[str, Any] | None] = []
    unmatched = 0
    for resp in responses:
        rid = resp.get("instance_id")
        record = instances.get(rid)
        if record is None:
            unmatched += 1
            print(f"warning: no instance for response id {rid!r}", file=sys.stderr)
            out_records.append(
                {"instance_id": rid, "reward": 0, "failure": Failure.FORMAT_INVALID.value}
            )
            jobs.append(None)
        else:
            out_records.append(None)
            jobs.append((record, resp.get("response", ""), strict, args.timeout))

    live = [j for j in jobs if j is not None]
    if args.workers > 1 and len(live) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            scored = list(pool.map(_score_one, live, chunksize=32))
    else:
        scored = [_score_one(j) for j in live]
    it = iter(scored)
    results = [rec if rec is not None else next(it) for rec in out_records]
    _write_lines(args.out, results)
    rewarded = [r for r in results if r is not None]
    if rewarded:
        accuracy = sum(r["reward"] for r in rewarded) / len(rewarded)
        print(f"scored {len(rewarded)} responses, accuracy {accuracy:.4f}, unmatched {unmatched}")
    else:
        print("no responses scored; accuracy undefined")
    return 0


# ---------------------------------------------------------------------------
# passk
# ---------------------------------------------------------------------------


def cmd_passk(args: argparse.Namespace) -> int:
    ks = [int(part) for part in args.k.split(",") if part.strip()]
    try:
        records = _read_jsonl(args.records)
        report = calibration.passk_report(records, ks)
    except (PuzzleForgeError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    header = ["group", "problems"] + [f"pass@{k}" for k in ks]
    print("\t".join(header))
    for group, row in report.items():
        cells = [group, str(row["problems"])] + [f"{row[f'pass@{k}']:.4f}" for k in ks]
        print("\t".join(cells))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return 0


# ---------------------------------------------------------------------------
# build-eval / compile-plan / ingest / plan
# ---------------------------------------------------------------------------


def _load_pools(specs: list[str]) -> dict[str, dataset.IngestReport]:
    pools = {}
    for spec in specs or []:
        task_id, _, path = spec.partition("=")
        if not path:
            raise SystemExit(f"bad --pool value {spec!r}; expected task=path")
        pools[task_id] = dataset.ingest_pool(task_id, _read_jsonl(path))
    return pools


def cmd_build_eval(args: argparse.Namespace) -> int:
    try:
        pools = _load_pools(args.pool)
        manifest, instances = dataset.build_eval(args.seed, pools, per_cell=args.per_cell)
    except PuzzleForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    _write_lines(args.out, [instance_to_record(i) for i in instances])
    with open(args.manifest, "w", encoding="utf-8") as fh:
        json.dump(manifest.to_dict(), fh, indent=2)
        fh.write("\n")
    print(
        f"wrote {manifest.total} eval instances to {args.out} "
        f"({len(manifest.shortfalls)} cells short)"
    )
    return 0


def cmd_compile_plan(args: argparse.Namespace) -> int:
    try:
        plan = dataset.load_plan(args.plan)
        pools = _load_pools(args.pool)
        eval_ids: set[str] = set()
        if args.eval_manifest:
            with open(args.eval_manifest, "r", encoding="utf-8") as fh:
                manifest = json.load(fh)
            for tiers in manifest["cells"].values():
                for cell in tiers.values():
                    eval_ids.update(cell["ids"])
        instances = dataset.compile_plan(plan, args.seed, pools, eval_ids)
    except (PuzzleForgeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    _write_lines(args.out, [instance_to_record(i) for i in instances])
    print(f"compiled plan {plan.name!r}: {len(instances)} instances to {args.out}")
    return 0


def cmd_ingest(args: argparse.Namespace) -> int:
    try:
        descriptor(args.task)
        report = dataset.ingest_pool(args.task, _read_jsonl(args.infile))
    except UnknownTaskError:
        print(f"error: unknown task {args.task!r}", file=sys.stderr)
        return USAGE_ERROR
    except (PuzzleForgeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    records = []
    for tier in TIERS:
        records.extend(instance_to_record(i) for i in report.accepted[tier])
    _write_lines(args.out, records)
    if args.quarantine and (report.rejected or report.flags):
        with open(args.quarantine, "w", encoding="utf-8") as fh:
            json.dump({"rejected": report.rejected, "flags": report.flags}, fh, indent=2)
            fh.write("\n")
    print(
        f"ingested {report.accepted_count} records "
        f"({len(report.rejected)} rejected, {len(report.flags)} flagged)"
    )
    return 0 if not report.rejected or args.allow_rejects else DATA_ERROR


def cmd_plan(args: argparse.Namespace) -> int:
    try:
        plan = dataset.load_plan(args.plan)
    except (PuzzleForgeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    print(f"plan: {plan.name}")
    print(f"tasks: {len(plan.task_counts)}, requested instances: {plan.requested_total}")
    for source, total in plan.source_totals.items():
        print(f"source {source}: {total}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="puzzleforge",
        description="Generate puzzle datasets and score model responses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate instances for one auto task")
    p.add_argument("--task", required=True)
    p.add_argument("--tier", default="all", help="Easy, Medium, Hard, a comma list, or 'all'")
    p.add_argument("--count", type=int, default=10, help="instances per tier")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--params", help="JSON object overriding difficulty variables")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reward", help="score a response file against an instance file")
    p.add_argument("--instances", required=True, dest="instances")
    p.add_argument("--responses", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT)
    p.add_argument(
        "--strict-extraction",
        action="store_true",
        help="require delimited answer regions (the default)",
    )
    p.add_argument("--lenient", action="store_true", help="fall back to whole-text extraction")
    p.set_defaults(func=cmd_reward)

    p = sub.add_parser("passk", help="pass@k report from outcome records")
    p.add_argument("--records", required=True)
    p.add_argument("--k", default="1,10,100")
    p.add_argument("--out")
    p.set_defaults(func=cmd_passk)

    p = sub.add_parser("build-eval", help="sample the evaluation split")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--per-cell", type=int, default=dataset.EVAL_CELL_TARGET)
    p.add_argument("--pool", action="append", help="task=path to a pool JSONL (repeatable)")
    p.set_defaults(func=cmd_build_eval)

    p = sub.add_parser("compile-plan", help="materialize a sampling plan into a train set")
    p.add_argument("--plan", required=True, help="preset name or path to a plan JSON")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--pool", action="append")
    p.add_argument("--eval-manifest")
    p.set_defaults(func=cmd_compile_plan)

    p = sub.add_parser("ingest", help="validate a fixed-pool JSONL into instances")
    p.add_argument("--task", required=True)
    p.add_argument("--in", required=True, dest="infile")
    p.add_argument("--out", required=True)
    p.add_argument("--quarantine")
    p.add_argument("--allow-rejects", action="store_true")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("plan", help="show a plan's counts and source totals")
    p.add_argument("--plan", required=True)
    p.set_defaults(func=cmd_plan)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SystemExit as exc:
        print(str(exc), file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())

import pathlib

import pytest

from puzzleforge import dataset
from puzzleforge.core.jsonl import read_records
from puzzleforge.core.registry import fixed_pool_task_ids

POOL_DIR = pathlib.Path(__file__).parent / "data" / "pools"


def load_pool_records(task_id: str):
    path = POOL_DIR / f"{task_id}.jsonl"
    return read_records(path.read_bytes())


@pytest.fixture(scope="session")
def pools():
    """Ingested fixture pools for every fixed-pool task."""
    out = {}
    for task_id in fixed_pool_task_ids():
        report = dataset.ingest_pool(task_id, load_pool_records(task_id))
        assert not report.rejected, f"{task_id}: fixture records rejected: {report.rejected}"
        out[task_id] = report
    return out

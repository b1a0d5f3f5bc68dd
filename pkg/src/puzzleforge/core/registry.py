"""The task registry: 36 descriptors, 30 with generators, immutable after load.

Category census: Crypto 2, Arithmetic 2, Logic 3, Grid 10, Graph 4,
Search 7, Sequential 8. Difficulty-variable schemas list every knob a
generator accepts for the task; concrete per-tier values live with the
task implementations and are explicitly uncalibrated defaults until a
calibration pass overrides them.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Mapping

from .errors import ConfigError, UnknownTaskError
from .model import Category, Source, TaskDescriptor

_C = Category
_S = Source


def _d(task_id, category, source, difficulty_vars, unique=False, template=None):
    return TaskDescriptor(
        task_id=task_id,
        category=category,
        source=source,
        difficulty_vars=MappingProxyType(dict(difficulty_vars)),
        supports_uniqueness=unique,
        prompt_template_id=template or task_id,
    )


_DESCRIPTORS = (
    # Grid (10)
    _d("binario", _C.GRID, _S.AUTO,
       {"grid_size": "even int 4-10", "mask_rate": "fraction 0.2-0.6"}, unique=True),
    _d("campsite", _C.GRID, _S.AUTO,
       {"grid_height": "int 4-8", "grid_width": "int 4-8", "tent_count": "int 3-10"}),
    _d("magic_square", _C.GRID, _S.AUTO,
       {"grid_size": "int 3-5", "mask_rate": "fraction 0.2-0.7"}),
    _d("skyscraper", _C.GRID, _S.AUTO, {"grid_size": "int 4-6"}),
    _d("sum_skyscraper", _C.GRID, _S.AUTO, {"grid_size": "int 4-6"}),
    _d("star_battle", _C.GRID, _S.AUTO,
       {"grid_size": "int 5-8", "stars": "int, 1 per row/column"}),
    _d("sudoku4", _C.GRID, _S.AUTO, {"mask_rate": "fraction 0.2-0.8"}, unique=True),
    _d("sudoku9", _C.GRID, _S.AUTO, {"mask_rate": "fraction 0.2-0.7"}, unique=True),
    _d("full_crosswords", _C.GRID, _S.FIXED_POOL, {"grid_size": "pool-defined"}),
    _d("symbolic_hard", _C.GRID, _S.FIXED_POOL, {"passrate": "pool-defined"}),
    # Crypto (2)
    _d("kka", _C.CRYPTO, _S.AUTO,
       {"plaintext_length": "int 8-64", "methods": "cipher subset",
        "keyword_length": "int 3-9", "shift": "int 1-25", "rails": "int 2-5",
        "affine_range": "coefficient bound", "matrix_size": "int 2-3"}),
    _d("kpa", _C.CRYPTO, _S.AUTO,
       {"plaintext_length": "int 8-64", "methods": "cipher subset",
        "keyword_length": "int 3-9", "hint_length": "int 16-160", "shift": "int 1-25",
        "rails": "int 2-5", "affine_range": "coefficient bound", "matrix_size": "int 2-3"}),
    # Arithmetic (2)
    _d("game24", _C.ARITHMETIC, _S.AUTO, {"count": "int 4-6"}),
    _d("countdown", _C.ARITHMETIC, _S.AUTO,
       {"count": "int, 5", "target_range": "inclusive int pair"}),
    # Logic (3)
    _d("zebra", _C.LOGIC, _S.AUTO,
       {"rule_types": "relation subset", "columns": "int 2-4", "rows": "int 2-5",
        "min_conditions": "int lower bound"}, unique=True),
    _d("knights_knaves", _C.LOGIC, _S.FIXED_POOL,
       {"ambiguity": "pool-defined", "inhabitants": "pool-defined"}),
    _d("folio", _C.LOGIC, _S.FIXED_POOL, {"premises": "pool-defined"}),
    # Graph (4)
    _d("hamiltonian_cycle", _C.GRAPH, _S.AUTO,
       {"nodes": "int 6-20", "edge_density": "fraction 0.15-0.5"}),
    _d("hamiltonian_path", _C.GRAPH, _S.AUTO,
       {"nodes": "int 6-20", "edge_density": "fraction 0.15-0.5"}),
    _d("nl_navigation", _C.GRAPH, _S.AUTO,
       {"nodes": "int 7-10", "path_length": "edge count 1-4"}),
    _d("maze", _C.GRAPH, _S.AUTO,
       {"rows": "int 5-14", "cols": "int 5-14", "obstacle_pct": "fraction 0.1-0.35"}),
    # Search (7)
    _d("hitori", _C.SEARCH, _S.AUTO, {"grid_size": "int 4-8"}),
    _d("kakurasu", _C.SEARCH, _S.AUTO,
       {"grid_size": "int 4-7", "black_rate": "fraction 0.25-0.6"}),
    _d("light_up", _C.SEARCH, _S.AUTO,
       {"grid_size": "int 5-8", "black_ratio": "fraction 0.1-0.3",
        "numbered_ratio": "fraction 0.3-0.8"}),
    _d("minesweeper", _C.SEARCH, _S.AUTO,
       {"board_size": "int 5-9", "mine_density": "fraction 0.1-0.25",
        "reveal_ratio": "fraction 0.3-0.6"}),
    _d("slant", _C.SEARCH, _S.AUTO,
       {"rows": "int 4-7", "cols": "int 4-7", "hint_ratio": "fraction 0.4-0.9"}),
    _d("checkmate_in_one", _C.SEARCH, _S.FIXED_POOL, {"passrate": "pool-defined"}),
    _d("tictactoe", _C.SEARCH, _S.AUTO,
       {"board_size": "int, 3", "phase": "position class per tier"}),
    # Sequential (8)
    _d("twiddle", _C.SEQUENTIAL, _S.AUTO,
       {"grid_size": "int 3-4", "rotations": "int 1-12"}),
    _d("car_painting", _C.SEQUENTIAL, _S.AUTO,
       {"cars": "int 8-20", "colors": "int 2-4", "shift_range": "int 2-4",
        "skew": "fraction 0-1"}),
    _d("stack_permutation", _C.SEQUENTIAL, _S.AUTO, {"length": "int 4-12"}),
    _d("big_bench_symbolic", _C.SEQUENTIAL, _S.FIXED_POOL, {"passrate": "pool-defined"}),
    _d("eight_puzzle", _C.SEQUENTIAL, _S.AUTO, {"inversions": "scramble depth 2-30"}),
    _d("fifteen_puzzle", _C.SEQUENTIAL, _S.AUTO, {"inversions": "scramble depth 2-36"}),
    _d("nine_puzzle", _C.SEQUENTIAL, _S.AUTO, {"inversions": "shift count 1-8"}),
    _d("sixteen_puzzle", _C.SEQUENTIAL, _S.AUTO, {"inversions": "shift count 1-10"}),
)

EXPECTED_CATEGORY_COUNTS = {
    Category.CRYPTO: 2,
    Category.ARITHMETIC: 2,
    Category.LOGIC: 3,
    Category.GRID: 10,
    Category.GRAPH: 4,
    Category.SEARCH: 7,
    Category.SEQUENTIAL: 8,
}
EXPECTED_TOTAL = 36
EXPECTED_AUTO = 30


def register_tasks() -> Mapping[str, TaskDescriptor]:
    """Build the registry and validate its census. Raises on inconsistency."""
    registry: dict[str, TaskDescriptor] = {}
    for desc in _DESCRIPTORS:
        if desc.task_id in registry:
            raise ConfigError(f"duplicate task id {desc.task_id!r}")
        registry[desc.task_id] = desc
    if len(registry) != EXPECTED_TOTAL:
        raise ConfigError(f"registry has {len(registry)} tasks, expected {EXPECTED_TOTAL}")
    auto = sum(1 for d in registry.values() if d.is_auto)
    if auto != EXPECTED_AUTO:
        raise ConfigError(f"registry has {auto} auto tasks, expected {EXPECTED_AUTO}")
    for category, expected in EXPECTED_CATEGORY_COUNTS.items():
        got = sum(1 for d in registry.values() if d.category is category)
        if got != expected:
            raise ConfigError(f"{category.value}: {got} tasks, expected {expected}")
    return MappingProxyType(registry)


REGISTRY = register_tasks()


def descriptor(task_id: str) -> TaskDescriptor:
    try:
        return REGISTRY[task_id]
    except KeyError:
        raise UnknownTaskError(f"unknown task {task_id!r}") from None


def auto_task_ids() -> list[str]:
    return [t for t, d in REGISTRY.items() if d.is_auto]


def fixed_pool_task_ids() -> list[str]:
    return [t for t, d in REGISTRY.items() if not d.is_auto]

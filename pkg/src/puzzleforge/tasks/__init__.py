"""Task implementations, keyed by registry id."""

from __future__ import annotations

from ..core.errors import UnknownTaskError
from ..core.registry import REGISTRY
from .base import PuzzleTask
from .arith import CountdownTask, Game24Task
from .crypto import CryptoKkaTask, CryptoKpaTask
from .graph import (
    HamiltonianCycleTask,
    HamiltonianPathTask,
    MazeTask,
    NlNavigationTask,
)
from .grid import (
    BinarioTask,
    CampsiteTask,
    FullCrosswordsTask,
    MagicSquareTask,
    SkyscraperTask,
    StarBattleTask,
    Sudoku4Task,
    Sudoku9Task,
    SumSkyscraperTask,
    SymbolicHardTask,
)
from .logic import FolioTask, KnightsKnavesTask, ZebraTask
from .search import (
    CheckmateInOneTask,
    HitoriTask,
    KakurasuTask,
    LightUpTask,
    MinesweeperTask,
    SlantTask,
    TicTacToeTask,
)
from .seq import (
    BigBenchSymbolicTask,
    CarPaintingTask,
    EightPuzzleTask,
    FifteenPuzzleTask,
    NinePuzzleTask,
    SixteenPuzzleTask,
    StackPermutationTask,
    TwiddleTask,
)

_IMPLS: dict[str, PuzzleTask] = {}


def _register(task: PuzzleTask) -> None:
    if task.task_id in _IMPLS:
        raise ValueError(f"duplicate task implementation {task.task_id!r}")
    if task.task_id not in REGISTRY:
        raise ValueError(f"implementation for unregistered task {task.task_id!r}")
    _IMPLS[task.task_id] = task


for _cls in (
    Game24Task,
    CountdownTask,
    CryptoKkaTask,
    CryptoKpaTask,
    BinarioTask,
    CampsiteTask,
    MagicSquareTask,
    SkyscraperTask,
    SumSkyscraperTask,
    StarBattleTask,
    Sudoku4Task,
    Sudoku9Task,
    FullCrosswordsTask,
    SymbolicHardTask,
    ZebraTask,
    KnightsKnavesTask,
    FolioTask,
    HamiltonianCycleTask,
    HamiltonianPathTask,
    MazeTask,
    NlNavigationTask,
    HitoriTask,
    KakurasuTask,
    LightUpTask,
    MinesweeperTask,
    SlantTask,
    TicTacToeTask,
    CheckmateInOneTask,
    TwiddleTask,
    CarPaintingTask,
    StackPermutationTask,
    EightPuzzleTask,
    FifteenPuzzleTask,
    NinePuzzleTask,
    SixteenPuzzleTask,
    BigBenchSymbolicTask,
):
    _register(_cls())

if set(_IMPLS) != set(REGISTRY):
    missing = sorted(set(REGISTRY) - set(_IMPLS))
    raise RuntimeError(f"tasks without implementations: {missing}")


def get_task(task_id: str) -> PuzzleTask:
    try:
        return _IMPLS[task_id]
    except KeyError:
        raise UnknownTaskError(f"no implementation for task {task_id!r}") from None


def implemented_task_ids() -> list[str]:
    return sorted(_IMPLS)

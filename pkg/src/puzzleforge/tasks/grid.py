"""Grid puzzles: binary grids, tents, magic squares, tower clues, stars,
sudoku, plus the two fixed-pool grid verifiers.

Generation follows the sample-then-mask pattern: build a full valid
solution first, derive clues or mask cells, and for uniqueness tasks
greedily restore givens until a 2-count solver reports a single
completion. Solvers are complete backtracking enumerations with local
constraint checks, bounded by a node budget.
"""

from __future__ import annotations

import random
from typing import Any, Iterable, Mapping, Sequence

from ..core.errors import AnswerFormatError, PuzzleForgeError
from ..core.model import PuzzleInstance, Tier, Verdict
from ..extraction import (
    ExtractMode,
    ExtractionSpec,
    parse_int_grid,
    parse_symbol_grid,
    render_int_grid,
    render_symbol_grid,
)
from .base import GenOut, PuzzleTask, UNSOLVABLE


class SolverBudgetExceeded(PuzzleForgeError):
    """A count-limited solver ran past its node budget."""


# ---------------------------------------------------------------------------
# Binario
# ---------------------------------------------------------------------------


def _binario_run_ok(grid: list[list[int | None]], r: int, c: int, n: int) -> bool:
    for start in range(c - 2, c + 1):
        if 0 <= start and start + 2 < n:
            a, b, d = grid[r][start], grid[r][start + 1], grid[r][start + 2]
            if a is not None and a == b == d:
                return False
    for start in range(r - 2, r + 1):
        if 0 <= start and start + 2 < n:
            a, b, d = grid[start][c], grid[start + 1][c], grid[start + 2][c]
            if a is not None and a == b == d:
                return False
    return True


def solve_binario(
    grid: Sequence[Sequence[int | None]],
    limit: int = 2,
    node_budget: int = 2_000_000,
) -> list[list[list[int]]]:
    """All completions (up to ``limit``) of a partially filled binary grid."""
    n = len(grid)
    half = n // 2
    work: list[list[int | None]] = [list(row) for row in grid]
    row_counts = [[0, 0] for _ in range(n)]
    col_counts = [[0, 0] for _ in range(n)]
    blanks: list[tuple[int, int]] = []
    for r in range(n):
        for c in range(n):
            v = work[r][c]
            if v is None:
                blanks.append((r, c))
            else:
                row_counts[r][v] += 1
                col_counts[c][v] += 1
    for counts in (row_counts, col_counts):
        for pair in counts:
            if pair[0] > half or pair[1] > half:
                return []
    for r in range(n):
        for c in range(n):
            if work[r][c] is not None and not _binario_run_ok(work, r, c, n):
                return []

    solutions: list[list[list[int]]] = []
    nodes = 0

    def backtrack(idx: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise SolverBudgetExceeded(f"binario solver exceeded {node_budget} nodes")
        if idx == len(blanks):
            solutions.append([list(row) for row in work])
            return len(solutions) >= limit
        r, c = blanks[idx]
        for v in (0, 1):
            if row_counts[r][v] >= half or col_counts[c][v] >= half:
                continue
            work[r][c] = v
            row_counts[r][v] += 1
            col_counts[c][v] += 1
            if _binario_run_ok(work, r, c, n) and backtrack(idx + 1):
                return True
            work[r][c] = None
            row_counts[r][v] -= 1
            col_counts[c][v] -= 1
        return False

    backtrack(0)
    return solutions


def random_binario_solution(n: int, rng: random.Random) -> list[list[int]]:
    grid: list[list[int | None]] = [[None] * n for _ in range(n)]
    half = n // 2
    row_counts = [[0, 0] for _ in range(n)]
    col_counts = [[0, 0] for _ in range(n)]

    def fill(idx: int) -> bool:
        if idx == n * n:
            return True
        r, c = divmod(idx, n)
        values = [0, 1]
        rng.shuffle(values)
        for v in values:
            if row_counts[r][v] >= half or col_counts[c][v] >= half:
                continue
            grid[r][c] = v
            row_counts[r][v] += 1
            col_counts[c][v] += 1
            if _binario_run_ok(grid, r, c, n) and fill(idx + 1):
                return True
            grid[r][c] = None
            row_counts[r][v] -= 1
            col_counts[c][v] -= 1
        return False

    if not fill(0):
        raise PuzzleForgeError(f"no binario solution exists for n={n}")
    return [[int(v) for v in row] for row in grid]  # type: ignore[arg-type]


def _mask_until_unique(
    solution: list[list[int]],
    mask_cells: list[tuple[int, int]],
    solve,
) -> list[list[int | None]]:
    """Mask the given cells, then restore givens until the puzzle is unique."""
    puzzle: list[list[int | None]] = [list(row) for row in solution]
    masked = set(mask_cells)
    for r, c in mask_cells:
        puzzle[r][c] = None
    while True:
        found = solve(puzzle, 2)
        if len(found) <= 1:
            if not found:
                raise PuzzleForgeError("masking produced an unsolvable puzzle")
            return puzzle
        a, b = found[0], found[1]
        restored = False
        for r, c in sorted(masked):
            if a[r][c] != b[r][c]:
                puzzle[r][c] = solution[r][c]
                masked.discard((r, c))
                restored = True
                break
        if not restored:
            raise PuzzleForgeError("ambiguous puzzle with no differing masked cell")


class BinarioTask(PuzzleTask):
    task_id = "binario"
    sentinels = ("no valid solution",)
    tier_params = {
        Tier.EASY: {"grid_size": 4, "mask_rate": 0.3},
        Tier.MEDIUM: {"grid_size": 8, "mask_rate": 0.45},
        Tier.HARD: {"grid_size": 10, "mask_rate": 0.6},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n = params["grid_size"]
        if n % 2:
            raise ValueError("binario grid size must be even")
        rate = params["mask_rate"]
        solution = random_binario_solution(n, rng)
        cells = [(r, c) for r in range(n) for c in range(n)]
        rng.shuffle(cells)
        mask = cells[: max(1, round(rate * n * n))]
        puzzle = _mask_until_unique(solution, mask, solve_binario)
        rows = [["_" if v is None else str(v) for v in row] for row in puzzle]
        payload = {
            "grid": ["".join(row) for row in rows],
            "grid_size": n,
            "mask_rate": rate,
        }
        gold = {"solution": solution}
        return GenOut(payload, gold, {"distinct_lines": False})

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        rows = [" ".join(row) for row in payload["grid"]]
        return {"grid": "\n".join(rows)}

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        grid = parse_int_grid(candidate)
        for row in grid:
            for v in row:
                if v not in (0, 1):
                    raise AnswerFormatError(f"binario cells must be 0/1, got {v!r}")
        return grid

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer is UNSOLVABLE:
            return self.wrongly_unsolvable()
        givens = instance.payload["grid"]
        n = instance.payload["grid_size"]
        half = n // 2
        if len(answer) != n or any(len(row) != n for row in answer):
            return self.malformed(f"expected a {n}x{n} grid")
        for r in range(n):
            for c in range(n):
                g = givens[r][c]
                if g != "_" and answer[r][c] != int(g):
                    return self.violated(f"given at ({r}, {c}) was changed")
        for r in range(n):
            if sum(answer[r]) != half:
                return self.violated(f"row {r} does not balance 0s and 1s")
        for c in range(n):
            if sum(answer[r][c] for r in range(n)) != half:
                return self.violated(f"column {c} does not balance 0s and 1s")
        for r in range(n):
            for c in range(n - 2):
                if answer[r][c] == answer[r][c + 1] == answer[r][c + 2]:
                    return self.violated("three identical digits in a row")
        for c in range(n):
            for r in range(n - 2):
                if answer[r][c] == answer[r + 1][c] == answer[r + 2][c]:
                    return self.violated("three identical digits in a column")
        if instance.verifier_params.get("distinct_lines"):
            rows = [tuple(row) for row in answer]
            cols = [tuple(answer[r][c] for r in range(n)) for c in range(n)]
            if len(set(rows)) != n or len(set(cols)) != n:
                return self.violated("rows/columns are not pairwise distinct")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return render_int_grid(instance.gold["solution"])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        solution = [list(row) for row in instance.gold["solution"]]
        n = len(solution)
        r, c = rng.randrange(n), rng.randrange(n)
        solution[r][c] ^= 1
        return render_int_grid(solution)


# ---------------------------------------------------------------------------
# Sudoku (4x4 and 9x9)
# ---------------------------------------------------------------------------


def solve_sudoku(
    grid: Sequence[Sequence[int | None]],
    box: int,
    limit: int = 2,
    node_budget: int = 2_000_000,
) -> list[list[list[int]]]:
    """All completions (up to ``limit``) of a sudoku grid; MRV backtracking."""
    n = box * box
    full = (1 << n) - 1
    rows = [0] * n
    cols = [0] * n
    boxes = [0] * n
    work: list[list[int]] = [[0] * n for _ in range(n)]
    blanks: list[tuple[int, int]] = []

    def box_id(r: int, c: int) -> int:
        return (r // box) * box + (c // box)

    for r in range(n):
        for c in range(n):
            v = grid[r][c]
            if v is None or v == 0:
                blanks.append((r, c))
                continue
            bit = 1 << (v - 1)
            if rows[r] & bit or cols[c] & bit or boxes[box_id(r, c)] & bit:
                return []
            rows[r] |= bit
            cols[c] |= bit
            boxes[box_id(r, c)] |= bit
            work[r][c] = v

    solutions: list[list[list[int]]] = []
    nodes = 0

    def backtrack(remaining: list[tuple[int, int]]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise SolverBudgetExceeded(f"sudoku solver exceeded {node_budget} nodes")
        if not remaining:
            solutions.append([list(row) for row in work])
            return len(solutions) >= limit
        best_idx = -1
        best_mask = 0
        best_count = n + 1
        for idx, (r, c) in enumerate(remaining):
            mask = full & ~(rows[r] | cols[c] | boxes[box_id(r, c)])
            count = mask.bit_count()
            if count == 0:
                return False
            if count < best_count:
                best_idx, best_mask, best_count = idx, mask, count
                if count == 1:
                    break
        r, c = remaining[best_idx]
        rest = remaining[:best_idx] + remaining[best_idx + 1 :]
        mask = best_mask
        while mask:
            bit = mask & -mask
            mask ^= bit
            v = bit.bit_length()
            work[r][c] = v
            rows[r] |= bit
            cols[c] |= bit
            boxes[box_id(r, c)] |= bit
            stop = backtrack(rest)
            work[r][c] = 0
            rows[r] ^= bit
            cols[c] ^= bit
            boxes[box_id(r, c)] ^= bit
            if stop:
                return True
        return False

    backtrack(blanks)
    return solutions


def random_sudoku_solution(box: int, rng: random.Random) -> list[list[int]]:
    n = box * box
    grid: list[list[int | None]] = [[None] * n for _ in range(n)]
    # Seed one shuffled row, then let the solver complete it; the random
    # first row plus randomized completion order gives a uniform-enough mix.
    first = list(range(1, n + 1))
    rng.shuffle(first)
    grid[0] = list(first)

    values = list(range(1, n + 1))

    def fill(idx: int) -> bool:
        if idx == n * n:
            return True
        r, c = divmod(idx, n)
        if grid[r][c] is not None:
            return fill(idx + 1)
        rng.shuffle(values)
        for v in values:
            if any(grid[r][j] == v for j in range(n)):
                continue
            if any(grid[i][c] == v for i in range(n)):
                continue
            br, bc = (r // box) * box, (c // box) * box
            if any(
                grid[i][j] == v
                for i in range(br, br + box)
                for j in range(bc, bc + box)
            ):
                continue
            grid[r][c] = v
            if fill(idx + 1):
                return True
            grid[r][c] = None
        return False

    if not fill(0):
        raise PuzzleForgeError("sudoku fill failed")
    return [[int(v) for v in row] for row in grid]  # type: ignore[arg-type]


class _SudokuTask(PuzzleTask):
    box: int
    sentinels = ("no valid solution",)

    @property
    def n(self) -> int:
        return self.box * self.box

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n = self.n
        rate = params["mask_rate"]
        solution = random_sudoku_solution(self.box, rng)
        cells = [(r, c) for r in range(n) for c in range(n)]
        rng.shuffle(cells)
        mask = cells[: max(1, round(rate * n * n))]
        puzzle = _mask_until_unique(
            solution, mask, lambda g, lim: solve_sudoku(g, self.box, lim)
        )
        payload = {
            "grid": [["." if v is None else v for v in row] for row in puzzle],
            "mask_rate": rate,
        }
        return GenOut(payload, {"solution": solution}, {})

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        rows = [" ".join(str(v) for v in row) for row in payload["grid"]]
        return {"grid": "\n".join(rows)}

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return parse_int_grid(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer is UNSOLVABLE:
            return self.wrongly_unsolvable()
        n = self.n
        givens = instance.payload["grid"]
        if len(answer) != n or any(len(row) != n for row in answer):
            return self.malformed(f"expected a {n}x{n} grid")
        for r in range(n):
            for c in range(n):
                v = answer[r][c]
                if not isinstance(v, int) or not 1 <= v <= n:
                    return self.violated(f"cell ({r}, {c}) outside 1..{n}")
                g = givens[r][c]
                if g != "." and v != g:
                    return self.violated(f"given at ({r}, {c}) was changed")
        want = set(range(1, n + 1))
        for r in range(n):
            if set(answer[r]) != want:
                return self.violated(f"row {r} is not a permutation of 1..{n}")
        for c in range(n):
            if {answer[r][c] for r in range(n)} != want:
                return self.violated(f"column {c} is not a permutation of 1..{n}")
        for br in range(0, n, self.box):
            for bc in range(0, n, self.box):
                block = {
                    answer[r][c]
                    for r in range(br, br + self.box)
                    for c in range(bc, bc + self.box)
                }
                if block != want:
                    return self.violated("subgrid constraint violated")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return render_int_grid(instance.gold["solution"])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        solution = [list(row) for row in instance.gold["solution"]]
        n = len(solution)
        r = rng.randrange(n)
        c1, c2 = rng.sample(range(n), 2)
        solution[r][c1], solution[r][c2] = solution[r][c2], solution[r][c1]
        return render_int_grid(solution)


class Sudoku4Task(_SudokuTask):
    task_id = "sudoku4"
    box = 2
    tier_params = {
        Tier.EASY: {"mask_rate": 0.25},
        Tier.MEDIUM: {"mask_rate": 0.5},
        Tier.HARD: {"mask_rate": 0.75},
    }


class Sudoku9Task(_SudokuTask):
    task_id = "sudoku9"
    box = 3
    tier_params = {
        Tier.EASY: {"mask_rate": 0.3},
        Tier.MEDIUM: {"mask_rate": 0.45},
        Tier.HARD: {"mask_rate": 0.6},
    }


# ---------------------------------------------------------------------------
# Magic square
# ---------------------------------------------------------------------------


def base_magic_square(n: int) -> list[list[int]]:
    if n % 2 == 1:
        grid = [[0] * n for _ in range(n)]
        r, c = 0, n // 2
        for k in range(1, n * n + 1):
            grid[r][c] = k
            nr, nc = (r - 1) % n, (c + 1) % n
            if grid[nr][nc]:
                nr, nc = (r + 1) % n, c
            r, c = nr, nc
        return grid
    if n % 4 == 0:
        grid = [[r * n + c + 1 for c in range(n)] for r in range(n)]
        for r in range(n):
            for c in range(n):
                if (r % 4 == c % 4) or ((r % 4) + (c % 4) == 3):
                    grid[r][c] = n * n + 1 - grid[r][c]
        return grid
    raise PuzzleForgeError(f"magic square construction unsupported for n={n}")


def magic_lines(grid: Sequence[Sequence[int]]) -> list[int]:
    n = len(grid)
    sums = [sum(row) for row in grid]
    sums += [sum(grid[r][c] for r in range(n)) for c in range(n)]
    sums.append(sum(grid[i][i] for i in range(n)))
    sums.append(sum(grid[i][n - 1 - i] for i in range(n)))
    return sums


class MagicSquareTask(PuzzleTask):
    task_id = "magic_square"
    sentinels = ("no valid solution",)
    tier_params = {
        Tier.EASY: {"grid_size": 3, "mask_rate": 0.33},
        Tier.MEDIUM: {"grid_size": 4, "mask_rate": 0.5},
        Tier.HARD: {"grid_size": 5, "mask_rate": 0.6},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n = params["grid_size"]
        rate = params["mask_rate"]
        base = base_magic_square(n)
        scale = rng.randint(1, 6)
        offset = rng.randint(-20, 30)
        grid = [[scale * v + offset for v in row] for row in base]
        for _ in range(rng.randrange(4)):
            grid = [list(row) for row in zip(*grid[::-1])]  # rotate 90
        if rng.random() < 0.5:
            grid = [row[::-1] for row in grid]
        cells = [(r, c) for r in range(n) for c in range(n)]
        rng.shuffle(cells)
        k = min(max(1, round(rate * n * n)), n * n - 2)
        masked = set(cells[:k])
        payload = {
            "grid": [
                ["." if (r, c) in masked else grid[r][c] for c in range(n)]
                for r in range(n)
            ],
            "grid_size": n,
            "mask_rate": rate,
        }
        return GenOut(payload, {"solution": grid}, {})

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        rows = [" ".join(str(v) for v in row) for row in payload["grid"]]
        return {"n": str(payload["grid_size"]), "grid": "\n".join(rows)}

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return parse_int_grid(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer is UNSOLVABLE:
            return self.wrongly_unsolvable()
        givens = instance.payload["grid"]
        n = instance.payload["grid_size"]
        if len(answer) != n or any(len(row) != n for row in answer):
            return self.malformed(f"expected a {n}x{n} grid")
        given_values = []
        filled_values = []
        for r in range(n):
            for c in range(n):
                v = answer[r][c]
                if not isinstance(v, int):
                    return self.malformed(f"cell ({r}, {c}) is not an integer")
                g = givens[r][c]
                if g == ".":
                    filled_values.append(v)
                else:
                    if v != g:
                        return self.violated(f"given at ({r}, {c}) was changed")
                    given_values.append(v)
        if len(set(filled_values)) != len(filled_values):
            return self.violated("filled values are not distinct")
        if set(filled_values) & set(given_values):
            return self.violated("filled value duplicates a given")
        sums = magic_lines(answer)
        if len(set(sums)) != 1:
            return self.violated("row/column/diagonal sums are not all equal")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return render_int_grid(instance.gold["solution"])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        solution = [list(row) for row in instance.gold["solution"]]
        givens = instance.payload["grid"]
        n = len(solution)
        blanks = [(r, c) for r in range(n) for c in range(n) if givens[r][c] == "."]
        r, c = blanks[rng.randrange(len(blanks))]
        solution[r][c] += rng.randint(1, 5)
        return render_int_grid(solution)


# ---------------------------------------------------------------------------
# Latin-square helpers shared by the tower-clue tasks.
# ---------------------------------------------------------------------------


def random_latin_square(n: int, rng: random.Random) -> list[list[int]]:
    grid: list[list[int]] = [[0] * n for _ in range(n)]
    values = list(range(1, n + 1))

    def fill(idx: int) -> bool:
        if idx == n * n:
            return True
        r, c = divmod(idx, n)
        rng.shuffle(values)
        for v in values:
            if any(grid[r][j] == v for j in range(c)):
                continue
            if any(grid[i][c] == v for i in range(r)):
                continue
            grid[r][c] = v
            if fill(idx + 1):
                return True
            grid[r][c] = 0
        return False

    if not fill(0):
        raise PuzzleForgeError("latin square fill failed")
    return grid


def visible_count(line: Sequence[int]) -> int:
    seen = 0
    tallest = 0
    for h in line:
        if h > tallest:
            seen += 1
            tallest = h
    return seen


def visible_sum(line: Sequence[int]) -> int:
    total = 0
    tallest = 0
    for h in line:
        if h > tallest:
            total += h
            tallest = h
    return total


def tower_clues(grid: Sequence[Sequence[int]], measure) -> dict[str, list[int]]:
    n = len(grid)
    cols = [[grid[r][c] for r in range(n)] for c in range(n)]
    return {
        "top": [measure(col) for col in cols],
        "bottom": [measure(col[::-1]) for col in cols],
        "left": [measure(row) for row in grid],
        "right": [measure(list(row[::-1])) for row in grid],
    }


class _TowerTask(PuzzleTask):
    measure = staticmethod(visible_count)
    sentinels = ("no valid solution", "no solution exists")

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n = params["grid_size"]
        solution = random_latin_square(n, rng)
        clues = tower_clues(solution, self.measure)
        payload = {"clues": clues, "grid_size": n}
        return GenOut(payload, {"solution": solution}, {})

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return parse_int_grid(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer is UNSOLVABLE:
            return self.wrongly_unsolvable()
        n = instance.payload["grid_size"]
        clues = instance.payload["clues"]
        if len(answer) != n or any(len(row) != n for row in answer):
            return self.malformed(f"expected a {n}x{n} grid")
        want = set(range(1, n + 1))
        for r in range(n):
            if set(answer[r]) != want:
                return self.violated(f"row {r} is not a permutation of 1..{n}")
        for c in range(n):
            if {answer[r][c] for r in range(n)} != want:
                return self.violated(f"column {c} is not a permutation of 1..{n}")
        got = tower_clues(answer, self.measure)
        for side in ("top", "bottom", "left", "right"):
            if got[side] != clues[side]:
                return self.violated(f"{side} clues are not satisfied")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return render_int_grid(instance.gold["solution"])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        solution = [list(row) for row in instance.gold["solution"]]
        n = len(solution)
        r = rng.randrange(n)
        c1, c2 = rng.sample(range(n), 2)
        solution[r][c1], solution[r][c2] = solution[r][c2], solution[r][c1]
        return render_int_grid(solution)


class SkyscraperTask(_TowerTask):
    task_id = "skyscraper"
    measure = staticmethod(visible_count)
    tier_params = {
        Tier.EASY: {"grid_size": 4},
        Tier.MEDIUM: {"grid_size": 5},
        Tier.HARD: {"grid_size": 6},
    }

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        clues = payload["clues"]
        fmt = lambda xs: " ".join(str(x) for x in xs)  # noqa: E731
        return {
            "top": fmt(clues["top"]),
            "left": fmt(clues["left"]),
            "right": fmt(clues["right"]),
            "bottom": fmt(clues["bottom"]),
        }


class SumSkyscraperTask(_TowerTask):
    task_id = "sum_skyscraper"
    measure = staticmethod(visible_sum)
    tier_params = {
        Tier.EASY: {"grid_size": 4},
        Tier.MEDIUM: {"grid_size": 5},
        Tier.HARD: {"grid_size": 6},
    }

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        clues = payload["clues"]
        fmt = lambda xs: " ".join(str(x) for x in xs)  # noqa: E731
        lines = [fmt(clues["top"]), fmt(clues["left"]), fmt(clues["right"]), fmt(clues["bottom"])]
        return {"clues": "\n".join(lines)}


# ---------------------------------------------------------------------------
# Star battle (1 star per row/column, no adjacency, blocked cells fixed)
# ---------------------------------------------------------------------------


def random_star_placement(n: int, rng: random.Random) -> list[int] | None:
    """Column of the star in each row; no two stars adjacent (incl. diagonal)."""
    cols: list[int] = []
    used = [False] * n

    def place(r: int) -> bool:
        if r == n:
            return True
        order = [c for c in range(n) if not used[c]]
        rng.shuffle(order)
        for c in order:
            if r > 0 and abs(c - cols[-1]) <= 1:
                continue
            cols.append(c)
            used[c] = True
            if place(r + 1):
                return True
            cols.pop()
            used[c] = False
        return False

    return cols if place(0) else None


class StarBattleTask(PuzzleTask):
    task_id = "star_battle"
    extraction = ExtractionSpec(ExtractMode.BOARD_TAGS)
    sentinels = ("no valid solution",)
    tier_params = {
        Tier.EASY: {"grid_size": 5, "stars": 1},
        Tier.MEDIUM: {"grid_size": 6, "stars": 1},
        Tier.HARD: {"grid_size": 8, "stars": 1},
    }

    BLOCK_RATE = 0.25

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n = params["grid_size"]
        for _ in range(self.max_generation_tries):
            cols = random_star_placement(n, rng)
            if cols is None:
                continue
            stars = [(r, cols[r]) for r in range(n)]
            board = [["." for _ in range(n)] for _ in range(n)]
            for r in range(n):
                for c in range(n):
                    if (r, c) not in stars and rng.random() < self.BLOCK_RATE:
                        board[r][c] = "X"
            payload = {"grid": ["".join(row) for row in board], "grid_size": n}
            gold = {"stars": [[r, c] for r, c in stars]}
            return GenOut(payload, gold, {})
        raise self.exhausted("no star placement found")

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        return {"grid": "\n".join(" ".join(row) for row in payload["grid"])}

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return parse_symbol_grid(candidate, ".X*")

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer is UNSOLVABLE:
            return self.wrongly_unsolvable()
        board = instance.payload["grid"]
        n = instance.payload["grid_size"]
        if len(answer) != n or any(len(row) != n for row in answer):
            return self.malformed(f"expected a {n}x{n} board")
        stars = []
        for r in range(n):
            for c in range(n):
                cell = answer[r][c]
                original = board[r][c]
                if original == "X" and cell != "X":
                    return self.violated(f"blocked cell ({r}, {c}) was changed")
                if original == "." and cell not in (".", "*"):
                    return self.violated(f"cell ({r}, {c}) has an invalid mark")
                if cell == "*":
                    if original != ".":
                        return self.violated(f"star on a blocked cell ({r}, {c})")
                    stars.append((r, c))
        if len(stars) != n:
            return self.violated(f"expected {n} stars, found {len(stars)}")
        if len({r for r, _ in stars}) != n or len({c for _, c in stars}) != n:
            return self.violated("each row and column needs exactly one star")
        for i, (r1, c1) in enumerate(stars):
            for r2, c2 in stars[i + 1 :]:
                if abs(r1 - r2) <= 1 and abs(c1 - c2) <= 1:
                    return self.violated("two stars are adjacent")
        return self.ok()

    def _board_with_stars(self, instance: PuzzleInstance, stars: Iterable[tuple[int, int]]) -> str:
        board = [list(row) for row in instance.payload["grid"]]
        for r, c in stars:
            board[r][c] = "*"
        return render_symbol_grid(board)

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return self._board_with_stars(instance, [tuple(s) for s in instance.gold["stars"]])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        stars = [tuple(s) for s in instance.gold["stars"]]
        n = instance.payload["grid_size"]
        board = instance.payload["grid"]
        idx = rng.randrange(len(stars))
        r, c = stars[idx]
        for dc in rng.sample((-1, 1), 2):
            if 0 <= c + dc < n and board[r][c + dc] == ".":
                stars[idx] = (r, c + dc)
                return self._board_with_stars(instance, stars)
        del stars[idx]
        return self._board_with_stars(instance, stars)


# ---------------------------------------------------------------------------
# Campsite (trees and tents)
# ---------------------------------------------------------------------------


def _adjacent8(r: int, c: int) -> Iterable[tuple[int, int]]:
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr or dc:
                yield r + dr, c + dc


def _adjacent4(r: int, c: int) -> Iterable[tuple[int, int]]:
    yield r - 1, c
    yield r + 1, c
    yield r, c - 1
    yield r, c + 1


def _matching_saturates(trees: list[tuple[int, int]], tents: list[tuple[int, int]]) -> bool:
    """Does a perfect tree-to-tent matching exist (orthogonal adjacency)?"""
    tent_index = {pos: i for i, pos in enumerate(tents)}
    adj: list[list[int]] = []
    for tr, tc in trees:
        adj.append([tent_index[p] for p in _adjacent4(tr, tc) if p in tent_index])
    match_of_tent = [-1] * len(tents)

    def augment(tree: int, visited: set[int]) -> bool:
        for tent in adj[tree]:
            if tent in visited:
                continue
            visited.add(tent)
            if match_of_tent[tent] == -1 or augment(match_of_tent[tent], visited):
                match_of_tent[tent] = tree
                return True
        return False

    return all(augment(t, set()) for t in range(len(trees)))


class CampsiteTask(PuzzleTask):
    task_id = "campsite"
    extraction = ExtractionSpec(ExtractMode.BOARD_TAGS)
    sentinels = ("no valid solution",)
    tier_params = {
        Tier.EASY: {"grid_height": 4, "grid_width": 4, "tent_count": 3},
        Tier.MEDIUM: {"grid_height": 6, "grid_width": 6, "tent_count": 6},
        Tier.HARD: {"grid_height": 8, "grid_width": 8, "tent_count": 10},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        h, w, count = params["grid_height"], params["grid_width"], params["tent_count"]
        for _ in range(self.max_generation_tries):
            tents: list[tuple[int, int]] = []
            candidates = [(r, c) for r in range(h) for c in range(w)]
            rng.shuffle(candidates)
            for cell in candidates:
                if len(tents) == count:
                    break
                r, c = cell
                if all(abs(r - tr) > 1 or abs(c - tc) > 1 for tr, tc in tents):
                    tents.append(cell)
            if len(tents) < count:
                continue
            trees: list[tuple[int, int]] = []
            tent_set = set(tents)
            ok = True
            for r, c in tents:
                options = [
                    p
                    for p in _adjacent4(r, c)
                    if 0 <= p[0] < h and 0 <= p[1] < w
                    and p not in tent_set and p not in trees
                ]
                if not options:
                    ok = False
                    break
                trees.append(options[rng.randrange(len(options))])
            if not ok:
                continue
            board = [["." for _ in range(w)] for _ in range(h)]
            for r, c in trees:
                board[r][c] = "X"
            payload = {
                "grid": ["".join(row) for row in board],
                "rows": h,
                "cols": w,
                "total": count,
                "row_counts": [sum(1 for tr, _ in tents if tr == r) for r in range(h)],
                "col_counts": [sum(1 for _, tc in tents if tc == c) for c in range(w)],
            }
            gold = {"tents": sorted([r, c] for r, c in tents)}
            return GenOut(payload, gold, {})
        raise self.exhausted(f"could not place {count} tents on a {h}x{w} board")

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        return {
            "total": str(payload["total"]),
            "row_counts": " ".join(str(v) for v in payload["row_counts"]),
            "col_counts": " ".join(str(v) for v in payload["col_counts"]),
            "grid": "\n".join(" ".join(row) for row in payload["grid"]),
        }

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return parse_symbol_grid(candidate, ".X*")

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer is UNSOLVABLE:
            return self.wrongly_unsolvable()
        payload = instance.payload
        h, w = payload["rows"], payload["cols"]
        board = payload["grid"]
        if len(answer) != h or any(len(row) != w for row in answer):
            return self.malformed(f"expected a {h}x{w} board")
        tents = []
        trees = []
        for r in range(h):
            for c in range(w):
                cell = answer[r][c]
                original = board[r][c]
                if original == "X":
                    if cell != "X":
                        return self.violated(f"tree at ({r}, {c}) was changed")
                    trees.append((r, c))
                else:
                    if cell == "X":
                        return self.violated(f"new tree added at ({r}, {c})")
                    if cell == "*":
                        tents.append((r, c))
        if len(tents) != payload["total"]:
            return self.violated(f"expected {payload['total']} tents, found {len(tents)}")
        for r in range(h):
            if sum(1 for tr, _ in tents if tr == r) != payload["row_counts"][r]:
                return self.violated(f"row {r} tent count mismatch")
        for c in range(w):
            if sum(1 for _, tc in tents if tc == c) != payload["col_counts"][c]:
                return self.violated(f"column {c} tent count mismatch")
        tent_set = set(tents)
        for r, c in tents:
            for p in _adjacent8(r, c):
                if p in tent_set:
                    return self.violated("two tents are adjacent")
        if not _matching_saturates(trees, tents):
            return self.violated("trees cannot each claim an adjacent tent")
        return self.ok()

    def _board_with_tents(self, instance: PuzzleInstance, tents: Iterable[tuple[int, int]]) -> str:
        board = [list(row) for row in instance.payload["grid"]]
        for r, c in tents:
            board[r][c] = "*"
        return render_symbol_grid(board)

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return self._board_with_tents(instance, [tuple(t) for t in instance.gold["tents"]])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        tents = [tuple(t) for t in instance.gold["tents"]]
        del tents[rng.randrange(len(tents))]
        return self._board_with_tents(instance, tents)


# ---------------------------------------------------------------------------
# Fixed-pool grid verifiers: crosswords and pattern grids.
# ---------------------------------------------------------------------------


class FullCrosswordsTask(PuzzleTask):
    task_id = "full_crosswords"

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        across = "\n".join(
            f"{i}. {clue}" for i, clue in enumerate(payload["across_clues"], start=1)
        )
        down = "\n".join(
            f"{i}. {clue}" for i, clue in enumerate(payload["down_clues"], start=1)
        )
        return {
            "across_clues": across,
            "down_clues": down,
            "grid": "\n".join(" ".join(row) for row in payload["grid"]),
        }

    def parse_answer(self, candidate: str) -> Any:
        across: list[str] | None = None
        down: list[str] | None = None
        for line in candidate.splitlines():
            line = line.strip()
            lowered = line.lower()
            if lowered.startswith("across:"):
                across = [w.strip().upper() for w in line[7:].split(",") if w.strip()]
            elif lowered.startswith("down:"):
                down = [w.strip().upper() for w in line[5:].split(",") if w.strip()]
        if across is None or down is None:
            raise AnswerFormatError("expected 'across:' and 'down:' word lists")
        return {"across": across, "down": down}

    @staticmethod
    def _slots(grid: list[str]) -> tuple[list[int], list[int]]:
        across_rows = [r for r, row in enumerate(grid) if "*" not in row]
        cols = ["".join(row[c] for row in grid) for c in range(len(grid[0]))]
        down_cols = [c for c, col in enumerate(cols) if "*" not in col]
        return across_rows, down_cols

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        grid = ["".join(row.split()) for row in instance.payload["grid"]]
        across_rows, down_cols = self._slots(grid)
        across, down = answer["across"], answer["down"]
        if len(across) != len(across_rows) or len(down) != len(down_cols):
            return self.malformed(
                f"expected {len(across_rows)} across and {len(down_cols)} down words"
            )
        width = len(grid[0])
        height = len(grid)
        for word in across:
            if len(word) != width or not word.isalpha():
                return self.malformed(f"across word {word!r} does not fit the grid")
        for word in down:
            if len(word) != height or not word.isalpha():
                return self.malformed(f"down word {word!r} does not fit the grid")
        fill: dict[tuple[int, int], str] = {}
        for r, word in zip(across_rows, across):
            for c, ch in enumerate(word):
                fill[(r, c)] = ch
        for c, word in zip(down_cols, down):
            for r, ch in enumerate(word):
                if (r, c) in fill and fill[(r, c)] != ch:
                    return self.violated(f"intersection mismatch at ({r}, {c})")
        gold = instance.gold
        if [w.upper() for w in gold["across"]] != across:
            return self.wrong("across words do not match")
        if [w.upper() for w in gold["down"]] != down:
            return self.wrong("down words do not match")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        gold = instance.gold
        return (
            "across: " + ", ".join(gold["across"]) + "\n" + "down: " + ", ".join(gold["down"])
        )

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        across = [w.upper() for w in instance.gold["across"]]
        word = list(across[0])
        pos = rng.randrange(len(word))
        word[pos] = "Z" if word[pos] != "Z" else "Q"
        across[0] = "".join(word)
        return "across: " + ", ".join(across) + "\n" + "down: " + ", ".join(
            w.upper() for w in instance.gold["down"]
        )


class SymbolicHardTask(PuzzleTask):
    task_id = "symbolic_hard"

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        blocks = []
        for i, (example_in, example_out) in enumerate(payload["examples"], start=1):
            blocks.append(
                f"Example {i}:\n{_render_rows(example_in)}\n->\n{_render_rows(example_out)}"
            )
        return {
            "examples": "\n\n".join(blocks),
            "test_input": _render_rows(payload["test_input"]),
        }

    def parse_answer(self, candidate: str) -> Any:
        return parse_int_grid(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer == [list(row) for row in instance.gold["output"]]:
            return self.ok()
        return self.wrong()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return render_int_grid(instance.gold["output"])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        grid = [list(row) for row in instance.gold["output"]]
        r = rng.randrange(len(grid))
        c = rng.randrange(len(grid[0]))
        grid[r][c] += 1
        return render_int_grid(grid)


def _render_rows(grid: Sequence[Sequence[int]]) -> str:
    rows = ["[" + ", ".join(str(v) for v in row) + "]" for row in grid]
    return "[" + ",\n ".join(rows) + "]"


# ---------------------------------------------------------------------------
# Solver dispatch: complete enumeration oracles for uniqueness checks.
# ---------------------------------------------------------------------------


def solve_tower(
    n: int,
    clues: Mapping[str, Sequence[int]],
    measure,
    limit: int = 2,
    node_budget: int = 2_000_000,
) -> list[list[list[int]]]:
    """All Latin squares (up to ``limit``) matching the visibility clues."""
    rows: list[tuple[int, ...]] = []
    col_used = [set() for _ in range(n)]
    solutions: list[list[list[int]]] = []
    nodes = 0

    from itertools import permutations as _perms

    def backtrack() -> bool:
        nonlocal nodes
        r = len(rows)
        if r == n:
            grid = [list(row) for row in rows]
            got = tower_clues(grid, measure)
            for side in ("top", "bottom", "left", "right"):
                if list(got[side]) != list(clues[side]):
                    return False
            solutions.append(grid)
            return len(solutions) >= limit
        for perm in _perms(range(1, n + 1)):
            nodes += 1
            if nodes > node_budget:
                raise SolverBudgetExceeded(f"tower solver exceeded {node_budget} nodes")
            if any(perm[c] in col_used[c] for c in range(n)):
                continue
            if measure(perm) != clues["left"][r]:
                continue
            if measure(perm[::-1]) != clues["right"][r]:
                continue
            rows.append(perm)
            for c in range(n):
                col_used[c].add(perm[c])
            if backtrack():
                return True
            rows.pop()
            for c in range(n):
                col_used[c].discard(perm[c])
        return False

    backtrack()
    return solutions


def solve_grid(task_id: str, payload: Mapping[str, Any], count_limit: int = 2):
    """Enumerate solutions of a grid payload (complete up to ``count_limit``).

    Supported: binario, sudoku4, sudoku9, skyscraper, sum_skyscraper. The
    other grid tasks are verified semantically and never need enumeration.
    """
    if task_id == "binario":
        grid = [
            [None if ch == "_" else int(ch) for ch in row] for row in payload["grid"]
        ]
        return solve_binario(grid, limit=count_limit)
    if task_id in ("sudoku4", "sudoku9"):
        box = 2 if task_id == "sudoku4" else 3
        grid = [[None if v == "." else v for v in row] for row in payload["grid"]]
        return solve_sudoku(grid, box, limit=count_limit)
    if task_id == "skyscraper":
        return solve_tower(payload["grid_size"], payload["clues"], visible_count, count_limit)
    if task_id == "sum_skyscraper":
        return solve_tower(payload["grid_size"], payload["clues"], visible_sum, count_limit)
    raise ValueError(f"no enumeration solver for task {task_id!r}")

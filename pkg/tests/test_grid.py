"""Grid tasks: solver oracles against the worked examples, uniqueness,
givens preservation, and constraint checking."""

import random

import pytest

from puzzleforge import api
from puzzleforge.core.model import Failure, Tier
from puzzleforge.tasks import get_task
from puzzleforge.tasks.base import GenOut
from puzzleforge.tasks.grid import (
    magic_lines,
    random_latin_square,
    solve_binario,
    solve_grid,
    solve_sudoku,
    tower_clues,
    visible_count,
    visible_sum,
)

# The worked 4x4 binary-grid example: givens and their unique completion.
BINARIO_GIVENS = [
    [0, 0, 1, None],
    [0, 0, None, None],
    [1, 1, 0, 0],
    [1, 1, 0, 0],
]
BINARIO_UNIQUE = [[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]]


class TestBinario:
    def test_worked_example_unique_completion(self):
        solutions = solve_binario(BINARIO_GIVENS, limit=5)
        assert solutions == [BINARIO_UNIQUE]

    def test_verifier_accepts_the_unique_completion(self):
        inst = _binario_instance()
        assert api.verify(inst, api.gold_response(inst)).reward == 1

    def test_three_in_a_row_rejected(self):
        inst = _binario_instance()
        bad = "0 0 1 1\n0 1 1 1\n1 1 0 0\n1 0 0 0"
        verdict = api.verify(inst, f"```\n{bad}\n```")
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED

    def test_changed_given_rejected(self):
        inst = _binario_instance()
        bad = "1 0 1 0\n0 1 0 1\n1 0 1 0\n0 1 0 1"
        verdict = api.verify(inst, f"```\n{bad}\n```")
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED
        assert "given" in (verdict.detail or "")

    def test_generated_instances_unique(self):
        for tier, n in ((Tier.EASY, 4), (Tier.MEDIUM, 8)):
            for inst in api.generate("binario", tier, 4, root_seed=21):
                assert inst.payload["grid_size"] == n
                assert len(solve_grid("binario", inst.payload, count_limit=2)) == 1

    def test_distinct_lines_flag(self):
        # The worked example's completion has equal row pairs; the opt-in
        # distinctness flag must reject it while the default accepts.
        inst = _binario_instance()
        strict = _binario_instance(distinct=True)
        answer = api.gold_response(inst)
        assert api.verify(inst, answer).reward == 1
        assert api.verify(strict, answer).reward == 0


def _binario_instance(distinct=False):
    task = get_task("binario")
    payload = {
        "grid": ["001_", "00__", "1100", "1100"],
        "grid_size": 4,
        "mask_rate": 0.2,
    }
    gold = {"solution": BINARIO_UNIQUE}
    return task.build_instance(Tier.EASY, 0, GenOut(payload, gold, {"distinct_lines": distinct}))


class TestSudoku:
    def test_empty_1x1_style_trivial(self):
        # Degenerate full grid: the solver sees nothing to fill.
        assert solve_sudoku([[1]], box=1, limit=2) == [[[1]]]

    def test_paper_9x9_listing_solves(self):
        grid = [
            [3, 1, 2, 6, None, None, 5, 9, 4],
            [None, 8, 6, 4, 5, 9, 3, 1, 2],
            [5, 9, 4, 2, 3, 1, 7, 8, 6],
            [1, 2, 5, 3, 8, 6, 9, 4, 7],
            [8, 6, 3, 7, 9, 4, 1, 2, None],
            [9, 4, 7, 5, 1, 2, 8, 6, 3],
            [4, 7, 8, None, None, None, 6, None, None],
            [6, None, 1, 8, None, None, 2, 5, 9],
            [2, 5, 9, None, 6, None, 4, 7, 8],
        ]
        solutions = solve_sudoku(grid, box=3, limit=2)
        assert len(solutions) >= 1
        want = set(range(1, 10))
        sol = solutions[0]
        for r in range(9):
            assert set(sol[r]) == want
        for c in range(9):
            assert {sol[r][c] for r in range(9)} == want

    def test_mask_rate_zero_fully_solved(self):
        inst = api.generate_one("sudoku4", Tier.EASY, 9, 0, params={"mask_rate": 0.0})
        # One cell is always masked (the dial's floor), so solve and check.
        assert len(solve_grid("sudoku4", inst.payload, 2)) == 1
        assert api.verify(inst, api.gold_response(inst)).reward == 1

    def test_generated_unique_both_sizes(self):
        for task_id in ("sudoku4", "sudoku9"):
            for inst in api.generate(task_id, Tier.MEDIUM, 3, root_seed=13):
                assert len(solve_grid(task_id, inst.payload, 2)) == 1

    def test_swap_mutation_rejected(self):
        for inst in api.generate("sudoku9", Tier.MEDIUM, 3, root_seed=14):
            assert api.verify(inst, api.corrupted_response(inst)).reward == 0


class TestMagicSquare:
    def test_paper_listing_forced_completion(self):
        # Row/column sums force the two blanks: an independent linear check.
        grid = [[0, 35, 10], [None, 15, 5], [20, None, 30]]
        total = sum(v for v in grid[0])
        blank_r1 = total - 15 - 5
        blank_r2 = total - 20 - 30
        assert total == 45 and blank_r1 == 25 and blank_r2 == -5
        filled = [[0, 35, 10], [25, 15, 5], [20, -5, 30]]
        assert set(magic_lines(filled)) == {45}

    def test_verifier_on_listing(self):
        task = get_task("magic_square")
        payload = {
            "grid": [[0, 35, 10], [".", 15, 5], [20, ".", 30]],
            "grid_size": 3,
            "mask_rate": 0.22,
        }
        gold = {"solution": [[0, 35, 10], [25, 15, 5], [20, -5, 30]]}
        inst = task.build_instance(Tier.EASY, 0, GenOut(payload, gold, {}))
        assert api.verify(inst, api.gold_response(inst)).reward == 1
        assert api.verify(inst, "```\n0 35 10\n26 15 5\n20 -5 30\n```").reward == 0

    def test_negative_entries_allowed(self):
        found_negative = False
        for inst in api.generate("magic_square", Tier.MEDIUM, 10, root_seed=3):
            assert api.verify(inst, api.gold_response(inst)).reward == 1
            if any(
                isinstance(v, int) and v < 0 for row in inst.payload["grid"] for v in row
            ):
                found_negative = True
        assert found_negative

    def test_duplicate_with_given_rejected(self):
        task = get_task("magic_square")
        payload = {
            "grid": [[2, ".", 6], [".", 5, "."], [4, ".", 8]],
            "grid_size": 3,
            "mask_rate": 0.44,
        }
        gold = {"solution": [[2, 7, 6], [9, 5, 1], [4, 3, 8]]}
        inst = task.build_instance(Tier.EASY, 0, GenOut(payload, gold, {}))
        assert api.verify(inst, api.gold_response(inst)).reward == 1
        # 2/7/6, 9/5/1, 4/3/8 with the 7 replaced by a duplicate of given 2:
        verdict = api.verify(inst, "```\n2 2 6\n9 5 1\n4 3 8\n```")
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED


SKY_CLUES = {
    "top": [3, 2, 2, 1],
    "left": [4, 2, 3, 1],
    "right": [1, 2, 2, 2],
    "bottom": [1, 3, 2, 2],
}


class TestTowerTasks:
    def test_paper_skyscraper_clues_satisfiable(self):
        solutions = solve_grid(
            "skyscraper", {"grid_size": 4, "clues": SKY_CLUES}, count_limit=1
        )
        assert len(solutions) >= 1
        got = tower_clues(solutions[0], visible_count)
        for side in SKY_CLUES:
            assert got[side] == SKY_CLUES[side]

    def test_visibility_measures(self):
        assert visible_count([2, 4, 3, 1]) == 2
        assert visible_count([1, 2, 3, 4]) == 4
        assert visible_sum([2, 4, 3, 1]) == 6
        assert visible_sum([4, 3, 2, 1]) == 4

    def test_gold_round_trip(self):
        for task_id in ("skyscraper", "sum_skyscraper"):
            for tier in (Tier.EASY, Tier.HARD):
                for inst in api.generate(task_id, tier, 3, root_seed=5):
                    assert api.verify(inst, api.gold_response(inst)).reward == 1

    def test_latin_violation_rejected(self):
        inst = api.generate_one("skyscraper", Tier.EASY, 6, 0)
        sol = [list(row) for row in inst.gold["solution"]]
        sol[0][0], sol[0][1] = sol[0][1], sol[0][0]
        bad = "\n".join(" ".join(str(v) for v in row) for row in sol)
        assert api.verify(inst, f"```\n{bad}\n```").reward == 0

    def test_random_latin_square_is_latin(self):
        rng = random.Random(5)
        for n in (4, 5, 6):
            grid = random_latin_square(n, rng)
            want = set(range(1, n + 1))
            assert all(set(row) == want for row in grid)
            assert all({grid[r][c] for r in range(n)} == want for c in range(n))


class TestStarBattle:
    def test_star_on_blocked_cell_rejected(self):
        inst = api.generate_one("star_battle", Tier.EASY, 7, 0)
        board = [list(row) for row in inst.payload["grid"]]
        n = len(board)
        blocked = [(r, c) for r in range(n) for c in range(n) if board[r][c] == "X"]
        assert blocked, "fixture needs a blocked cell"
        stars = [tuple(s) for s in inst.gold["stars"]]
        # Move the star that shares a row with the first blocked cell onto it.
        br, bc = blocked[0]
        stars = [(br, bc) if r == br else (r, c) for r, c in stars]
        out = [list(row) for row in inst.payload["grid"]]
        for r, c in stars:
            out[r][c] = "*"
        rendered = "\n".join(" ".join(row) for row in out)
        verdict = api.verify(inst, f"<begin_board>\n{rendered}\n<end_board>")
        assert verdict.reward == 0

    def test_gold_and_mutations(self):
        for tier in (Tier.EASY, Tier.MEDIUM, Tier.HARD):
            for inst in api.generate("star_battle", tier, 3, root_seed=9):
                assert api.verify(inst, api.gold_response(inst)).reward == 1
                assert api.verify(inst, api.corrupted_response(inst)).reward == 0

    def test_missing_star_rejected(self):
        inst = api.generate_one("star_battle", Tier.EASY, 7, 1)
        rendered = "\n".join(" ".join(row) for row in inst.payload["grid"])
        verdict = api.verify(inst, f"<begin_board>\n{rendered}\n<end_board>")
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED


class TestCampsite:
    def test_gold_round_trip(self):
        for tier in (Tier.EASY, Tier.MEDIUM, Tier.HARD):
            for inst in api.generate("campsite", tier, 3, root_seed=2):
                assert api.verify(inst, api.gold_response(inst)).reward == 1

    def test_tree_tent_matching(self):
        from puzzleforge.tasks.grid import _matching_saturates

        assert _matching_saturates([(2, 2)], [(1, 2)])
        # Both tents cling to the same tree; the second tree goes unmatched.
        assert not _matching_saturates([(2, 2), (0, 0)], [(1, 2), (3, 2)])
        # A shared neighbor is fine as long as a perfect matching exists.
        assert _matching_saturates([(0, 1), (0, 3)], [(0, 0), (0, 2)])

    def test_extra_tent_rejected(self):
        inst = api.generate_one("campsite", Tier.EASY, 3, 0)
        board = [list(row) for row in inst.payload["grid"]]
        tents = {tuple(t) for t in inst.gold["tents"]}
        extra = next(
            (r, c)
            for r, row in enumerate(board)
            for c, cell in enumerate(row)
            if cell == "." and (r, c) not in tents
        )
        out = [list(row) for row in inst.payload["grid"]]
        for r, c in list(tents) + [extra]:
            out[r][c] = "*"
        rendered = "\n".join(" ".join(row) for row in out)
        assert api.verify(inst, f"<begin_board>\n{rendered}\n<end_board>").reward == 0

    def test_changed_tree_rejected(self):
        inst = api.generate_one("campsite", Tier.EASY, 3, 1)
        board = [list(row) for row in inst.payload["grid"]]
        for r, row in enumerate(board):
            for c, cell in enumerate(row):
                if cell == "X":
                    board[r][c] = "."
                    break
            else:
                continue
            break
        for r, c in [tuple(t) for t in inst.gold["tents"]]:
            if board[r][c] == ".":
                board[r][c] = "*"
        rendered = "\n".join(" ".join(row) for row in board)
        verdict = api.verify(inst, f"<begin_board>\n{rendered}\n<end_board>")
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED


class TestFixedGrid:
    def test_symbolic_equality(self, pools):
        inst = pools["symbolic_hard"].accepted[Tier.EASY][0]
        assert api.verify(inst, api.gold_response(inst)).reward == 1
        assert api.verify(inst, api.corrupted_response(inst)).reward == 0

    def test_crosswords_gold(self, pools):
        for tier_list in pools["full_crosswords"].accepted.values():
            for inst in tier_list:
                assert api.verify(inst, api.gold_response(inst)).reward == 1

    def test_crosswords_intersection_mismatch(self, pools):
        inst = pools["full_crosswords"].accepted[Tier.EASY][0]
        # Right words for rows, but swap two down words: intersections break.
        answer = "across: CAT, ARE, TEN\ndown: ARE, CAT, TEN"
        verdict = api.verify(inst, f"```\n{answer}\n```")
        assert verdict.reward == 0

    def test_crosswords_word_count_mismatch(self, pools):
        inst = pools["full_crosswords"].accepted[Tier.EASY][0]
        verdict = api.verify(inst, "```\nacross: CAT, ARE\ndown: CAT, ARE, TEN\n```")
        assert verdict.failure is Failure.FORMAT_INVALID

    def test_crosswords_case_insensitive(self, pools):
        inst = pools["full_crosswords"].accepted[Tier.EASY][0]
        answer = "across: cat, are, ten\ndown: Cat, Are, Ten"
        assert api.verify(inst, f"```\n{answer}\n```").reward == 1


class TestMaskMonotonicity:
    def test_more_masking_never_decreases_search_nodes(self):
        # Same base solution, increasing mask: solver work is monotone.
        from puzzleforge.tasks.grid import random_binario_solution

        rng = random.Random(77)
        solution = random_binario_solution(6, rng)
        cells = [(r, c) for r in range(6) for c in range(6)]
        rng.shuffle(cells)
        nodes = []
        for k in (6, 12, 18):
            puzzle = [list(row) for row in solution]
            for r, c in cells[:k]:
                puzzle[r][c] = None
            grid = [[v if v is not None else None for v in row] for row in puzzle]
            counter = _CountingSolver()
            counter.run(grid)
            nodes.append(counter.nodes)
        assert nodes[0] <= nodes[1] <= nodes[2]


class _CountingSolver:
    """Tiny exhaustive binario counter used as a difficulty proxy."""

    def __init__(self):
        self.nodes = 0

    def run(self, grid):
        n = len(grid)
        half = n // 2
        blanks = [(r, c) for r in range(n) for c in range(n) if grid[r][c] is None]

        def row(r):
            return [grid[r][c] for c in range(n)]

        def col(c):
            return [grid[r][c] for r in range(n)]

        def ok():
            for i in range(n):
                for line in (row(i), col(i)):
                    filled = [v for v in line if v is not None]
                    if filled.count(0) > half or filled.count(1) > half:
                        return False
                    for j in range(len(line) - 2):
                        trio = line[j : j + 3]
                        if None not in trio and trio[0] == trio[1] == trio[2]:
                            return False
            return True

        def rec(i):
            self.nodes += 1
            if not ok():
                return
            if i == len(blanks):
                return
            r, c = blanks[i]
            for v in (0, 1):
                grid[r][c] = v
                rec(i + 1)
                grid[r][c] = None

        rec(0)

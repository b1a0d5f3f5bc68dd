"""Sequential manipulation puzzles: rotations, reorderings, stack traces,
and sliding/cyclic tile boards.

Generation scrambles the solved state with random legal moves, so every
emitted instance is solvable and the inverse scramble is a free gold
witness. Verification replays the answer's moves step by step and rejects
the first illegal one.
"""

from __future__ import annotations

import random
import re
from typing import Any, Iterable, Mapping, Sequence

from ..core.errors import AnswerFormatError, PuzzleForgeError
from ..core.model import PuzzleInstance, Tier, Verdict
from ..extraction import (
    ExtractionSpec,
    ExtractMode,
    parse_int_list,
    parse_move_string,
    parse_rotation_chain,
    parse_str_list,
    render_int_grid,
)
from .base import GenOut, PuzzleTask, UNSOLVABLE


# ---------------------------------------------------------------------------
# Twiddle: counterclockwise 2x2 rotations indexed by top-left corner.
# ---------------------------------------------------------------------------


def rotate_ccw(grid: list[list[int]], i: int, j: int) -> None:
    a, b = grid[i][j], grid[i][j + 1]
    c, d = grid[i + 1][j], grid[i + 1][j + 1]
    grid[i][j], grid[i][j + 1] = b, d
    grid[i + 1][j], grid[i + 1][j + 1] = a, c


def rotate_cw(grid: list[list[int]], i: int, j: int) -> None:
    a, b = grid[i][j], grid[i][j + 1]
    c, d = grid[i + 1][j], grid[i + 1][j + 1]
    grid[i][j], grid[i][j + 1] = c, a
    grid[i + 1][j], grid[i + 1][j + 1] = d, b


def solved_grid(n: int) -> list[list[int]]:
    return [[r * n + c + 1 for c in range(n)] for r in range(n)]


class TwiddleTask(PuzzleTask):
    task_id = "twiddle"
    # An empty rotation list is a legitimate answer for an already-solved
    # board, so empty answer regions must survive extraction.
    extraction = ExtractionSpec(ExtractMode.LAST_FENCED_BLOCK, allow_empty=True)
    tier_params = {
        Tier.EASY: {"grid_size": 3, "rotations": (1, 3)},
        Tier.MEDIUM: {"grid_size": 3, "rotations": (4, 8)},
        Tier.HARD: {"grid_size": 4, "rotations": (6, 12)},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n = params["grid_size"]
        lo, hi = params["rotations"]
        count = rng.randint(lo, hi)
        grid = solved_grid(n)
        scramble = []
        for _ in range(count):
            i, j = rng.randrange(n - 1), rng.randrange(n - 1)
            rotate_cw(grid, i, j)
            scramble.append((i, j))
        payload = {"grid": grid, "grid_size": n, "rotations": count}
        gold = {"moves": [[i, j] for i, j in reversed(scramble)]}
        return GenOut(payload, gold, {})

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        n = payload["grid_size"]
        return {
            "n": str(n),
            "n_sq": str(n * n),
            "goal_grid": render_int_grid(solved_grid(n)),
            "grid": render_int_grid(payload["grid"]),
        }

    def parse_answer(self, candidate: str) -> Any:
        return parse_rotation_chain(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        n = instance.payload["grid_size"]
        grid = [list(row) for row in instance.payload["grid"]]
        for step, (i, j) in enumerate(answer, start=1):
            if not (0 <= i <= n - 2 and 0 <= j <= n - 2):
                return self.violated(f"step {step}: rotation corner ({i}, {j}) out of range")
            rotate_ccw(grid, i, j)
        if grid != solved_grid(n):
            return self.wrong("the sequence does not restore sorted order")
        return self.ok()

    @staticmethod
    def _render_moves(moves: Iterable[tuple[int, int]]) -> str:
        return "->".join(f"({i},{j})" for i, j in moves)

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return self._render_moves(tuple(m) for m in instance.gold["moves"])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        moves = [tuple(m) for m in instance.gold["moves"]]
        return self._render_moves(moves[:-1]) if len(moves) > 1 else "(0,0)->(0,0)->(0,0)"


# ---------------------------------------------------------------------------
# Car painting: window-constrained reordering minimizing color switches.
# ---------------------------------------------------------------------------


def _switches(colors: Sequence[str]) -> int:
    return sum(1 for a, b in zip(colors, colors[1:]) if a != b)


def optimal_car_painting(colors: Sequence[str], k: int) -> tuple[int, list[int]]:
    """(minimum switches, witness order of 1-based car ids).

    Exact sliding-window DP: at output slot t the chosen car's original
    position must lie within [t-k, t+k]; state is (lowest unplaced original
    index, bitmask over the next 2k originals, last color).
    """
    n = len(colors)
    width = 2 * k + 1
    memo: dict[tuple[int, int, str], tuple[int, int | None]] = {}

    def placed_count(i: int, mask: int) -> int:
        return (i - 1) + bin(mask).count("1")

    def solve(i: int, mask: int, last: str) -> tuple[int, int | None]:
        # i: smallest unplaced original (1-based); mask bit j = original i+j placed.
        if i > n and mask == 0:
            return 0, None
        key = (i, mask, last)
        if key in memo:
            return memo[key]
        t = placed_count(i, mask) + 1  # output slot being filled (1-based)
        best = (10**9, None)
        for j in range(width):
            origin = i + j
            if origin > n or mask >> j & 1:
                continue
            if abs(origin - t) > k:
                continue
            color = colors[origin - 1]
            cost = 0 if (last == "" or color == last) else 1
            new_mask = mask | (1 << j)
            new_i = i
            while new_mask & 1:
                new_mask >>= 1
                new_i += 1
            sub, _ = solve(new_i, new_mask, color)
            if cost + sub < best[0]:
                best = (cost + sub, origin)
        memo[key] = best
        return best

    total, _ = solve(1, 0, "")
    order: list[int] = []
    i, mask, last = 1, 0, ""
    while len(order) < n:
        _, origin = solve(i, mask, last)
        if origin is None:
            raise PuzzleForgeError("car painting DP produced no move")
        order.append(origin)
        j = origin - i
        mask |= 1 << j
        while mask & 1:
            mask >>= 1
            i += 1
        last = colors[origin - 1]
    return total, order


class CarPaintingTask(PuzzleTask):
    task_id = "car_painting"
    tier_params = {
        Tier.EASY: {"cars": 8, "colors": 2, "shift_range": 2, "skew": 0.5},
        Tier.MEDIUM: {"cars": 12, "colors": 3, "shift_range": 3, "skew": 0.5},
        Tier.HARD: {"cars": 16, "colors": 3, "shift_range": 4, "skew": 0.55},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n, m, k, skew = params["cars"], params["colors"], params["shift_range"], params["skew"]
        letters = [chr(ord("A") + i) for i in range(m)]
        colors = [rng.choice(letters)]
        for _ in range(n - 1):
            if rng.random() < skew:
                colors.append(colors[-1])
            else:
                colors.append(rng.choice(letters))
        optimum, witness = optimal_car_painting(colors, k)
        payload = {"colors": colors, "cars": n, "color_count": m, "window": k}
        gold = {"optimum": optimum, "order": witness}
        return GenOut(payload, gold, {})

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        n = payload["cars"]
        return {
            "n": str(n),
            "m": str(payload["color_count"]),
            "k": str(payload["window"]),
            "sequence": "[" + ", ".join(str(i) for i in range(1, n + 1)) + "]",
            "colors": "[" + ", ".join(f"'{c}'" for c in payload["colors"]) + "]",
        }

    def parse_answer(self, candidate: str) -> Any:
        return parse_int_list(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        n = instance.payload["cars"]
        k = instance.payload["window"]
        colors = instance.payload["colors"]
        if sorted(answer) != list(range(1, n + 1)):
            return self.malformed(f"answer must be a permutation of 1..{n}")
        for pos, car in enumerate(answer, start=1):
            if abs(car - pos) > k:
                return self.violated(f"car {car} moved {abs(car - pos)} positions (max {k})")
        got = _switches([colors[car - 1] for car in answer])
        if got != instance.gold["optimum"]:
            return self.wrong(f"{got} switches; optimum is {instance.gold['optimum']}")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return "[" + ", ".join(str(car) for car in instance.gold["order"]) + "]"

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        order = list(instance.gold["order"])
        order[0], order[-1] = order[-1], order[0]
        return "[" + ", ".join(str(car) for car in order) + "]"


# ---------------------------------------------------------------------------
# Stack permutation
# ---------------------------------------------------------------------------


def stack_trace(source: Sequence[int], target: Sequence[int]) -> list[str] | None:
    """Push/pop trace transforming source into target, or None if impossible."""
    trace: list[str] = []
    stack: list[int] = []
    idx = 0
    for want in target:
        if stack and stack[-1] == want:
            stack.pop()
            trace.append("Pop()")
            continue
        while idx < len(source) and source[idx] != want:
            stack.append(source[idx])
            trace.append(f"Push({source[idx]})")
            idx += 1
        if idx == len(source):
            return None
        trace.append(f"Push({source[idx]})")
        trace.append("Pop()")
        idx += 1
    return trace


class StackPermutationTask(PuzzleTask):
    task_id = "stack_permutation"
    sentinels = ("not a valid stack permutation",)
    tier_params = {
        Tier.EASY: {"length": 5},
        Tier.MEDIUM: {"length": 8},
        Tier.HARD: {"length": 12},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        length = params["length"]
        source = list(range(1, length + 1))
        rng.shuffle(source)
        want_feasible = rng.random() < 0.5
        if want_feasible:
            target = self._random_stack_output(source, rng)
        else:
            target = list(source)
            for _ in range(self.max_generation_tries):
                rng.shuffle(target)
                if stack_trace(source, target) is None:
                    break
            else:
                raise self.exhausted("no infeasible target sampled")
        trace = stack_trace(source, target)
        payload = {"source": source, "target": target, "length": length}
        gold = {"feasible": trace is not None, "trace": trace}
        return GenOut(payload, gold, {})

    @staticmethod
    def _random_stack_output(source: Sequence[int], rng: random.Random) -> list[int]:
        stack: list[int] = []
        out: list[int] = []
        idx = 0
        while len(out) < len(source):
            can_push = idx < len(source)
            if can_push and (not stack or rng.random() < 0.5):
                stack.append(source[idx])
                idx += 1
            else:
                out.append(stack.pop())
        return out

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        return {
            "input_seq": "[" + ", ".join(str(v) for v in payload["source"]) + "]",
            "output_seq": "[" + ", ".join(str(v) for v in payload["target"]) + "]",
        }

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        ops = parse_str_list(candidate)
        parsed = []
        for pos, op in enumerate(ops, start=1):
            op = op.strip()
            m = re.fullmatch(r"Push\(\s*(-?\d+)\s*\)", op, re.IGNORECASE)
            if m:
                parsed.append(("push", int(m.group(1))))
                continue
            if re.fullmatch(r"Pop\(\s*\)", op, re.IGNORECASE):
                parsed.append(("pop", None))
                continue
            raise AnswerFormatError(f"bad stack operation {op!r}", position=pos)
        return parsed

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        feasible = instance.gold["feasible"]
        if answer is UNSOLVABLE:
            return self.ok() if not feasible else self.wrongly_unsolvable()
        source = instance.payload["source"]
        target = instance.payload["target"]
        stack: list[int] = []
        out: list[int] = []
        idx = 0
        for step, (op, value) in enumerate(answer, start=1):
            if op == "push":
                if idx >= len(source):
                    return self.violated(f"step {step}: nothing left to push")
                if value != source[idx]:
                    return self.violated(
                        f"step {step}: pushed {value}, next input is {source[idx]}"
                    )
                stack.append(value)
                idx += 1
            else:
                if not stack:
                    return self.violated(f"step {step}: pop from an empty stack")
                out.append(stack.pop())
        if idx != len(source) or stack:
            return self.violated("trace must consume all input and empty the stack")
        if out != list(target):
            return self.wrong("trace output does not match the target sequence")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        if not instance.gold["feasible"]:
            return '"The output sequence is not a valid stack permutation."'
        return "[" + ", ".join(f'"{op}"' for op in instance.gold["trace"]) + "]"

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        if instance.gold["feasible"]:
            return '"The output sequence is not a valid stack permutation."'
        source = instance.payload["source"]
        trace = [f'"Push({v})"' for v in source] + ['"Pop()"'] * len(source)
        return "[" + ", ".join(trace) + "]"


# ---------------------------------------------------------------------------
# Sliding tile boards (blank-move puzzles).
# ---------------------------------------------------------------------------

_MOVE_DELTA = {"U": (-1, 0), "D": (1, 0), "L": (0, -1), "R": (0, 1)}
_OPPOSITE = {"U": "D", "D": "U", "L": "R", "R": "L"}


def sliding_goal(size: int) -> tuple[int, ...]:
    return tuple(list(range(1, size * size)) + [0])


def apply_blank_move(board: list[int], size: int, move: str) -> bool:
    """Move the blank one cell; False (board unchanged) if it would leave."""
    blank = board.index(0)
    r, c = divmod(blank, size)
    dr, dc = _MOVE_DELTA[move]
    nr, nc = r + dr, c + dc
    if not (0 <= nr < size and 0 <= nc < size):
        return False
    swap = nr * size + nc
    board[blank], board[swap] = board[swap], board[blank]
    return True


def inversion_count(board: Sequence[int]) -> int:
    tiles = [t for t in board if t != 0]
    return sum(
        1
        for i in range(len(tiles))
        for j in range(i + 1, len(tiles))
        if tiles[i] > tiles[j]
    )


def sliding_solvable(board: Sequence[int], size: int) -> bool:
    inv = inversion_count(board)
    if size % 2 == 1:
        return inv % 2 == 0
    blank_row_from_bottom = size - (board.index(0) // size)
    return (inv + blank_row_from_bottom) % 2 == 1


def _manhattan(board: Sequence[int], size: int) -> int:
    total = 0
    for idx, tile in enumerate(board):
        if tile == 0:
            continue
        goal = tile - 1
        total += abs(idx // size - goal // size) + abs(idx % size - goal % size)
    return total


def optimal_sliding_length(board: Sequence[int], size: int, max_depth: int = 60) -> int:
    """Exact optimum move count via iterative deepening with the Manhattan
    admissible heuristic. Raises on unsolvable or out-of-budget boards."""
    start = tuple(board)
    goal = sliding_goal(size)
    if start == goal:
        return 0
    if not sliding_solvable(start, size):
        raise PuzzleForgeError("board is not solvable")

    def dfs(state: list[int], g: int, bound: int, last: str | None) -> int | bool:
        h = _manhattan(state, size)
        f = g + h
        if f > bound:
            return f
        if h == 0:
            return True
        minimum = 10**9
        for move in "UDLR":
            if last is not None and move == _OPPOSITE[last]:
                continue
            if not apply_blank_move(state, size, move):
                continue
            result = dfs(state, g + 1, bound, move)
            apply_blank_move(state, size, _OPPOSITE[move])
            if result is True:
                return True
            minimum = min(minimum, result)
        return minimum

    bound = _manhattan(list(start), size)
    while bound <= max_depth:
        result = dfs(list(start), 0, bound, None)
        if result is True:
            return bound
        bound = result
    raise PuzzleForgeError(f"optimum beyond depth {max_depth}")


class _SlidingTask(PuzzleTask):
    size: int
    sentinels = ("no feasible move path",)

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        lo, hi = params["inversions"]
        depth = rng.randint(lo, hi)
        board = list(sliding_goal(self.size))
        moves: list[str] = []
        while len(moves) < depth:
            options = [m for m in "UDLR" if not moves or m != _OPPOSITE[moves[-1]]]
            move = options[rng.randrange(len(options))]
            if apply_blank_move(board, self.size, move):
                moves.append(move)
        gold_moves = "".join(_OPPOSITE[m] for m in reversed(moves))
        payload = {
            "board": [board[r * self.size : (r + 1) * self.size] for r in range(self.size)],
            "inversions": inversion_count(board),
            "scramble_depth": depth,
        }
        gold = {"solvable": True, "moves": gold_moves}
        return GenOut(payload, gold, {"require_optimal": False})

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        rows = [
            "  ".join(str(v) for v in row)
            for row in payload["board"]
        ]
        return {"grid": "\n".join(rows)}

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return parse_move_string(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        solvable = instance.gold["solvable"]
        if answer is UNSOLVABLE:
            return self.ok() if not solvable else self.wrongly_unsolvable()
        board = [v for row in instance.payload["board"] for v in row]
        for step, move in enumerate(answer, start=1):
            if not apply_blank_move(board, self.size, move):
                return self.violated(f"step {step}: move {move} leaves the board")
        if tuple(board) != sliding_goal(self.size):
            return self.wrong("the move sequence does not reach the goal state")
        if instance.verifier_params.get("require_optimal"):
            flat = [v for row in instance.payload["board"] for v in row]
            if len(answer) != optimal_sliding_length(flat, self.size):
                return self.wrong("a shorter sequence exists")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return instance.gold["moves"]

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        moves = instance.gold["moves"]
        # One extra legal move from the goal state never stays at the goal.
        board = list(sliding_goal(self.size))
        extra = next(m for m in "UL" if apply_blank_move(board, self.size, m))
        return moves + extra


class EightPuzzleTask(_SlidingTask):
    task_id = "eight_puzzle"
    size = 3
    tier_params = {
        Tier.EASY: {"inversions": (4, 8)},
        Tier.MEDIUM: {"inversions": (10, 16)},
        Tier.HARD: {"inversions": (18, 28)},
    }


class FifteenPuzzleTask(_SlidingTask):
    task_id = "fifteen_puzzle"
    size = 4
    tier_params = {
        Tier.EASY: {"inversions": (6, 10)},
        Tier.MEDIUM: {"inversions": (12, 20)},
        Tier.HARD: {"inversions": (22, 34)},
    }


# ---------------------------------------------------------------------------
# Cyclic-shift boards (row/column rotation puzzles).
# ---------------------------------------------------------------------------


def shift_row(grid: list[list[int]], row: int, steps: int) -> None:
    grid[row] = grid[row][steps:] + grid[row][:steps]


def shift_col(grid: list[list[int]], col: int, steps: int) -> None:
    column = [grid[r][col] for r in range(len(grid))]
    column = column[steps:] + column[:steps]
    for r in range(len(grid)):
        grid[r][col] = column[r]


class _CyclicTask(PuzzleTask):
    size: int
    sentinels = ("no valid sequence",)

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        lo, hi = params["inversions"]
        count = rng.randint(lo, hi)
        n = self.size
        grid = solved_grid(n)
        scramble: list[tuple[str, int, int]] = []
        for _ in range(count):
            kind = rng.choice("RC")
            index = rng.randrange(n)
            steps = rng.randint(1, n - 1)
            if kind == "R":
                shift_row(grid, index, steps)
            else:
                shift_col(grid, index, steps)
            scramble.append((kind, index, steps))
        gold_moves = [
            f"{kind}{index + 1}{n - steps}" for kind, index, steps in reversed(scramble)
        ]
        payload = {"board": grid, "scramble_depth": count}
        gold = {"solvable": True, "moves": gold_moves}
        return GenOut(payload, gold, {})

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        rows = ["  ".join(str(v) for v in row) for row in payload["board"]]
        return {"grid": "\n".join(rows)}

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        tokens = parse_str_list(candidate)
        moves = []
        for pos, token in enumerate(tokens, start=1):
            m = re.fullmatch(r"([RC])(\d)(\d)", token.strip().upper())
            if not m:
                raise AnswerFormatError(f"bad move token {token!r}", position=pos)
            moves.append((m.group(1), int(m.group(2)), int(m.group(3))))
        return moves

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        solvable = instance.gold["solvable"]
        if answer is UNSOLVABLE:
            return self.ok() if not solvable else self.wrongly_unsolvable()
        n = self.size
        grid = [list(row) for row in instance.payload["board"]]
        for step, (kind, index, steps) in enumerate(answer, start=1):
            if not (1 <= index <= n) or not (1 <= steps <= n - 1):
                return self.violated(f"step {step}: move {kind}{index}{steps} out of range")
            if kind == "R":
                shift_row(grid, index - 1, steps)
            else:
                shift_col(grid, index - 1, steps)
        if grid != solved_grid(n):
            return self.wrong("the move sequence does not sort the grid")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return "[" + ", ".join(f'"{m}"' for m in instance.gold["moves"]) + "]"

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        moves = list(instance.gold["moves"])
        if len(moves) > 1:
            moves = moves[:-1]
        else:
            moves.append("R11")
        return "[" + ", ".join(f'"{m}"' for m in moves) + "]"


class NinePuzzleTask(_CyclicTask):
    task_id = "nine_puzzle"
    size = 3
    tier_params = {
        Tier.EASY: {"inversions": (1, 2)},
        Tier.MEDIUM: {"inversions": (3, 5)},
        Tier.HARD: {"inversions": (6, 8)},
    }


class SixteenPuzzleTask(_CyclicTask):
    task_id = "sixteen_puzzle"
    size = 4
    tier_params = {
        Tier.EASY: {"inversions": (2, 3)},
        Tier.MEDIUM: {"inversions": (4, 6)},
        Tier.HARD: {"inversions": (7, 10)},
    }


# ---------------------------------------------------------------------------
# List-function induction (fixed pool).
# ---------------------------------------------------------------------------


class BigBenchSymbolicTask(PuzzleTask):
    task_id = "big_bench_symbolic"

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        blocks = []
        for i, (example_in, example_out) in enumerate(payload["examples"], start=1):
            blocks.append(
                f"Example {i}:\n{_render_list(example_in)} -> {_render_list(example_out)}"
            )
        return {
            "examples": "\n\n".join(blocks),
            "test_input": _render_list(payload["test_input"]),
        }

    def parse_answer(self, candidate: str) -> Any:
        return parse_int_list(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer == list(instance.gold["output"]):
            return self.ok()
        return self.wrong()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return _render_list(instance.gold["output"])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        output = list(instance.gold["output"])
        if output:
            output[rng.randrange(len(output))] += 1
        else:
            output = [0]
        return _render_list(output)


def _render_list(values: Sequence[int]) -> str:
    return "[" + ", ".join(str(v) for v in values) + "]"

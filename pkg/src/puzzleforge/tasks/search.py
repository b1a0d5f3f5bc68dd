"""State-space search puzzles: blackening grids, bulb placement, forced
mines, slash tilings, optimal tic-tac-toe moves, and mate-in-one checking.

Minesweeper gold is the full forced set: a cell is forced iff every mine
assignment consistent with the revealed counts mines it, certified by
component-wise constraint enumeration at generation time. Strict mode
(subset credit off) compares answers by set equality.
"""

from __future__ import annotations

import random
from collections import deque
from functools import lru_cache
from typing import Any, Iterable, Mapping, Sequence

from ..core.errors import AnswerFormatError, PuzzleForgeError
from ..core.model import PuzzleInstance, Tier, Verdict
from ..extraction import parse_coord_list, parse_int_grid, parse_quoted_board, render_coord_list, render_int_grid
from .base import GenOut, PuzzleTask, UNSOLVABLE
from . import chess_engine


def _neighbors4(r: int, c: int) -> Iterable[tuple[int, int]]:
    yield r - 1, c
    yield r + 1, c
    yield r, c - 1
    yield r, c + 1


def _neighbors8(r: int, c: int) -> Iterable[tuple[int, int]]:
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr or dc:
                yield r + dr, c + dc


# ---------------------------------------------------------------------------
# Hitori
# ---------------------------------------------------------------------------


def _whites_connected(black: set[tuple[int, int]], n: int) -> bool:
    whites = [(r, c) for r in range(n) for c in range(n) if (r, c) not in black]
    if not whites:
        return False
    seen = {whites[0]}
    queue = deque([whites[0]])
    while queue:
        r, c = queue.popleft()
        for p in _neighbors4(r, c):
            if 0 <= p[0] < n and 0 <= p[1] < n and p not in black and p not in seen:
                seen.add(p)
                queue.append(p)
    return len(seen) == len(whites)


class HitoriTask(PuzzleTask):
    task_id = "hitori"
    sentinels = ("no valid solution",)
    tier_params = {
        Tier.EASY: {"grid_size": 4},
        Tier.MEDIUM: {"grid_size": 6},
        Tier.HARD: {"grid_size": 8},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n = params["grid_size"]
        target_black = max(1, n * n // 5)
        for _ in range(self.max_generation_tries):
            black: set[tuple[int, int]] = set()
            cells = [(r, c) for r in range(n) for c in range(n)]
            rng.shuffle(cells)
            for cell in cells:
                if len(black) == target_black:
                    break
                r, c = cell
                if any(p in black for p in _neighbors4(r, c)):
                    continue
                trial = black | {cell}
                if _whites_connected(trial, n):
                    black = trial
            if len(black) < target_black:
                continue
            values = self._fill_whites(n, black, rng)
            if values is None:
                continue
            for r, c in sorted(black):
                values[r][c] = self._duplicate_value(values, black, r, c, n, rng)
            payload = {"grid": values, "grid_size": n}
            gold = {"black": sorted([r, c] for r, c in black)}
            return GenOut(payload, gold, {})
        raise self.exhausted("no consistent hitori layout")

    @staticmethod
    def _fill_whites(n, black, rng) -> list[list[int]] | None:
        grid = [[0] * n for _ in range(n)]
        whites = [(r, c) for r in range(n) for c in range(n) if (r, c) not in black]
        values = list(range(1, n + 1))

        def fill(idx: int) -> bool:
            if idx == len(whites):
                return True
            r, c = whites[idx]
            rng.shuffle(values)
            for v in values:
                if any(grid[r][j] == v for j in range(n) if (r, j) not in black):
                    continue
                if any(grid[i][c] == v for i in range(n) if (i, c) not in black):
                    continue
                grid[r][c] = v
                if fill(idx + 1):
                    return True
                grid[r][c] = 0
            return False

        return grid if fill(0) else None

    @staticmethod
    def _duplicate_value(grid, black, r, c, n, rng) -> int:
        # Give the blacked cell a value that collides with a white peer, so
        # leaving it white is visibly wrong somewhere.
        peers = [grid[r][j] for j in range(n) if (r, j) not in black]
        peers += [grid[i][c] for i in range(n) if (i, c) not in black]
        if peers:
            return peers[rng.randrange(len(peers))]
        return rng.randint(1, n)

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        rows = ["[" + ", ".join(str(v) for v in row) + "]" for row in payload["grid"]]
        return {"grid": "[" + ",\n ".join(rows) + "]"}

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return parse_coord_list(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer is UNSOLVABLE:
            return self.wrongly_unsolvable()
        n = instance.payload["grid_size"]
        grid = instance.payload["grid"]
        black = set()
        for r, c in answer:
            if not (0 <= r < n and 0 <= c < n):
                return self.malformed(f"coordinate ({r}, {c}) outside the grid")
            if (r, c) in black:
                return self.malformed(f"duplicate coordinate ({r}, {c})")
            black.add((r, c))
        for r, c in black:
            for p in _neighbors4(r, c):
                if p in black:
                    return self.violated("two black cells are adjacent")
        if not _whites_connected(black, n):
            return self.violated("white cells are not connected")
        for r in range(n):
            seen = set()
            for c in range(n):
                if (r, c) in black:
                    continue
                if grid[r][c] in seen:
                    return self.violated(f"duplicate value {grid[r][c]} in row {r}")
                seen.add(grid[r][c])
        for c in range(n):
            seen = set()
            for r in range(n):
                if (r, c) in black:
                    continue
                if grid[r][c] in seen:
                    return self.violated(f"duplicate value {grid[r][c]} in column {c}")
                seen.add(grid[r][c])
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return render_coord_list([tuple(b) for b in instance.gold["black"]])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        n = instance.payload["grid_size"]
        black = [tuple(b) for b in instance.gold["black"]]
        r, c = black[rng.randrange(len(black))]
        neighbor = next(p for p in _neighbors4(r, c) if 0 <= p[0] < n and 0 <= p[1] < n)
        return render_coord_list(black + [neighbor])


# ---------------------------------------------------------------------------
# Kakurasu
# ---------------------------------------------------------------------------


class KakurasuTask(PuzzleTask):
    task_id = "kakurasu"
    sentinels = ("no valid solution",)
    tier_params = {
        Tier.EASY: {"grid_size": 4, "black_rate": 0.35},
        Tier.MEDIUM: {"grid_size": 5, "black_rate": 0.4},
        Tier.HARD: {"grid_size": 7, "black_rate": 0.45},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n = params["grid_size"]
        rate = params["black_rate"]
        black = [
            (r, c) for r in range(n) for c in range(n) if rng.random() < rate
        ]
        if not black:
            black = [(rng.randrange(n), rng.randrange(n))]
        row_sums = [sum(c + 1 for r, c in black if r == row) for row in range(n)]
        col_sums = [sum(r + 1 for r, c in black if c == col) for col in range(n)]
        payload = {
            "rows": n,
            "cols": n,
            "row_sums": row_sums,
            "col_sums": col_sums,
            "black_rate": rate,
        }
        gold = {"black": sorted([r + 1, c + 1] for r, c in black)}
        return GenOut(payload, gold, {})

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        return {
            "rows": str(payload["rows"]),
            "cols": str(payload["cols"]),
            "row_sums": str(payload["row_sums"]),
            "col_sums": str(payload["col_sums"]),
        }

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return parse_coord_list(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer is UNSOLVABLE:
            return self.wrongly_unsolvable()
        rows, cols = instance.payload["rows"], instance.payload["cols"]
        black = set()
        for r, c in answer:
            if not (1 <= r <= rows and 1 <= c <= cols):
                return self.malformed(f"coordinate ({r}, {c}) outside the board")
            if (r, c) in black:
                return self.malformed(f"duplicate coordinate ({r}, {c})")
            black.add((r, c))
        for row in range(1, rows + 1):
            got = sum(c for r, c in black if r == row)
            if got != instance.payload["row_sums"][row - 1]:
                return self.violated(f"row {row} sums to {got}")
        for col in range(1, cols + 1):
            got = sum(r for r, c in black if c == col)
            if got != instance.payload["col_sums"][col - 1]:
                return self.violated(f"column {col} sums to {got}")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return render_coord_list([tuple(b) for b in instance.gold["black"]])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        black = [tuple(b) for b in instance.gold["black"]]
        del black[rng.randrange(len(black))]
        return render_coord_list(black) if black else "[]"


# ---------------------------------------------------------------------------
# Light Up
# ---------------------------------------------------------------------------


def _lightup_sees(grid: Sequence[str], bulbs: set[tuple[int, int]], r: int, c: int) -> bool:
    """Does a bulb at (r, c) see another bulb along a row/column?"""
    h, w = len(grid), len(grid[0])
    for dr, dc in ((0, 1), (0, -1), (1, 0), (-1, 0)):
        nr, nc = r + dr, c + dc
        while 0 <= nr < h and 0 <= nc < w and grid[nr][nc] == ".":
            if (nr, nc) in bulbs:
                return True
            nr += dr
            nc += dc
    return False


def _lightup_lit(grid: Sequence[str], bulbs: set[tuple[int, int]]) -> set[tuple[int, int]]:
    h, w = len(grid), len(grid[0])
    lit = set(bulbs)
    for r, c in bulbs:
        for dr, dc in ((0, 1), (0, -1), (1, 0), (-1, 0)):
            nr, nc = r + dr, c + dc
            while 0 <= nr < h and 0 <= nc < w and grid[nr][nc] == ".":
                lit.add((nr, nc))
                nr += dr
                nc += dc
    return lit


class LightUpTask(PuzzleTask):
    task_id = "light_up"
    sentinels = ("no solution",)
    tier_params = {
        Tier.EASY: {"grid_size": 5, "black_ratio": 0.2, "numbered_ratio": 0.7},
        Tier.MEDIUM: {"grid_size": 6, "black_ratio": 0.2, "numbered_ratio": 0.5},
        Tier.HARD: {"grid_size": 8, "black_ratio": 0.25, "numbered_ratio": 0.4},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n = params["grid_size"]
        for _ in range(self.max_generation_tries):
            walls = {
                (r, c)
                for r in range(n)
                for c in range(n)
                if rng.random() < params["black_ratio"]
            }
            base = ["".join("#" if (r, c) in walls else "." for c in range(n)) for r in range(n)]
            bulbs = self._place_bulbs(base, rng)
            if bulbs is None:
                continue
            counts = {
                w: sum(1 for p in _neighbors4(*w) if p in bulbs)
                for w in walls
            }
            numbered = [
                w for w in sorted(walls) if 1 <= counts[w] <= 4
            ]
            rng.shuffle(numbered)
            keep = numbered[: round(params["numbered_ratio"] * len(numbered))]
            grid = [
                "".join(
                    str(counts[(r, c)]) if (r, c) in keep
                    else ("#" if (r, c) in walls else ".")
                    for c in range(n)
                )
                for r in range(n)
            ]
            payload = {"grid": grid, "grid_size": n}
            gold = {"bulbs": sorted([r, c] for r, c in bulbs)}
            return GenOut(payload, gold, {})
        raise self.exhausted("no fully lightable layout")

    @staticmethod
    def _place_bulbs(grid: Sequence[str], rng: random.Random) -> set[tuple[int, int]] | None:
        h, w = len(grid), len(grid[0])
        empties = [(r, c) for r in range(h) for c in range(w) if grid[r][c] == "."]
        bulbs: set[tuple[int, int]] = set()
        while True:
            lit = _lightup_lit(grid, bulbs)
            unlit = [p for p in empties if p not in lit]
            if not unlit:
                return bulbs
            target = unlit[rng.randrange(len(unlit))]
            candidates = [target]
            r, c = target
            for dr, dc in ((0, 1), (0, -1), (1, 0), (-1, 0)):
                nr, nc = r + dr, c + dc
                while 0 <= nr < h and 0 <= nc < w and grid[nr][nc] == ".":
                    candidates.append((nr, nc))
                    nr += dr
                    nc += dc
            legal = [p for p in candidates if not _lightup_sees(grid, bulbs, *p)]
            if not legal:
                return None
            bulbs.add(legal[rng.randrange(len(legal))])

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        return {"grid": "\n".join(payload["grid"])}

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return parse_coord_list(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer is UNSOLVABLE:
            return self.wrongly_unsolvable()
        grid = instance.payload["grid"]
        n = instance.payload["grid_size"]
        bulbs = set()
        for r, c in answer:
            if not (0 <= r < n and 0 <= c < n):
                return self.malformed(f"coordinate ({r}, {c}) outside the grid")
            if grid[r][c] != ".":
                return self.violated(f"bulb on a non-empty cell ({r}, {c})")
            if (r, c) in bulbs:
                return self.malformed(f"duplicate bulb ({r}, {c})")
            bulbs.add((r, c))
        for r, c in bulbs:
            if _lightup_sees(grid, bulbs - {(r, c)}, r, c):
                return self.violated("a bulb illuminates another bulb")
        lit = _lightup_lit(grid, bulbs)
        for r in range(n):
            for c in range(n):
                if grid[r][c] == "." and (r, c) not in lit:
                    return self.violated(f"cell ({r}, {c}) is not illuminated")
        for r in range(n):
            for c in range(n):
                if grid[r][c].isdigit():
                    got = sum(1 for p in _neighbors4(r, c) if p in bulbs)
                    if got != int(grid[r][c]):
                        return self.violated(
                            f"numbered wall ({r}, {c}) has {got} adjacent bulbs"
                        )
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return render_coord_list([tuple(b) for b in instance.gold["bulbs"]])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        grid = instance.payload["grid"]
        bulbs = [tuple(b) for b in instance.gold["bulbs"]]
        bulb_set = set(bulbs)
        h, w = len(grid), len(grid[0])
        for r, c in bulbs:
            for dr, dc in ((0, 1), (0, -1), (1, 0), (-1, 0)):
                nr, nc = r + dr, c + dc
                while 0 <= nr < h and 0 <= nc < w and grid[nr][nc] == ".":
                    if (nr, nc) not in bulb_set:
                        return render_coord_list(bulbs + [(nr, nc)])
                    nr += dr
                    nc += dc
        return render_coord_list(bulbs[:-1])


# ---------------------------------------------------------------------------
# Minesweeper forced-mine certification
# ---------------------------------------------------------------------------


def forced_mines(
    grid: Sequence[Sequence[int]],
    node_budget: int = 200_000,
) -> set[tuple[int, int]] | None:
    """Cells mined under EVERY assignment consistent with the revealed counts.

    ``grid`` uses -2 for unknown cells and 0-8 for revealed counts. Returns
    None when the enumeration exceeds the node budget.
    """
    h, w = len(grid), len(grid[0])
    constraints = []  # (count, [unknown neighbor cells])
    for r in range(h):
        for c in range(w):
            if grid[r][c] >= 0:
                unknowns = [
                    p
                    for p in _neighbors8(r, c)
                    if 0 <= p[0] < h and 0 <= p[1] < w and grid[p[0]][p[1]] == -2
                ]
                if unknowns:
                    constraints.append((grid[r][c], unknowns))

    # Group constraints into connected components over shared variables.
    var_constraints: dict[tuple[int, int], list[int]] = {}
    for idx, (_, unknowns) in enumerate(constraints):
        for p in unknowns:
            var_constraints.setdefault(p, []).append(idx)
    forced: set[tuple[int, int]] = set()
    seen_c: set[int] = set()
    nodes = 0

    for start in range(len(constraints)):
        if start in seen_c:
            continue
        comp_c = [start]
        seen_c.add(start)
        queue = deque([start])
        comp_vars: list[tuple[int, int]] = []
        comp_var_set: set[tuple[int, int]] = set()
        while queue:
            ci = queue.popleft()
            for p in constraints[ci][1]:
                if p not in comp_var_set:
                    comp_var_set.add(p)
                    comp_vars.append(p)
                for cj in var_constraints[p]:
                    if cj not in seen_c:
                        seen_c.add(cj)
                        comp_c.append(cj)
                        queue.append(cj)
        result = _enumerate_component(
            comp_vars, [constraints[i] for i in comp_c], node_budget
        )
        if result is None:
            return None
        nodes += result[1]
        if nodes > node_budget:
            return None
        forced |= result[0]
    return forced


def _enumerate_component(variables, constraints, node_budget):
    var_index = {p: i for i, p in enumerate(variables)}
    per_constraint = [
        (count, [var_index[p] for p in unknowns]) for count, unknowns in constraints
    ]
    watchers: list[list[int]] = [[] for _ in variables]
    for ci, (_, idxs) in enumerate(per_constraint):
        for vi in idxs:
            watchers[vi].append(ci)
    assigned = [-1] * len(variables)
    placed = [0] * len(per_constraint)
    remaining = [len(idxs) for _, idxs in per_constraint]
    always_mine = [True] * len(variables)
    always_free = [True] * len(variables)
    found = 0
    nodes = 0

    def consistent(ci: int) -> bool:
        count, _ = per_constraint[ci]
        return placed[ci] <= count <= placed[ci] + remaining[ci]

    def assign(vi: int, value: int) -> bool:
        assigned[vi] = value
        for ci in watchers[vi]:
            placed[ci] += value
            remaining[ci] -= 1
        return all(consistent(ci) for ci in watchers[vi])

    def unassign(vi: int, value: int) -> None:
        assigned[vi] = -1
        for ci in watchers[vi]:
            placed[ci] -= value
            remaining[ci] += 1

    def backtrack(vi: int) -> bool:
        nonlocal found, nodes
        nodes += 1
        if nodes > node_budget:
            raise PuzzleForgeError("budget")
        if vi == len(variables):
            found += 1
            for i, value in enumerate(assigned):
                if value == 1:
                    always_free[i] = False
                else:
                    always_mine[i] = False
            return all(not m for m in always_mine) and all(not f for f in always_free)
        for value in (0, 1):
            ok = assign(vi, value)
            if ok and backtrack(vi + 1):
                unassign(vi, value)
                return True
            unassign(vi, value)
        return False

    try:
        backtrack(0)
    except PuzzleForgeError:
        return None
    if found == 0:
        return set(), nodes
    mines = {variables[i] for i in range(len(variables)) if always_mine[i]}
    return mines, nodes


class MinesweeperTask(PuzzleTask):
    task_id = "minesweeper"
    sentinels = ("unable to determine",)
    tier_params = {
        Tier.EASY: {"board_size": 5, "mine_density": 0.15, "reveal_ratio": 0.55},
        Tier.MEDIUM: {"board_size": 7, "mine_density": 0.18, "reveal_ratio": 0.45},
        Tier.HARD: {"board_size": 9, "mine_density": 0.2, "reveal_ratio": 0.4},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n = params["board_size"]
        for _ in range(self.max_generation_tries):
            mines = {
                (r, c)
                for r in range(n)
                for c in range(n)
                if rng.random() < params["mine_density"]
            }
            if not mines or len(mines) == n * n:
                continue
            safe = [(r, c) for r in range(n) for c in range(n) if (r, c) not in mines]
            rng.shuffle(safe)
            reveal = set(safe[: max(1, round(params["reveal_ratio"] * len(safe)))])
            grid = [
                [
                    (
                        sum(1 for p in _neighbors8(r, c) if p in mines)
                        if (r, c) in reveal
                        else -2
                    )
                    for c in range(n)
                ]
                for r in range(n)
            ]
            forced = forced_mines(grid)
            if forced is None or not forced:
                continue
            payload = {"grid": grid, "board_size": n}
            gold = {"forced": sorted([r, c] for r, c in forced)}
            return GenOut(payload, gold, {})
        raise self.exhausted("no board with a nonempty forced-mine set")

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        rows = ["[" + ", ".join(str(v) for v in row) + "]" for row in payload["grid"]]
        return {"grid": "[" + ",\n ".join(rows) + "]"}

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return parse_coord_list(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        forced = {tuple(p) for p in instance.gold["forced"]}
        if answer is UNSOLVABLE:
            return self.ok() if not forced else self.wrongly_unsolvable()
        n = instance.payload["board_size"]
        grid = instance.payload["grid"]
        got = set()
        for r, c in answer:
            if not (0 <= r < n and 0 <= c < n):
                return self.malformed(f"coordinate ({r}, {c}) outside the board")
            if grid[r][c] != -2:
                return self.violated(f"cell ({r}, {c}) is already revealed")
            got.add((r, c))
        if got == forced:
            return self.ok()
        return self.wrong(
            f"answer names {len(got)} cells; the determinable set has {len(forced)}"
        )

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        forced = [tuple(p) for p in instance.gold["forced"]]
        if not forced:
            return "Unable to determine any mine locations."
        return render_coord_list(forced)

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        forced = [tuple(p) for p in instance.gold["forced"]]
        del forced[rng.randrange(len(forced))]
        return render_coord_list(forced) if forced else "[]"


# ---------------------------------------------------------------------------
# Slant
# ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """False if a and b were already connected (a cycle would form)."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def slant_edges(grid: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Lattice-point edges induced by a slash grid (1 = '/', -1 = '\\')."""
    rows, cols = len(grid), len(grid[0])
    width = cols + 1
    edges = []
    for r in range(rows):
        for c in range(cols):
            if grid[r][c] == 1:  # '/': top-right to bottom-left
                edges.append((r * width + c + 1, (r + 1) * width + c))
            else:  # '\': top-left to bottom-right
                edges.append((r * width + c, (r + 1) * width + c + 1))
    return edges


def slant_acyclic(grid: Sequence[Sequence[int]]) -> bool:
    rows, cols = len(grid), len(grid[0])
    uf = _UnionFind((rows + 1) * (cols + 1))
    return all(uf.union(a, b) for a, b in slant_edges(grid))


def slant_counts(grid: Sequence[Sequence[int]]) -> list[list[int]]:
    rows, cols = len(grid), len(grid[0])
    counts = [[0] * (cols + 1) for _ in range(rows + 1)]
    for r in range(rows):
        for c in range(cols):
            if grid[r][c] == 1:
                counts[r][c + 1] += 1
                counts[r + 1][c] += 1
            else:
                counts[r][c] += 1
                counts[r + 1][c + 1] += 1
    return counts


class SlantTask(PuzzleTask):
    task_id = "slant"
    tier_params = {
        Tier.EASY: {"rows": 4, "cols": 4, "hint_ratio": 0.8},
        Tier.MEDIUM: {"rows": 5, "cols": 5, "hint_ratio": 0.65},
        Tier.HARD: {"rows": 7, "cols": 7, "hint_ratio": 0.5},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        rows, cols = params["rows"], params["cols"]
        for _ in range(self.max_generation_tries):
            grid = self._acyclic_grid(rows, cols, rng)
            if grid is None:
                continue
            counts = slant_counts(grid)
            points = [(r, c) for r in range(rows + 1) for c in range(cols + 1)]
            rng.shuffle(points)
            keep = set(points[: max(1, round(params["hint_ratio"] * len(points)))])
            hints = [
                [counts[r][c] if (r, c) in keep else -1 for c in range(cols + 1)]
                for r in range(rows + 1)
            ]
            payload = {"hints": hints, "rows": rows, "cols": cols}
            gold = {"grid": grid}
            return GenOut(payload, gold, {})
        raise self.exhausted("no acyclic slash grid sampled")

    @staticmethod
    def _acyclic_grid(rows: int, cols: int, rng: random.Random) -> list[list[int]] | None:
        width = cols + 1
        uf = _UnionFind((rows + 1) * width)
        grid = [[0] * cols for _ in range(rows)]
        for r in range(rows):
            for c in range(cols):
                slash_edge = (r * width + c + 1, (r + 1) * width + c)
                back_edge = (r * width + c, (r + 1) * width + c + 1)
                options = [(1, slash_edge), (-1, back_edge)]
                if rng.random() < 0.5:
                    options.reverse()
                placed = False
                for value, (a, b) in options:
                    if uf.find(a) != uf.find(b):
                        uf.union(a, b)
                        grid[r][c] = value
                        placed = True
                        break
                if not placed:
                    return None
        return grid

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        lines = [
            " ".join("." if v == -1 else str(v) for v in row)
            for row in payload["hints"]
        ]
        return {"hint_grid": "\n".join(lines)}

    def parse_answer(self, candidate: str) -> Any:
        grid = parse_int_grid(candidate)
        for row in grid:
            for v in row:
                if v not in (1, -1):
                    raise AnswerFormatError(f"slant cells must be 1 or -1, got {v!r}")
        return grid

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        rows, cols = instance.payload["rows"], instance.payload["cols"]
        hints = instance.payload["hints"]
        if len(answer) != rows or any(len(row) != cols for row in answer):
            return self.malformed(f"expected a {rows}x{cols} grid")
        counts = slant_counts(answer)
        for r in range(rows + 1):
            for c in range(cols + 1):
                if hints[r][c] != -1 and counts[r][c] != hints[r][c]:
                    return self.violated(f"intersection ({r}, {c}) count mismatch")
        if not slant_acyclic(answer):
            return self.violated("the diagonal lines form a loop")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return render_int_grid(instance.gold["grid"])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        grid = [list(row) for row in instance.gold["grid"]]
        hints = instance.payload["hints"]
        cells = [(r, c) for r in range(len(grid)) for c in range(len(grid[0]))]
        rng.shuffle(cells)
        for r, c in cells:
            corners = [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)]
            if any(hints[pr][pc] != -1 for pr, pc in corners):
                grid[r][c] = -grid[r][c]
                return render_int_grid(grid)
        grid[0][0] = -grid[0][0]
        return render_int_grid(grid)


# ---------------------------------------------------------------------------
# Tic tac toe
# ---------------------------------------------------------------------------

_LINES = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),
    (0, 3, 6), (1, 4, 7), (2, 5, 8),
    (0, 4, 8), (2, 4, 6),
)


def ttt_winner(board: tuple[str, ...]) -> str | None:
    for a, b, c in _LINES:
        if board[a] and board[a] == board[b] == board[c]:
            return board[a]
    return None


@lru_cache(maxsize=None)
def ttt_value(board: tuple[str, ...], player: str) -> int:
    """Game value for ``player`` to move: +1 win, 0 draw, -1 loss."""
    winner = ttt_winner(board)
    if winner is not None:
        return 1 if winner == player else -1
    if all(board):
        return 0
    other = "O" if player == "X" else "X"
    best = -2
    for i in range(9):
        if not board[i]:
            child = board[:i] + (player,) + board[i + 1 :]
            best = max(best, -ttt_value(child, other))
            if best == 1:
                break
    return best


def ttt_optimal_moves(board: tuple[str, ...], player: str) -> list[int]:
    other = "O" if player == "X" else "X"
    scored = []
    for i in range(9):
        if not board[i]:
            child = board[:i] + (player,) + board[i + 1 :]
            winner = ttt_winner(child)
            if winner == player:
                value = 1
            elif all(child):
                value = 0
            else:
                value = -ttt_value(child, other)
            scored.append((i, value))
    best = max(value for _, value in scored)
    return [i for i, value in scored if value == best]


class TicTacToeTask(PuzzleTask):
    task_id = "tictactoe"
    tier_params = {
        Tier.EASY: {"phase": "win"},
        Tier.MEDIUM: {"phase": "block"},
        Tier.HARD: {"phase": "open"},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        phase = params["phase"]
        for _ in range(self.max_generation_tries * 5):
            board, player = self._random_position(rng)
            if board is None:
                continue
            if not self._matches_phase(board, player, phase):
                continue
            optimal = ttt_optimal_moves(board, player)
            payload = {
                "board": [[board[r * 3 + c] for c in range(3)] for r in range(3)],
                "player": player,
                "phase": phase,
            }
            gold = {"optimal": sorted([divmod(i, 3)[0], divmod(i, 3)[1]] for i in optimal)}
            return GenOut(payload, gold, {})
        raise self.exhausted(f"no position matched phase {phase!r}")

    @staticmethod
    def _random_position(rng: random.Random):
        moves = rng.randrange(2, 7)
        board = [""] * 9
        player = "X"
        for _ in range(moves):
            empties = [i for i in range(9) if not board[i]]
            board[rng.choice(empties)] = player
            if ttt_winner(tuple(board)):
                return None, None
            player = "O" if player == "X" else "X"
        return tuple(board), player

    @staticmethod
    def _matches_phase(board: tuple[str, ...], player: str, phase: str) -> bool:
        other = "O" if player == "X" else "X"

        def immediate_win(who: str) -> bool:
            for i in range(9):
                if not board[i]:
                    child = board[:i] + (who,) + board[i + 1 :]
                    if ttt_winner(child) == who:
                        return True
            return False

        if phase == "win":
            return immediate_win(player)
        if phase == "block":
            return not immediate_win(player) and immediate_win(other)
        return not immediate_win(player) and not immediate_win(other)

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        rows = []
        for r in range(3):
            cells = [payload["board"][r][c] or " " for c in range(3)]
            rows.append(" | ".join(cells))
        return {"board": "\n---------\n".join(rows), "player": payload["player"]}

    def parse_answer(self, candidate: str) -> Any:
        return parse_quoted_board(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        board = instance.payload["board"]
        player = instance.payload["player"]
        if len(answer) != 3 or any(len(row) != 3 for row in answer):
            return self.malformed("expected a 3x3 board")
        changes = []
        for r in range(3):
            for c in range(3):
                old = board[r][c]
                new = answer[r][c]
                if new not in ("", "X", "O"):
                    return self.malformed(f"cell ({r}, {c}) must be X, O, or empty")
                if old and new != old:
                    return self.violated(f"existing mark at ({r}, {c}) was changed")
                if not old and new:
                    changes.append((r, c, new))
        if len(changes) != 1:
            return self.violated(f"expected exactly one new mark, found {len(changes)}")
        r, c, mark = changes[0]
        if mark != player:
            return self.violated(f"the new mark must be {player}")
        if [r, c] not in instance.gold["optimal"]:
            return self.wrong(f"({r}, {c}) is not an optimal move")
        return self.ok()

    def _render_board(self, board: Sequence[Sequence[str]]) -> str:
        return "\n".join(" ".join(f'"{cell}"' for cell in row) for row in board)

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        board = [list(row) for row in instance.payload["board"]]
        r, c = instance.gold["optimal"][0]
        board[r][c] = instance.payload["player"]
        return self._render_board(board)

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        board = [list(row) for row in instance.payload["board"]]
        player = instance.payload["player"]
        optimal = {tuple(m) for m in instance.gold["optimal"]}
        empties = [(r, c) for r in range(3) for c in range(3) if not board[r][c]]
        suboptimal = [p for p in empties if p not in optimal]
        if suboptimal:
            r, c = suboptimal[rng.randrange(len(suboptimal))]
            board[r][c] = player
        else:
            r, c = empties[rng.randrange(len(empties))]
            board[r][c] = "O" if player == "X" else "X"
        return self._render_board(board)


# ---------------------------------------------------------------------------
# Checkmate in one (fixed pool, backed by the rules engine)
# ---------------------------------------------------------------------------


class CheckmateInOneTask(PuzzleTask):
    task_id = "checkmate_in_one"

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        tokens = payload["moves"]
        lines = []
        for i in range(0, len(tokens), 2):
            number = i // 2 + 1
            pair = tokens[i : i + 2]
            lines.append(f"{number}. " + " ".join(pair))
        if len(tokens) % 2 == 0:
            lines.append(f"{len(tokens) // 2 + 1}.")
        return {"moves": "\n".join(lines)}

    def parse_answer(self, candidate: str) -> Any:
        token = candidate.strip().split()[-1] if candidate.strip() else ""
        if not token:
            raise AnswerFormatError("empty move")
        return token

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        board = chess_engine.Board()
        try:
            for token in instance.payload["moves"]:
                board.play_san(token)
        except chess_engine.IllegalMoveError as exc:
            return self.malformed(f"instance move list does not replay: {exc}")
        try:
            move = board.parse_san(answer)
        except chess_engine.IllegalMoveError as exc:
            return self.malformed(str(exc))
        board.make(move)
        if board.is_checkmate():
            return self.ok()
        return self.wrong(f"{answer} does not deliver checkmate")

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return instance.gold["move"]

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        board = chess_engine.Board()
        for token in instance.payload["moves"]:
            board.play_san(token)
        legal = board.legal_moves()
        rng.shuffle(legal)
        for move in legal:
            board.make(move)
            mate = board.is_checkmate()
            board.unmake()
            if not mate:
                return board.san_with_suffix(move)
        return "Zz9"

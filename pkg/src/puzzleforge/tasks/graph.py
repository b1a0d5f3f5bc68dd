"""Graph traversal tasks: vertex tours, grid mazes, and tree navigation.

YES-instances plant a witness (a random tour or a reachable maze) so gold
validity is free; NO-instances are certified by the exact solver before
they are emitted, and the certification is re-checkable at any budget.
"""

from __future__ import annotations

import random
import re
from collections import deque
from typing import Any, Iterable, Mapping, Sequence

from ..core.errors import AnswerFormatError, PuzzleForgeError
from ..core.model import PuzzleInstance, Tier, Verdict
from ..extraction import ExtractionSpec, ExtractMode, parse_int_list, parse_rotation_chain
from .base import GenOut, PuzzleTask, UNSOLVABLE


class SolverBudgetExceeded(PuzzleForgeError):
    pass


# ---------------------------------------------------------------------------
# Exact Hamiltonian search with degree pruning.
# ---------------------------------------------------------------------------


def exact_hamiltonian(
    n: int,
    edges: Iterable[Sequence[int]],
    mode: str,
    node_budget: int = 500_000,
) -> list[int] | None:
    """A Hamiltonian path/cycle witness, or None if provably absent.

    Raises SolverBudgetExceeded when the backtracking search exceeds the
    budget, in which case nothing is certified.
    """
    if mode not in ("path", "cycle"):
        raise ValueError(f"mode must be path or cycle, got {mode!r}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    if n == 1:
        return [0, 0] if mode == "cycle" else [0]

    min_degree = 2 if mode == "cycle" else 1
    if any(len(adj[v]) < min_degree for v in range(n)):
        return None
    # Connectivity is necessary for both modes.
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != n:
        return None

    nodes = 0
    path: list[int] = []
    visited = [False] * n

    def extend(u: int, starts: Sequence[int]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise SolverBudgetExceeded(f"hamiltonian search exceeded {node_budget} nodes")
        path.append(u)
        visited[u] = True
        if len(path) == n:
            if mode == "path" or path[0] in adj[u]:
                return True
            path.pop()
            visited[u] = False
            return False
        neighbors = sorted(adj[u] - {w for w in adj[u] if visited[w]}, key=lambda w: len(adj[w]))
        for w in neighbors:
            # Dead-end pruning: an unvisited vertex with no unvisited
            # neighbors (other than the path tip) can never be reached.
            if extend(w, starts):
                return True
        path.pop()
        visited[u] = False
        return False

    if mode == "cycle":
        starts: Sequence[int] = (0,)
    else:
        starts = sorted(range(n), key=lambda v: len(adj[v]))
    for s in starts:
        path.clear()
        for i in range(n):
            visited[i] = False
        if extend(s, starts):
            if mode == "cycle":
                return path + [path[0]]
            return list(path)
    return None


class _HamiltonianTask(PuzzleTask):
    mode: str
    tier_params = {
        Tier.EASY: {"nodes": 8, "edge_density": 0.35},
        Tier.MEDIUM: {"nodes": 12, "edge_density": 0.3},
        Tier.HARD: {"nodes": 16, "edge_density": 0.25},
    }
    CERTIFY_BUDGET = 300_000

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n = params["nodes"]
        density = params["edge_density"]
        target_edges = max(n - 1, round(density * n * (n - 1) / 2))
        want_yes = rng.random() < 0.5
        for _ in range(self.max_generation_tries):
            if want_yes:
                payload, gold = self._plant(n, target_edges, rng)
                return GenOut(payload, gold, {})
            attempt = self._certified_no(n, target_edges, rng)
            if attempt is not None:
                return GenOut(attempt[0], attempt[1], {})
        raise self.exhausted("could not certify an unsolvable graph")

    def _plant(self, n: int, target_edges: int, rng: random.Random):
        order = list(range(n))
        rng.shuffle(order)
        edges = {tuple(sorted((order[i], order[i + 1]))) for i in range(n - 1)}
        if self.mode == "cycle":
            edges.add(tuple(sorted((order[-1], order[0]))))
        all_pairs = [
            (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges
        ]
        rng.shuffle(all_pairs)
        for pair in all_pairs[: max(0, target_edges - len(edges))]:
            edges.add(pair)
        witness = order + [order[0]] if self.mode == "cycle" else list(order)
        payload = {"n": n, "edges": sorted(edges), "solvable": True}
        return payload, {"solvable": True, "witness": witness}

    def _certified_no(self, n: int, target_edges: int, rng: random.Random):
        all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(all_pairs)
        edges = sorted(all_pairs[:target_edges])
        try:
            witness = exact_hamiltonian(n, edges, self.mode, self.CERTIFY_BUDGET)
        except SolverBudgetExceeded:
            return None
        if witness is not None:
            return None
        payload = {"n": n, "edges": edges, "solvable": False}
        return payload, {"solvable": False, "witness": None}

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        lines = [str(payload["n"])]
        lines += [f"{u} {v}" for u, v in payload["edges"]]
        return {"graph": "\n".join(lines)}

    def parse_answer(self, candidate: str) -> Any:
        if candidate.strip().strip("\"'").upper() == "NO":
            return UNSOLVABLE
        return parse_int_list(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        solvable = instance.payload["solvable"]
        if answer is UNSOLVABLE:
            return self.ok() if not solvable else self.wrongly_unsolvable()
        n = instance.payload["n"]
        edge_set = {tuple(e) for e in map(tuple, instance.payload["edges"])}

        def connected(u: int, v: int) -> bool:
            return (min(u, v), max(u, v)) in edge_set

        if any(not 0 <= v < n for v in answer):
            return self.malformed("vertex index out of range")
        if self.mode == "cycle":
            if len(answer) != n + 1 or answer[0] != answer[-1]:
                return self.violated("a cycle must list n+1 vertices, closing on the first")
            body = answer[:-1]
        else:
            body = answer
        if len(body) != n or len(set(body)) != n:
            return self.violated("answer does not visit every vertex exactly once")
        for a, b in zip(answer, answer[1:]):
            if not connected(a, b):
                return self.violated(f"({a}, {b}) is not an edge")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        if not instance.gold["solvable"]:
            return "NO"
        return "[" + ", ".join(str(v) for v in instance.gold["witness"]) + "]"

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        if not instance.gold["solvable"]:
            n = instance.payload["n"]
            fake = list(range(n)) + ([0] if self.mode == "cycle" else [])
            return "[" + ", ".join(str(v) for v in fake) + "]"
        witness = list(instance.gold["witness"])
        witness[1] = witness[2]  # repeated vertex: not a permutation
        return "[" + ", ".join(str(v) for v in witness) + "]"


class HamiltonianCycleTask(_HamiltonianTask):
    task_id = "hamiltonian_cycle"
    mode = "cycle"


class HamiltonianPathTask(_HamiltonianTask):
    task_id = "hamiltonian_path"
    mode = "path"


# ---------------------------------------------------------------------------
# Maze
# ---------------------------------------------------------------------------


def maze_bfs_path(grid: Sequence[str]) -> list[tuple[int, int]] | None:
    """Shortest S->E path as 0-based coordinates, or None when unreachable."""
    rows, cols = len(grid), len(grid[0])
    start, end = (0, 0), (rows - 1, cols - 1)
    prev: dict[tuple[int, int], tuple[int, int]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        r, c = queue.popleft()
        if (r, c) == end:
            path = [end]
            while path[-1] != start:
                path.append(prev[path[-1]])
            return path[::-1]
        for nr, nc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if 0 <= nr < rows and 0 <= nc < cols and (nr, nc) not in seen:
                if grid[nr][nc] != "B":
                    seen.add((nr, nc))
                    prev[(nr, nc)] = (r, c)
                    queue.append((nr, nc))
    return None


class MazeTask(PuzzleTask):
    task_id = "maze"
    sentinels = ("not exist the path", "impossible to reach")
    tier_params = {
        Tier.EASY: {"rows": 5, "cols": 5, "obstacle_pct": 0.2},
        Tier.MEDIUM: {"rows": 8, "cols": 8, "obstacle_pct": 0.25},
        Tier.HARD: {"rows": 12, "cols": 12, "obstacle_pct": 0.3},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        rows, cols, pct = params["rows"], params["cols"], params["obstacle_pct"]
        for _ in range(self.max_generation_tries):
            cells = [["." for _ in range(cols)] for _ in range(rows)]
            for r in range(rows):
                for c in range(cols):
                    if (r, c) not in ((0, 0), (rows - 1, cols - 1)):
                        if rng.random() < pct:
                            cells[r][c] = "B"
            cells[0][0] = "S"
            cells[rows - 1][cols - 1] = "E"
            grid = ["".join(row) for row in cells]
            path = maze_bfs_path(grid)
            if path is None:
                continue
            payload = {"grid": grid, "rows": rows, "cols": cols, "obstacle_pct": pct}
            gold = {
                "solvable": True,
                "path": [[r + 1, c + 1] for r, c in path],
            }
            return GenOut(payload, gold, {})
        raise self.exhausted("no reachable maze sampled")

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        return {
            "rows": str(payload["rows"]),
            "cols": str(payload["cols"]),
            "grid": "\n".join(" ".join(row) for row in payload["grid"]),
        }

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return parse_rotation_chain(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        solvable = instance.gold["solvable"] if instance.gold else True
        if answer is UNSOLVABLE:
            return self.ok() if not solvable else self.wrongly_unsolvable()
        if not answer:
            return self.malformed("empty path")
        rows, cols = instance.payload["rows"], instance.payload["cols"]
        grid = instance.payload["grid"]
        if answer[0] != (1, 1):
            return self.violated("path must start at (1,1)")
        if answer[-1] != (rows, cols):
            return self.violated(f"path must end at ({rows},{cols})")
        for step, (r, c) in enumerate(answer, start=1):
            if not (1 <= r <= rows and 1 <= c <= cols):
                return self.malformed(f"coordinate ({r},{c}) outside the maze")
            if grid[r - 1][c - 1] == "B":
                return self.violated(f"step {step} enters an obstacle at ({r},{c})")
        for step, ((r1, c1), (r2, c2)) in enumerate(zip(answer, answer[1:]), start=2):
            if abs(r1 - r2) + abs(c1 - c2) != 1:
                return self.violated(f"step {step} is not a unit move")
        return self.ok()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return "->".join(f"({r},{c})" for r, c in instance.gold["path"])

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        path = [tuple(p) for p in instance.gold["path"]]
        return "->".join(f"({r},{c})" for r, c in path[:-1])


# ---------------------------------------------------------------------------
# Landmark navigation over a random binary tree.
# ---------------------------------------------------------------------------

LANDMARK_TYPES = ("store", "bank", "house", "cinema", "garden", "school")


class NlNavigationTask(PuzzleTask):
    task_id = "nl_navigation"
    extraction = ExtractionSpec(ExtractMode.LAST_FENCED_BLOCK, allow_empty=True)
    tier_params = {
        Tier.EASY: {"nodes": 7, "path_length": (1, 2)},
        Tier.MEDIUM: {"nodes": 8, "path_length": (2, 3)},
        Tier.HARD: {"nodes": 10, "path_length": (3, 5)},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        n = params["nodes"]
        lo, hi = params["path_length"]
        for _ in range(self.max_generation_tries):
            built = self._build_tree(n, rng)
            if built is None:
                continue
            letters, types, edges, children = built
            query = self._pick_query(letters, types, edges, rng, lo, hi)
            if query is None:
                continue
            target, path_letters, distance, query_type = query
            payload = {
                "start": letters[0],
                "types": {letter: types[letter] for letter in letters},
                "edges": edges,
                "query_type": query_type,
            }
            gold = {
                "path": path_letters,
                "target": target,
                "distance": distance,
            }
            return GenOut(payload, gold, {})
        raise self.exhausted("no tree admitted a unique nearest-landmark query")

    @staticmethod
    def _build_tree(n: int, rng: random.Random):
        letters = rng.sample("ABCDEFGHIJ", n)
        types = {letter: rng.choice(LANDMARK_TYPES) for letter in letters}
        children: dict[str, list[str]] = {letters[0]: []}
        edges: list[list[Any]] = []
        for letter in letters[1:]:
            open_parents = [p for p in children if len(children[p]) < 2]
            parent = rng.choice(sorted(open_parents))
            children[parent].append(letter)
            children[letter] = []
            length = 100 * rng.randint(1, 5)
            edges.append([parent, letter, length])
        return letters, types, edges, children

    @staticmethod
    def _pick_query(letters, types, edges, rng, lo, hi):
        start = letters[0]
        adj: dict[str, list[tuple[str, int]]] = {letter: [] for letter in letters}
        parent_of: dict[str, str] = {}
        for parent, child, length in edges:
            adj[parent].append((child, length))
            adj[child].append((parent, length))
            parent_of[child] = parent
        dist = {start: 0}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, w in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + w
                    queue.append(v)
        candidates = []
        for query_type in LANDMARK_TYPES:
            nodes = [l for l in letters if types[l] == query_type and l != start]
            if not nodes or types[start] == query_type:
                continue
            nodes.sort(key=lambda l: dist[l])
            if len(nodes) > 1 and dist[nodes[0]] == dist[nodes[1]]:
                continue  # tie: nearest landmark is not unique
            target = nodes[0]
            path = [target]
            while path[-1] != start:
                path.append(parent_of[path[-1]])
            hops = len(path) - 1
            if not lo <= hops <= hi:
                continue
            letters_on_path = "".join(reversed(path[:-1]))
            candidates.append((target, letters_on_path, dist[target], query_type))
        if not candidates:
            return None
        return candidates[rng.randrange(len(candidates))]

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        types = payload["types"]
        start = payload["start"]
        lines = [
            f"Story: There is a set of roads and a set of landmarks. "
            f"The start point is {types[start]} {start}."
        ]
        for parent, child, length in payload["edges"]:
            lines.append(
                f"There is a road which is {length} meters long "
                f"from {types[parent]} {parent} to {types[child]} {child}."
            )
        return {
            "story": "\n".join(lines),
            "question": f"From the start point, how to reach the nearest {payload['query_type']}?",
        }

    def parse_answer(self, candidate: str) -> Any:
        letters = re.sub(r"[^A-Za-z]", "", candidate).upper()
        if not re.fullmatch(r"[A-J]*", letters):
            raise AnswerFormatError("path letters outside the landmark set")
        return letters

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer == instance.gold["path"]:
            return self.ok()
        return self.wrong()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return instance.gold["path"]

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        path = instance.gold["path"]
        if len(path) > 1:
            return path[:-1]
        others = [l for l in instance.payload["types"] if l not in (path, instance.payload["start"])]
        return path + others[rng.randrange(len(others))]

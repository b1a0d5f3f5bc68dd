"""Graph tasks: exact tour search, maze replay, tree navigation."""

import random
from collections import deque

import pytest

from puzzleforge import api
from puzzleforge.core.model import Failure, Tier
from puzzleforge.tasks.graph import exact_hamiltonian, maze_bfs_path

# The 11-vertex example graph: vertices 5, 7, 8, 9 are isolated.
LISTING_CYCLE_EDGES = [(0, 1), (0, 4), (2, 3), (0, 2), (6, 10), (1, 10), (1, 3)]

# The 14-vertex path example.
LISTING_PATH_EDGES = [
    (0, 4), (0, 5), (0, 8), (0, 9), (1, 3), (1, 6), (1, 9), (2, 5), (2, 9),
    (2, 12), (2, 13), (3, 6), (3, 9), (3, 10), (4, 11), (5, 12), (5, 13),
    (6, 10), (6, 11), (6, 13), (7, 8), (7, 11), (7, 13), (8, 10), (9, 12),
    (11, 12),
]


class TestExactHamiltonian:
    def test_listing_graph_has_no_cycle(self):
        assert exact_hamiltonian(11, LISTING_CYCLE_EDGES, "cycle") is None

    def test_listing_path_instance_has_witness(self):
        witness = exact_hamiltonian(14, LISTING_PATH_EDGES, "path")
        assert witness is not None
        assert sorted(witness) == list(range(14))
        edges = {tuple(sorted(e)) for e in LISTING_PATH_EDGES}
        for a, b in zip(witness, witness[1:]):
            assert (min(a, b), max(a, b)) in edges

    def test_triangle_cycle(self):
        witness = exact_hamiltonian(3, [(0, 1), (1, 2), (0, 2)], "cycle")
        assert witness is not None
        assert witness[0] == witness[-1]
        assert sorted(witness[:-1]) == [0, 1, 2]

    def test_path_graph_has_no_cycle(self):
        assert exact_hamiltonian(3, [(0, 1), (1, 2)], "cycle") is None

    def test_path_graph_has_path(self):
        assert exact_hamiltonian(3, [(0, 1), (1, 2)], "path") is not None


class TestHamiltonianTasks:
    @pytest.mark.parametrize("task_id", ["hamiltonian_cycle", "hamiltonian_path"])
    def test_planted_round_trip_and_no_soundness(self, task_id):
        mode = "cycle" if task_id.endswith("cycle") else "path"
        for tier in (Tier.EASY, Tier.MEDIUM):
            for inst in api.generate(task_id, tier, 6, root_seed=23):
                assert api.verify(inst, api.gold_response(inst)).reward == 1
                assert api.verify(inst, api.corrupted_response(inst)).reward == 0
                if not inst.payload["solvable"]:
                    # Re-certify with a 10x budget.
                    assert (
                        exact_hamiltonian(
                            inst.payload["n"],
                            [tuple(e) for e in inst.payload["edges"]],
                            mode,
                            node_budget=3_000_000,
                        )
                        is None
                    )

    def test_no_on_planted_instance_rejected(self):
        for index in range(20):
            inst = api.generate_one("hamiltonian_cycle", Tier.EASY, 23, index)
            if inst.payload["solvable"]:
                verdict = api.verify(inst, "```\nNO\n```")
                assert verdict.failure is Failure.DECLARED_UNSOLVABLE_WRONGLY
                return
        pytest.fail("no planted instance sampled")

    def test_repeated_vertex_rejected(self):
        inst = _planted("hamiltonian_path")
        witness = list(inst.gold["witness"])
        witness[1] = witness[2]
        bad = "[" + ", ".join(map(str, witness)) + "]"
        assert api.verify(inst, f"```\n{bad}\n```").reward == 0

    def test_unclosed_cycle_rejected(self):
        inst = _planted("hamiltonian_cycle")
        witness = list(inst.gold["witness"])[:-1]
        bad = "[" + ", ".join(map(str, witness)) + "]"
        verdict = api.verify(inst, f"```\n{bad}\n```")
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED

    def test_out_of_range_vertex(self):
        inst = _planted("hamiltonian_path")
        bad = "[" + ", ".join(map(str, [999] + list(inst.gold["witness"])[1:])) + "]"
        assert api.verify(inst, f"```\n{bad}\n```").failure is Failure.FORMAT_INVALID


def _planted(task_id):
    for index in range(30):
        inst = api.generate_one(task_id, Tier.EASY, 29, index)
        if inst.payload["solvable"]:
            return inst
    raise AssertionError("no planted instance sampled")


class TestMaze:
    def test_paper_grid_bfs_path_verifies(self):
        from puzzleforge.tasks import get_task
        from puzzleforge.tasks.base import GenOut

        grid = ["S..B.", "B....", "....B", ".....", "....E"]
        path = maze_bfs_path(grid)
        assert path is not None
        task = get_task("maze")
        payload = {"grid": grid, "rows": 5, "cols": 5, "obstacle_pct": 0.2}
        gold = {"solvable": True, "path": [[r + 1, c + 1] for r, c in path]}
        inst = task.build_instance(Tier.EASY, 0, GenOut(payload, gold, {}))
        assert api.verify(inst, api.gold_response(inst)).reward == 1

    def test_no_obstacles_straight_path(self):
        inst = api.generate_one("maze", Tier.EASY, 3, 0, params={"obstacle_pct": 0.0})
        assert api.verify(inst, api.gold_response(inst)).reward == 1

    def test_jump_rejected(self):
        inst = api.generate_one("maze", Tier.EASY, 3, 1)
        rows, cols = inst.payload["rows"], inst.payload["cols"]
        bad = f"(1,1)->({rows},{cols})"
        verdict = api.verify(inst, f"```\n{bad}\n```")
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED

    def test_path_through_obstacle_rejected(self):
        for index in range(20):
            inst = api.generate_one("maze", Tier.MEDIUM, 7, index)
            grid = inst.payload["grid"]
            path = [tuple(p) for p in inst.gold["path"]]
            # Reroute the second step through a wall if one is adjacent.
            r, c = path[0]
            for nr, nc in ((r, c + 1), (r + 1, c)):
                if grid[nr - 1][nc - 1] == "B":
                    bad = "->".join(f"({a},{b})" for a, b in [path[0], (nr, nc)] + path[1:])
                    verdict = api.verify(inst, f"```\n{bad}\n```")
                    assert verdict.reward == 0
                    return
        pytest.skip("no wall adjacent to the start in sampled mazes")

    def test_verifier_matches_bfs_reachability(self):
        # Any accepted path implies reachable; BFS-reachable implies the
        # BFS path itself is accepted.
        rng = random.Random(41)
        from puzzleforge.tasks import get_task
        from puzzleforge.tasks.base import GenOut

        task = get_task("maze")
        agree = 0
        for _ in range(1000):
            rows = cols = rng.choice([4, 5, 6])
            cells = [["." for _ in range(cols)] for _ in range(rows)]
            for r in range(rows):
                for c in range(cols):
                    if (r, c) not in ((0, 0), (rows - 1, cols - 1)):
                        if rng.random() < 0.35:
                            cells[r][c] = "B"
            cells[0][0], cells[rows - 1][cols - 1] = "S", "E"
            grid = ["".join(row) for row in cells]
            path = maze_bfs_path(grid)
            payload = {"grid": grid, "rows": rows, "cols": cols, "obstacle_pct": 0.35}
            gold = {
                "solvable": path is not None,
                "path": [[r + 1, c + 1] for r, c in path] if path else [],
            }
            inst = task.build_instance(Tier.EASY, 0, GenOut(payload, gold, {}))
            if path is not None:
                rendered = "->".join(f"({r + 1},{c + 1})" for r, c in path)
                assert api.verify(inst, f"```\n{rendered}\n```").reward == 1
            else:
                assert api.verify(inst, "not exist the path from start to end.").reward == 1
            agree += 1
        assert agree == 1000

    def test_unsolvable_sentinel_on_solvable_rejected(self):
        inst = api.generate_one("maze", Tier.EASY, 3, 2)
        verdict = api.verify(inst, "```\nnot exist the path from start to end.\n```")
        assert verdict.failure is Failure.DECLARED_UNSOLVABLE_WRONGLY


class TestNavigation:
    def test_gold_round_trip(self):
        for tier in (Tier.EASY, Tier.MEDIUM, Tier.HARD):
            for inst in api.generate("nl_navigation", tier, 4, root_seed=19):
                assert api.verify(inst, api.gold_response(inst)).reward == 1
                assert api.verify(inst, api.corrupted_response(inst)).reward == 0

    def test_nearest_landmark_unique_and_path_checks(self):
        inst = api.generate_one("nl_navigation", Tier.MEDIUM, 19, 0)
        types = inst.payload["types"]
        query = inst.payload["query_type"]
        start = inst.payload["start"]
        dist = _tree_distances(inst.payload["edges"], start)
        candidates = sorted(
            (d, letter) for letter, d in dist.items()
            if types[letter] == query and letter != start
        )
        assert candidates[0][1] == inst.gold["target"]
        if len(candidates) > 1:
            assert candidates[0][0] < candidates[1][0]
        assert candidates[0][0] == inst.gold["distance"]

    def test_comma_separated_letters_accepted(self):
        inst = api.generate_one("nl_navigation", Tier.MEDIUM, 19, 1)
        spaced = ", ".join(inst.gold["path"])
        assert api.verify(inst, f"```\n{spaced}\n```").reward == 1

    def test_story_mentions_every_edge(self):
        inst = api.generate_one("nl_navigation", Tier.EASY, 19, 2)
        for parent, child, length in inst.payload["edges"]:
            assert f"{length} meters long" in inst.prompt
            assert f" {parent} " in inst.prompt


def _tree_distances(edges, start):
    adj = {}
    for parent, child, length in edges:
        adj.setdefault(parent, []).append((child, length))
        adj.setdefault(child, []).append((parent, length))
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v, w in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + w
                queue.append(v)
    return dist

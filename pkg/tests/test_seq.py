"""Sequential tasks: replay semantics, exact optima, feasibility deciders."""

import random
from collections import deque
from itertools import permutations

import pytest

from puzzleforge import api
from puzzleforge.core.model import Failure, Tier
from puzzleforge.tasks import get_task
from puzzleforge.tasks.base import GenOut
from puzzleforge.tasks.seq import (
    apply_blank_move,
    inversion_count,
    optimal_car_painting,
    optimal_sliding_length,
    rotate_ccw,
    rotate_cw,
    sliding_goal,
    sliding_solvable,
    solved_grid,
    stack_trace,
)


class TestTwiddle:
    def test_rotation_is_counterclockwise(self):
        grid = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
        rotate_ccw(grid, 0, 0)
        assert grid == [[2, 5, 3], [1, 4, 6], [7, 8, 9]]

    def test_cw_inverts_ccw(self):
        rng = random.Random(1)
        grid = solved_grid(3)
        for _ in range(50):
            i, j = rng.randrange(2), rng.randrange(2)
            rotate_ccw(grid, i, j)
            rotate_cw(grid, i, j)
            assert grid == solved_grid(3)

    def test_zero_rotation_scramble_solved_by_empty(self):
        # Already-solved board: the empty move list is the correct answer.
        task = get_task("twiddle")
        payload = {"grid": solved_grid(3), "grid_size": 3, "rotations": 0}
        inst = task.build_instance(Tier.EASY, 0, GenOut(payload, {"moves": []}, {}))
        assert api.verify(inst, "```\n\n```").reward == 1
        # On a scrambled board the empty list is just wrong, not a crash.
        scrambled = api.generate_one("twiddle", Tier.EASY, 10, 5)
        assert api.verify(scrambled, "```\n\n```").failure is Failure.WRONG_ANSWER

    def test_gold_round_trip(self):
        for tier in (Tier.EASY, Tier.MEDIUM, Tier.HARD):
            for inst in api.generate("twiddle", tier, 4, root_seed=10):
                assert api.verify(inst, api.gold_response(inst)).reward == 1
                assert api.verify(inst, api.corrupted_response(inst)).reward == 0

    def test_out_of_range_corner(self):
        inst = api.generate_one("twiddle", Tier.EASY, 10, 0)
        n = inst.payload["grid_size"]
        verdict = api.verify(inst, f"```\n({n - 1},{n - 1})\n```")
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED


class TestCarPainting:
    def test_paper_listing_optimum_is_one(self):
        colors = ["B"] * 13 + ["A"]
        optimum, witness = optimal_car_painting(colors, k=4)
        assert optimum == 1
        assert sorted(witness) == list(range(1, 15))

    def test_dp_matches_brute_force_small(self):
        rng = random.Random(12)
        for _ in range(30):
            n = rng.randint(3, 7)
            k = rng.randint(1, 3)
            colors = [rng.choice("AB") for _ in range(n)]
            optimum, witness = optimal_car_painting(colors, k)
            best = min(
                (
                    sum(
                        1
                        for a, b in zip(perm, perm[1:])
                        if colors[a - 1] != colors[b - 1]
                    )
                    for perm in permutations(range(1, n + 1))
                    if all(abs(car - pos) <= k for pos, car in enumerate(perm, start=1))
                ),
            )
            assert optimum == best
            assert all(abs(car - pos) <= k for pos, car in enumerate(witness, start=1))

    def test_gold_round_trip(self):
        for tier in (Tier.EASY, Tier.MEDIUM, Tier.HARD):
            for inst in api.generate("car_painting", tier, 3, root_seed=13):
                assert api.verify(inst, api.gold_response(inst)).reward == 1
                assert api.verify(inst, api.corrupted_response(inst)).reward == 0

    def test_window_violation_rejected(self):
        inst = api.generate_one("car_painting", Tier.EASY, 13, 0)
        n = inst.payload["cars"]
        order = list(range(1, n + 1))
        order[0], order[-1] = order[-1], order[0]
        rendered = "[" + ", ".join(map(str, order)) + "]"
        verdict = api.verify(inst, f"```\n{rendered}\n```")
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED

    def test_valid_but_suboptimal_rejected(self):
        for index in range(20):
            inst = api.generate_one("car_painting", Tier.MEDIUM, 13, index)
            colors = inst.payload["colors"]
            identity = list(range(1, len(colors) + 1))
            switches = sum(1 for a, b in zip(colors, colors[1:]) if a != b)
            if switches > inst.gold["optimum"]:
                rendered = "[" + ", ".join(map(str, identity)) + "]"
                verdict = api.verify(inst, f"```\n{rendered}\n```")
                assert verdict.failure is Failure.WRONG_ANSWER
                return
        pytest.skip("identity order was optimal in every sample")


class TestStackPermutation:
    def test_paper_listing_trace(self):
        trace = stack_trace([5, 2, 1, 3, 4], [5, 3, 1, 4, 2])
        assert trace is not None
        assert trace[0] == "Push(5)"
        # Replay the trace independently.
        stack, out, idx = [], [], 0
        source = [5, 2, 1, 3, 4]
        for op in trace:
            if op.startswith("Push"):
                value = int(op[5:-1])
                assert value == source[idx]
                stack.append(value)
                idx += 1
            else:
                out.append(stack.pop())
        assert out == [5, 3, 1, 4, 2]

    def test_greedy_equals_brute_force_up_to_6(self):
        # Feasibility by greedy simulation vs. exhaustive interleavings.
        for n in range(1, 7):
            source = list(range(1, n + 1))
            feasible_bf = set()
            # Enumerate all push/pop interleavings with a DFS.
            def dfs(idx, stack, out):
                if len(out) == n:
                    feasible_bf.add(tuple(out))
                    return
                if idx < n:
                    dfs(idx + 1, stack + [source[idx]], out)
                if stack:
                    dfs(idx, stack[:-1], out + [stack[-1]])

            dfs(0, [], [])
            for perm in permutations(source):
                assert (stack_trace(source, list(perm)) is not None) == (
                    perm in feasible_bf
                )

    def test_gold_round_trip(self):
        for tier in (Tier.EASY, Tier.MEDIUM, Tier.HARD):
            for inst in api.generate("stack_permutation", tier, 6, root_seed=14):
                assert api.verify(inst, api.gold_response(inst)).reward == 1
                assert api.verify(inst, api.corrupted_response(inst)).reward == 0

    def test_wrong_push_order_rejected(self):
        inst = _feasible_stack_instance()
        source = inst.payload["source"]
        bad = [f'"Push({source[1]})"', '"Pop()"']
        rendered = "[" + ", ".join(bad) + "]"
        verdict = api.verify(inst, f"```\n{rendered}\n```")
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED

    def test_pop_from_empty_rejected(self):
        inst = _feasible_stack_instance()
        verdict = api.verify(inst, '```\n["Pop()"]\n```')
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED


def _feasible_stack_instance():
    for index in range(20):
        inst = api.generate_one("stack_permutation", Tier.EASY, 14, index)
        if inst.gold["feasible"]:
            return inst
    raise AssertionError("no feasible instance sampled")


def bfs_optimal(board, size):
    """Breadth-first optimum for shallow boards; the independent oracle."""
    start = tuple(board)
    goal = sliding_goal(size)
    if start == goal:
        return 0
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        state, dist = queue.popleft()
        work = list(state)
        for move in "UDLR":
            if apply_blank_move(work, size, move):
                nxt = tuple(work)
                apply_blank_move(work, size, {"U": "D", "D": "U", "L": "R", "R": "L"}[move])
                if nxt == goal:
                    return dist + 1
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, dist + 1))
    raise AssertionError("unsolvable board handed to BFS")


class TestSliding:
    def test_solved_board_zero(self):
        assert optimal_sliding_length(sliding_goal(3), 3) == 0

    def test_single_move_scramble(self):
        board = list(sliding_goal(3))
        apply_blank_move(board, 3, "U")
        assert optimal_sliding_length(board, 3) == 1

    def test_ida_star_matches_bfs(self):
        rng = random.Random(15)
        for _ in range(60):
            board = list(sliding_goal(3))
            for _ in range(rng.randint(1, 12)):
                move = rng.choice("UDLR")
                apply_blank_move(board, 3, move)
            assert optimal_sliding_length(board, 3) == bfs_optimal(board, 3)

    def test_generator_never_emits_unsolvable(self):
        for task_id, size in (("eight_puzzle", 3), ("fifteen_puzzle", 4)):
            for tier in (Tier.EASY, Tier.HARD):
                for inst in api.generate(task_id, tier, 4, root_seed=16):
                    flat = [v for row in inst.payload["board"] for v in row]
                    assert sliding_solvable(flat, size)

    def test_parity_counts(self):
        # The canonical unsolvable 8-puzzle: two swapped tiles.
        board = [1, 2, 3, 4, 5, 6, 8, 7, 0]
        assert not sliding_solvable(board, 3)
        assert inversion_count(board) == 1

    def test_gold_round_trip(self):
        for task_id in ("eight_puzzle", "fifteen_puzzle"):
            for tier in (Tier.EASY, Tier.MEDIUM, Tier.HARD):
                for inst in api.generate(task_id, tier, 4, root_seed=17):
                    assert api.verify(inst, api.gold_response(inst)).reward == 1
                    assert api.verify(inst, api.corrupted_response(inst)).reward == 0

    def test_illegal_move_step_index(self):
        inst = api.generate_one("eight_puzzle", Tier.EASY, 17, 0)
        flat = [v for row in inst.payload["board"] for v in row]
        blank = flat.index(0)
        # Drive the blank into the nearest wall until a move is illegal.
        move = "U" if blank // 3 == 0 else "D" if blank // 3 == 2 else "L" if blank % 3 == 0 else "R"
        verdict = api.verify(inst, f"```\n{move * 4}\n```")
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED

    def test_strict_optimal_mode(self):
        task = get_task("eight_puzzle")
        board = list(sliding_goal(3))
        apply_blank_move(board, 3, "U")
        payload = {
            "board": [board[0:3], board[3:6], board[6:9]],
            "inversions": inversion_count(board),
            "scramble_depth": 1,
        }
        gold = {"solvable": True, "moves": "D"}
        inst = task.build_instance(
            Tier.EASY, 0, GenOut(payload, gold, {"require_optimal": True})
        )
        assert api.verify(inst, "```\nD\n```").reward == 1
        # Solving but longer than optimum: rejected in strict mode.
        assert api.verify(inst, "```\nUDD\n```").reward == 0


class TestCyclicBoards:
    def test_gold_round_trip(self):
        for task_id in ("nine_puzzle", "sixteen_puzzle"):
            for tier in (Tier.EASY, Tier.MEDIUM, Tier.HARD):
                for inst in api.generate(task_id, tier, 4, root_seed=18):
                    assert api.verify(inst, api.gold_response(inst)).reward == 1
                    assert api.verify(inst, api.corrupted_response(inst)).reward == 0

    def test_shift_semantics_match_listing(self):
        from puzzleforge.tasks.seq import shift_row

        grid = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
        shift_row(grid, 0, 1)
        assert grid[0] == [2, 3, 1]
        shift_row(grid, 0, 2)
        assert grid[0] == [1, 2, 3]

    def test_bad_token_format_invalid(self):
        inst = api.generate_one("nine_puzzle", Tier.EASY, 18, 0)
        verdict = api.verify(inst, '```\n["R99X"]\n```')
        assert verdict.failure is Failure.FORMAT_INVALID

    def test_out_of_range_move(self):
        inst = api.generate_one("nine_puzzle", Tier.EASY, 18, 1)
        verdict = api.verify(inst, '```\n["R41"]\n```')
        assert verdict.failure is Failure.CONSTRAINT_VIOLATED

    def test_no_valid_sequence_sentinel_rejected_for_generated(self):
        inst = api.generate_one("sixteen_puzzle", Tier.EASY, 18, 2)
        verdict = api.verify(inst, '```\n"No valid sequence of moves exists."\n```')
        assert verdict.failure is Failure.DECLARED_UNSOLVABLE_WRONGLY


class TestBigBenchSymbolic:
    def test_fixture_round_trip(self, pools):
        for tier_list in pools["big_bench_symbolic"].accepted.values():
            for inst in tier_list:
                assert api.verify(inst, api.gold_response(inst)).reward == 1
                assert api.verify(inst, api.corrupted_response(inst)).reward == 0

    def test_listing_remove_first_seven(self, pools):
        found = None
        for tier_list in pools["big_bench_symbolic"].accepted.values():
            for inst in tier_list:
                if inst.payload["test_input"] == [5, 37, 97, 48, 7, 1]:
                    found = inst
        assert found is not None
        assert found.gold["output"] == [5, 37, 97, 48, 1]
        assert api.verify(found, "```\n[5, 37, 97, 48, 1]\n```").reward == 1

    def test_one_element_off_rejected(self, pools):
        inst = pools["big_bench_symbolic"].accepted[Tier.MEDIUM][0]
        wrong = list(inst.gold["output"])
        wrong[0] += 1
        rendered = "[" + ", ".join(map(str, wrong)) + "]"
        assert api.verify(inst, f"```\n{rendered}\n```").reward == 0

    def test_non_list_answer_format_invalid(self, pools):
        inst = pools["big_bench_symbolic"].accepted[Tier.MEDIUM][0]
        assert api.verify(inst, "```\nhello\n```").failure is Failure.FORMAT_INVALID

"""Expression puzzles: reach a target using every given number exactly once.

The search oracle enumerates all operand pairings, operator choices, and
parenthesizations with exact rational arithmetic, so solvability verdicts
are decisions, not guesses. The verifier parses answers with a small
recursive-descent grammar (integers, + - * /, parentheses; no unary minus)
and replays the value on the parsed tree.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Any, Mapping

from ..core.errors import AnswerFormatError
from ..core.model import PuzzleInstance, Tier, Verdict
from .base import GenOut, PuzzleTask, UNSOLVABLE

# ---------------------------------------------------------------------------
# Expression grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
# factor := INT | '(' expr ')'
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(\d+|[+\-*/()]|.)")


class ExprNode:
    __slots__ = ("op", "left", "right", "value")

    def __init__(self, op=None, left=None, right=None, value=None):
        self.op = op
        self.left = left
        self.right = right
        self.value = value


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        tok = m.group(1)
        pos = m.end()
        if tok.strip() == "":
            continue
        if not re.fullmatch(r"\d+|[+\-*/()]", tok):
            raise AnswerFormatError(f"bad character {tok!r} in expression", position=pos)
        tokens.append(tok)
    return tokens


def parse_expression(text: str) -> ExprNode:
    tokens = _tokenize(text)
    if not tokens:
        raise AnswerFormatError("empty expression")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_expr():
        node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            node = ExprNode(op=op, left=node, right=parse_term())
        return node

    def parse_term():
        node = parse_factor()
        while peek() in ("*", "/"):
            op = take()
            node = ExprNode(op=op, left=node, right=parse_factor())
        return node

    def parse_factor():
        tok = peek()
        if tok is None:
            raise AnswerFormatError("unexpected end of expression", position=pos)
        if tok == "(":
            take()
            node = parse_expr()
            if peek() != ")":
                raise AnswerFormatError("missing ')'", position=pos)
            take()
            return node
        if tok.isdigit():
            take()
            return ExprNode(value=int(tok))
        raise AnswerFormatError(f"unexpected token {tok!r}", position=pos)

    node = parse_expr()
    if pos != len(tokens):
        raise AnswerFormatError(f"trailing tokens at {pos}", position=pos)
    return node


class DivisionByZero(Exception):
    pass


def evaluate(node: ExprNode, literals: list[int], intermediates: list[Fraction]) -> Fraction:
    """Exact value; collects literals and every internal-node value."""
    if node.op is None:
        literals.append(node.value)
        return Fraction(node.value)
    left = evaluate(node.left, literals, intermediates)
    right = evaluate(node.right, literals, intermediates)
    if node.op == "+":
        result = left + right
    elif node.op == "-":
        result = left - right
    elif node.op == "*":
        result = left * right
    else:
        if right == 0:
            raise DivisionByZero
        result = left / right
    intermediates.append(result)
    return result


# ---------------------------------------------------------------------------
# Exhaustive search oracle.
# ---------------------------------------------------------------------------

_OPS = ("+", "-", "*", "/")


def search_expression(
    numbers: list[int], target: int, positive_int: bool = False
) -> str | None:
    """A witness expression equal to ``target`` using each number once, or None.

    ``positive_int`` restricts every intermediate value to positive integers.
    The search is complete: a None return proves no expression exists.
    """
    if not numbers:
        return None
    goal = Fraction(target)
    start = tuple(sorted((Fraction(n), str(n)) for n in numbers))
    dead: set[tuple[Fraction, ...]] = set()

    def combine(a: Fraction, b: Fraction, op: str) -> Fraction | None:
        if op == "+":
            value = a + b
        elif op == "-":
            value = a - b
        elif op == "*":
            value = a * b
        else:
            if b == 0:
                return None
            value = a / b
        if positive_int and (value.denominator != 1 or value <= 0):
            return None
        return value

    def rec(items: tuple[tuple[Fraction, str], ...]) -> str | None:
        if len(items) == 1:
            return items[0][1] if items[0][0] == goal else None
        key = tuple(v for v, _ in items)
        if key in dead:
            return None
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                (va, ea), (vb, eb) = items[i], items[j]
                rest = items[:i] + items[i + 1 : j] + items[j + 1 :]
                for x, ex, y, ey in ((va, ea, vb, eb), (vb, eb, va, ea)):
                    for op in _OPS:
                        if op in ("+", "*") and (x, ex) > (y, ey):
                            continue  # commutative: try each unordered pair once
                        value = combine(x, y, op)
                        if value is None:
                            continue
                        expr = f"({ex} {op} {ey})"
                        found = rec(tuple(sorted(rest + ((value, expr),))))
                        if found is not None:
                            return found
        dead.add(key)
        return None

    witness = rec(start)
    if witness is not None and witness.startswith("("):
        witness = witness[1:-1]
    return witness


# ---------------------------------------------------------------------------
# Shared verification for expression answers.
# ---------------------------------------------------------------------------


def check_expression_answer(
    task: PuzzleTask,
    numbers: list[int],
    target: int,
    text_answer: str,
    positive_int: bool,
) -> Verdict:
    try:
        tree = parse_expression(text_answer)
    except AnswerFormatError as exc:
        return task.malformed(str(exc))
    literals: list[int] = []
    intermediates: list[Fraction] = []
    try:
        value = evaluate(tree, literals, intermediates)
    except DivisionByZero:
        return task.violated("division by zero")
    if sorted(literals) != sorted(numbers):
        return task.violated("numbers used do not match the given multiset")
    if positive_int:
        for inter in intermediates:
            if inter.denominator != 1 or inter <= 0:
                return task.violated(f"intermediate {inter} is not a positive integer")
    if value != Fraction(target):
        return task.wrong(f"expression evaluates to {value}, not {target}")
    return task.ok()


class Game24Task(PuzzleTask):
    task_id = "game24"
    sentinels = ("cannot form",)
    tier_params = {
        Tier.EASY: {"count": 4},
        Tier.MEDIUM: {"count": 5},
        Tier.HARD: {"count": 6},
    }

    TARGET = 24

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        count = params["count"]
        numbers = [rng.randint(1, 13) for _ in range(count)]
        witness = search_expression(numbers, self.TARGET)
        payload = {
            "numbers": numbers,
            "target": self.TARGET,
            "count": count,
            "solvable": witness is not None,
        }
        gold = {"solvable": witness is not None, "expression": witness}
        return GenOut(payload, gold, {})

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        return {"numbers": ", ".join(str(n) for n in payload["numbers"])}

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return candidate

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        solvable = instance.payload["solvable"]
        if answer is UNSOLVABLE:
            return self.ok() if not solvable else self.wrongly_unsolvable()
        return check_expression_answer(
            self, list(instance.payload["numbers"]), self.TARGET, answer, positive_int=False
        )

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        if instance.gold["solvable"]:
            return instance.gold["expression"]
        return "cannot form 24"

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        numbers = list(instance.payload["numbers"])
        if instance.gold["solvable"]:
            # Reuse the first number once more: multiset violation.
            expr = instance.gold["expression"]
            return f"{expr} + {numbers[0]} - {numbers[0]}"
        return " + ".join(str(n) for n in numbers)


class CountdownTask(PuzzleTask):
    task_id = "countdown"
    sentinels = ("cannot form",)
    tier_params = {
        Tier.EASY: {"count": 5, "target_range": (10, 100)},
        Tier.MEDIUM: {"count": 5, "target_range": (101, 500)},
        Tier.HARD: {"count": 5, "target_range": (501, 999)},
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        count = params["count"]
        lo, hi = params["target_range"]
        for _ in range(self.max_generation_tries):
            numbers = [rng.randint(1, 25) for _ in range(count)]
            planted = self._plant_expression(numbers, rng)
            if planted is None:
                continue
            expr, value = planted
            if not (lo <= value <= hi):
                continue
            payload = {
                "numbers": numbers,
                "target": value,
                "count": count,
                "solvable": True,
            }
            gold = {"solvable": True, "expression": expr}
            return GenOut(payload, gold, {})
        raise self.exhausted("no planted expression landed in the target range")

    @staticmethod
    def _plant_expression(numbers: list[int], rng: random.Random) -> tuple[str, int] | None:
        items = [(Fraction(n), str(n)) for n in numbers]
        while len(items) > 1:
            i, j = rng.sample(range(len(items)), 2)
            (va, ea), (vb, eb) = items[i], items[j]
            options = []
            for x, ex, y, ey in ((va, ea, vb, eb), (vb, eb, va, ea)):
                for op in "+-*/":
                    if op == "+":
                        v = x + y
                    elif op == "-":
                        v = x - y
                    elif op == "*":
                        v = x * y
                    elif y != 0:
                        v = x / y
                    else:
                        continue
                    if v.denominator == 1 and v > 0:
                        options.append((v, f"({ex} {op} {ey})"))
            if not options:
                return None
            value, expr = rng.choice(options)
            items = [it for k, it in enumerate(items) if k not in (i, j)]
            items.append((value, expr))
        value, expr = items[0]
        if expr.startswith("("):
            expr = expr[1:-1]
        return expr, int(value)

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        return {
            "numbers": ", ".join(str(n) for n in payload["numbers"]),
            "target": str(payload["target"]),
        }

    def parse_answer(self, candidate: str) -> Any:
        if self.matches_sentinel(candidate):
            return UNSOLVABLE
        return candidate

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        solvable = instance.payload["solvable"]
        if answer is UNSOLVABLE:
            return self.ok() if not solvable else self.wrongly_unsolvable()
        return check_expression_answer(
            self,
            list(instance.payload["numbers"]),
            instance.payload["target"],
            answer,
            positive_int=True,
        )

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return instance.gold["expression"]

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        return f"cannot form {instance.payload['target']}"

"""Classical-cipher decryption tasks over uppercase A-Z plaintext.

Two variants share the cipher suite: one names the method and parameters in
the prompt, the other gives only a worked plaintext/ciphertext hint pair and
hides the method. Conventions (documented because only the method names are
standard): Rail Fence uses the plain zigzag read-off with no offset, Affine
works over the 26-letter ring, and Hill multiplies column vectors.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache
from importlib import resources
from typing import Any, Mapping

from ..core.errors import ConfigError
from ..core.model import PuzzleInstance, Tier, Verdict
from .base import GenOut, PuzzleTask

ALPHA = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
MOD = 26

CORPUS_VERSION = "plaintext_v1"


@lru_cache(maxsize=None)
def corpus_sentences() -> tuple[str, ...]:
    ref = resources.files("puzzleforge") / "corpus" / f"{CORPUS_VERSION}.txt"
    lines = ref.read_text(encoding="utf-8").splitlines()
    cleaned = []
    for line in lines:
        letters = "".join(ch for ch in line.upper() if ch in ALPHA)
        if letters:
            cleaned.append(letters)
    return tuple(cleaned)


def sample_plaintext(rng: random.Random, length: int) -> str:
    """A plaintext window of exactly ``length`` letters from the corpus."""
    sentences = corpus_sentences()
    start = rng.randrange(len(sentences))
    buf = []
    total = 0
    idx = start
    while total < length:
        buf.append(sentences[idx % len(sentences)])
        total += len(buf[-1])
        idx += 1
    text = "".join(buf)
    offset = rng.randrange(len(text) - length + 1) if len(text) > length else 0
    return text[offset : offset + length]


# ---------------------------------------------------------------------------
# Cipher primitives. Specs are plain dicts: {"method": ..., <params>}.
# ---------------------------------------------------------------------------


def _check_text(text: str) -> None:
    if not text or any(ch not in ALPHA for ch in text):
        raise ConfigError("cipher text must be nonempty uppercase A-Z")


def _mod_inverse(a: int) -> int:
    if math.gcd(a, MOD) != 1:
        raise ConfigError(f"{a} is not invertible mod {MOD}")
    return pow(a, -1, MOD)


def _rail_pattern(length: int, rails: int) -> list[int]:
    row, step = 0, 1
    pattern = []
    for _ in range(length):
        pattern.append(row)
        if row == 0:
            step = 1
        elif row == rails - 1:
            step = -1
        row += step
    return pattern


def _matrix_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    raise ConfigError("hill matrices support sizes 2 and 3 only")


def _matrix_inverse_mod26(m: list[list[int]]) -> list[list[int]]:
    n = len(m)
    det = _matrix_det(m) % MOD
    det_inv = _mod_inverse(det)
    if n == 2:
        adj = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
    else:
        adj = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                rows = [r for r in range(3) if r != i]
                cols = [c for c in range(3) if c != j]
                minor = (
                    m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                    - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
                )
                adj[j][i] = ((-1) ** (i + j)) * minor
    return [[(det_inv * adj[i][j]) % MOD for j in range(n)] for i in range(n)]


def encrypt(spec: Mapping[str, Any], plaintext: str) -> str:
    _check_text(plaintext)
    method = spec["method"]
    if method == "caesar":
        s = spec["shift"] % MOD
        return "".join(ALPHA[(ALPHA.index(ch) + s) % MOD] for ch in plaintext)
    if method == "vigenere":
        key = spec["keyword"]
        _check_text(key)
        return "".join(
            ALPHA[(ALPHA.index(ch) + ALPHA.index(key[i % len(key)])) % MOD]
            for i, ch in enumerate(plaintext)
        )
    if method == "affine":
        a, b = spec["a"], spec["b"]
        if math.gcd(a, MOD) != 1:
            raise ConfigError(f"affine coefficient a={a} not coprime with {MOD}")
        return "".join(ALPHA[(a * ALPHA.index(ch) + b) % MOD] for ch in plaintext)
    if method == "rail_fence":
        rails = spec["rails"]
        if rails < 2:
            raise ConfigError("rail fence needs at least 2 rails")
        pattern = _rail_pattern(len(plaintext), rails)
        rows: list[list[str]] = [[] for _ in range(rails)]
        for ch, row in zip(plaintext, pattern):
            rows[row].append(ch)
        return "".join("".join(row) for row in rows)
    if method == "hill":
        matrix = spec["matrix"]
        n = len(matrix)
        if len(plaintext) % n != 0:
            raise ConfigError("hill plaintext length must be divisible by the matrix size")
        _matrix_inverse_mod26(matrix)  # validates invertibility
        out = []
        for block_start in range(0, len(plaintext), n):
            vec = [ALPHA.index(ch) for ch in plaintext[block_start : block_start + n]]
            for i in range(n):
                out.append(ALPHA[sum(matrix[i][j] * vec[j] for j in range(n)) % MOD])
        return "".join(out)
    raise ConfigError(f"unknown cipher method {method!r}")


def decrypt(spec: Mapping[str, Any], ciphertext: str) -> str:
    _check_text(ciphertext)
    method = spec["method"]
    if method == "caesar":
        return encrypt({"method": "caesar", "shift": -spec["shift"] % MOD}, ciphertext)
    if method == "vigenere":
        key = spec["keyword"]
        _check_text(key)
        return "".join(
            ALPHA[(ALPHA.index(ch) - ALPHA.index(key[i % len(key)])) % MOD]
            for i, ch in enumerate(ciphertext)
        )
    if method == "affine":
        a_inv = _mod_inverse(spec["a"])
        b = spec["b"]
        return "".join(ALPHA[(a_inv * (ALPHA.index(ch) - b)) % MOD] for ch in ciphertext)
    if method == "rail_fence":
        rails = spec["rails"]
        pattern = _rail_pattern(len(ciphertext), rails)
        order = sorted(range(len(ciphertext)), key=lambda i: (pattern[i], i))
        plain = [""] * len(ciphertext)
        for cipher_pos, plain_pos in enumerate(order):
            plain[plain_pos] = ciphertext[cipher_pos]
        return "".join(plain)
    if method == "hill":
        inv = _matrix_inverse_mod26(spec["matrix"])
        return encrypt({"method": "hill", "matrix": inv}, ciphertext)
    raise ConfigError(f"unknown cipher method {method!r}")


def random_spec(rng: random.Random, method: str, params: Mapping[str, Any]) -> dict[str, Any]:
    if method == "caesar":
        lo, hi = params.get("shift", (1, 25))
        return {"method": "caesar", "shift": rng.randint(lo, hi)}
    if method == "vigenere":
        lo, hi = params.get("keyword_length", (3, 6))
        k = rng.randint(lo, hi)
        return {"method": "vigenere", "keyword": "".join(rng.choice(ALPHA) for _ in range(k))}
    if method == "affine":
        bound = params.get("affine_range", 25)
        units = [a for a in range(1, min(bound, 25) + 1) if math.gcd(a, MOD) == 1 and a != 1]
        return {"method": "affine", "a": rng.choice(units), "b": rng.randint(0, min(bound, 25))}
    if method == "rail_fence":
        lo, hi = params.get("rails", (2, 4))
        return {"method": "rail_fence", "rails": rng.randint(lo, hi)}
    if method == "hill":
        n = params.get("matrix_size", 2)
        while True:
            matrix = [[rng.randint(0, 25) for _ in range(n)] for _ in range(n)]
            if math.gcd(_matrix_det(matrix) % MOD, MOD) == 1:
                return {"method": "hill", "matrix": matrix}
    raise ConfigError(f"unknown cipher method {method!r}")


_DISPLAY = {
    "caesar": "Caesar Cipher",
    "vigenere": "Vigenere Cipher",
    "affine": "Affine Cipher",
    "rail_fence": "Rail Fence Cipher",
    "hill": "Hill Cipher",
}


def spec_display(spec: Mapping[str, Any]) -> str:
    method = spec["method"]
    parts = [f"'method': '{_DISPLAY[method]}'"]
    for key in ("shift", "keyword", "a", "b", "rails", "matrix"):
        if key in spec:
            value = spec[key]
            parts.append(f"'{key}': {value!r}" if isinstance(value, str) else f"'{key}': {value}")
    return "{" + ", ".join(parts) + "}"


def _normalize_answer(text: str) -> str:
    return "".join(text.upper().split())


class _CryptoTask(PuzzleTask):
    def parse_answer(self, candidate: str) -> Any:
        return _normalize_answer(candidate)

    def check(self, instance: PuzzleInstance, answer: Any) -> Verdict:
        if answer == instance.gold["plaintext"]:
            return self.ok()
        return self.wrong()

    def gold_answer_text(self, instance: PuzzleInstance) -> str:
        return instance.gold["plaintext"]

    def corrupt_answer_text(self, instance: PuzzleInstance, rng: random.Random) -> str:
        plaintext = instance.gold["plaintext"]
        pos = rng.randrange(len(plaintext))
        flipped = ALPHA[(ALPHA.index(plaintext[pos]) + 1) % MOD]
        return plaintext[:pos] + flipped + plaintext[pos + 1 :]

    def _spec_for_tier(self, rng: random.Random, params: Mapping[str, Any]) -> dict[str, Any]:
        method = rng.choice(list(params["methods"]))
        return random_spec(rng, method, params)

    @staticmethod
    def _fit_length(length: int, spec: Mapping[str, Any]) -> int:
        if spec["method"] == "hill":
            n = len(spec["matrix"])
            length -= length % n
            length = max(length, 2 * n)
        return length


class CryptoKkaTask(_CryptoTask):
    """Ciphertext plus the named method and parameters; recover the plaintext."""

    task_id = "kka"
    tier_params = {
        Tier.EASY: {
            "methods": ("caesar", "rail_fence"),
            "plaintext_length": (10, 20),
            "shift": (1, 7),
            "rails": (2, 3),
        },
        Tier.MEDIUM: {
            "methods": ("caesar", "vigenere", "affine"),
            "plaintext_length": (20, 40),
            "shift": (8, 25),
            "keyword_length": (3, 5),
            "affine_range": 25,
        },
        Tier.HARD: {
            "methods": ("vigenere", "affine", "hill"),
            "plaintext_length": (30, 60),
            "keyword_length": (6, 9),
            "affine_range": 25,
            "matrix_size": 2,
        },
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        spec = self._spec_for_tier(rng, params)
        lo, hi = params["plaintext_length"]
        length = self._fit_length(rng.randint(lo, hi), spec)
        plaintext = sample_plaintext(rng, length)
        ciphertext = encrypt(spec, plaintext)
        payload = {
            "ciphertext": ciphertext,
            "spec": spec,
            "length": length,
        }
        gold = {"plaintext": plaintext}
        return GenOut(payload, gold, {})

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        return {
            "ciphertext": payload["ciphertext"],
            "method_spec": spec_display(payload["spec"]),
        }


class CryptoKpaTask(_CryptoTask):
    """Hint pair plus target ciphertext; the method itself stays hidden."""

    task_id = "kpa"
    tier_params = {
        Tier.EASY: {
            "methods": ("caesar",),
            "plaintext_length": (8, 16),
            "hint_length": (40, 80),
            "shift": (1, 25),
        },
        Tier.MEDIUM: {
            "methods": ("caesar", "vigenere", "affine"),
            "plaintext_length": (12, 24),
            "hint_length": (60, 120),
            "shift": (1, 25),
            "keyword_length": (3, 5),
            "affine_range": 25,
        },
        Tier.HARD: {
            "methods": ("vigenere", "affine", "rail_fence", "hill"),
            "plaintext_length": (16, 32),
            "hint_length": (80, 160),
            "keyword_length": (3, 6),
            "affine_range": 25,
            "rails": (2, 4),
            "matrix_size": 2,
        },
    }

    def generate_payload(self, tier: Tier, rng: random.Random, params: Mapping[str, Any]) -> GenOut:
        spec = self._spec_for_tier(rng, params)
        lo, hi = params["plaintext_length"]
        length = self._fit_length(rng.randint(lo, hi), spec)
        hlo, hhi = params["hint_length"]
        hint_length = self._fit_length(rng.randint(hlo, hhi), spec)
        plaintext = sample_plaintext(rng, length)
        hint_plain = sample_plaintext(rng, hint_length)
        payload = {
            "hint_plaintext": hint_plain,
            "hint_ciphertext": encrypt(spec, hint_plain),
            "target_ciphertext": encrypt(spec, plaintext),
            "length": length,
        }
        gold = {"plaintext": plaintext, "spec": spec}
        return GenOut(payload, gold, {})

    def prompt_slots(self, payload: Mapping[str, Any]) -> dict[str, str]:
        return {
            "hint_plaintext": payload["hint_plaintext"],
            "hint_ciphertext": payload["hint_ciphertext"],
            "target_ciphertext": payload["target_ciphertext"],
        }

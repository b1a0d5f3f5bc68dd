"""Deterministic randomness.

Every generated instance draws from its own stream, derived by hashing
(root seed, task id, tier, index). Streams are independent of generation
order, so batches can be produced in parallel or resumed mid-way and still
be byte-identical. ``random.Random`` (Mersenne Twister) is stable across
CPython versions and platforms.
"""

from __future__ import annotations

import hashlib
import random

MAX_SEED = 2**64 - 1


def derive_seed(root_seed: int, *labels: object) -> int:
    """Map (root seed, label path) to a 64-bit stream seed via SHA-256."""
    h = hashlib.sha256()
    h.update(str(int(root_seed)).encode("ascii"))
    for label in labels:
        h.update(b"\x1f")
        h.update(str(label).encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "big")


def stream(root_seed: int, task_id: str, tier: str, index: int) -> random.Random:
    """The RNG stream for one instance slot."""
    return random.Random(derive_seed(root_seed, task_id, tier, index))

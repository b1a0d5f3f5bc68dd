"""puzzleforge: seeded puzzle generators with automatic answer verification.

The package pairs every generated puzzle with a programmatic verifier so
that free-text responses can be scored 0/1 inside an RL reward loop, and
ships the dataset plumbing (difficulty calibration, sampling plans,
train/eval splits) around those pairs.
"""

from .api import (
    corrupted_response,
    generate,
    generate_one,
    gold_response,
    render_prompt,
    verify,
)
from .core import (
    REGISTRY,
    Category,
    Failure,
    PuzzleInstance,
    Source,
    Split,
    TaskDescriptor,
    Tier,
    Verdict,
    register_tasks,
)

__version__ = "0.1.0"

__all__ = [
    "Category",
    "Failure",
    "PuzzleInstance",
    "REGISTRY",
    "Source",
    "Split",
    "TaskDescriptor",
    "Tier",
    "Verdict",
    "__version__",
    "corrupted_response",
    "generate",
    "generate_one",
    "gold_response",
    "register_tasks",
    "render_prompt",
    "verify",
]

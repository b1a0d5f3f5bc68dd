from .errors import (
    AnswerFormatError,
    ConfigError,
    DataLeakError,
    GenerationExhausted,
    JsonlParseError,
    PuzzleForgeError,
    UnknownTaskError,
)
from .model import (
    TEMPLATE_VERSION,
    TIERS,
    Category,
    Difficulty,
    Failure,
    PuzzleInstance,
    Source,
    Split,
    TaskDescriptor,
    Verdict,
    instance_id_for,
)
from .registry import REGISTRY, auto_task_ids, descriptor, fixed_pool_task_ids, register_tasks
from .model import Tier

__all__ = [
    "AnswerFormatError",
    "Category",
    "ConfigError",
    "DataLeakError",
    "Difficulty",
    "Failure",
    "GenerationExhausted",
    "JsonlParseError",
    "PuzzleForgeError",
    "PuzzleInstance",
    "REGISTRY",
    "Source",
    "Split",
    "TEMPLATE_VERSION",
    "TIERS",
    "TaskDescriptor",
    "Tier",
    "UnknownTaskError",
    "Verdict",
    "auto_task_ids",
    "descriptor",
    "fixed_pool_task_ids",
    "instance_id_for",
    "register_tasks",
]

"""Exception hierarchy shared by generators, verifiers, and the dataset pipeline."""


class PuzzleForgeError(Exception):
    """Base class for all library errors."""


class ConfigError(PuzzleForgeError):
    """Bad registry, plan, or parameter configuration."""


class UnknownTaskError(ConfigError):
    """A task id that is not in the registry."""


class GenerationExhausted(PuzzleForgeError):
    """A generator ran out of retries for an infeasible parameter combination."""


class AnswerFormatError(PuzzleForgeError):
    """A candidate answer does not parse into the task's structured answer type.

    Carries an optional position hint for diagnostics.
    """

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class JsonlParseError(PuzzleForgeError):
    """Malformed JSONL input; ``line_no`` is 1-based."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DataLeakError(PuzzleForgeError):
    """A compiled train set intersected an eval manifest."""

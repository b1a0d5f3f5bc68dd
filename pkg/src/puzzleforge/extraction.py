"""Pull a normalized candidate answer out of free-text model output.

Extraction never raises on garbage input: :func:`extract` returns ``None``
when no answer region exists, and the structured parsers raise
:class:`AnswerFormatError` with a position hint. Last-match-wins when a
response contains several candidate regions, since chain-of-thought output
routinely includes scratch blocks before the final answer.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .core.errors import AnswerFormatError


class ExtractMode(str, Enum):
    LAST_FENCED_BLOCK = "LastFencedBlock"
    BOARD_TAGS = "BoardTags"
    INLINE_ANSWER = "InlineAnswer"
    MARKDOWN_TABLE = "MarkdownTable"


class Normalizer(str, Enum):
    TRIM_WHITESPACE = "TrimWhitespace"
    COLLAPSE_SPACES = "CollapseSpaces"
    UPPERCASE = "Uppercase"
    STRIP_QUOTES = "StripQuotes"


@dataclass(frozen=True)
class ExtractionSpec:
    mode: ExtractMode
    normalizers: tuple[Normalizer, ...] = (Normalizer.TRIM_WHITESPACE,)
    # Tasks where an empty answer region is itself a meaningful answer.
    allow_empty: bool = False


_FENCE_RE = re.compile(r"```[ \t]*[a-zA-Z0-9_+-]*[ \t]*\n(.*?)```", re.DOTALL)
_BOARD_RE = re.compile(r"<begin_board>(.*?)<end_board>", re.DOTALL | re.IGNORECASE)


def _apply_normalizers(text: str, normalizers: Sequence[Normalizer]) -> str:
    for norm in normalizers:
        if norm is Normalizer.TRIM_WHITESPACE:
            text = "\n".join(line.rstrip() for line in text.strip().splitlines())
        elif norm is Normalizer.COLLAPSE_SPACES:
            text = re.sub(r"[ \t]+", " ", text)
        elif norm is Normalizer.UPPERCASE:
            text = text.upper()
        elif norm is Normalizer.STRIP_QUOTES:
            text = text.strip().strip("\"'")
    return text


def extract(response_text: str, spec: ExtractionSpec, strict: bool = True) -> str | None:
    """Pull the answer region from a response, or ``None`` when absent.

    In lenient mode (``strict=False``) a response with no delimited region
    falls back to the whole text, so short bare answers still verify.
    """
    if not isinstance(response_text, str) or not response_text.strip():
        return None

    if spec.mode is ExtractMode.BOARD_TAGS:
        regions = _BOARD_RE.findall(response_text)
    elif spec.mode is ExtractMode.INLINE_ANSWER:
        regions = [response_text]
    else:
        regions = _FENCE_RE.findall(response_text)
        if spec.mode is ExtractMode.MARKDOWN_TABLE:
            tabled = [r for r in regions if "|" in r]
            if tabled:
                regions = tabled
            elif not strict and "|" in response_text:
                regions = [response_text]

    if not regions:
        if strict or spec.mode is ExtractMode.BOARD_TAGS:
            return None
        regions = [response_text]

    if spec.allow_empty:
        candidate = regions[-1]
    else:
        non_empty = [r for r in regions if r.strip()]
        if not non_empty:
            return None
        candidate = non_empty[-1]

    return _apply_normalizers(candidate, spec.normalizers)


# ---------------------------------------------------------------------------
# Structured parsers shared across tasks.
# ---------------------------------------------------------------------------

_COORD_GROUP_RE = re.compile(r"\(([^()]*)\)")
_COORD_PAIR_RE = re.compile(r"^\s*(-?\d+)\s*,\s*(-?\d+)\s*$")
_INT_RE = re.compile(r"-?\d+")


def parse_int_grid(text: str, blanks: Sequence[str] = ()) -> list[list[int | str]]:
    """Whitespace-separated grid of integers; ``blanks`` tokens pass through.

    Also accepts the bracketed list-of-lists style some boards use.
    """
    stripped = text.strip()
    if stripped.startswith("["):
        return _parse_bracket_grid(stripped, blanks)
    rows: list[list[int | str]] = []
    for line_no, line in enumerate(stripped.splitlines(), start=1):
        tokens = line.replace(",", " ").split()
        if not tokens:
            continue
        row: list[int | str] = []
        for tok in tokens:
            if tok in blanks:
                row.append(tok)
            else:
                try:
                    row.append(int(tok))
                except ValueError:
                    raise AnswerFormatError(f"bad grid token {tok!r}", position=line_no)
        rows.append(row)
    if not rows:
        raise AnswerFormatError("empty grid")
    width = len(rows[0])
    for line_no, row in enumerate(rows, start=1):
        if len(row) != width:
            raise AnswerFormatError("ragged grid", position=line_no)
    return rows


def _parse_bracket_grid(text: str, blanks: Sequence[str]) -> list[list[int | str]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AnswerFormatError(f"bad grid literal: {exc.msg}", position=exc.pos)
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise AnswerFormatError("expected a list of rows")
    rows: list[list[int | str]] = []
    for row in data:
        out: list[int | str] = []
        for cell in row:
            if isinstance(cell, bool) or not isinstance(cell, (int, str)):
                raise AnswerFormatError(f"bad grid cell {cell!r}")
            if isinstance(cell, str):
                if cell not in blanks:
                    raise AnswerFormatError(f"bad grid cell {cell!r}")
                out.append(cell)
            else:
                out.append(cell)
        rows.append(out)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise AnswerFormatError("ragged grid")
    return rows


def parse_symbol_grid(text: str, alphabet: str) -> list[list[str]]:
    """Grid of single-character cells; tokens may be spaced or run together."""
    rows: list[list[str]] = []
    for line_no, line in enumerate(text.strip().splitlines(), start=1):
        cells: list[str] = []
        for tok in line.split():
            for ch in tok:
                if ch not in alphabet:
                    raise AnswerFormatError(f"bad cell {ch!r}", position=line_no)
                cells.append(ch)
        if cells:
            rows.append(cells)
    if not rows:
        raise AnswerFormatError("empty board")
    width = len(rows[0])
    for line_no, row in enumerate(rows, start=1):
        if len(row) != width:
            raise AnswerFormatError("ragged board", position=line_no)
    return rows


def parse_coord_list(text: str) -> list[tuple[int, int]]:
    """Coordinate pairs like ``[(1, 1), (2, 4)]``; tolerant of spacing only."""
    stripped = text.strip()
    if stripped in ("[]", ""):
        return []
    coords: list[tuple[int, int]] = []
    for pos, group in enumerate(_COORD_GROUP_RE.findall(stripped), start=1):
        m = _COORD_PAIR_RE.match(group)
        if not m:
            raise AnswerFormatError(f"bad coordinate ({group})", position=pos)
        coords.append((int(m.group(1)), int(m.group(2))))
    if not coords:
        raise AnswerFormatError("no coordinates found")
    return coords


def parse_int_list(text: str) -> list[int]:
    stripped = text.strip()
    try:
        data = json.loads(stripped)
        if isinstance(data, list) and all(
            isinstance(x, int) and not isinstance(x, bool) for x in data
        ):
            return data
    except json.JSONDecodeError:
        pass
    if re.fullmatch(r"[\[\]\s,\-0-9]+", stripped):
        return [int(tok) for tok in _INT_RE.findall(stripped)]
    raise AnswerFormatError("expected a list of integers")


def parse_str_list(text: str) -> list[str]:
    """JSON-style list of strings, e.g. ``["R11", "C23"]``."""
    stripped = text.strip()
    try:
        data = json.loads(stripped)
    except json.JSONDecodeError:
        quoted = re.findall(r'"([^"]*)"', stripped)
        if quoted and re.fullmatch(r'[\[\]\s,]*(?:"[^"]*"[\[\]\s,]*)+', stripped):
            return quoted
        raise AnswerFormatError("expected a list of strings")
    if isinstance(data, str):
        return [data]
    if isinstance(data, list) and all(isinstance(x, str) for x in data):
        return data
    raise AnswerFormatError("expected a list of strings")


def parse_move_string(text: str, alphabet: str = "UDLR") -> str:
    moves = re.sub(r"[\s,]+", "", text).upper()
    for pos, ch in enumerate(moves, start=1):
        if ch not in alphabet:
            raise AnswerFormatError(f"bad move {ch!r}", position=pos)
    return moves


def parse_quoted_board(text: str) -> list[list[str]]:
    """Rows of quoted cells: ``"X" "O" ""`` per line."""
    rows = []
    for line_no, line in enumerate(text.strip().splitlines(), start=1):
        if not line.strip():
            continue
        cells = re.findall(r'"([^"]*)"', line)
        if not cells:
            raise AnswerFormatError("expected quoted cells", position=line_no)
        rows.append([c.strip().upper() for c in cells])
    if not rows:
        raise AnswerFormatError("empty board")
    return rows


def parse_markdown_table(text: str) -> list[list[str]]:
    """Markdown table rows as lists of cell strings; separator rows dropped."""
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line.startswith("|"):
            continue
        cells = [c.strip() for c in line.strip("|").split("|")]
        if all(re.fullmatch(r":?-{2,}:?", c) for c in cells if c):
            continue
        rows.append(cells)
    if not rows:
        raise AnswerFormatError("no table rows found")
    return rows


def parse_rotation_chain(text: str) -> list[tuple[int, int]]:
    """Rotation steps like ``(0,0)->(1,1)->(0,1)``."""
    chunks = re.split(r"->|\n", text.strip())
    coords = []
    for pos, chunk in enumerate(chunks, start=1):
        chunk = chunk.strip().rstrip(",").strip()
        if not chunk:
            continue
        m = re.fullmatch(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)", chunk)
        if not m:
            raise AnswerFormatError(f"bad rotation step {chunk!r}", position=pos)
        coords.append((int(m.group(1)), int(m.group(2))))
    return coords


def render_coord_list(coords: Sequence[tuple[int, int]]) -> str:
    return "[" + ", ".join(f"({r}, {c})" for r, c in coords) + "]"


def render_int_grid(grid: Sequence[Sequence[int]]) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in grid)


def render_symbol_grid(grid: Sequence[Sequence[str]]) -> str:
    return "\n".join(" ".join(row) for row in grid)

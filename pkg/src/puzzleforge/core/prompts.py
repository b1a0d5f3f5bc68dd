"""Prompt templating: versioned text assets with named slots.

Templates live under ``puzzleforge/templates/<template_id>.txt`` and use
``str.format`` slots. Rendering is pure: the same (template, slots) always
yields the same text.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from typing import Mapping

from .errors import ConfigError


@lru_cache(maxsize=None)
def template_text(template_id: str) -> str:
    ref = resources.files("puzzleforge") / "templates" / f"{template_id}.txt"
    try:
        return ref.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"no template asset for {template_id!r}") from None


def render(template_id: str, slots: Mapping[str, str]) -> str:
    try:
        return template_text(template_id).format(**slots)
    except (KeyError, IndexError) as exc:
        raise ConfigError(f"template {template_id!r} missing slot: {exc}") from exc

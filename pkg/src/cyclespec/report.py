"""Stable text documents for command results."""

from __future__ import annotations

import yaml

from . import __version__


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    if hasattr(value, "item"):  # numpy scalars
        return value.item()
    return value


def render(command: str, parameters: dict, results, resume_cursor=None) -> str:
    doc = {
        "command": command,
        "parameters": _plain(parameters),
        "results": _plain(results),
        "version": __version__,
        "resume_cursor": _plain(resume_cursor),
    }
    return yaml.safe_dump(doc, sort_keys=True, default_flow_style=False, allow_unicode=True)


def load(text: str) -> dict:
    return yaml.safe_load(text)

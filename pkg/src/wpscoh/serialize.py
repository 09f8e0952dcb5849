"""Canonical JSON: sorted keys, and integers beyond 2^53 - 1 written as strings."""
from __future__ import annotations

import json
from typing import Any

SAFE_INT = 2**53 - 1


def _prepare(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > SAFE_INT else obj
    if isinstance(obj, dict):
        return {str(k): _prepare(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_prepare(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(_prepare(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    return json.loads(text)


def round_trips(text: str) -> bool:
    return dumps(loads(text)) == text

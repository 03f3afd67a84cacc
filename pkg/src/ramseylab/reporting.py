"""Machine-readable report emitters (JSON, TSV)."""

from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

FLOAT_DIGITS = 9


def _normalise(value: Any) -> Any:
    if isinstance(value, float):
        return round(value, FLOAT_DIGITS)
    if isinstance(value, dict):
        return {str(key): _normalise(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_normalise(item) for item in value]
    return value


def build_report(command: str, result: Any) -> dict[str, Any]:
    """Report body; no argv, timestamps or durations, so equal queries give equal bytes."""
    return {"command": command, "result": result}


def render_json(payload: Any) -> str:
    return json.dumps(_normalise(payload), indent=2, sort_keys=True, ensure_ascii=False)


def render_tsv(rows: Iterable[dict[str, Any]], columns: Sequence[str]) -> str:
    lines = ["\t".join(columns)]
    for row in rows:
        lines.append("\t".join(_cell(row.get(column)) for column in columns))
    return "\n".join(lines)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.{FLOAT_DIGITS}f}"
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    return str(value)

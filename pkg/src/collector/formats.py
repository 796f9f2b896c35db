"""Rendering and parsing of exported event files (CSV and JSONL).

CSV column order matches the wire field order; JSONL lines are the
canonical payload JSON, one record per line. Parsers report failures
with 1-based line numbers.
"""

from __future__ import annotations

import csv
import io
import json

from .errors import ParseError, SchemaViolation, WireError
from .events import (
    KEYSTROKE_FIELDS,
    KIND_KEYSTROKE,
    MOUSE_FIELDS,
    EventEnvelope,
    payload_dict,
    payload_from_dict,
    payload_json,
)

FORMATS = ("jsonl", "csv")


def _columns(kind: str) -> tuple[str, ...]:
    return KEYSTROKE_FIELDS if kind == KIND_KEYSTROKE else MOUSE_FIELDS


def render_export(envelopes: list[EventEnvelope], kind: str, fmt: str) -> str:
    if fmt == "jsonl":
        return "".join(payload_json(e) + "\n" for e in envelopes)
    if fmt != "csv":
        raise SchemaViolation("format", f"unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_columns(kind))
    for env in envelopes:
        d = payload_dict(env)
        writer.writerow([d[c] for c in _columns(kind)])
    return buf.getvalue()


def _parse_number(value: str, column: str, line: int):
    try:
        return int(value)
    except ValueError:
        pass
    try:
        return float(value)
    except ValueError:
        raise ParseError(line, f"column {column!r}: not a number: {value!r}") from None


def _parse_csv(text: str, kind: str) -> list[EventEnvelope]:
    columns = _columns(kind)
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows or tuple(rows[0]) != columns:
        raise ParseError(1, f"expected header {','.join(columns)}")
    out = []
    for line, row in enumerate(rows[1:], 2):
        if not row:
            continue
        if len(row) != len(columns):
            raise ParseError(line, f"expected {len(columns)} columns, got {len(row)}")
        obj = dict(zip(columns, row))
        if kind == KIND_KEYSTROKE:
            for c in ("down", "up", "ctrl", "alt", "shift", "caps"):
                obj[c] = _parse_number(obj[c], c, line)
        else:
            for c in ("x", "y", "t"):
                obj[c] = _parse_number(obj[c], c, line)
        try:
            out.append(payload_from_dict(kind, obj))
        except WireError as exc:
            raise ParseError(line, str(exc)) from exc
    return out


def _parse_jsonl(text: str, kind: str) -> list[EventEnvelope]:
    out = []
    for line, raw in enumerate(text.split("\n"), 1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(line, f"not valid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise ParseError(line, "expected a JSON object")
        try:
            out.append(payload_from_dict(kind, obj))
        except WireError as exc:
            raise ParseError(line, str(exc)) from exc
    return out


def parse_export_text(text: str, kind: str) -> list[EventEnvelope]:
    """Parse an exported file body, sniffing JSONL vs CSV from line 1."""
    stripped = text.lstrip()
    if not stripped:
        return []
    if stripped[0] == "{":
        return _parse_jsonl(text, kind)
    return _parse_csv(text, kind)

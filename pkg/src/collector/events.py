"""Canonical event types and their wire encoding.

The wire string is canonical JSON of the payload (fixed field order,
booleans as 0/1) percent-encoded with only RFC 3986 unreserved characters
left bare. Both the browser extension and the service speak exactly this
format; this module is the single source of truth for it.
"""

from __future__ import annotations

import json
import math
import urllib.parse
from dataclasses import dataclass
from typing import Union

from .errors import InvariantViolation, MalformedWire, SchemaViolation

KIND_KEYSTROKE = "keystroke"
KIND_MOUSE = "mouse"
KINDS = (KIND_KEYSTROKE, KIND_MOUSE)

MOUSE_ACTIONS = (
    "move",
    "left_down",
    "left_up",
    "right_down",
    "right_up",
    "wheel_roll",
    "wheel_down",
    "wheel_up",
)

# Wire/CSV field order is fixed; reordering would break canonical encoding.
KEYSTROKE_FIELDS = ("code", "key", "down", "up", "ctrl", "alt", "shift", "caps")
MOUSE_FIELDS = ("action", "x", "y", "t")


@dataclass(frozen=True)
class KeystrokeRecord:
    """One physical key press/release cycle.

    Timestamps are client milliseconds since the Unix epoch; modifier
    flags reflect state at the keydown instant.
    """

    code: str
    key: str
    down_ms: int
    up_ms: int
    ctrl: bool = False
    alt: bool = False
    shift: bool = False
    caps: bool = False


@dataclass(frozen=True)
class MouseRecord:
    """One mouse action at page coordinates (document-relative pixels)."""

    action: str
    x: float
    y: float
    t_ms: int


Payload = Union[KeystrokeRecord, MouseRecord]


@dataclass(frozen=True)
class EventEnvelope:
    kind: str
    payload: Payload


def keystroke_envelope(record: KeystrokeRecord) -> EventEnvelope:
    return EventEnvelope(KIND_KEYSTROKE, record)


def mouse_envelope(record: MouseRecord) -> EventEnvelope:
    return EventEnvelope(KIND_MOUSE, record)


def validate_keystroke(record: KeystrokeRecord) -> None:
    if not record.code:
        raise InvariantViolation("code", "must be a non-empty string")
    if not record.key:
        raise InvariantViolation("key", "must be a non-empty string")
    if record.up_ms < record.down_ms:
        raise InvariantViolation("up_ms", "keyup precedes keydown")


def validate_mouse(record: MouseRecord) -> None:
    if record.action not in MOUSE_ACTIONS:
        raise InvariantViolation("action", f"unknown action {record.action!r}")
    # `not (v >= 0)` also catches NaN.
    if not math.isfinite(record.x) or not (record.x >= 0):
        raise InvariantViolation("x", "page coordinates are non-negative")
    if not math.isfinite(record.y) or not (record.y >= 0):
        raise InvariantViolation("y", "page coordinates are non-negative")


def validate_envelope(envelope: EventEnvelope) -> None:
    if envelope.kind == KIND_KEYSTROKE:
        if not isinstance(envelope.payload, KeystrokeRecord):
            raise InvariantViolation("payload", "kind/payload mismatch")
        validate_keystroke(envelope.payload)
    elif envelope.kind == KIND_MOUSE:
        if not isinstance(envelope.payload, MouseRecord):
            raise InvariantViolation("payload", "kind/payload mismatch")
        validate_mouse(envelope.payload)
    else:
        raise SchemaViolation("kind", f"unknown kind {envelope.kind!r}")


def payload_dict(envelope: EventEnvelope) -> dict:
    """Payload as a dict in canonical field order, flags as 0/1."""
    p = envelope.payload
    if envelope.kind == KIND_KEYSTROKE:
        return {
            "code": p.code,
            "key": p.key,
            "down": p.down_ms,
            "up": p.up_ms,
            "ctrl": int(p.ctrl),
            "alt": int(p.alt),
            "shift": int(p.shift),
            "caps": int(p.caps),
        }
    return {"action": p.action, "x": p.x, "y": p.y, "t": p.t_ms}


def payload_json(envelope: EventEnvelope) -> str:
    return json.dumps(payload_dict(envelope), separators=(",", ":"), ensure_ascii=False)


def encode_envelope(envelope: EventEnvelope) -> str:
    """Encode a valid envelope as a URL-safe wire string (deterministic)."""
    return urllib.parse.quote(payload_json(envelope), safe="")


def _reject_nonfinite(token: str):
    # Canonical JSON has no NaN/Infinity literals.
    raise ValueError(f"non-finite literal {token}")


def payload_from_dict(kind: str, obj: dict) -> EventEnvelope:
    """Build and validate an envelope from a parsed payload object.

    Shared by the wire decoder and the JSONL/export parsers so that all
    ingestion paths enforce the same schema and invariants.
    """
    if kind not in KINDS:
        raise SchemaViolation("kind", f"unknown kind {kind!r}")
    fields = KEYSTROKE_FIELDS if kind == KIND_KEYSTROKE else MOUSE_FIELDS
    for name in fields:
        if name not in obj:
            raise SchemaViolation(name, "missing field")
    for name in obj:
        if name not in fields:
            raise SchemaViolation(name, "unexpected field")

    if kind == KIND_KEYSTROKE:
        for name in ("code", "key"):
            if not isinstance(obj[name], str):
                raise SchemaViolation(name, "expected string")
        for name in ("down", "up"):
            if type(obj[name]) is not int:
                raise SchemaViolation(name, "expected integer milliseconds")
        for name in ("ctrl", "alt", "shift", "caps"):
            if type(obj[name]) is not int or obj[name] not in (0, 1):
                raise SchemaViolation(name, "expected 0 or 1")
        record = KeystrokeRecord(
            code=obj["code"],
            key=obj["key"],
            down_ms=obj["down"],
            up_ms=obj["up"],
            ctrl=bool(obj["ctrl"]),
            alt=bool(obj["alt"]),
            shift=bool(obj["shift"]),
            caps=bool(obj["caps"]),
        )
        validate_keystroke(record)
        return EventEnvelope(kind, record)

    if not isinstance(obj["action"], str):
        raise SchemaViolation("action", "expected string")
    for name in ("x", "y"):
        if type(obj[name]) not in (int, float):
            raise SchemaViolation(name, "expected number")
    if type(obj["t"]) is not int:
        raise SchemaViolation("t", "expected integer milliseconds")
    record = MouseRecord(action=obj["action"], x=obj["x"], y=obj["y"], t_ms=obj["t"])
    validate_mouse(record)
    return EventEnvelope(kind, record)


def decode_envelope(kind: str, wire: str) -> EventEnvelope:
    """Inverse of :func:`encode_envelope`; rejects anything off-schema."""
    try:
        text = urllib.parse.unquote(wire, errors="strict")
    except UnicodeDecodeError:
        raise MalformedWire("data", "invalid percent-encoding") from None
    try:
        obj = json.loads(text, parse_constant=_reject_nonfinite)
    except ValueError:
        raise MalformedWire("data", "not valid JSON") from None
    if not isinstance(obj, dict):
        raise SchemaViolation("data", "payload must be a JSON object")
    return payload_from_dict(kind, obj)


def client_timestamp(envelope: EventEnvelope) -> int:
    """The timestamp used for time-window queries (down_ms for keystrokes)."""
    if envelope.kind == KIND_KEYSTROKE:
        return envelope.payload.down_ms
    return envelope.payload.t_ms

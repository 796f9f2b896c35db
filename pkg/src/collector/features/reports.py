"""Feature-file generation: scan -> segment -> features -> CSV/JSONL.

CSV carries distances and speeds with six fractional digits; JSONL keeps
full float precision. Output is deterministic for a given input.
"""

from __future__ import annotations

import csv
import io
import json

from ..errors import SchemaViolation
from ..events import KIND_KEYSTROKE, KIND_MOUSE, KeystrokeRecord, MouseRecord
from ..store import EventStore
from .pipeline import (
    BigraphFeature,
    MouseSpeedFeature,
    extract_bigraphs,
    mouse_speeds,
    segment_keystrokes,
)

BIGRAPH_COLUMNS = ("user", "first", "second", "down1", "up1", "down2", "up2",
                   "dwell1", "dwell2", "flight", "dd")
MOUSE_SPEED_COLUMNS = ("user", "type_a", "type_b", "distance", "elapsed", "speed")


def bigraph_features(records: list[KeystrokeRecord]) -> list[BigraphFeature]:
    out = []
    for segment in segment_keystrokes(records):
        out.extend(extract_bigraphs(segment))
    return out


def _bigraph_row(user: str, f: BigraphFeature) -> dict:
    return {
        "user": user,
        "first": f.first_key,
        "second": f.second_key,
        "down1": f.down1_ms,
        "up1": f.up1_ms,
        "down2": f.down2_ms,
        "up2": f.up2_ms,
        "dwell1": f.dwell1_ms,
        "dwell2": f.dwell2_ms,
        "flight": f.flight_ms,
        "dd": f.dd_ms,
    }


def _speed_row(user: str, f: MouseSpeedFeature) -> dict:
    return {
        "user": user,
        "type_a": f.type_pair[0],
        "type_b": f.type_pair[1],
        "distance": f.distance_px,
        "elapsed": f.elapsed_ms,
        "speed": f.speed_px_per_s,
    }


def _render(rows: list[dict], columns: tuple[str, ...], fmt: str,
            six_digit: tuple[str, ...] = ()) -> str:
    if fmt == "jsonl":
        return "".join(json.dumps(r, separators=(",", ":"), ensure_ascii=False) + "\n"
                       for r in rows)
    if fmt != "csv":
        raise SchemaViolation("format", f"unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([f"{r[c]:.6f}" if c in six_digit else r[c] for c in columns])
    return buf.getvalue()


def render_bigraph_report(user: str, records: list[KeystrokeRecord], fmt: str) -> str:
    rows = [_bigraph_row(user, f) for f in bigraph_features(records)]
    return _render(rows, BIGRAPH_COLUMNS, fmt)


def render_mouse_speed_report(user: str, records: list[MouseRecord], fmt: str) -> str:
    rows = [_speed_row(user, f) for f in mouse_speeds(records).features]
    return _render(rows, MOUSE_SPEED_COLUMNS, fmt, six_digit=("distance", "speed"))


def keystroke_feature_report(store: EventStore, user: str, from_ms: int, to_ms: int,
                             fmt: str = "csv") -> str:
    """Bigraph feature file for one user's stored stream over a window."""
    events = store.scan(user, KIND_KEYSTROKE, from_ms, to_ms)
    records = [ev.envelope.payload for ev in events]
    return render_bigraph_report(user, records, fmt)


def mouse_feature_report(store: EventStore, user: str, from_ms: int, to_ms: int,
                         fmt: str = "csv") -> str:
    """Mouse-speed feature file for one user's stored stream over a window."""
    events = store.scan(user, KIND_MOUSE, from_ms, to_ms)
    records = [ev.envelope.payload for ev in events]
    return render_mouse_speed_report(user, records, fmt)

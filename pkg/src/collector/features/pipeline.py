"""Biometric feature extraction from event streams.

Keystroke streams are split into word-like segments, then each segment
yields per-bigraph timing features (four raw timestamps plus dwell,
flight and down-down intervals). Mouse streams yield per-consecutive-pair
distance/elapsed/speed features grouped by action-type pair.

All functions are pure; inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..events import MOUSE_ACTIONS, KeystrokeRecord, MouseRecord
from . import kernels

# A gap of strictly more than one second between consecutive keydowns
# starts a new segment; so does a preceding space.
SEGMENT_GAP_MS = 1000

_ACTION_CODE = {a: i for i, a in enumerate(MOUSE_ACTIONS)}


@dataclass(frozen=True)
class KeystrokeSegment:
    """A word-like run of letter keystrokes (space/function keys removed)."""

    letters: tuple[KeystrokeRecord, ...]

    def text(self) -> str:
        return "".join(r.key for r in self.letters)

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class BigraphFeature:
    first_key: str
    second_key: str
    down1_ms: int
    up1_ms: int
    down2_ms: int
    up2_ms: int
    dwell1_ms: int
    dwell2_ms: int
    flight_ms: int  # may be negative under rollover
    dd_ms: int


@dataclass(frozen=True)
class MouseSpeedFeature:
    type_pair: tuple[str, str]
    distance_px: float
    elapsed_ms: int
    speed_px_per_s: float


@dataclass
class SpeedExtraction:
    features: list[MouseSpeedFeature]
    skipped_pairs: int = 0  # consecutive pairs with elapsed <= 0


@dataclass
class SpeedStats:
    count: int = 0
    mean_speed: float = 0.0
    min_speed: float = 0.0
    max_speed: float = 0.0


def is_letter_key(record: KeystrokeRecord) -> bool:
    """Retained keys: single characters other than space.

    DOM key values for function keys ("Shift", "Enter", "F5", ...) are
    longer than one character; digits and punctuation count as letters
    of a segment.
    """
    return len(record.key) == 1 and record.key != " "


def _sorted_by_time(events, key):
    # Stable: ties keep store order.
    return sorted(events, key=key)


def segment_keystrokes(events: list[KeystrokeRecord]) -> list[KeystrokeSegment]:
    """Split a keystroke stream into word-like segments.

    Boundaries are decided on the full stream, by keydown timestamps:
    a new segment starts when the down-down gap exceeds SEGMENT_GAP_MS
    or when the previous key was the space key. Space and function keys
    are removed afterwards; segments left empty are dropped.
    """
    if not events:
        return []
    recs = _sorted_by_time(events, lambda r: r.down_ms)
    n = len(recs)
    down = np.fromiter((r.down_ms for r in recs), dtype=np.int64, count=n)
    space = np.fromiter((r.key == " " for r in recs), dtype=np.bool_, count=n)
    starts = kernels.segment_starts(down, space, SEGMENT_GAP_MS)

    segments: list[KeystrokeSegment] = []
    letters: list[KeystrokeRecord] = []
    for i, rec in enumerate(recs):
        if starts[i] and letters:
            segments.append(KeystrokeSegment(tuple(letters)))
            letters = []
        if is_letter_key(rec):
            letters.append(rec)
    if letters:
        segments.append(KeystrokeSegment(tuple(letters)))
    return segments


def extract_bigraphs(segment: KeystrokeSegment) -> list[BigraphFeature]:
    """Timing features for each consecutive letter pair of one segment."""
    out = []
    letters = segment.letters
    for a, b in zip(letters, letters[1:]):
        out.append(BigraphFeature(
            first_key=a.key,
            second_key=b.key,
            down1_ms=a.down_ms,
            up1_ms=a.up_ms,
            down2_ms=b.down_ms,
            up2_ms=b.up_ms,
            dwell1_ms=a.up_ms - a.down_ms,
            dwell2_ms=b.up_ms - b.down_ms,
            flight_ms=b.down_ms - a.up_ms,
            dd_ms=b.down_ms - a.down_ms,
        ))
    return out


def mouse_speeds(events: list[MouseRecord]) -> SpeedExtraction:
    """Distance/elapsed/speed for each consecutive mouse event pair.

    Pairs with elapsed <= 0 have no defined speed; they are skipped and
    counted in ``skipped_pairs``.
    """
    if len(events) < 2:
        return SpeedExtraction([], 0)
    recs = _sorted_by_time(events, lambda r: r.t_ms)
    n = len(recs)
    x = np.fromiter((r.x for r in recs), dtype=np.float64, count=n)
    y = np.fromiter((r.y for r in recs), dtype=np.float64, count=n)
    t = np.fromiter((r.t_ms for r in recs), dtype=np.int64, count=n)
    distance, elapsed, speed = kernels.pair_kinematics(x, y, t)

    features = []
    skipped = 0
    for i in range(n - 1):
        dt = int(elapsed[i])
        if dt <= 0:
            skipped += 1
            continue
        features.append(MouseSpeedFeature(
            type_pair=(recs[i].action, recs[i + 1].action),
            distance_px=float(distance[i]),
            elapsed_ms=dt,
            speed_px_per_s=float(speed[i]),
        ))
    return SpeedExtraction(features, skipped)


def speed_profile(features: list[MouseSpeedFeature]) -> dict[tuple[str, str], SpeedStats]:
    """Per action-type-pair speed statistics; absent pairs are omitted."""
    if not features:
        return {}
    n = len(features)
    codes = np.fromiter(
        (_ACTION_CODE[f.type_pair[0]] * kernels.N_ACTIONS + _ACTION_CODE[f.type_pair[1]]
         for f in features),
        dtype=np.int64, count=n,
    )
    speeds = np.fromiter((f.speed_px_per_s for f in features), dtype=np.float64, count=n)
    counts, sums, mins, maxs = kernels.pair_stats(codes, speeds, kernels.N_ACTIONS ** 2)

    profile = {}
    for slot in np.flatnonzero(counts).tolist():
        pair = (MOUSE_ACTIONS[slot // kernels.N_ACTIONS], MOUSE_ACTIONS[slot % kernels.N_ACTIONS])
        c = int(counts[slot])
        profile[pair] = SpeedStats(
            count=c,
            mean_speed=float(sums[slot]) / c,
            min_speed=float(mins[slot]),
            max_speed=float(maxs[slot]),
        )
    return profile

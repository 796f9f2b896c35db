"""Shared builders and naive oracles for the test suite."""

import math

from collector.events import MOUSE_ACTIONS, KeystrokeRecord, MouseRecord


def typed_stream(text, start=0, gap=150, dwell=60):
    """Keystroke records for literal text, fixed inter-key gap."""
    records = []
    t = start
    for ch in text:
        code = "Space" if ch == " " else f"Key{ch.upper()}"
        records.append(KeystrokeRecord(code, ch, t, t + dwell, shift=ch.isupper()))
        t += gap
    return records


def oracle_segments(records):
    """Literal application of the two splitting rules, then filtering.

    Deliberately naive and kernel-free: the reference the pipeline is
    checked against.
    """
    recs = sorted(records, key=lambda r: r.down_ms)
    sets = []
    current = []
    prev = None
    for r in recs:
        if prev is not None and (r.down_ms - prev.down_ms > 1000 or prev.key == " "):
            sets.append(current)
            current = []
        current.append(r)
        prev = r
    if current:
        sets.append(current)
    filtered = [[r for r in s if len(r.key) == 1 and r.key != " "] for s in sets]
    return [s for s in filtered if s]


def oracle_speeds(records):
    """Brute-force recomputation of per-pair distance/elapsed/speed."""
    recs = sorted(records, key=lambda r: r.t_ms)
    out = []
    skipped = 0
    for a, b in zip(recs, recs[1:]):
        dt = b.t_ms - a.t_ms
        if dt <= 0:
            skipped += 1
            continue
        dist = math.sqrt((b.x - a.x) ** 2 + (b.y - a.y) ** 2)
        out.append((a.action, b.action, dist, dt, dist / (dt / 1000)))
    return out, skipped


def random_mouse_stream(rng, n, allow_zero_gap=False):
    records = []
    t = rng.randint(0, 1000)
    for _ in range(n):
        records.append(MouseRecord(
            action=rng.choice(MOUSE_ACTIONS),
            x=rng.choice([rng.randint(0, 4000), round(rng.uniform(0, 4000), 3)]),
            y=rng.choice([rng.randint(0, 4000), round(rng.uniform(0, 4000), 3)]),
            t_ms=t,
        ))
        t += rng.randint(0, 80) if allow_zero_gap else rng.randint(1, 80)
    return records

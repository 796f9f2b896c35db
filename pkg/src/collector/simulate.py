"""Deterministic session simulator: a stand-in for a human at the browser.

A profile (plain JSON) describes words to type, timing ranges and a mouse
path; a seeded RNG turns it into a reproducible event stream which is
replayed against a running service over the same GET wire protocol the
extension uses.
"""

from __future__ import annotations

import http.client
import json
import logging
import random
import urllib.parse
from dataclasses import dataclass, field
from http.cookies import SimpleCookie
from pathlib import Path

from .events import (
    EventEnvelope,
    KeystrokeRecord,
    MouseRecord,
    encode_envelope,
    keystroke_envelope,
    mouse_envelope,
)

log = logging.getLogger(__name__)

# Fixed epoch base so a fixed seed yields identical client timestamps
# run-to-run (arrival times are server metadata and may differ).
DEFAULT_START_MS = 1_700_000_000_000


@dataclass
class SimulationProfile:
    words: list[str]
    inter_key_ms: tuple[int, int] = (120, 260)
    dwell_ms: tuple[int, int] = (50, 110)
    mouse_path: list[dict] = field(default_factory=list)
    mouse_step_ms: tuple[int, int] = (30, 90)
    seed: int = 0
    start_ms: int = DEFAULT_START_MS

    def __post_init__(self):
        for name in ("inter_key_ms", "dwell_ms", "mouse_step_ms"):
            lo, hi = getattr(self, name)
            if lo > hi or lo < 0:
                raise ValueError(f"{name}: bad range [{lo}, {hi}]")
        if any(lo <= 0 for lo in (self.inter_key_ms[0],)):
            raise ValueError("inter_key_ms minimum must be positive")


def load_profile(path: str | Path) -> SimulationProfile:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    known = {f for f in SimulationProfile.__dataclass_fields__}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown profile keys: {sorted(unknown)}")
    for name in ("inter_key_ms", "dwell_ms", "mouse_step_ms"):
        if name in raw:
            raw[name] = tuple(raw[name])
    return SimulationProfile(**raw)


def _key_code(ch: str) -> str:
    if ch == " ":
        return "Space"
    if ch.isalpha() and len(ch) == 1 and ch.isascii():
        return f"Key{ch.upper()}"
    if ch.isdigit():
        return f"Digit{ch}"
    return ch


def generate_keystrokes(profile: SimulationProfile, rng: random.Random) -> list[KeystrokeRecord]:
    """Type the words with a space between each pair, sampling timings."""
    text = " ".join(profile.words)
    records = []
    t = profile.start_ms
    for ch in text:
        dwell = rng.randint(*profile.dwell_ms)
        records.append(KeystrokeRecord(
            code=_key_code(ch),
            key=ch,
            down_ms=t,
            up_ms=t + dwell,
            shift=ch.isupper(),
        ))
        t += rng.randint(*profile.inter_key_ms)
    return records


def generate_mouse(profile: SimulationProfile, rng: random.Random) -> list[MouseRecord]:
    records = []
    t = profile.start_ms
    for step in profile.mouse_path:
        records.append(MouseRecord(
            action=step.get("action", "move"),
            x=step["x"],
            y=step["y"],
            t_ms=t,
        ))
        t += rng.randint(*profile.mouse_step_ms)
    return records


def generate_envelopes(profile: SimulationProfile) -> list[EventEnvelope]:
    rng = random.Random(profile.seed)
    envelopes = [keystroke_envelope(r) for r in generate_keystrokes(profile, rng)]
    envelopes += [mouse_envelope(r) for r in generate_mouse(profile, rng)]
    return envelopes


class SimulationError(RuntimeError):
    pass


class ServiceClient:
    """Keep-alive GET client that sends pre-encoded wire strings verbatim.

    Stock HTTP clients re-quote URLs, which would double-encode the wire
    string; http.client passes the path through untouched.
    """

    def __init__(self, target: str, timeout: float = 30.0):
        parts = urllib.parse.urlsplit(target)
        if parts.scheme != "http" or not parts.netloc:
            raise SimulationError(f"target must be an http:// URL, got {target!r}")
        self.host = parts.hostname
        self.port = parts.port or 80
        self.timeout = timeout
        self.cookie: str | None = None
        self._conn: http.client.HTTPConnection | None = None

    def _connection(self) -> http.client.HTTPConnection:
        if self._conn is None:
            self._conn = http.client.HTTPConnection(self.host, self.port, timeout=self.timeout)
        return self._conn

    def get(self, path: str) -> tuple[int, str]:
        headers = {"Cookie": f"uname={self.cookie}"} if self.cookie else {}
        for attempt in (1, 2):
            conn = self._connection()
            try:
                conn.request("GET", path, headers=headers)
                resp = conn.getresponse()
                body = resp.read().decode()
            except (http.client.HTTPException, OSError):
                # stale keep-alive connection: reconnect once
                self.close()
                if attempt == 2:
                    raise
                continue
            set_cookie = resp.getheader("Set-Cookie")
            if set_cookie:
                jar = SimpleCookie()
                jar.load(set_cookie)
                if "uname" in jar:
                    self.cookie = jar["uname"].value or None
            return resp.status, body
        raise SimulationError("unreachable")

    def close(self) -> None:
        if self._conn is not None:
            self._conn.close()
            self._conn = None


def run_simulation(profile: SimulationProfile, target: str, username: str,
                   password: str) -> int:
    """Register/login, replay the profile's events, log out.

    Returns the number of accepted events; any rejected event or failed
    auth step aborts with a diagnostic.
    """
    envelopes = generate_envelopes(profile)
    client = ServiceClient(target)
    creds = urllib.parse.urlencode({"uname": username, "pwd": password})
    try:
        status, body = client.get(f"/register?{creds}")
        if status != 200 and not body.startswith("DuplicateUser"):
            raise SimulationError(f"register failed: {status} {body}")
        status, body = client.get(f"/login?{creds}")
        if status != 200:
            raise SimulationError(f"login failed: {status} {body}")

        accepted = 0
        for env in envelopes:
            wire = encode_envelope(env)
            status, body = client.get(f"/collect?type={env.kind}&data={wire}")
            if status != 200:
                raise SimulationError(f"collect rejected event {accepted + 1}: {status} {body}")
            accepted += 1
        client.get("/logout")
    except OSError as exc:
        raise SimulationError(f"cannot reach {target}: {exc}") from exc
    finally:
        client.close()
    log.info("simulation sent %d events as %s", len(envelopes), username)
    return accepted

"""Durable per-user append-only event streams.

One log-structured file holds everything: user account records and event
records, one JSON object per line. Opening a store replays the log to
rebuild the in-memory index; appends go to the end of the file and are
flushed before they are acknowledged. Each (user, kind) pair is a
logically separate stream with its own monotone sequence numbers.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from .errors import BadRange, DuplicateUser, StorageFailure, UnknownUser
from .events import (
    KINDS,
    EventEnvelope,
    client_timestamp,
    payload_dict,
    payload_from_dict,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class UserAccount:
    username: str
    password_digest: str  # salted one-way digest, never the plaintext
    created_ms: int


@dataclass(frozen=True)
class StoredEvent:
    seq: int
    arrival_ms: int
    envelope: EventEnvelope


def now_ms() -> int:
    return int(time.time() * 1000)


class EventStore:
    """Append/scan interface over the single-file log.

    Appends to any stream are serialized by one lock; scans copy the
    stream slice under the lock, so they observe a consistent prefix
    while ingestion continues.
    """

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._users: dict[str, UserAccount] = {}
        self._streams: dict[tuple[str, str], list[StoredEvent]] = {}
        self._fh = None
        try:
            if self.path.exists():
                self._replay()
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._fh = open(self.path, "a", encoding="utf-8")
        except OSError as exc:
            raise StorageFailure(f"cannot open store: {exc}") from exc

    def _replay(self) -> None:
        with open(self.path, "r", encoding="utf-8") as fh:
            data = fh.read()
        lines = data.split("\n")
        # A torn final line (no trailing newline) is dropped; anything
        # else unparseable means the log is damaged.
        torn_tail = lines and lines[-1] != ""
        if lines and lines[-1] == "":
            lines.pop()
        for i, line in enumerate(lines, 1):
            if torn_tail and i == len(lines):
                log.warning("store %s: dropping torn final line", self.path)
                break
            try:
                rec = json.loads(line)
                if rec["rec"] == "user":
                    account = UserAccount(rec["username"], rec["digest"], rec["created"])
                    self._users[account.username] = account
                elif rec["rec"] == "event":
                    env = payload_from_dict(rec["kind"], rec["payload"])
                    stream = self._streams.setdefault((rec["user"], rec["kind"]), [])
                    stream.append(StoredEvent(rec["seq"], rec["arrival"], env))
                else:
                    raise ValueError(f"unknown record type {rec['rec']!r}")
            except Exception as exc:
                raise StorageFailure(f"corrupt store line {i}: {exc}") from exc

    def _write_line(self, obj: dict) -> None:
        try:
            self._fh.write(json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n")
            self._fh.flush()
        except OSError as exc:
            raise StorageFailure(f"append failed: {exc}") from exc

    # -- accounts ----------------------------------------------------------

    def put_user(self, account: UserAccount) -> None:
        with self._lock:
            if account.username in self._users:
                raise DuplicateUser(account.username)
            self._write_line({
                "rec": "user",
                "username": account.username,
                "digest": account.password_digest,
                "created": account.created_ms,
            })
            self._users[account.username] = account

    def get_user(self, username: str) -> UserAccount | None:
        with self._lock:
            return self._users.get(username)

    def usernames(self) -> list[str]:
        with self._lock:
            return sorted(self._users)

    # -- events ------------------------------------------------------------

    def append(self, user: str, envelope: EventEnvelope, arrival_ms: int | None = None) -> int:
        """Durably append one validated envelope; returns its stream seq."""
        if arrival_ms is None:
            arrival_ms = now_ms()
        with self._lock:
            if user not in self._users:
                raise UnknownUser(user)
            stream = self._streams.setdefault((user, envelope.kind), [])
            seq = len(stream) + 1
            self._write_line({
                "rec": "event",
                "user": user,
                "kind": envelope.kind,
                "seq": seq,
                "arrival": arrival_ms,
                "payload": payload_dict(envelope),
            })
            stream.append(StoredEvent(seq, arrival_ms, envelope))
            return seq

    def scan(self, user: str, kind: str, from_ms: int, to_ms: int) -> list[StoredEvent]:
        """Events of one stream with client timestamp in [from_ms, to_ms).

        Results are in seq (append) order; out-of-order client timestamps
        are filtered but never reordered.
        """
        if from_ms >= to_ms:
            raise BadRange(f"from {from_ms} >= to {to_ms}")
        with self._lock:
            if user not in self._users:
                raise UnknownUser(user)
            snapshot = list(self._streams.get((user, kind), ()))
        return [ev for ev in snapshot if from_ms <= client_timestamp(ev.envelope) < to_ms]

    def count(self, user: str, kind: str) -> int:
        with self._lock:
            return len(self._streams.get((user, kind), ()))

    def total_events(self) -> int:
        with self._lock:
            return sum(len(s) for s in self._streams.values())

    def close(self) -> None:
        with self._lock:
            if self._fh is None:
                return
            try:
                self._fh.flush()
                os.fsync(self._fh.fileno())
                self._fh.close()
            except OSError as exc:
                raise StorageFailure(f"close failed: {exc}") from exc
            finally:
                self._fh = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


__all__ = ["EventStore", "StoredEvent", "UserAccount", "now_ms", "KINDS"]
